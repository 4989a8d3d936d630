//! Molecules in products of two, three and four infinite-dimensional globes
//! (and in products of finite globes through a cell-level oracle).
//!
//! Subcomplexes are stored as antichains of maximal atoms. Membership tests,
//! source and target operators, composition and decomposition are computed
//! from maximal atoms alone; [`oracle`] recomputes everything from the cell
//! structure for cross-checking.

pub mod atom;
pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod molecule;
pub mod oracle;
pub mod pair;
pub mod quad;
pub mod reference;
pub mod subcomplex;
pub mod triple;

pub use atom::{FactorAtom, FactorSign, ProductAtom, Sign, Signature};
pub use error::{Error, Result};
pub use expr::MoleculeExpr;
pub use molecule::Verdict;
pub use subcomplex::Subcomplex;
