//! Molecules in products of two globes.

use std::fmt;

use crate::atom::{ProductAtom, Sign};
use crate::error::Result;
use crate::expr::MoleculeExpr;
use crate::molecule::{compose_with, decompose_with, require_input, us, Verdict};
use crate::subcomplex::Subcomplex;

/// Why a two-factor subcomplex is not a molecule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairViolation {
    /// The maximal atoms do not form a staircase: `b`'s dimensions are
    /// bounded by `a`'s.
    Staircase { a: ProductAtom, b: ProductAtom },
    /// Consecutive atoms of the staircase whose signs are not linked.
    SignLink { prev: ProductAtom, next: ProductAtom },
}

impl PairViolation {
    pub fn tag(&self) -> &'static str {
        match self {
            PairViolation::Staircase { .. } => "staircase",
            PairViolation::SignLink { .. } => "sign-link",
        }
    }
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairViolation::Staircase { a, b } => write!(f, "staircase: {b} lies below {a}"),
            PairViolation::SignLink { prev, next } => {
                write!(f, "sign-link: {prev} followed by {next}")
            }
        }
    }
}

pub type PairVerdict = Verdict<PairViolation>;

/// Checks the staircase shape of the maximal atoms (first dimensions
/// strictly decreasing, second strictly increasing) and the sign link
/// between consecutive atoms.
pub fn pair_is_molecule(x: &Subcomplex) -> Result<PairVerdict> {
    require_input(x, 2)?;
    // canonical order sorts by first dimension, so walk it backwards
    let atoms: Vec<&ProductAtom> = x.atoms().iter().rev().collect();
    for w in atoms.windows(2) {
        let (prev, next) = (w[0], w[1]);
        if next.d(0) == prev.d(0) || next.d(1) <= prev.d(1) {
            let (a, b) = if prev.dims_le(next) { (next, prev) } else { (prev, next) };
            return Ok(Verdict::reject(PairViolation::Staircase { a: *a, b: *b }));
        }
    }
    for w in atoms.windows(2) {
        let (prev, next) = (w[0], w[1]);
        if us(x, prev, 1) != -us(x, next, 0).pow(next.d(0)) {
            return Ok(Verdict::reject(PairViolation::SignLink { prev: *prev, next: *next }));
        }
    }
    Ok(Verdict::accept())
}

/// `d_p^γ` of a two-factor molecule.
pub fn pair_d(x: &Subcomplex, p: u32, gamma: Sign) -> Result<Subcomplex> {
    pair_is_molecule(x)?.require()?;
    x.d_by_witness(p, gamma)
}

/// `x #_p y` of two-factor molecules.
pub fn pair_compose(x: &Subcomplex, p: u32, y: &Subcomplex) -> Result<Subcomplex> {
    pair_is_molecule(x)?.require()?;
    pair_is_molecule(y)?.require()?;
    compose_with(x, p, y, &|m, q, g| m.d_by_witness(q, g))
}

/// Splits a two-factor molecule into atoms.
pub fn decompose2(x: &Subcomplex) -> Result<MoleculeExpr> {
    pair_is_molecule(x)?.require()?;
    decompose_with(x, &|m, q, g| m.d_by_witness(q, g), 1)
}
