//! Composition expressions over atoms.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use crate::atom::{Parser, ProductAtom, Sign, Signature};
use crate::error::{Error, Result};
use crate::molecule::{molecule_d, BoundaryFn};
use crate::oracle::{cap_quotient, CellComplex};
use crate::subcomplex::Subcomplex;

/// A binary tree of compositions `(left #n right)` with atoms at the leaves.
///
/// Subtrees are reference counted, so a tree built by [`decompose`]
/// shares repeated pieces. The written form repeats them and can be far
/// larger than the tree in memory; [`MoleculeExpr::leaf_count`] tells how
/// large.
///
/// [`decompose`]: crate::molecule::decompose
#[derive(Clone, Debug, Eq)]
pub enum MoleculeExpr {
    Leaf(ProductAtom),
    Node(Rc<MoleculeExpr>, u32, Rc<MoleculeExpr>),
}

impl PartialEq for MoleculeExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MoleculeExpr::Leaf(a), MoleculeExpr::Leaf(b)) => a == b,
            (MoleculeExpr::Node(l1, n1, r1), MoleculeExpr::Node(l2, n2, r2)) => {
                n1 == n2
                    && (Rc::ptr_eq(l1, l2) || l1 == l2)
                    && (Rc::ptr_eq(r1, r2) || r1 == r2)
            }
            _ => false,
        }
    }
}

type Key = *const MoleculeExpr;

impl MoleculeExpr {
    pub fn leaf(a: ProductAtom) -> Self {
        MoleculeExpr::Leaf(a)
    }

    pub fn node(left: MoleculeExpr, level: u32, right: MoleculeExpr) -> Self {
        MoleculeExpr::Node(Rc::new(left), level, Rc::new(right))
    }

    /// Parses `atom | '(' expr '#' NAT expr ')'` and checks the atoms
    /// against `sig`.
    pub fn parse(sig: &Signature, text: &str) -> Result<Self> {
        let mut p = Parser::new(text);
        let e = parse_expr(&mut p, Some(sig))?;
        p.end()?;
        Ok(e)
    }

    /// Number of leaves of the written form.
    pub fn leaf_count(&self) -> u128 {
        fn rec(e: &MoleculeExpr, memo: &mut HashMap<Key, u128>) -> u128 {
            match e {
                MoleculeExpr::Leaf(_) => 1,
                MoleculeExpr::Node(l, _, r) => {
                    let k: Key = e;
                    if let Some(&c) = memo.get(&k) {
                        return c;
                    }
                    let c = rec(l, memo).saturating_add(rec(r, memo));
                    memo.insert(k, c);
                    c
                }
            }
        }
        rec(self, &mut HashMap::new())
    }

    /// The distinct atoms at the leaves, in canonical order.
    pub fn leaves(&self) -> Vec<ProductAtom> {
        fn rec(e: &MoleculeExpr, seen: &mut HashSet<Key>, out: &mut BTreeSet<ProductAtom>) {
            if !seen.insert(e as Key) {
                return;
            }
            match e {
                MoleculeExpr::Leaf(a) => {
                    out.insert(*a);
                }
                MoleculeExpr::Node(l, _, r) => {
                    rec(l, seen, out);
                    rec(r, seen, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        rec(self, &mut HashSet::new(), &mut out);
        out.into_iter().collect()
    }

    /// Evaluates the tree, checking `d_n^+ left = d_n^- right` at every node.
    /// Capped signatures are evaluated on the cell complex, uncapped ones
    /// with the molecule boundary formulas.
    pub fn evaluate(&self, sig: &Signature) -> Result<Subcomplex> {
        if sig.is_capped() {
            let cx = CellComplex::build(sig)?;
            self.evaluate_with(sig, &|x, n, g| cx.d_sub(x, n, g))
        } else {
            self.evaluate_with(sig, &molecule_d)
        }
    }

    /// Evaluates with a caller-supplied boundary operator. Shared subtrees
    /// are evaluated once.
    pub fn evaluate_with(&self, sig: &Signature, d: BoundaryFn) -> Result<Subcomplex> {
        fn rec(
            e: &MoleculeExpr,
            sig: &Signature,
            d: BoundaryFn,
            memo: &mut HashMap<Key, Subcomplex>,
        ) -> Result<Subcomplex> {
            match e {
                MoleculeExpr::Leaf(a) => Subcomplex::atom(*sig, *a),
                MoleculeExpr::Node(l, n, r) => {
                    let k: Key = e;
                    if let Some(v) = memo.get(&k) {
                        return Ok(v.clone());
                    }
                    let x = rec(l, sig, d, memo)?;
                    let y = rec(r, sig, d, memo)?;
                    let left = d(&x, *n, Sign::Plus)?;
                    let right = d(&y, *n, Sign::Minus)?;
                    if left != right {
                        return Err(Error::BoundaryMismatch {
                            left: left.to_string(),
                            right: right.to_string(),
                        });
                    }
                    let v = x.union(&y)?;
                    memo.insert(k, v.clone());
                    Ok(v)
                }
            }
        }
        rec(self, sig, d, &mut HashMap::new())
    }

    /// Sends every leaf to its image in the product of finite globes of
    /// dimensions `caps`, keeping shared subtrees shared.
    pub fn cap_quotient(&self, caps: &[u32]) -> Result<MoleculeExpr> {
        fn rec(
            e: &MoleculeExpr,
            plain: Signature,
            caps: &[u32],
            memo: &mut HashMap<Key, Rc<MoleculeExpr>>,
        ) -> Result<Rc<MoleculeExpr>> {
            let k: Key = e;
            if let Some(v) = memo.get(&k) {
                return Ok(v.clone());
            }
            let v = Rc::new(match e {
                MoleculeExpr::Leaf(a) => {
                    let q = cap_quotient(&Subcomplex::atom(plain, *a)?, caps)?;
                    MoleculeExpr::Leaf(q.atoms()[0])
                }
                MoleculeExpr::Node(l, n, r) => {
                    MoleculeExpr::Node(rec(l, plain, caps, memo)?, *n, rec(r, plain, caps, memo)?)
                }
            });
            memo.insert(k, v.clone());
            Ok(v)
        }
        let plain = Signature::plain(caps.len());
        Ok(Rc::unwrap_or_clone(rec(self, plain, caps, &mut HashMap::new())?))
    }
}

fn parse_expr(p: &mut Parser, sig: Option<&Signature>) -> Result<MoleculeExpr> {
    if p.peek() == Some(b'(') && p.peek_second() == Some(b'(') {
        p.expect(b'(')?;
        let l = parse_expr(p, sig)?;
        p.expect(b'#')?;
        let n = p.nat()?;
        let r = parse_expr(p, sig)?;
        p.expect(b')')?;
        Ok(MoleculeExpr::node(l, n, r))
    } else {
        let pos = p.pos();
        let a = p.atom()?;
        if let Some(sig) = sig {
            sig.check_atom(&a).map_err(|e| match e {
                Error::ArityMismatch { .. } => Error::Syntax { pos, msg: e.to_string() },
                other => other,
            })?;
        }
        Ok(MoleculeExpr::Leaf(a))
    }
}

impl fmt::Display for MoleculeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoleculeExpr::Leaf(a) => write!(f, "{a}"),
            MoleculeExpr::Node(l, n, r) => write!(f, "({l}#{n}{r})"),
        }
    }
}

/// Parses without a signature; atoms are only checked for shape.
impl FromStr for MoleculeExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let e = parse_expr(&mut p, None)?;
        p.end()?;
        Ok(e)
    }
}
