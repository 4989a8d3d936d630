//! Molecules in products of three globes.
//!
//! Two checkers are provided. [`triple_is_pairwise_def`] asks that every
//! projection to two factors is a molecule; [`triple_is_pairwise_explicit`]
//! tests sign and covering conditions on the maximal atoms directly. They
//! accept the same subcomplexes.

use std::cmp::Ordering;
use std::fmt;

use crate::atom::{ProductAtom, Sign};
use crate::error::{Error, Result};
use crate::expr::MoleculeExpr;
use crate::molecule::{
    adjacent_raw, compose_with, decompose_with, min_dims, natural_cmp, projection_maximal,
    require_input, us, Verdict,
};
use crate::pair::{pair_is_molecule, PairViolation};
use crate::subcomplex::Subcomplex;

/// Why a three-factor subcomplex is not a molecule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TripleViolation {
    /// Two maximal atoms with comparable dimensions.
    Cond1 { a: ProductAtom, b: ProductAtom },
    /// A projection that is not a two-factor molecule. `axis` is 0-based.
    Projection { axis: usize, level: u32, inner: PairViolation },
    /// Adjacent atoms whose signs are not linked.
    Sign { a: ProductAtom, b: ProductAtom },
    /// Atoms of equal dimension and opposite sign in factor `factor` that
    /// no maximal atom covers.
    FlipCover { a: ProductAtom, b: ProductAtom, factor: usize },
    /// Adjacent atoms crossing in the outer factors with no atom filling
    /// the gap one dimension below in the middle factor.
    MiddleGap { a: ProductAtom, b: ProductAtom },
    /// Three pairwise adjacent atoms whose signs disagree all round.
    TripleSign { a: ProductAtom, b: ProductAtom, c: ProductAtom },
}

impl TripleViolation {
    pub fn tag(&self) -> &'static str {
        match self {
            TripleViolation::Cond1 { .. } => "cond1",
            TripleViolation::Projection { .. } => "projection",
            TripleViolation::Sign { .. } => "sign",
            TripleViolation::FlipCover { .. } => "flip-cover",
            TripleViolation::MiddleGap { .. } => "middle-gap",
            TripleViolation::TripleSign { .. } => "triple-sign",
        }
    }
}

impl fmt::Display for TripleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleViolation::Cond1 { a, b } => write!(f, "cond1: {a} and {b}"),
            TripleViolation::Projection { axis, level, inner } => {
                write!(f, "projection(axis {}, level {level}): {inner}", axis + 1)
            }
            TripleViolation::Sign { a, b } => write!(f, "sign: {a} and {b}"),
            TripleViolation::FlipCover { a, b, factor } => {
                write!(f, "flip-cover: {a} and {b} in factor {}", factor + 1)
            }
            TripleViolation::MiddleGap { a, b } => write!(f, "middle-gap: {a} and {b}"),
            TripleViolation::TripleSign { a, b, c } => write!(f, "triple-sign: {a}, {b} and {c}"),
        }
    }
}

pub type TripleVerdict = Verdict<TripleViolation>;

/// Image of a three-factor subcomplex under the projection dropping
/// factor `axis` (0-based) from atoms whose dimension there is at least
/// `level`.
pub fn project(x: &Subcomplex, axis: usize, level: u32) -> Result<Subcomplex> {
    let n = x.signature().arity();
    if n != 3 {
        return Err(Error::ArityMismatch { expected: 3, found: n });
    }
    x.project(axis, level)
}

/// Condition 1 plus: every projection to two factors is empty or a molecule.
pub fn triple_is_pairwise_def(x: &Subcomplex) -> Result<TripleVerdict> {
    require_input(x, 3)?;
    if let Some((a, b)) = x.condition1_violation()? {
        return Ok(Verdict::reject(TripleViolation::Cond1 { a: b, b: a }));
    }
    for axis in 0..3 {
        let top = x.atoms().iter().map(|a| a.d(axis)).max().unwrap_or(0);
        for level in 0..=top {
            let y = x.project(axis, level)?;
            if y.is_empty() {
                continue;
            }
            if let Some(inner) = pair_is_molecule(&y)?.into_violation() {
                return Ok(Verdict::reject(TripleViolation::Projection { axis, level, inner }));
            }
        }
    }
    Ok(Verdict::accept())
}

/// The explicit conditions on maximal atoms, with signs read in untwisted
/// coordinates.
pub fn triple_is_pairwise_explicit(x: &Subcomplex) -> Result<TripleVerdict> {
    require_input(x, 3)?;
    if let Some((a, b)) = x.condition1_violation()? {
        return Ok(Verdict::reject(TripleViolation::Cond1 { a: b, b: a }));
    }
    let atoms = x.atoms();
    let n = atoms.len();
    let mut adj = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = adjacent_raw(x, &atoms[i], &atoms[j]);
            adj[i * n + j] = v;
            adj[j * n + i] = v;
        }
    }

    // sign links between adjacent atoms
    for i in 0..n {
        for j in 0..n {
            if !adj[i * n + j] {
                continue;
            }
            let (a, b) = (&atoms[i], &atoms[j]);
            let m = min_dims(a, b);
            let bad = (a.d(0) < b.d(0) && b.d(1) < a.d(1) && us(x, b, 1) != -us(x, a, 0).pow(m[0]))
                || (a.d(0) < b.d(0)
                    && b.d(2) < a.d(2)
                    && us(x, b, 2) != -us(x, a, 0).pow(m[0] + m[1]))
                || (a.d(1) < b.d(1) && b.d(2) < a.d(2) && us(x, b, 2) != -us(x, a, 1).pow(m[1]));
            if bad {
                return Ok(Verdict::reject(TripleViolation::Sign { a: *a, b: *b }));
            }
        }
    }

    // opposite signs at equal dimension must be covered from above
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&atoms[i], &atoms[j]);
            let m = min_dims(a, b);
            for f in 0..3 {
                if a.d(f) != b.d(f) || us(x, a, f) == us(x, b, f) {
                    continue;
                }
                let covered = atoms
                    .iter()
                    .any(|c| c.d(f) > a.d(f) && (0..3).all(|g| g == f || c.d(g) >= m[g]));
                if !covered {
                    return Ok(Verdict::reject(TripleViolation::FlipCover {
                        a: *a,
                        b: *b,
                        factor: f,
                    }));
                }
            }
        }
    }

    // crossing in the outer factors needs an atom one step down in the middle
    for i in 0..n {
        for j in 0..n {
            if !adj[i * n + j] {
                continue;
            }
            let (a, b) = (&atoms[i], &atoms[j]);
            let m = min_dims(a, b);
            if b.d(0) < a.d(0) && a.d(2) < b.d(2) && m[1] > 0 {
                let filled = atoms
                    .iter()
                    .any(|c| c.d(0) > b.d(0) && c.d(1) == m[1] - 1 && c.d(2) > a.d(2));
                if !filled {
                    return Ok(Verdict::reject(TripleViolation::MiddleGap { a: *a, b: *b }));
                }
            }
        }
    }

    // three atoms meeting pairwise in a corner
    for i in 0..n {
        for j in 0..n {
            if !adj[i * n + j] {
                continue;
            }
            for k in 0..n {
                if !adj[i * n + k] || !adj[j * n + k] {
                    continue;
                }
                let (a, b, c) = (&atoms[i], &atoms[j], &atoms[k]);
                let corner = b.d(0) == c.d(0)
                    && a.d(1) == c.d(1)
                    && a.d(2) == b.d(2)
                    && a.d(0) > b.d(0)
                    && b.d(1) > a.d(1)
                    && c.d(2) > a.d(2);
                if corner
                    && us(x, b, 0) != us(x, c, 0)
                    && us(x, a, 1) != us(x, c, 1)
                    && us(x, a, 2) != us(x, b, 2)
                {
                    return Ok(Verdict::reject(TripleViolation::TripleSign { a: *a, b: *b, c: *c }));
                }
            }
        }
    }
    Ok(Verdict::accept())
}

fn require_triple_pair(x: &Subcomplex, a: &ProductAtom, b: &ProductAtom) -> Result<()> {
    let n = x.signature().arity();
    if n != 3 {
        return Err(Error::ArityMismatch { expected: 3, found: n });
    }
    if !x.is_condition1()? {
        return Err(Error::Precondition("the subcomplex violates condition 1".into()));
    }
    if a == b || !x.atoms().contains(a) || !x.atoms().contains(b) {
        return Err(Error::Precondition(format!(
            "{a} and {b} must be distinct maximal atoms of {x}"
        )));
    }
    Ok(())
}

/// Adjacency of two distinct maximal atoms of a three-factor subcomplex.
pub fn adjacent3(a: &ProductAtom, b: &ProductAtom, x: &Subcomplex) -> Result<bool> {
    require_triple_pair(x, a, b)?;
    Ok(adjacent_raw(x, a, b))
}

/// The weaker `(r,s)`-adjacency of three factors (0-based `r < s`): one
/// atom is lower in factor `r`, the other lower in factor `s`, and no
/// maximal atom exceeds the first in `r` and the second in `s` while
/// reaching the common dimension of the remaining factor.
pub fn st_adjacent3(
    a: &ProductAtom,
    b: &ProductAtom,
    x: &Subcomplex,
    r: usize,
    s: usize,
) -> Result<bool> {
    require_triple_pair(x, a, b)?;
    if !(r < s && s < 3) {
        return Err(Error::Precondition(format!("need factors r < s < 3, got {r}, {s}")));
    }
    let other = 3 - r - s;
    let m = min_dims(a, b);
    let one_way = |p: &ProductAtom, q: &ProductAtom| {
        p.d(r) < q.d(r)
            && p.d(s) > q.d(s)
            && !x
                .atoms()
                .iter()
                .any(|c| c.d(r) > p.d(r) && c.d(s) > q.d(s) && c.d(other) >= m[other])
    };
    Ok(one_way(a, b) || one_way(b, a))
}

/// Whether `a` survives as a maximal atom of the projection at `(axis, level)`.
pub fn projection_maximal3(a: &ProductAtom, x: &Subcomplex, axis: usize, level: u32) -> Result<bool> {
    let n = x.signature().arity();
    if n != 3 {
        return Err(Error::ArityMismatch { expected: 3, found: n });
    }
    projection_maximal(x, a, axis, level)
}

fn checked_d(x: &Subcomplex, p: u32, gamma: Sign) -> Result<Subcomplex> {
    triple_is_pairwise_def(x)?.require()?;
    x.d_by_witness(p, gamma)
}

/// `d_p^γ` of a three-factor molecule.
pub fn triple_d(x: &Subcomplex, p: u32, gamma: Sign) -> Result<Subcomplex> {
    checked_d(x, p, gamma)
}

/// `x #_p y` of three-factor molecules.
pub fn triple_compose(x: &Subcomplex, p: u32, y: &Subcomplex) -> Result<Subcomplex> {
    triple_is_pairwise_def(x)?.require()?;
    triple_is_pairwise_def(y)?.require()?;
    compose_with(x, p, y, &|m, q, g| m.d_by_witness(q, g))
}

/// The natural order on maximal atoms of three factors.
pub fn natural_less3(a: &ProductAtom, b: &ProductAtom) -> bool {
    natural_cmp(a, b, 2) == Some(Ordering::Less)
}

/// Splits a three-factor molecule into atoms, cutting at the frame
/// dimension with the first atom of the natural order on one side.
pub fn decompose3(x: &Subcomplex) -> Result<MoleculeExpr> {
    triple_is_pairwise_def(x)?.require()?;
    decompose_with(x, &|m, q, g| m.d_by_witness(q, g), 2)
}
