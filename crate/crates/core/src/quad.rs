//! Molecules in products of four globes.

use std::cmp::Ordering;
use std::fmt;

use crate::atom::{ProductAtom, Sign};
use crate::error::{Error, Result};
use crate::expr::MoleculeExpr;
use crate::molecule::{
    compose_with, decompose_with, min_dims, natural_cmp, require_input, st_adjacent,
    st_adjacent_raw, Verdict,
};
use crate::subcomplex::Subcomplex;
use crate::triple::{triple_is_pairwise_def, TripleViolation};

/// Why a four-factor subcomplex is not a molecule. Factor indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadViolation {
    Cond1 { a: ProductAtom, b: ProductAtom },
    /// A projection to three factors that is not a molecule.
    Projection { axis: usize, level: u32, inner: TripleViolation },
    /// An `(s,t)`-adjacent pair whose signs are not linked.
    Sign { a: ProductAtom, b: ProductAtom, s: usize, t: usize },
    /// Opposite signs at equal dimension in `factor` without a covering atom.
    FlipCover { a: ProductAtom, b: ProductAtom, factor: usize },
    /// An `(s,t)`-adjacent pair with no atom one step down in factor `r`.
    MiddleGap { a: ProductAtom, b: ProductAtom, s: usize, r: usize, t: usize },
}

impl QuadViolation {
    pub fn tag(&self) -> &'static str {
        match self {
            QuadViolation::Cond1 { .. } => "cond1",
            QuadViolation::Projection { .. } => "projection",
            QuadViolation::Sign { .. } => "sign",
            QuadViolation::FlipCover { .. } => "flip-cover",
            QuadViolation::MiddleGap { .. } => "middle-gap",
        }
    }
}

impl fmt::Display for QuadViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadViolation::Cond1 { a, b } => write!(f, "cond1: {a} and {b}"),
            QuadViolation::Projection { axis, level, inner } => {
                write!(f, "projection(axis {}, level {level}): {inner}", axis + 1)
            }
            QuadViolation::Sign { a, b, s, t } => {
                write!(f, "sign({},{}): {a} and {b}", s + 1, t + 1)
            }
            QuadViolation::FlipCover { a, b, factor } => {
                write!(f, "flip-cover: {a} and {b} in factor {}", factor + 1)
            }
            QuadViolation::MiddleGap { a, b, s, r, t } => {
                write!(f, "middle-gap({},{},{}): {a} and {b}", s + 1, r + 1, t + 1)
            }
        }
    }
}

pub type QuadVerdict = Verdict<QuadViolation>;

/// Image under the projection dropping factor `axis` (0-based) from atoms
/// whose dimension there is at least `level`.
pub fn project4(x: &Subcomplex, axis: usize, level: u32) -> Result<Subcomplex> {
    let n = x.signature().arity();
    if n != 4 {
        return Err(Error::ArityMismatch { expected: 4, found: n });
    }
    x.project(axis, level)
}

/// Condition 1 plus: every projection to three factors is empty or a molecule.
pub fn quad_is_pairwise_def(x: &Subcomplex) -> Result<QuadVerdict> {
    require_input(x, 4)?;
    if let Some((a, b)) = x.condition1_violation()? {
        return Ok(Verdict::reject(QuadViolation::Cond1 { a: b, b: a }));
    }
    for axis in 0..4 {
        let top = x.atoms().iter().map(|a| a.d(axis)).max().unwrap_or(0);
        for level in 0..=top {
            let y = x.project(axis, level)?;
            if y.is_empty() {
                continue;
            }
            if let Some(inner) = triple_is_pairwise_def(&y)?.into_violation() {
                return Ok(Verdict::reject(QuadViolation::Projection { axis, level, inner }));
            }
        }
    }
    Ok(Verdict::accept())
}

/// The explicit conditions on maximal atoms. Twisted input is relabelled
/// to untwisted coordinates first; witnesses refer to the relabelled atoms.
pub fn quad_is_pairwise_explicit(x: &Subcomplex) -> Result<QuadVerdict> {
    require_input(x, 4)?;
    let u = x.untwisted();
    if let Some((a, b)) = u.condition1_violation()? {
        return Ok(Verdict::reject(QuadViolation::Cond1 { a: b, b: a }));
    }
    let atoms = u.atoms();

    for a in atoms {
        for b in atoms {
            if a == b {
                continue;
            }
            let m = min_dims(a, b);
            for s in 0..4 {
                for t in s + 1..4 {
                    if a.d(s) < b.d(s) && b.d(t) < a.d(t) && st_adjacent_raw(&u, a, b, s, t) {
                        let e: u32 = m[s..t].iter().sum();
                        if b.s(t) != -a.s(s).pow(e) {
                            return Ok(Verdict::reject(QuadViolation::Sign { a: *a, b: *b, s, t }));
                        }
                    }
                }
            }
        }
    }

    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i + 1..] {
            let m = min_dims(a, b);
            for s in 0..4 {
                if a.d(s) != b.d(s) || a.s(s) == b.s(s) {
                    continue;
                }
                for t in (0..4).filter(|&t| t != s) {
                    let covered = atoms.iter().any(|c| {
                        c.d(s) > a.d(s)
                            && c.d(t) >= m[t]
                            && (0..4).filter(|&r| r != s && r != t).all(|r| {
                                a.factor(r)
                                    .intersect(b.factor(r))
                                    .into_iter()
                                    .all(|z| c.factor(r).contains(z))
                            })
                    });
                    if !covered {
                        return Ok(Verdict::reject(QuadViolation::FlipCover {
                            a: *a,
                            b: *b,
                            factor: s,
                        }));
                    }
                }
            }
        }
    }

    for a in atoms {
        for b in atoms {
            if a == b {
                continue;
            }
            let m = min_dims(a, b);
            for s in 0..4 {
                for t in s + 2..4 {
                    if !(a.d(s) > b.d(s) && b.d(t) > a.d(t)) {
                        continue;
                    }
                    if !st_adjacent_raw(&u, a, b, s, t) {
                        continue;
                    }
                    for r in s + 1..t {
                        if m[r] == 0 {
                            continue;
                        }
                        let filled = atoms.iter().any(|c| {
                            c.d(s) > b.d(s)
                                && c.d(r) == m[r] - 1
                                && c.d(t) > a.d(t)
                                && (0..4)
                                    .filter(|&q| q != s && q != r && q != t)
                                    .all(|q| c.d(q) >= m[q])
                        });
                        if !filled {
                            return Ok(Verdict::reject(QuadViolation::MiddleGap {
                                a: *a,
                                b: *b,
                                s,
                                r,
                                t,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::accept())
}

/// `(s,t)`-adjacency (0-based `s < t`) of two distinct maximal atoms.
pub fn st_adjacent4(
    a: &ProductAtom,
    b: &ProductAtom,
    x: &Subcomplex,
    s: usize,
    t: usize,
) -> Result<bool> {
    let n = x.signature().arity();
    if n != 4 {
        return Err(Error::ArityMismatch { expected: 4, found: n });
    }
    st_adjacent(x, a, b, s, t)
}

fn checked_d(x: &Subcomplex, p: u32, gamma: Sign) -> Result<Subcomplex> {
    quad_is_pairwise_def(x)?.require()?;
    x.d_by_witness(p, gamma)
}

/// `d_p^γ` of a four-factor molecule.
pub fn quad_d(x: &Subcomplex, p: u32, gamma: Sign) -> Result<Subcomplex> {
    checked_d(x, p, gamma)
}

/// `x #_p y` of four-factor molecules.
pub fn quad_compose(x: &Subcomplex, p: u32, y: &Subcomplex) -> Result<Subcomplex> {
    quad_is_pairwise_def(x)?.require()?;
    quad_is_pairwise_def(y)?.require()?;
    compose_with(x, p, y, &|m, q, g| m.d_by_witness(q, g))
}

/// The natural order on maximal atoms of four factors.
pub fn natural_less4(a: &ProductAtom, b: &ProductAtom) -> bool {
    natural_cmp(a, b, 3) == Some(Ordering::Less)
}

/// Splits a four-factor molecule into atoms.
pub fn decompose4(x: &Subcomplex) -> Result<MoleculeExpr> {
    quad_is_pairwise_def(x)?.require()?;
    decompose_with(x, &|m, q, g| m.d_by_witness(q, g), 3)
}
