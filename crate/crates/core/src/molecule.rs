//! Machinery shared by the two-, three- and four-factor molecule checks:
//! verdicts, adjacency notions, the natural order and the splitting rule.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::atom::{atom_d, FactorAtom, ProductAtom, Sign};
use crate::error::{Error, Result};
use crate::expr::MoleculeExpr;
use crate::subcomplex::{retwist_atom, Subcomplex};
use crate::{pair, quad, triple};

/// Outcome of a molecule check: either accepted, or the first violated
/// condition with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<V> {
    violation: Option<V>,
}

impl<V> Verdict<V> {
    pub fn accept() -> Self {
        Verdict { violation: None }
    }

    pub fn reject(v: V) -> Self {
        Verdict { violation: Some(v) }
    }

    #[inline]
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<&V> {
        self.violation.as_ref()
    }

    pub fn into_violation(self) -> Option<V> {
        self.violation
    }
}

impl<V: fmt::Display> Verdict<V> {
    /// `Ok(())` when accepted, otherwise a `NotMolecule` error.
    pub fn require(&self) -> Result<()> {
        match &self.violation {
            None => Ok(()),
            Some(v) => Err(Error::NotMolecule(v.to_string())),
        }
    }
}

impl<V: fmt::Display> fmt::Display for Verdict<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "molecule"),
            Some(v) => write!(f, "not-molecule: {v}"),
        }
    }
}

/// Rejects inputs the molecule checks do not handle.
pub(crate) fn require_input(x: &Subcomplex, arity: usize) -> Result<()> {
    let found = x.signature().arity();
    if found != arity {
        return Err(Error::ArityMismatch { expected: arity, found });
    }
    if x.is_empty() {
        return Err(Error::Empty);
    }
    if x.has_top() {
        return Err(Error::TopNotAllowed);
    }
    Ok(())
}

/// Sign of factor `f` of `a` after relabelling the twisted factors of `x`'s
/// signature to untwisted ones.
#[inline]
pub(crate) fn us(x: &Subcomplex, a: &ProductAtom, f: usize) -> Sign {
    a.s(f).pow(x.signature().twist(f))
}

#[inline]
pub(crate) fn min_dims(a: &ProductAtom, b: &ProductAtom) -> [u32; 4] {
    let mut m = [0; 4];
    for (f, slot) in m.iter_mut().enumerate().take(a.arity()) {
        *slot = a.d(f).min(b.d(f));
    }
    m
}

#[inline]
pub(crate) fn min_sum(a: &ProductAtom, b: &ProductAtom) -> u32 {
    (0..a.arity()).map(|f| a.d(f).min(b.d(f))).sum()
}

fn require_pair(x: &Subcomplex, a: &ProductAtom, b: &ProductAtom) -> Result<()> {
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

/// Adjacency without precondition checks.
pub(crate) fn adjacent_raw(x: &Subcomplex, a: &ProductAtom, b: &ProductAtom) -> bool {
    let n = a.arity();
    let m = min_dims(a, b);
    let s = min_sum(a, b);
    !x.atoms().iter().any(|c| {
        (0..n).all(|f| c.d(f) >= m[f]) && min_sum(a, c) > s && min_sum(b, c) > s
    })
}

/// Whether two distinct maximal atoms are adjacent: no maximal atom above
/// their common dimensions meets each of them in more dimensions than
/// they meet each other.
pub fn adjacent(x: &Subcomplex, a: &ProductAtom, b: &ProductAtom) -> Result<bool> {
    require_pair(x, a, b)?;
    Ok(adjacent_raw(x, a, b))
}

/// `(s,t)`-adjacency without precondition checks; factors are 0-based.
pub(crate) fn st_adjacent_raw(
    x: &Subcomplex,
    a: &ProductAtom,
    b: &ProductAtom,
    s: usize,
    t: usize,
) -> bool {
    let (ias, iat, ibs, ibt) = (a.d(s), a.d(t), b.d(s), b.d(t));
    if ias.max(ibs) + iat.max(ibt) <= (ias + iat).max(ibs + ibt) {
        return false;
    }
    let n = a.arity();
    let m = min_dims(a, b);
    let base = m[s] + m[t];
    let two = |p: &ProductAtom, c: &ProductAtom| p.d(s).min(c.d(s)) + p.d(t).min(c.d(t));
    !x.atoms().iter().any(|c| {
        (0..n).all(|f| c.d(f) >= m[f]) && two(a, c) > base && two(b, c) > base
    })
}

/// `(s,t)`-adjacency for a pair that crosses in factors `s < t`
/// (0-based): no maximal atom above the common dimensions beats the
/// pair's meeting in those two factors against both atoms.
pub fn st_adjacent(
    x: &Subcomplex,
    a: &ProductAtom,
    b: &ProductAtom,
    s: usize,
    t: usize,
) -> Result<bool> {
    require_pair(x, a, b)?;
    let n = x.signature().arity();
    if !(s < t && t < n) {
        return Err(Error::Precondition(format!("need factors s < t < {n}, got {s}, {t}")));
    }
    Ok(st_adjacent_raw(x, a, b, s, t))
}

pub(crate) fn projection_maximal_raw(
    x: &Subcomplex,
    a: &ProductAtom,
    axis: usize,
    level: u32,
) -> bool {
    if a.d(axis) < level {
        return false;
    }
    let n = a.arity();
    !x.atoms().iter().any(|c| {
        c.d(axis) >= level
            && c.d(axis) < a.d(axis)
            && (0..n).all(|f| f == axis || c.d(f) >= a.d(f))
    })
}

/// Whether the maximal atom `a` stays maximal under the projection that
/// drops factor `axis` at `level`.
pub fn projection_maximal(
    x: &Subcomplex,
    a: &ProductAtom,
    axis: usize,
    level: u32,
) -> Result<bool> {
    if !x.is_condition1()? {
        return Err(Error::Precondition("the subcomplex violates condition 1".into()));
    }
    if !x.atoms().contains(a) {
        return Err(Error::Precondition(format!("{a} is not a maximal atom of {x}")));
    }
    let n = x.signature().arity();
    if axis >= n {
        return Err(Error::BadAxis { axis, arity: n });
    }
    Ok(projection_maximal_raw(x, a, axis, level))
}

/// Largest dimension of the intersection of two distinct maximal atoms.
pub fn frame_dim(x: &Subcomplex) -> Result<u32> {
    let atoms = x.atoms();
    if atoms.len() < 2 {
        return Err(Error::NoFrameDimension);
    }
    let mut best = 0;
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i + 1..] {
            best = best.max(min_sum(a, b));
        }
    }
    Ok(best)
}

/// The natural order on the first `depth` factors. The first factor puts
/// minus atoms first by increasing dimension and then plus atoms by
/// decreasing dimension; a tie moves on to the next factor, where the roles
/// of the signs swap when the dimensions so far add up to an odd number.
/// `None` when the atoms agree on all compared factors.
pub(crate) fn natural_cmp(a: &ProductAtom, b: &ProductAtom, depth: usize) -> Option<Ordering> {
    let mut parity = 0;
    for f in 0..depth {
        let (fa, fb) = (a.factor(f), b.factor(f));
        if fa == fb {
            parity += fa.dim;
            continue;
        }
        let first = Sign::Minus.pow(parity);
        let key = |x: FactorAtom| {
            if x.sign.signed() == Some(first) {
                (0, i64::from(x.dim))
            } else {
                (1, -i64::from(x.dim))
            }
        };
        return Some(key(fa).cmp(&key(fb)));
    }
    None
}

pub(crate) type BoundaryFn<'a> = &'a dyn Fn(&Subcomplex, u32, Sign) -> Result<Subcomplex>;

/// Splits `x` at its frame dimension until only atoms remain. `x` must be
/// a molecule for `d`. The natural order looks at the atoms in untwisted
/// coordinates. Equal pieces share one subtree.
pub(crate) fn decompose_with(x: &Subcomplex, d: BoundaryFn, depth: usize) -> Result<MoleculeExpr> {
    let mut memo = HashMap::new();
    decompose_rec(x, d, depth, &mut memo)
}

fn decompose_rec(
    x: &Subcomplex,
    d: BoundaryFn,
    depth: usize,
    memo: &mut HashMap<Subcomplex, MoleculeExpr>,
) -> Result<MoleculeExpr> {
    if x.len() == 1 {
        return Ok(MoleculeExpr::leaf(x.atoms()[0]));
    }
    if let Some(e) = memo.get(x) {
        return Ok(e.clone());
    }
    let sig = *x.signature();
    let plain = sig.untwisted();
    let p = frame_dim(x)?;
    let mut big: Vec<ProductAtom> = x.atoms().iter().filter(|a| a.dim() > p).copied().collect();
    big.sort_by(|a, b| {
        let (a, b) = (retwist_atom(a, &sig, &plain), retwist_atom(b, &sig, &plain));
        natural_cmp(&a, &b, depth).unwrap_or(Ordering::Equal)
    });
    if big.len() < 2 {
        return Err(Error::Precondition(format!("{x} does not split at dimension {p}")));
    }
    let mut minus = d(x, p, Sign::Minus)?.atoms().to_vec();
    minus.push(big[0]);
    let mut plus = d(x, p, Sign::Plus)?.atoms().to_vec();
    plus.extend_from_slice(&big[1..]);
    let minus = Subcomplex::normalize_atoms(sig, minus);
    let plus = Subcomplex::normalize_atoms(sig, plus);
    let e = MoleculeExpr::node(
        decompose_rec(&minus, d, depth, memo)?,
        p,
        decompose_rec(&plus, d, depth, memo)?,
    );
    memo.insert(x.clone(), e.clone());
    Ok(e)
}

/// `x #_p y` once the caller has checked that both are molecules.
pub(crate) fn compose_with(x: &Subcomplex, p: u32, y: &Subcomplex, d: BoundaryFn) -> Result<Subcomplex> {
    if x.signature() != y.signature() {
        return Err(Error::SignatureMismatch);
    }
    let left = d(x, p, Sign::Plus)?;
    let right = d(y, p, Sign::Minus)?;
    if left != right {
        return Err(Error::BoundaryMismatch { left: left.to_string(), right: right.to_string() });
    }
    x.union(y)
}

/// Molecule check for any supported arity of an uncapped signature.
pub fn is_molecule(x: &Subcomplex) -> Result<bool> {
    match x.signature().arity() {
        1 => {
            require_input(x, 1)?;
            Ok(x.len() == 1)
        }
        2 => Ok(pair::pair_is_molecule(x)?.ok()),
        3 => Ok(triple::triple_is_pairwise_def(x)?.ok()),
        4 => Ok(quad::quad_is_pairwise_def(x)?.ok()),
        n => Err(Error::BadArity(n)),
    }
}

/// `d_p^γ` of a molecule of any supported arity of an uncapped signature.
pub fn molecule_d(x: &Subcomplex, p: u32, gamma: Sign) -> Result<Subcomplex> {
    match x.signature().arity() {
        1 => {
            require_input(x, 1)?;
            if x.len() != 1 {
                return Err(Error::NotMolecule("two maximal atoms in one globe".into()));
            }
            Ok(atom_d(x.signature(), &x.atoms()[0], p, gamma))
        }
        2 => pair::pair_d(x, p, gamma),
        3 => triple::triple_d(x, p, gamma),
        4 => quad::quad_d(x, p, gamma),
        n => Err(Error::BadArity(n)),
    }
}

/// `x #_p y` for molecules of any supported arity.
pub fn molecule_compose(x: &Subcomplex, p: u32, y: &Subcomplex) -> Result<Subcomplex> {
    compose_with(x, p, y, &molecule_d)
}

/// Splits a molecule of any supported arity into atoms.
pub fn decompose(x: &Subcomplex) -> Result<MoleculeExpr> {
    match x.signature().arity() {
        1 => {
            require_input(x, 1)?;
            match x.atoms() {
                [a] => Ok(MoleculeExpr::leaf(*a)),
                _ => Err(Error::NotMolecule("two maximal atoms in one globe".into())),
            }
        }
        2 => pair::decompose2(x),
        3 => triple::decompose3(x),
        4 => quad::decompose4(x),
        n => Err(Error::BadArity(n)),
    }
}
