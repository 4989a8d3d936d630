//! Signatures, factor atoms and product atoms, with the single-atom
//! boundary rules.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::subcomplex::Subcomplex;

/// Largest supported number of factors.
pub const MAX_ARITY: usize = 4;

/// A boundary sign. Ordered `Minus < Plus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    /// `(-1)^parity * self`.
    #[inline]
    pub fn pow(self, parity: u32) -> Sign {
        if parity.is_multiple_of(2) {
            self
        } else {
            -self
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    #[inline]
    fn neg(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Sign slot of a factor atom: a boundary sign, or the unsigned top cell of
/// a capped factor. Ordered `Minus < Plus < Top`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorSign {
    Minus,
    Plus,
    Top,
}

impl FactorSign {
    pub fn signed(self) -> Option<Sign> {
        match self {
            FactorSign::Minus => Some(Sign::Minus),
            FactorSign::Plus => Some(Sign::Plus),
            FactorSign::Top => None,
        }
    }

    pub fn is_top(self) -> bool {
        self == FactorSign::Top
    }

    /// Applies a parity flip; tops are unaffected.
    #[inline]
    pub fn pow(self, parity: u32) -> FactorSign {
        match self.signed() {
            Some(s) => s.pow(parity).into(),
            None => self,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            FactorSign::Minus => '-',
            FactorSign::Plus => '+',
            FactorSign::Top => '*',
        }
    }
}

impl From<Sign> for FactorSign {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Minus => FactorSign::Minus,
            Sign::Plus => FactorSign::Plus,
        }
    }
}

/// One factor of a product atom: `u[dim, sign]`, or the top cell `u_dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorAtom {
    pub dim: u32,
    pub sign: FactorSign,
}

impl FactorAtom {
    pub const fn new(dim: u32, sign: FactorSign) -> Self {
        FactorAtom { dim, sign }
    }

    pub fn signed(dim: u32, sign: Sign) -> Self {
        FactorAtom { dim, sign: sign.into() }
    }

    pub const fn top(dim: u32) -> Self {
        FactorAtom { dim, sign: FactorSign::Top }
    }

    /// Containment of globe atoms: every lower-dimensional atom is inside,
    /// and an atom of equal dimension only if the signs agree or `self` is
    /// the top cell.
    #[inline]
    pub fn contains(self, small: FactorAtom) -> bool {
        small.dim < self.dim
            || (small.dim == self.dim && (small.sign == self.sign || self.sign.is_top()))
    }

    /// Maximal atoms of the intersection of two globe atoms.
    pub fn intersect(self, other: FactorAtom) -> Vec<FactorAtom> {
        if self.contains(other) {
            vec![other]
        } else if other.contains(self) {
            vec![self]
        } else if self.dim == 0 {
            vec![]
        } else {
            vec![
                FactorAtom::signed(self.dim - 1, Sign::Minus),
                FactorAtom::signed(self.dim - 1, Sign::Plus),
            ]
        }
    }
}

impl fmt::Display for FactorAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.dim, self.sign.symbol())
    }
}

const PAD: FactorAtom = FactorAtom::new(0, FactorSign::Minus);

/// A product of factor atoms, one per factor of the ambient signature.
///
/// Unused slots are padded so that derived equality and hashing agree with
/// equality of the used factors.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductAtom {
    n: u8,
    f: [FactorAtom; MAX_ARITY],
}

impl ProductAtom {
    pub fn new(factors: &[FactorAtom]) -> Result<Self> {
        if factors.is_empty() || factors.len() > MAX_ARITY {
            return Err(Error::BadArity(factors.len()));
        }
        let mut f = [PAD; MAX_ARITY];
        f[..factors.len()].copy_from_slice(factors);
        Ok(ProductAtom { n: factors.len() as u8, f })
    }

    /// Builds a sign-only atom from `(dim, sign)` pairs.
    ///
    /// # Panics
    /// If the arity is outside `1..=4`.
    pub fn signed(parts: &[(u32, Sign)]) -> Self {
        let fs: Vec<FactorAtom> = parts.iter().map(|&(d, s)| FactorAtom::signed(d, s)).collect();
        ProductAtom::new(&fs).expect("arity in 1..=4")
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn factors(&self) -> &[FactorAtom] {
        &self.f[..self.n as usize]
    }

    #[inline]
    pub fn factor(&self, i: usize) -> FactorAtom {
        debug_assert!(i < self.arity());
        self.f[i]
    }

    #[inline]
    pub fn d(&self, i: usize) -> u32 {
        self.f[i].dim
    }

    /// Sign of factor `i`.
    ///
    /// # Panics
    /// If that factor is a top cell.
    #[inline]
    pub fn s(&self, i: usize) -> Sign {
        self.f[i].sign.signed().expect("signed factor")
    }

    pub fn dims(&self) -> Vec<u32> {
        self.factors().iter().map(|f| f.dim).collect()
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.factors().iter().map(|f| f.dim).sum()
    }

    pub fn has_top(&self) -> bool {
        self.factors().iter().any(|f| f.sign.is_top())
    }

    #[inline]
    pub fn with_factor(mut self, i: usize, fa: FactorAtom) -> Self {
        self.f[i] = fa;
        self
    }

    /// The atom with factor `i` removed.
    pub fn drop_factor(&self, i: usize) -> Result<Self> {
        let mut fs: Vec<FactorAtom> = self.factors().to_vec();
        fs.remove(i);
        ProductAtom::new(&fs)
    }

    /// The atom with `fa` appended as a new last factor.
    pub fn push_factor(&self, fa: FactorAtom) -> Result<Self> {
        let mut fs: Vec<FactorAtom> = self.factors().to_vec();
        fs.push(fa);
        ProductAtom::new(&fs)
    }

    /// Whether every dimension of `self` is at most the matching one of `other`.
    #[inline]
    pub fn dims_le(&self, other: &ProductAtom) -> bool {
        (0..self.arity()).all(|i| self.f[i].dim <= other.f[i].dim)
    }
}

impl Ord for ProductAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.arity().min(other.arity());
        for i in 0..n {
            match self.f[i].dim.cmp(&other.f[i].dim) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.n.cmp(&other.n) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in 0..n {
            match self.f[i].sign.cmp(&other.f[i].sign) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ProductAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProductAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, fa) in self.factors().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{fa}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ProductAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ProductAtom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let a = p.atom()?;
        p.end()?;
        Ok(a)
    }
}

/// Ambient product: number of factors, the twist parity of each factor and
/// optional dimension caps (finite globes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    arity: u8,
    twists: [u8; MAX_ARITY],
    caps: Option<[u32; MAX_ARITY]>,
}

impl Signature {
    pub fn new(arity: usize) -> Result<Self> {
        if !(1..=MAX_ARITY).contains(&arity) {
            return Err(Error::BadArity(arity));
        }
        Ok(Signature { arity: arity as u8, twists: [0; MAX_ARITY], caps: None })
    }

    /// # Panics
    /// If the arity is outside `1..=4`.
    pub fn plain(arity: usize) -> Self {
        Signature::new(arity).expect("arity in 1..=4")
    }

    pub fn capped(caps: &[u32]) -> Result<Self> {
        Signature::new(caps.len())?.with_caps(caps)
    }

    pub fn with_twists(mut self, twists: &[u32]) -> Result<Self> {
        if twists.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: twists.len() });
        }
        for (i, &t) in twists.iter().enumerate() {
            if t > 1 {
                return Err(Error::BadTwist);
            }
            self.twists[i] = t as u8;
        }
        Ok(self)
    }

    pub fn with_caps(mut self, caps: &[u32]) -> Result<Self> {
        if caps.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: caps.len() });
        }
        let mut c = [0; MAX_ARITY];
        c[..caps.len()].copy_from_slice(caps);
        self.caps = Some(c);
        Ok(self)
    }

    pub fn without_caps(mut self) -> Self {
        self.caps = None;
        self
    }

    pub fn untwisted(mut self) -> Self {
        self.twists = [0; MAX_ARITY];
        self
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    #[inline]
    pub fn twist(&self, f: usize) -> u32 {
        self.twists[f] as u32
    }

    pub fn twists(&self) -> Vec<u32> {
        (0..self.arity()).map(|f| self.twist(f)).collect()
    }

    pub fn is_twisted(&self) -> bool {
        self.twists.iter().any(|&t| t != 0)
    }

    pub fn caps(&self) -> Option<&[u32]> {
        self.caps.as_ref().map(|c| &c[..self.arity()])
    }

    pub fn cap(&self, f: usize) -> Option<u32> {
        self.caps.map(|c| c[f])
    }

    pub fn is_capped(&self) -> bool {
        self.caps.is_some()
    }

    /// Sign taken by factor `f` when it descends, given the sum of the
    /// result's dimensions in the earlier factors.
    #[inline]
    pub fn rule_sign(&self, f: usize, earlier: u32, gamma: Sign) -> Sign {
        gamma.pow(self.twist(f) + earlier)
    }

    /// The signature with factor `axis` removed and `level` added to the
    /// twists of every later factor.
    pub fn project(&self, axis: usize, level: u32) -> Result<Signature> {
        if axis >= self.arity() || self.arity() < 2 {
            return Err(Error::BadAxis { axis, arity: self.arity() });
        }
        let mut twists = Vec::new();
        let mut caps = Vec::new();
        for f in 0..self.arity() {
            if f == axis {
                continue;
            }
            let t = if f > axis { self.twist(f) + level } else { self.twist(f) };
            twists.push(t % 2);
            if let Some(c) = self.cap(f) {
                caps.push(c);
            }
        }
        let s = Signature::new(self.arity() - 1)?.with_twists(&twists)?;
        if self.is_capped() {
            s.with_caps(&caps)
        } else {
            Ok(s)
        }
    }

    /// Checks that `a` has the right arity and respects the caps.
    pub fn check_atom(&self, a: &ProductAtom) -> Result<()> {
        if a.arity() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: a.arity() });
        }
        for (f, fa) in a.factors().iter().enumerate() {
            match self.cap(f) {
                None if fa.sign.is_top() => {
                    return Err(Error::Cap(format!("{a}: top cell in an uncapped factor")))
                }
                None => {}
                Some(c) if fa.dim > c => {
                    return Err(Error::Cap(format!("{a}: factor {} exceeds cap {c}", f + 1)))
                }
                Some(c) if fa.dim == c && !fa.sign.is_top() => {
                    return Err(Error::Cap(format!("{a}: factor {} at its cap must be '*'", f + 1)))
                }
                Some(c) if fa.dim < c && fa.sign.is_top() => {
                    return Err(Error::Cap(format!("{a}: '*' below the cap of factor {}", f + 1)))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// Every atom of a capped signature, in canonical order.
    pub fn all_atoms(&self) -> Result<Vec<ProductAtom>> {
        let caps = self
            .caps()
            .ok_or_else(|| Error::Precondition("atom table needs caps".into()))?
            .to_vec();
        let per_factor: Vec<Vec<FactorAtom>> = caps
            .iter()
            .map(|&c| {
                let mut v = Vec::new();
                for d in 0..c {
                    v.push(FactorAtom::signed(d, Sign::Minus));
                    v.push(FactorAtom::signed(d, Sign::Plus));
                }
                v.push(FactorAtom::top(c));
                v
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(caps.len());
        fn rec(
            per: &[Vec<FactorAtom>],
            cur: &mut Vec<FactorAtom>,
            out: &mut Vec<ProductAtom>,
        ) {
            if cur.len() == per.len() {
                out.push(ProductAtom::new(cur).expect("arity checked"));
                return;
            }
            for &fa in &per[cur.len()] {
                cur.push(fa);
                rec(per, cur, out);
                cur.pop();
            }
        }
        rec(&per_factor, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "factors {}", self.arity())?;
        if self.is_twisted() {
            let t: Vec<String> = self.twists().iter().map(|t| t.to_string()).collect();
            write!(f, " twists {}", t.join(","))?;
        }
        if let Some(c) = self.caps() {
            let c: Vec<String> = c.iter().map(|t| t.to_string()).collect();
            write!(f, " caps {}", c.join(","))?;
        }
        Ok(())
    }
}

/// Dimension of an atom.
pub fn atom_dim(a: &ProductAtom) -> u32 {
    a.dim()
}

/// Factorwise containment of atoms.
pub fn atom_contains(big: &ProductAtom, small: &ProductAtom) -> bool {
    big.arity() == small.arity()
        && big.factors().iter().zip(small.factors()).all(|(b, s)| b.contains(*s))
}

/// `∂^γ a` by the product rule: each factor in turn takes its own boundary,
/// with the sign flipped by the twist and the dimensions before it.
pub fn atom_boundary(sig: &Signature, a: &ProductAtom, gamma: Sign) -> Result<Subcomplex> {
    sig.check_atom(a)?;
    if a.dim() == 0 {
        return Err(Error::NoBoundary);
    }
    let mut out = Vec::new();
    let mut earlier = 0;
    for f in 0..a.arity() {
        let fa = a.factor(f);
        if fa.dim > 0 {
            let s = sig.rule_sign(f, earlier, gamma);
            out.push(a.with_factor(f, FactorAtom::signed(fa.dim - 1, s)));
        }
        earlier += fa.dim;
    }
    Subcomplex::new(*sig, out)
}

/// Calls `visit` with every dimension vector bounded by `dims` that sums to `p`.
pub(crate) fn for_each_split(dims: &[u32], p: u32, visit: &mut dyn FnMut(&[u32])) {
    fn rec(dims: &[u32], left: u32, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        let f = cur.len();
        if f == dims.len() {
            if left == 0 {
                visit(cur);
            }
            return;
        }
        let rest: u32 = dims[f + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        let hi = dims[f].min(left);
        for l in lo..=hi {
            cur.push(l);
            rec(dims, left - l, cur, visit);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(dims.len());
    rec(dims, p, &mut cur, visit);
}

/// Maximal atoms of `d_p^γ a`.
pub fn atom_d(sig: &Signature, a: &ProductAtom, p: u32, gamma: Sign) -> Subcomplex {
    if a.dim() <= p {
        return Subcomplex::from_sorted_unchecked(*sig, vec![*a]);
    }
    let dims = a.dims();
    let mut out = Vec::new();
    for_each_split(&dims, p, &mut |l| {
        let mut b = *a;
        let mut earlier = 0;
        for (f, &lf) in l.iter().enumerate() {
            if lf < dims[f] {
                b = b.with_factor(f, FactorAtom::signed(lf, sig.rule_sign(f, earlier, gamma)));
            }
            earlier += lf;
        }
        out.push(b);
    });
    out.sort();
    Subcomplex::from_sorted_unchecked(*sig, out)
}

/// Maximal atoms of `a ∩ b`; empty when the atoms are disjoint.
pub fn atom_intersect(sig: &Signature, a: &ProductAtom, b: &ProductAtom) -> Subcomplex {
    let mut acc: Vec<Vec<FactorAtom>> = vec![vec![]];
    for f in 0..a.arity() {
        let opts = a.factor(f).intersect(b.factor(f));
        if opts.is_empty() {
            return Subcomplex::empty(*sig);
        }
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for o in &opts {
                let mut p = prefix.clone();
                p.push(*o);
                next.push(p);
            }
        }
        acc = next;
    }
    let atoms = acc.iter().map(|fs| ProductAtom::new(fs).expect("arity")).collect();
    Subcomplex::normalize_atoms(*sig, atoms)
}

/// Parser for the atom and subcomplex literal grammars.
pub(crate) struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    /// The next non-blank byte after the one at the cursor.
    pub(crate) fn peek_second(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos + 1..)?.iter().copied().find(|c| !c.is_ascii_whitespace())
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    pub(crate) fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a dimension");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        txt.parse().map_err(|_| Error::Syntax { pos: start, msg: "dimension too large".into() })
    }

    fn factor(&mut self) -> Result<FactorAtom> {
        let dim = self.nat()?;
        let sign = match self.peek() {
            Some(b'+') => FactorSign::Plus,
            Some(b'-') => FactorSign::Minus,
            Some(b'*') => FactorSign::Top,
            _ => return self.err("expected '+', '-' or '*'"),
        };
        self.pos += 1;
        Ok(FactorAtom::new(dim, sign))
    }

    pub(crate) fn atom(&mut self) -> Result<ProductAtom> {
        let start = self.pos;
        self.expect(b'(')?;
        let mut fs = vec![self.factor()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            fs.push(self.factor()?);
        }
        self.expect(b')')?;
        ProductAtom::new(&fs)
            .map_err(|_| Error::Syntax { pos: start, msg: format!("{} factors", fs.len()) })
    }

    pub(crate) fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus as M, Plus as P};

    fn at(s: &str) -> ProductAtom {
        s.parse().unwrap()
    }

    fn sub(sig: Signature, s: &str) -> Subcomplex {
        Subcomplex::parse(sig, s).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(atom_dim(&at("(8+,2+,1-)")), 11);
        assert_eq!(atom_dim(&at("(0-,0-,0-)")), 0);
        assert_eq!(atom_dim(&at("(1*,1*,0-)")), 2);
    }

    #[test]
    fn containment() {
        assert!(atom_contains(&at("(1*,1*,0-)"), &at("(0-,1*,0-)")));
        assert!(!atom_contains(&at("(1+,1+)"), &at("(1-,1+)")));
        let a = at("(3-,0+,2*)");
        assert!(atom_contains(&a, &a));
        assert!(atom_contains(&at("(2-)"), &at("(1+)")));
        assert!(!atom_contains(&at("(1-)"), &at("(2-)")));
    }

    #[test]
    fn boundaries() {
        let cube = Signature::capped(&[1, 1, 1]).unwrap();
        assert_eq!(
            atom_boundary(&cube, &at("(1*,1*,1*)"), M).unwrap(),
            sub(cube, "(0-,1*,1*);(1*,0+,1*);(1*,1*,0-)")
        );
        let g21 = Signature::capped(&[2, 1]).unwrap();
        assert_eq!(atom_boundary(&g21, &at("(2*,1*)"), M).unwrap(), sub(g21, "(1-,1*);(2*,0-)"));
        let w1 = Signature::plain(1).with_twists(&[1]).unwrap();
        assert_eq!(atom_boundary(&w1, &at("(2+)"), M).unwrap(), sub(w1, "(1+)"));
        let s3 = Signature::plain(3);
        assert_eq!(atom_boundary(&s3, &at("(0-,0-,0+)"), M), Err(Error::NoBoundary));
    }

    #[test]
    fn atom_d_examples() {
        let s2 = Signature::plain(2);
        assert_eq!(atom_d(&s2, &at("(3+,2-)"), 7, M), sub(s2, "(3+,2-)"));
        let s3 = Signature::plain(3);
        assert_eq!(
            atom_d(&s3, &at("(1+,1-,1+)"), 1, M),
            sub(s3, "(1+,0+,0+);(0-,1-,0+);(0-,0-,1+)")
        );
        assert_eq!(atom_d(&s2, &at("(4+,3-)"), 0, M), sub(s2, "(0-,0-)"));
        assert_eq!(atom_d(&s2, &at("(4+,3-)"), 0, P), sub(s2, "(0+,0+)"));
    }

    #[test]
    fn intersections() {
        let cube = Signature::capped(&[1, 1, 1]).unwrap();
        assert_eq!(
            atom_intersect(&cube, &at("(1*,1*,0-)"), &at("(0-,1*,1*)")),
            sub(cube, "(0-,1*,0-)")
        );
        assert_eq!(
            atom_intersect(&cube, &at("(1*,0-,0-)"), &at("(0-,1*,0-)")),
            sub(cube, "(0-,0-,0-)")
        );
        let s2 = Signature::plain(2);
        assert_eq!(atom_intersect(&s2, &at("(1+,1-)"), &at("(1-,1-)")), sub(s2, "(0-,1-);(0+,1-)"));
        assert!(atom_intersect(&s2, &at("(0+,1-)"), &at("(0-,1-)")).is_empty());
    }

    #[test]
    fn parsing() {
        assert_eq!(at(" ( 8 + , 2+,1- ) ").to_string(), "(8+,2+,1-)");
        assert!(matches!("(1+,".parse::<ProductAtom>(), Err(Error::Syntax { pos: 4, .. })));
        assert!("(1/)".parse::<ProductAtom>().is_err());
        assert!("(1+,1+,1+,1+,1+)".parse::<ProductAtom>().is_err());
        let sig = Signature::plain(2);
        assert!(sig.check_atom(&at("(1*,0-)")).is_err());
        let capped = Signature::capped(&[1, 1]).unwrap();
        assert!(capped.check_atom(&at("(1*,0-)")).is_ok());
        assert!(capped.check_atom(&at("(1+,0-)")).is_err());
        assert!(capped.check_atom(&at("(0*,0-)")).is_err());
    }

    #[test]
    fn canonical_order() {
        let mut v = [at("(1*,0-)"), at("(0+,1-)"), at("(1+,0-)"), at("(1-,0-)"), at("(0+,0+)")];
        v.sort();
        let s: Vec<String> = v.iter().map(|a| a.to_string()).collect();
        assert_eq!(s, ["(0+,0+)", "(0+,1-)", "(1-,0-)", "(1+,0-)", "(1*,0-)"]);
    }

    #[test]
    fn atom_table_sizes() {
        assert_eq!(Signature::capped(&[1, 1, 1]).unwrap().all_atoms().unwrap().len(), 27);
        assert_eq!(Signature::capped(&[2, 1]).unwrap().all_atoms().unwrap().len(), 15);
        assert_eq!(Signature::capped(&[0]).unwrap().all_atoms().unwrap().len(), 1);
    }

    #[test]
    fn sign_pow() {
        assert_eq!(P.pow(3), M);
        assert_eq!(M.pow(2), M);
        assert_eq!(FactorSign::Top.pow(1), FactorSign::Top);
    }
}
