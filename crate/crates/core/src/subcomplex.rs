//! Finite subcomplexes stored as canonical antichains of maximal atoms.

use std::collections::BTreeSet;
use std::fmt;

use crate::atom::{
    atom_contains, atom_intersect, for_each_split, FactorAtom, Parser, ProductAtom, Sign,
    Signature,
};
use crate::error::{Error, Result};

/// A union of atoms, represented by its maximal atoms in canonical order.
///
/// The empty subcomplex is representable (projections can produce it) but
/// the molecule operations reject it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subcomplex {
    sig: Signature,
    atoms: Vec<ProductAtom>,
}

impl Subcomplex {
    /// Validates every atom against `sig` and normalizes.
    pub fn new(sig: Signature, atoms: Vec<ProductAtom>) -> Result<Self> {
        for a in &atoms {
            sig.check_atom(a)?;
        }
        Ok(Subcomplex::normalize_atoms(sig, atoms))
    }

    pub fn empty(sig: Signature) -> Self {
        Subcomplex { sig, atoms: Vec::new() }
    }

    pub fn atom(sig: Signature, a: ProductAtom) -> Result<Self> {
        Subcomplex::new(sig, vec![a])
    }

    /// Drops atoms contained in others and sorts; no validation.
    pub(crate) fn normalize_atoms(sig: Signature, mut atoms: Vec<ProductAtom>) -> Self {
        atoms.sort_unstable();
        atoms.dedup();
        let keep: Vec<bool> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| !atoms.iter().enumerate().any(|(j, b)| i != j && atom_contains(b, a)))
            .collect();
        let atoms = atoms.into_iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| a).collect();
        Subcomplex { sig, atoms }
    }

    pub(crate) fn from_sorted_unchecked(sig: Signature, atoms: Vec<ProductAtom>) -> Self {
        debug_assert!(atoms.windows(2).all(|w| w[0] < w[1]));
        Subcomplex { sig, atoms }
    }

    /// Parses `atom (';' atom)*`, or `{}` for the empty subcomplex.
    pub fn parse(sig: Signature, text: &str) -> Result<Self> {
        let mut p = Parser::new(text);
        if p.peek() == Some(b'{') {
            p.expect(b'{')?;
            p.expect(b'}')?;
            p.end()?;
            return Ok(Subcomplex::empty(sig));
        }
        let mut atoms = Vec::new();
        loop {
            let pos = p.pos();
            let a = p.atom()?;
            sig.check_atom(&a).map_err(|e| match e {
                Error::ArityMismatch { .. } => Error::Syntax { pos, msg: e.to_string() },
                other => other,
            })?;
            atoms.push(a);
            if p.peek() == Some(b';') {
                p.expect(b';')?;
            } else {
                break;
            }
        }
        p.end()?;
        Ok(Subcomplex::normalize_atoms(sig, atoms))
    }

    #[inline]
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    #[inline]
    pub fn atoms(&self) -> &[ProductAtom] {
        &self.atoms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Largest dimension of a maximal atom; 0 for the empty subcomplex.
    pub fn dim(&self) -> u32 {
        self.atoms.iter().map(|a| a.dim()).max().unwrap_or(0)
    }

    pub fn has_top(&self) -> bool {
        self.atoms.iter().any(|a| a.has_top())
    }

    fn same_sig(&self, other: &Subcomplex) -> Result<()> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn union(&self, other: &Subcomplex) -> Result<Subcomplex> {
        self.same_sig(other)?;
        let mut v = self.atoms.clone();
        v.extend_from_slice(&other.atoms);
        Ok(Subcomplex::normalize_atoms(self.sig, v))
    }

    pub fn intersect(&self, other: &Subcomplex) -> Result<Subcomplex> {
        self.same_sig(other)?;
        let mut v = Vec::new();
        for a in &self.atoms {
            for b in &other.atoms {
                v.extend_from_slice(atom_intersect(&self.sig, a, b).atoms());
            }
        }
        Ok(Subcomplex::normalize_atoms(self.sig, v))
    }

    pub fn contains_atom(&self, a: &ProductAtom) -> bool {
        self.atoms.iter().any(|b| atom_contains(b, a))
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains(&self, other: &Subcomplex) -> bool {
        other.atoms.iter().all(|a| self.contains_atom(a))
    }

    /// A pair of distinct maximal atoms whose dimensions are componentwise
    /// comparable, if there is one.
    pub fn condition1_violation(&self) -> Result<Option<(ProductAtom, ProductAtom)>> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        for (i, a) in self.atoms.iter().enumerate() {
            for b in &self.atoms[i + 1..] {
                if a.dims_le(b) {
                    return Ok(Some((*a, *b)));
                }
                if b.dims_le(a) {
                    return Ok(Some((*b, *a)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_condition1(&self) -> Result<bool> {
        Ok(self.condition1_violation()?.is_none())
    }

    /// The same cells under signature `target`, which may differ from the
    /// current one only in its twists. Each factor's signs flip by the
    /// change of twist parity, which is an isomorphism of products.
    pub fn retwist(&self, target: Signature) -> Result<Subcomplex> {
        if target.arity() != self.sig.arity() || target.caps() != self.sig.caps() {
            return Err(Error::SignatureMismatch);
        }
        let atoms = self.atoms.iter().map(|a| retwist_atom(a, &self.sig, &target)).collect();
        Ok(Subcomplex::normalize_atoms(target, atoms))
    }

    pub fn untwisted(&self) -> Subcomplex {
        self.retwist(self.sig.untwisted()).expect("same shape")
    }

    /// Image under the projection that drops factor `axis` from the atoms
    /// whose `axis` dimension is at least `level`.
    pub fn project(&self, axis: usize, level: u32) -> Result<Subcomplex> {
        let sig = self.sig.project(axis, level)?;
        let mut v = Vec::new();
        for a in &self.atoms {
            if a.d(axis) >= level {
                v.push(a.drop_factor(axis)?);
            }
        }
        Ok(Subcomplex::normalize_atoms(sig, v))
    }

    /// Appends a factor atom to every maximal atom (product with an atom of
    /// a one-factor signature).
    pub fn extend(&self, fa: FactorAtom, twist: u32) -> Result<Subcomplex> {
        if self.sig.is_capped() {
            return Err(Error::Precondition("extend works on uncapped signatures".into()));
        }
        let mut twists = self.sig.twists();
        twists.push(twist);
        let sig = Signature::new(self.sig.arity() + 1)?.with_twists(&twists)?;
        let atoms = self.atoms.iter().map(|a| a.push_factor(fa)).collect::<Result<Vec<_>>>()?;
        Subcomplex::new(sig, atoms)
    }

    /// `d_p^γ` computed from the dominating maximal atoms: atoms of
    /// dimension below `p` stay when maximal, and a `p`-dimensional atom
    /// appears under every maximal atom dominating its dimensions. A factor
    /// takes the descent sign when some dominating atom is strictly larger
    /// there, otherwise the common sign of the dominating atoms.
    ///
    /// This is the boundary of a molecule; the callers check molecularity.
    pub fn d_by_witness(&self, p: u32, gamma: Sign) -> Result<Subcomplex> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        let n = self.sig.arity();
        let mut out: Vec<ProductAtom> = self.atoms.iter().filter(|a| a.dim() < p).copied().collect();
        let mut shapes: BTreeSet<Vec<u32>> = BTreeSet::new();
        for a in self.atoms.iter().filter(|a| a.dim() >= p) {
            for_each_split(&a.dims(), p, &mut |l| {
                shapes.insert(l.to_vec());
            });
        }
        for l in shapes {
            let witnesses: Vec<&ProductAtom> =
                self.atoms.iter().filter(|a| (0..n).all(|f| a.d(f) >= l[f])).collect();
            let mut fs = Vec::with_capacity(n);
            let mut earlier = 0;
            for (f, &lf) in l.iter().enumerate() {
                let sign = if witnesses.iter().any(|w| w.d(f) > lf) {
                    self.sig.rule_sign(f, earlier, gamma).into()
                } else {
                    let s = witnesses[0].factor(f).sign;
                    if witnesses.iter().any(|w| w.factor(f).sign != s) {
                        return Err(Error::IllDefinedSign(format!(
                            "factor {} of a {p}-cell in d{p}{gamma} of {self}",
                            f + 1
                        )));
                    }
                    s
                };
                fs.push(FactorAtom::new(lf, sign));
                earlier += lf;
            }
            out.push(ProductAtom::new(&fs)?);
        }
        Ok(Subcomplex::normalize_atoms(self.sig, out))
    }
}

pub(crate) fn retwist_atom(a: &ProductAtom, from: &Signature, to: &Signature) -> ProductAtom {
    let mut b = *a;
    for f in 0..a.arity() {
        let flip = from.twist(f) + to.twist(f);
        let fa = a.factor(f);
        b = b.with_factor(f, FactorAtom::new(fa.dim, fa.sign.pow(flip)));
    }
    b
}

/// Normalizes a list of atoms under `sig`.
pub fn normalize(sig: Signature, atoms: Vec<ProductAtom>) -> Result<Subcomplex> {
    Subcomplex::new(sig, atoms)
}

pub fn sub_union(x: &Subcomplex, y: &Subcomplex) -> Result<Subcomplex> {
    x.union(y)
}

pub fn sub_intersect(x: &Subcomplex, y: &Subcomplex) -> Result<Subcomplex> {
    x.intersect(y)
}

pub fn sub_contains_atom(x: &Subcomplex, a: &ProductAtom) -> bool {
    x.contains_atom(a)
}

pub fn is_condition1(x: &Subcomplex) -> Result<bool> {
    x.is_condition1()
}

impl fmt::Display for Subcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.sig, self)
    }
}
