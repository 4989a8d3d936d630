//! Brute-force ground truth on products of finite globes.
//!
//! A subcomplex is a down-closed set of atoms, stored as a bitset over the
//! atom table of a capped signature. Boundaries are computed from the
//! boundary table of single atoms and molecules are generated by closing
//! the atoms under composition, so nothing here relies on the molecule
//! formulas of the other modules.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::atom::{atom_boundary, FactorAtom, FactorSign, ProductAtom, Sign, Signature};
use crate::error::{Error, Result};
use crate::subcomplex::Subcomplex;

/// A down-closed set of atoms of a [`CellComplex`].
pub type AtomSet = u128;

/// Largest atom table the bitsets can hold.
pub const MAX_ATOMS: usize = 128;

/// Default cap on the number of pending sets in the composition closure.
pub const DEFAULT_BUDGET: usize = 1 << 15;

/// All atoms of a capped product together with containment and boundaries.
#[derive(Clone, Debug)]
pub struct CellComplex {
    sig: Signature,
    atoms: Vec<ProductAtom>,
    index: HashMap<ProductAtom, usize>,
    closure: Vec<AtomSet>,
    // closures of the two boundaries, [minus, plus]; empty for vertices
    bnd: Vec<[AtomSet; 2]>,
    // atoms of each dimension
    by_dim: Vec<AtomSet>,
}

#[inline]
fn bit(i: usize) -> AtomSet {
    1u128 << i
}

pub(crate) fn bits(mut s: AtomSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

#[inline]
fn sign_slot(s: Sign) -> usize {
    match s {
        Sign::Minus => 0,
        Sign::Plus => 1,
    }
}

impl CellComplex {
    pub fn build(sig: &Signature) -> Result<Self> {
        let caps = sig
            .caps()
            .ok_or_else(|| Error::Precondition("the cell complex needs a capped signature".into()))?;
        let count: usize = caps.iter().map(|&c| 2 * c as usize + 1).product();
        if count > MAX_ATOMS {
            return Err(Error::BoundExceeded(format!(
                "{count} atoms; at most {MAX_ATOMS} are supported"
            )));
        }
        let atoms = sig.all_atoms()?;
        let index: HashMap<ProductAtom, usize> =
            atoms.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let dims: Vec<u32> = atoms.iter().map(|a| a.dim()).collect();
        let top = dims.iter().copied().max().unwrap_or(0) as usize;
        let mut by_dim = vec![0; top + 1];
        for (i, &d) in dims.iter().enumerate() {
            by_dim[d as usize] |= bit(i);
        }
        let mut order: Vec<usize> = (0..atoms.len()).collect();
        order.sort_by_key(|&i| dims[i]);
        let mut closure = vec![0; atoms.len()];
        let mut bnd = vec![[0; 2]; atoms.len()];
        for i in order {
            let a = atoms[i];
            let mut c = bit(i);
            if a.dim() > 0 {
                for g in Sign::BOTH {
                    let mut s = 0;
                    for b in atom_boundary(sig, &a, g)?.atoms() {
                        s |= closure[index[b]];
                    }
                    bnd[i][sign_slot(g)] = s;
                    c |= s;
                }
            }
            closure[i] = c;
        }
        Ok(CellComplex { sig: *sig, atoms, index, closure, bnd, by_dim })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn atoms(&self) -> &[ProductAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, a: &ProductAtom) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Down-closure of a single atom.
    pub fn atom_closure(&self, i: usize) -> AtomSet {
        self.closure[i]
    }

    /// The down-closed set of a subcomplex of this signature.
    pub fn closure_of(&self, x: &Subcomplex) -> Result<AtomSet> {
        if x.signature() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut s = 0;
        for a in x.atoms() {
            s |= self.closure[self.index[a]];
        }
        Ok(s)
    }

    /// Maximal-atom form of a down-closed set.
    pub fn to_subcomplex(&self, s: AtomSet) -> Subcomplex {
        let mut covered = 0;
        for i in bits(s) {
            covered |= self.closure[i] & !bit(i);
        }
        let atoms = bits(s & !covered).map(|i| self.atoms[i]).collect();
        Subcomplex::normalize_atoms(self.sig, atoms)
    }

    /// Largest atom dimension in the set; 0 when empty.
    pub fn set_dim(&self, s: AtomSet) -> u32 {
        (0..self.by_dim.len()).rev().find(|&d| self.by_dim[d] & s != 0).unwrap_or(0) as u32
    }

    /// Whether `s` is closed under taking faces.
    pub fn is_down_closed(&self, s: AtomSet) -> bool {
        bits(s).all(|i| self.closure[i] & !s == 0)
    }

    /// `d_n^γ` of a down-closed set: the atoms of dimension at most `n`,
    /// minus the part of every `(n+1)`-atom lying outside its `γ` boundary.
    pub fn d(&self, s: AtomSet, n: u32, gamma: Sign) -> AtomSet {
        let n = n as usize;
        if n + 1 >= self.by_dim.len() {
            return s;
        }
        let low: AtomSet = self.by_dim[..=n].iter().fold(0, |acc, m| acc | m);
        let mut out = s & low;
        for b in bits(s & self.by_dim[n + 1]) {
            out &= !(self.closure[b] & !self.bnd[b][sign_slot(gamma)]);
        }
        out
    }

    /// `d_n^γ` on maximal-atom forms.
    pub fn d_sub(&self, x: &Subcomplex, n: u32, gamma: Sign) -> Result<Subcomplex> {
        if x.is_empty() {
            return Err(Error::Empty);
        }
        Ok(self.to_subcomplex(self.d(self.closure_of(x)?, n, gamma)))
    }

    /// Whether `x #_n y` is defined for down-closed sets.
    pub fn composable(&self, x: AtomSet, n: u32, y: AtomSet) -> bool {
        let dp = self.d(x, n, Sign::Plus);
        dp == x & y && dp == self.d(y, n, Sign::Minus)
    }
}

/// Builds the complex of the product of finite globes of dimensions `caps`.
pub fn build_complex(caps: &[u32]) -> Result<CellComplex> {
    CellComplex::build(&Signature::capped(caps)?)
}

/// `d_n^α` of a subcomplex computed on its cell complex.
pub fn oracle_d(cx: &CellComplex, x: AtomSet, n: u32, alpha: Sign) -> AtomSet {
    cx.d(x, n, alpha)
}

/// The molecules of a cell complex.
#[derive(Clone, Debug, Default)]
pub struct MoleculeSet {
    sets: Vec<AtomSet>,
    lookup: HashSet<AtomSet>,
}

impl MoleculeSet {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Sets in discovery order.
    pub fn sets(&self) -> &[AtomSet] {
        &self.sets
    }

    pub fn contains(&self, s: AtomSet) -> bool {
        self.lookup.contains(&s)
    }

    /// Maximal-atom forms sorted by their serialization.
    pub fn to_subcomplexes(&self, cx: &CellComplex) -> Vec<Subcomplex> {
        let mut v: Vec<Subcomplex> = self.sets.iter().map(|&s| cx.to_subcomplex(s)).collect();
        v.sort_by_cached_key(|x| x.to_string());
        v
    }

    fn insert(&mut self, s: AtomSet) -> bool {
        if self.lookup.insert(s) {
            self.sets.push(s);
            true
        } else {
            false
        }
    }
}

/// Closes the atoms under composition. Fails when more than `budget` sets
/// are waiting to be expanded at any time.
pub fn oracle_enumerate_molecules(cx: &CellComplex, budget: usize) -> Result<MoleculeSet> {
    let mut mols = MoleculeSet::default();
    let mut queue = VecDeque::new();
    // (n, d_n^- y) -> y and (n, d_n^+ y) -> y, for n below dim y
    let mut by_source: HashMap<(u32, AtomSet), Vec<AtomSet>> = HashMap::new();
    let mut by_target: HashMap<(u32, AtomSet), Vec<AtomSet>> = HashMap::new();
    let register = |s: AtomSet,
                        mols: &mut MoleculeSet,
                        queue: &mut VecDeque<AtomSet>,
                        by_source: &mut HashMap<(u32, AtomSet), Vec<AtomSet>>,
                        by_target: &mut HashMap<(u32, AtomSet), Vec<AtomSet>>|
     -> Result<()> {
        if !mols.insert(s) {
            return Ok(());
        }
        for n in 0..cx.set_dim(s) {
            by_source.entry((n, cx.d(s, n, Sign::Minus))).or_default().push(s);
            by_target.entry((n, cx.d(s, n, Sign::Plus))).or_default().push(s);
        }
        queue.push_back(s);
        if queue.len() > budget {
            return Err(Error::BoundExceeded(format!(
                "more than {budget} sets pending in the composition closure"
            )));
        }
        Ok(())
    };
    for i in 0..cx.len() {
        register(cx.closure[i], &mut mols, &mut queue, &mut by_source, &mut by_target)?;
    }
    while let Some(x) = queue.pop_front() {
        let mut found = Vec::new();
        for n in 0..cx.set_dim(x) {
            let dp = cx.d(x, n, Sign::Plus);
            if let Some(ys) = by_source.get(&(n, dp)) {
                found.extend(ys.iter().filter(|&&y| x & y == dp).map(|&y| x | y));
            }
            let dm = cx.d(x, n, Sign::Minus);
            if let Some(ys) = by_target.get(&(n, dm)) {
                found.extend(ys.iter().filter(|&&y| x & y == dm).map(|&y| x | y));
            }
        }
        for s in found {
            register(s, &mut mols, &mut queue, &mut by_source, &mut by_target)?;
        }
    }
    Ok(mols)
}

/// A cell complex with its molecule set computed on first use.
pub struct Oracle {
    cx: CellComplex,
    budget: usize,
    mols: std::sync::OnceLock<std::result::Result<MoleculeSet, Error>>,
}

impl Oracle {
    pub fn new(sig: &Signature) -> Result<Self> {
        Oracle::with_budget(sig, DEFAULT_BUDGET)
    }

    pub fn with_budget(sig: &Signature, budget: usize) -> Result<Self> {
        Ok(Oracle { cx: CellComplex::build(sig)?, budget, mols: std::sync::OnceLock::new() })
    }

    pub fn complex(&self) -> &CellComplex {
        &self.cx
    }

    pub fn molecules(&self) -> Result<&MoleculeSet> {
        self.mols
            .get_or_init(|| oracle_enumerate_molecules(&self.cx, self.budget))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_molecule(&self, x: &Subcomplex) -> Result<bool> {
        let s = self.cx.closure_of(x)?;
        Ok(self.molecules()?.contains(s))
    }
}

/// Membership in the composition closure of the complex of `x`'s signature.
pub fn oracle_is_molecule(x: &Subcomplex) -> Result<bool> {
    Oracle::new(x.signature())?.is_molecule(x)
}

/// Counterexamples found by [`check_axioms`], with the number of instances
/// examined per axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: [usize; 8],
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, axiom: usize, msg: impl fmt::Display) {
        if self.failures.len() < 20 {
            self.failures.push(format!("axiom {axiom}: {msg}"));
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ax in 2..=7 {
            writeln!(f, "axiom {ax}: {} instances", self.checked[ax])?;
        }
        if self.passed() {
            write!(f, "all axioms hold")
        } else {
            write!(f, "{} failures:", self.failures.len())?;
            for m in &self.failures {
                write!(f, "\n  {m}")?;
            }
            Ok(())
        }
    }
}

/// Checks the partial ω-category axioms on a set of molecules, with
/// composites defined exactly when the composability test holds. Every
/// composite and boundary must land back in the set.
pub fn check_axioms(cx: &CellComplex, mols: &MoleculeSet) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let sets = mols.sets();
    let top = sets.iter().map(|&s| cx.set_dim(s)).max().unwrap_or(0);
    let show = |s: AtomSet| cx.to_subcomplex(s).to_string();
    let comp = |x: AtomSet, n: u32, y: AtomSet| -> Option<AtomSet> {
        if cx.composable(x, n, y) {
            Some(x | y)
        } else {
            None
        }
    };

    // composable pairs per level, with their composites
    let mut pairs: Vec<Vec<(AtomSet, AtomSet, AtomSet)>> = vec![Vec::new(); top as usize + 1];
    for n in 0..=top {
        let mut by_source: HashMap<AtomSet, Vec<AtomSet>> = HashMap::new();
        for &y in sets {
            by_source.entry(cx.d(y, n, Sign::Minus)).or_default().push(y);
        }
        for &x in sets {
            if let Some(ys) = by_source.get(&cx.d(x, n, Sign::Plus)) {
                for &y in ys {
                    rep.checked[1] += 1;
                    // matching boundaries alone need not make a composite
                    if let Some(z) = comp(x, n, y) {
                        pairs[n as usize].push((x, y, z));
                    }
                }
            }
        }
    }

    for &x in sets {
        // axiom 2 and closure under boundaries
        for n in 0..=top + 1 {
            for a in Sign::BOTH {
                let dx = cx.d(x, n, a);
                if !mols.contains(dx) {
                    rep.fail(2, format!("d{n}{a} of {} is not a molecule", show(x)));
                }
                for m in 0..=top + 1 {
                    for b in Sign::BOTH {
                        rep.checked[2] += 1;
                        let want = if m < n { cx.d(x, m, b) } else { dx };
                        if cx.d(dx, m, b) != want {
                            rep.fail(2, format!("d{m}{b} d{n}{a} of {}", show(x)));
                        }
                    }
                }
            }
            // axiom 3
            rep.checked[3] += 1;
            let (lo, hi) = (cx.d(x, n, Sign::Minus), cx.d(x, n, Sign::Plus));
            if comp(lo, n, x) != Some(x) || comp(x, n, hi) != Some(x) {
                rep.fail(3, format!("units at level {n} of {}", show(x)));
            }
        }
        // axiom 7
        rep.checked[7] += 1;
        let p = cx.set_dim(x);
        for n in 0..=top + 1 {
            let fixed = Sign::BOTH.iter().all(|&a| cx.d(x, n, a) == x);
            if fixed != (n >= p) {
                rep.fail(7, format!("dimension of {} at level {n}", show(x)));
            }
        }
    }

    for n in 0..=top {
        for &(x, y, z) in &pairs[n as usize] {
            if !mols.contains(z) {
                rep.fail(4, format!("{} #{n} {} is not a molecule", show(x), show(y)));
            }
            // axiom 1 is built into the composability test; axiom 4 here
            for m in 0..=top + 1 {
                for a in Sign::BOTH {
                    rep.checked[4] += 1;
                    let dz = cx.d(z, m, a);
                    let ok = match m.cmp(&n) {
                        std::cmp::Ordering::Less => dz == cx.d(x, m, a) && dz == cx.d(y, m, a),
                        std::cmp::Ordering::Equal => {
                            dz == if a == Sign::Minus { cx.d(x, n, a) } else { cx.d(y, n, a) }
                        }
                        std::cmp::Ordering::Greater => {
                            comp(cx.d(x, m, a), n, cx.d(y, m, a)) == Some(dz)
                        }
                    };
                    if !ok {
                        rep.fail(4, format!("d{m}{a} of {} #{n} {}", show(x), show(y)));
                    }
                }
            }
        }

        // axiom 5, starting from whichever bracketing is defined
        let mut by_left: HashMap<AtomSet, Vec<(AtomSet, AtomSet)>> = HashMap::new();
        let mut by_right: HashMap<AtomSet, Vec<(AtomSet, AtomSet)>> = HashMap::new();
        for &(x, y, z) in &pairs[n as usize] {
            by_left.entry(x).or_default().push((y, z));
            by_right.entry(y).or_default().push((x, z));
        }
        for &(x, y, xy) in &pairs[n as usize] {
            for &(w, left) in by_left.get(&xy).map(Vec::as_slice).unwrap_or(&[]) {
                rep.checked[5] += 1;
                if comp(y, n, w).and_then(|yw| comp(x, n, yw)) != Some(left) {
                    rep.fail(5, format!("({} #{n} {}) #{n} {}", show(x), show(y), show(w)));
                }
            }
        }
        for &(y, w, yw) in &pairs[n as usize] {
            for &(x, right) in by_right.get(&yw).map(Vec::as_slice).unwrap_or(&[]) {
                rep.checked[5] += 1;
                if comp(x, n, y).and_then(|xy| comp(xy, n, w)) != Some(right) {
                    rep.fail(5, format!("{} #{n} ({} #{n} {})", show(x), show(y), show(w)));
                }
            }
        }
    }

    // axiom 6: (x #n y) #m (x' #n y') = (x #m x') #n (y #m y') for m < n
    for n in 1..=top {
        for m in 0..n {
            for &(x, y, xy) in &pairs[n as usize] {
                for &(x2, y2, xy2) in &pairs[n as usize] {
                    if let Some(left) = comp(xy, m, xy2) {
                        rep.checked[6] += 1;
                        let right = match (comp(x, m, x2), comp(y, m, y2)) {
                            (Some(a), Some(b)) => comp(a, n, b),
                            _ => None,
                        };
                        if right != Some(left) {
                            rep.fail(
                                6,
                                format!(
                                    "({} #{n} {}) #{m} ({} #{n} {})",
                                    show(x),
                                    show(y),
                                    show(x2),
                                    show(y2)
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    rep
}

/// Image of a subcomplex of an uncapped product in the product of finite
/// globes of dimensions `caps`: factors at their cap lose their sign.
pub fn cap_quotient(x: &Subcomplex, caps: &[u32]) -> Result<Subcomplex> {
    let sig = x.signature();
    if sig.is_capped() {
        return Err(Error::Precondition("cap_quotient takes an uncapped subcomplex".into()));
    }
    let target = sig.with_caps(caps)?;
    let mut out = Vec::with_capacity(x.len());
    for a in x.atoms() {
        let mut b = *a;
        for (f, &c) in caps.iter().enumerate() {
            let fa = a.factor(f);
            if fa.dim > c {
                return Err(Error::Cap(format!("{a}: factor {} exceeds cap {c}", f + 1)));
            }
            if fa.dim == c {
                b = b.with_factor(f, FactorAtom::top(c));
            }
        }
        out.push(b);
    }
    Subcomplex::new(target, out)
}

/// Every way of giving the top cells of `x` a sign, as subcomplexes of the
/// uncapped product.
pub fn signed_lifts(x: &Subcomplex) -> Vec<Subcomplex> {
    let sig = x.signature().without_caps();
    let slots: Vec<(usize, usize)> = x
        .atoms()
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            (0..a.arity()).filter(move |&f| a.factor(f).sign.is_top()).map(move |f| (i, f))
        })
        .collect();
    let mut out = Vec::with_capacity(1 << slots.len());
    for mask in 0..(1u64 << slots.len()) {
        let mut atoms = x.atoms().to_vec();
        for (k, &(i, f)) in slots.iter().enumerate() {
            let s = if mask >> k & 1 == 1 { FactorSign::Plus } else { FactorSign::Minus };
            atoms[i] = atoms[i].with_factor(f, FactorAtom::new(atoms[i].d(f), s));
        }
        out.push(Subcomplex::normalize_atoms(sig, atoms));
    }
    out
}
