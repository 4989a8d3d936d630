//! Level-by-level description of three-factor molecules, and exhaustive
//! enumeration built on it.
//!
//! Atoms are sorted into levels by the dimension of their middle factor.
//! Working down from the top level, each level's atoms are chosen from
//! integer intervals fixed by the lowest atoms above it, and their signs
//! from a small table. [`validate_maximal_atom_set`] tests the resulting
//! clauses on a given set of atoms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::atom::{ProductAtom, Sign, Signature};
use crate::error::{Error, Result};
use crate::molecule::Verdict;
use crate::oracle::cap_quotient;
use crate::subcomplex::{retwist_atom, Subcomplex};

/// A clause of the level description that fails at some level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelViolation {
    /// Clause name: `le1`, `le2`, `le3` (ordering of lowest atoms), `le31`
    /// to `le38`.
    pub clause: &'static str,
    pub level: u32,
}

impl fmt::Display for LevelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at level {}", self.clause, self.level)
    }
}

pub type LevelVerdict = Verdict<LevelViolation>;

/// Atom above the current level, in untwisted coordinates:
/// `u[i, a] x v[j, _] x w[k, e]`.
#[derive(Clone, Copy, Debug)]
struct Above {
    i: u32,
    a: Sign,
    k: u32,
    e: Sign,
}

/// Atom at the current level: `u[l, sg] x v[J, tau] x w[n, om]`.
#[derive(Clone, Copy, Debug)]
struct AtLevel {
    l: u32,
    sg: Sign,
    tau: Sign,
    n: u32,
    om: Sign,
}

fn above(a: &ProductAtom) -> Above {
    Above { i: a.d(0), a: a.s(0), k: a.d(2), e: a.s(2) }
}

fn at_level(a: &ProductAtom) -> AtLevel {
    AtLevel { l: a.d(0), sg: a.s(0), tau: a.s(1), n: a.d(2), om: a.s(2) }
}

/// `-(-1)^parity * s`.
#[inline]
fn neg_pow(s: Sign, parity: u32) -> Sign {
    -s.pow(parity)
}

/// Atoms above level `j` with no other atom wedged between them and the
/// level, listed by decreasing first dimension.
fn lowest_above(atoms: &[ProductAtom], j: u32) -> Vec<ProductAtom> {
    let mut out: Vec<ProductAtom> = atoms
        .iter()
        .filter(|a| a.d(1) > j)
        .filter(|a| {
            !atoms.iter().any(|b| {
                b != *a && b.d(0) >= a.d(0) && b.d(1) > j && b.d(1) < a.d(1) && b.d(2) >= a.d(2)
            })
        })
        .copied()
        .collect();
    out.sort_by(|a, b| b.d(0).cmp(&a.d(0)).then(a.d(2).cmp(&b.d(2))));
    out
}

fn strictly_staircase(v: &[ProductAtom]) -> bool {
    v.windows(2).all(|w| w[0].d(0) > w[1].d(0) && w[0].d(2) < w[1].d(2))
}

/// Checks the level clauses on a set of three-factor atoms. Accepts
/// exactly the sets of maximal atoms of molecules.
pub fn validate_maximal_atom_set(sig: &Signature, atoms: &[ProductAtom]) -> Result<LevelVerdict> {
    if sig.arity() != 3 {
        return Err(Error::ArityMismatch { expected: 3, found: sig.arity() });
    }
    if atoms.is_empty() {
        return Err(Error::Empty);
    }
    let plain = sig.untwisted().without_caps();
    let mut set = BTreeSet::new();
    for a in atoms {
        sig.check_atom(a)?;
        if a.has_top() {
            return Err(Error::TopNotAllowed);
        }
        set.insert(retwist_atom(a, sig, &plain));
    }
    let atoms: Vec<ProductAtom> = set.into_iter().collect();
    let top = atoms.iter().map(|a| a.d(1)).max().unwrap_or(0);
    let levels: Vec<Vec<ProductAtom>> = (0..=top)
        .map(|j| {
            let mut v: Vec<ProductAtom> = atoms.iter().filter(|a| a.d(1) == j).copied().collect();
            v.sort_by(|a, b| b.d(0).cmp(&a.d(0)).then(a.d(2).cmp(&b.d(2))));
            v
        })
        .collect();
    let reject = |clause, level| Ok(Verdict::reject(LevelViolation { clause, level }));
    for (j, lv) in levels.iter().enumerate() {
        if !strictly_staircase(lv) {
            return reject("le1", j as u32);
        }
    }
    for (j, lv) in levels.iter().enumerate() {
        let j = j as u32;
        for lam in lowest_above(&atoms, j) {
            if lv.iter().any(|mu| mu.d(0) <= lam.d(0) && mu.d(2) <= lam.d(2)) {
                return reject("le2", j);
            }
        }
    }
    for (j, lv) in levels.iter().enumerate() {
        let j = j as u32;
        let low = lowest_above(&atoms, j);
        if !strictly_staircase(&low) {
            return reject("le3", j);
        }
        let lam: Vec<Above> = low.iter().map(above).collect();
        let mu: Vec<AtLevel> = lv.iter().map(at_level).collect();
        if let Some(clause) = level_clauses(&lam, &mu, j, j == top) {
            return reject(clause, j);
        }
    }
    Ok(Verdict::accept())
}

/// The le3 clauses at one level. Indices are 0-based here.
fn level_clauses(lam: &[Above], mu: &[AtLevel], j: u32, is_top: bool) -> Option<&'static str> {
    let (ss, tt) = (lam.len(), mu.len());
    // le31
    for s in 1..ss {
        if !mu.iter().any(|m| m.l > lam[s].i && m.n > lam[s - 1].k) {
            return Some("le31");
        }
    }
    // le35
    for m in mu {
        for s in 1..ss {
            if m.l > lam[s].i
                && m.n > lam[s - 1].k
                && (m.tau != neg_pow(lam[s].a, lam[s].i) || m.tau != neg_pow(lam[s - 1].e, j))
            {
                return Some("le35");
            }
        }
        if let Some(first) = lam.first() {
            if m.l > first.i && m.tau != neg_pow(first.a, first.i) {
                return Some("le35");
            }
        }
        if let Some(last) = lam.last() {
            if m.n > last.k && m.tau != neg_pow(last.e, j) {
                return Some("le35");
            }
        }
    }
    if is_top && mu.windows(2).any(|w| w[0].tau != w[1].tau) {
        return Some("le35");
    }
    // le32
    for t in 1..tt {
        let blocked = lam.iter().any(|x| x.i > mu[t].l && x.k > mu[t - 1].n);
        if !blocked && mu[t - 1].om != neg_pow(mu[t].sg, mu[t].l + j) {
            return Some("le32");
        }
    }
    for (s, x) in lam.iter().enumerate() {
        let last_s = s + 1 == ss;
        for (t, m) in mu.iter().enumerate() {
            let last_t = t + 1 == tt;
            let next = mu.get(t + 1);
            let prev = if t > 0 { mu.get(t - 1) } else { None };
            // le33
            if m.n < x.k
                && (next.is_some_and(|nx| nx.l <= x.i) || (last_s && last_t))
                && m.om != neg_pow(x.a, x.i + j)
            {
                return Some("le33");
            }
            // le34
            if m.l < x.i
                && (prev.is_some_and(|p| p.n <= x.k) || (s == 0 && t == 0))
                && m.sg != neg_pow(x.e, m.l + j)
            {
                return Some("le34");
            }
            // le36
            if x.i == m.l && (prev.is_some_and(|p| x.k > p.n) || (s == 0 && t == 0)) && x.a != m.sg {
                return Some("le36");
            }
            // le37
            if x.k == m.n && (next.is_some_and(|nx| x.i > nx.l) || (last_s && last_t)) && x.e != m.om
            {
                return Some("le37");
            }
            // le38
            if let Some(nx) = next {
                if x.i == nx.l && x.k == m.n && x.a != nx.sg && x.e != m.om {
                    return Some("le38");
                }
            }
        }
    }
    None
}

/// Where the construction stands before choosing the atoms at `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelState {
    pub level: u32,
    /// Lowest atoms above `level`, first dimensions decreasing and third
    /// increasing. Untwisted coordinates.
    pub lowest_above: Vec<ProductAtom>,
    /// Bounds on the first and third dimensions of new atoms.
    pub caps: [u32; 3],
}

/// The atoms placed at one level, first dimensions decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelChoice {
    pub atoms_at_level: Vec<ProductAtom>,
}

const UNBOUNDED: i64 = i64::MAX;

type Visit<'v> = &'v mut dyn FnMut(&[(u32, u32)]);

/// A range `lo..=hi` of dimensions. Uncapped upper ends are `UNBOUNDED`.
#[derive(Clone, Copy, Debug)]
struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty interval {lo}..={hi} in the level construction");
        Interval { lo, hi }
    }

    fn above(lo: i64) -> Self {
        Interval::new(lo, UNBOUNDED)
    }

    fn capped(self, cap: u32) -> std::ops::RangeInclusive<u32> {
        let hi = self.hi.min(cap as i64);
        let lo = self.lo.max(0);
        if lo > hi {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        lo as u32..=hi as u32
    }
}

/// Whether the level may end, must continue, or must end after the atoms
/// chosen so far.
enum Next {
    Stop,
    Optional(Interval),
    Required(Interval),
}

struct Ctx<'a> {
    lam: &'a [Above],
    j: u32,
    caps: [u32; 3],
}

impl Ctx<'_> {
    fn good(&self, s: usize) -> bool {
        let x = self.lam[s];
        x.e == x.a.pow(x.i + self.j)
    }

    fn first_bad(&self, from: usize) -> Option<usize> {
        (from..self.lam.len()).find(|&s| !self.good(s))
    }

    fn i(&self, s: usize) -> i64 {
        self.lam[s].i as i64
    }

    fn k(&self, s: usize) -> i64 {
        self.lam[s].k as i64
    }

    /// Range of the first atom's first dimension.
    fn first_l(&self) -> Next {
        if self.lam.len() == 1 {
            Next::Optional(Interval::above(0))
        } else {
            Next::Required(Interval::above(self.i(1) + 1))
        }
    }

    /// Range of the first atom's third dimension.
    fn first_n(&self, l: i64) -> Interval {
        if l > self.i(0) {
            match self.first_bad(0) {
                None => Interval::above(0),
                Some(s1) => Interval::new(0, self.k(s1)),
            }
        } else {
            match self.first_bad(1) {
                None => Interval::above(self.k(0) + 1),
                Some(s2) => Interval::new(self.k(0) + 1, self.k(s2)),
            }
        }
    }

    /// Range of the next first dimension after an atom at `(l, n)`.
    fn next_l(&self, l: i64, n: i64) -> Next {
        let ss = self.lam.len();
        let last = ss - 1;
        if n > self.k(last) {
            return if l == 0 { Next::Stop } else { Next::Optional(Interval::new(0, l - 1)) };
        }
        if n == self.k(last) {
            return if self.good(last) {
                Next::Optional(Interval::new(0, l - 1))
            } else {
                Next::Optional(Interval::new(0, self.i(last)))
            };
        }
        if ss == 1 || n > self.k(last - 1) {
            return Next::Optional(Interval::new(0, l - 1));
        }
        // now ss > 1 and n < k_{S-1}
        if let Some(s) = (0..last).find(|&s| self.k(s) == n) {
            return if self.good(s) {
                Next::Required(Interval::new(self.i(s + 1) + 1, l - 1))
            } else {
                Next::Required(Interval::new(self.i(s + 1) + 1, self.i(s)))
            };
        }
        match (1..last).find(|&s| self.k(s - 1) < n && n < self.k(s)) {
            Some(s) => Next::Required(Interval::new(self.i(s + 1) + 1, l - 1)),
            None => {
                debug_assert!(n < self.k(0));
                Next::Required(Interval::new(self.i(1) + 1, l - 1))
            }
        }
    }

    /// Range of the next third dimension, given the new first dimension
    /// `l` and the previous third dimension `n`.
    fn next_n(&self, l: i64, n: i64) -> Interval {
        let last = self.lam.len() - 1;
        if l > self.i(0) {
            return match self.first_bad(0) {
                None => Interval::above(n + 1),
                Some(s3) => Interval::new(n + 1, self.k(s3)),
            };
        }
        if l <= self.i(last) {
            return Interval::above(n.max(self.k(last)) + 1);
        }
        let s4 = (1..=last).find(|&s| self.i(s) < l && l <= self.i(s - 1)).expect("l lies between");
        let lo = self.k(s4 - 1).max(n) + 1;
        match self.first_bad(s4) {
            None => Interval::above(lo),
            Some(s5) => Interval::new(lo, self.k(s5)),
        }
    }

    /// Every position sequence `(l_t, n_t)` for the level.
    fn positions(&self, out: Visit) {
        let mut cur = Vec::new();
        match self.first_l() {
            Next::Optional(iv) => {
                out(&[]);
                self.extend_first(iv, &mut cur, out);
            }
            Next::Required(iv) => self.extend_first(iv, &mut cur, out),
            Next::Stop => unreachable!(),
        }
    }

    fn extend_first(&self, iv: Interval, cur: &mut Vec<(u32, u32)>, out: Visit) {
        for l in iv.capped(self.caps[0]) {
            for n in self.first_n(l as i64).capped(self.caps[2]) {
                cur.push((l, n));
                self.extend(cur, out);
                cur.pop();
            }
        }
    }

    fn extend(&self, cur: &mut Vec<(u32, u32)>, out: Visit) {
        let (l, n) = *cur.last().expect("nonempty");
        let (l, n) = (l as i64, n as i64);
        let iv = match self.next_l(l, n) {
            Next::Stop => {
                out(cur);
                return;
            }
            Next::Optional(iv) => {
                out(cur);
                iv
            }
            Next::Required(iv) => iv,
        };
        for l2 in iv.capped(self.caps[0]) {
            for n2 in self.next_n(l2 as i64, n).capped(self.caps[2]) {
                cur.push((l2, n2));
                self.extend(cur, out);
                cur.pop();
            }
        }
    }

    fn tau(&self, l: u32) -> Sign {
        let lam = self.lam;
        let last = lam.len() - 1;
        if l > lam[0].i {
            return neg_pow(lam[0].a, lam[0].i);
        }
        if l <= lam[last].i {
            return neg_pow(lam[last].e, self.j);
        }
        let s = (1..=last).find(|&s| lam[s].i < l && l <= lam[s - 1].i).expect("l lies between");
        neg_pow(lam[s].a, lam[s].i)
    }

    /// Every sign assignment for the positions `pos`.
    fn signs(&self, pos: &[(u32, u32)], out: &mut dyn FnMut(LevelChoice)) {
        let lam = self.lam;
        let j = self.j;
        let tt = pos.len();
        // options[t] lists the possible (sigma_t, omega_{t-1}) pairs; the
        // omega of the last atom is handled separately.
        let mut options: Vec<Vec<(Sign, Option<Sign>)>> = Vec::with_capacity(tt);
        let (l1, _) = pos[0];
        options.push(if l1 > lam[0].i {
            Sign::BOTH.iter().map(|&s| (s, None)).collect()
        } else if l1 == lam[0].i {
            vec![(lam[0].a, None)]
        } else {
            vec![(neg_pow(lam[0].e, l1 + j), None)]
        });
        for t in 1..tt {
            let (lt, _) = pos[t];
            let (_, np) = pos[t - 1];
            let hits: Vec<usize> =
                (0..lam.len()).filter(|&s| lam[s].i >= lt && lam[s].k >= np).collect();
            assert!(hits.len() <= 1, "two lowest atoms meet one gap in the level construction");
            let free = || -> Vec<(Sign, Option<Sign>)> {
                Sign::BOTH.iter().map(|&om| (neg_pow(om, lt + j), Some(om))).collect()
            };
            options.push(match hits.first() {
                None => free(),
                Some(&s) => {
                    let x = lam[s];
                    match (x.i > lt, x.k > np) {
                        (true, true) => vec![(neg_pow(x.e, lt + j), Some(neg_pow(x.a, x.i + j)))],
                        (false, true) => vec![(x.a, Some(neg_pow(x.a, x.i + j)))],
                        (true, false) => vec![(neg_pow(x.e, lt + j), Some(x.e))],
                        (false, false) => {
                            if self.good(s) {
                                free()
                            } else {
                                vec![(x.a, Some(x.e))]
                            }
                        }
                    }
                }
            });
        }
        let last = lam[lam.len() - 1];
        let (_, nt) = pos[tt - 1];
        let final_om: Vec<Sign> = if nt > last.k {
            Sign::BOTH.to_vec()
        } else if nt == last.k {
            vec![last.e]
        } else {
            vec![neg_pow(last.a, last.i + j)]
        };
        let taus: Vec<Sign> = pos.iter().map(|&(l, _)| self.tau(l)).collect();
        let mut pick = vec![0usize; tt];
        loop {
            for &om_last in &final_om {
                let mut atoms = Vec::with_capacity(tt);
                for t in 0..tt {
                    let (sg, _) = options[t][pick[t]];
                    let om = if t + 1 < tt {
                        options[t + 1][pick[t + 1]].1.expect("set for t > 0")
                    } else {
                        om_last
                    };
                    let (l, n) = pos[t];
                    atoms.push(ProductAtom::signed(&[(l, sg), (j, taus[t]), (n, om)]));
                }
                out(LevelChoice { atoms_at_level: atoms });
            }
            // odometer over the option lists
            let mut t = 0;
            loop {
                if t == tt {
                    return;
                }
                pick[t] += 1;
                if pick[t] < options[t].len() {
                    break;
                }
                pick[t] = 0;
                t += 1;
            }
        }
    }
}

/// Hands every legal list of atoms at `state.level` to `visit`, given the
/// lowest atoms above it. The empty list is among them exactly when the
/// level may stay empty.
///
/// Panics if the construction meets an empty interval before caps are
/// applied, or two lowest atoms competing for one gap; both are ruled out
/// by the theory.
pub fn for_each_level_choice(state: &LevelState, visit: &mut dyn FnMut(LevelChoice)) {
    assert!(!state.lowest_above.is_empty(), "a level below the top has atoms above it");
    let lam: Vec<Above> = state.lowest_above.iter().map(above).collect();
    let ctx = Ctx { lam: &lam, j: state.level, caps: state.caps };
    ctx.positions(&mut |pos| {
        if pos.is_empty() {
            visit(LevelChoice { atoms_at_level: Vec::new() });
        } else {
            ctx.signs(pos, visit);
        }
    });
}

/// [`for_each_level_choice`], collected.
pub fn next_level_choices(state: &LevelState) -> Vec<LevelChoice> {
    let mut out = Vec::new();
    for_each_level_choice(state, &mut |c| out.push(c));
    out
}

/// Every list of atoms for the top level `level`, all sharing one middle
/// sign, with dimensions bounded by `caps`.
pub fn top_level_choices(level: u32, caps: [u32; 3]) -> Vec<LevelChoice> {
    let mut out = Vec::new();
    let mut cur: Vec<(u32, u32)> = Vec::new();
    fn positions(caps: [u32; 3], cur: &mut Vec<(u32, u32)>, acc: &mut Vec<Vec<(u32, u32)>>) {
        let (lo_k, hi_i) = match cur.last() {
            None => (0, caps[0] as i64),
            Some(&(i, k)) => (k as i64 + 1, i as i64 - 1),
        };
        for i in (0..=hi_i).rev() {
            for k in lo_k..=caps[2] as i64 {
                cur.push((i as u32, k as u32));
                acc.push(cur.clone());
                positions(caps, cur, acc);
                cur.pop();
            }
        }
    }
    let mut acc = Vec::new();
    positions(caps, &mut cur, &mut acc);
    for pos in acc {
        let ss = pos.len();
        for beta in Sign::BOTH {
            // bit 0 fixes alpha_1, bit s fixes epsilon_s
            for mask in 0u32..(1 << (ss + 1)) {
                let bit = |b: usize| if mask >> b & 1 == 1 { Sign::Plus } else { Sign::Minus };
                let atoms = (0..ss)
                    .map(|s| {
                        let (i, k) = pos[s];
                        let alpha = if s == 0 { bit(0) } else { neg_pow(bit(s), i + level) };
                        ProductAtom::signed(&[(i, alpha), (level, beta), (k, bit(s + 1))])
                    })
                    .collect();
                out.push(LevelChoice { atoms_at_level: atoms });
            }
        }
    }
    out
}

/// Whether to keep the finite-globe images or the signed molecules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    /// Molecules of the uncapped product whose atoms fit under the caps.
    Signed,
    /// Their images in the product of finite globes, deduplicated.
    Capped,
}

fn descend(
    atoms: &mut Vec<ProductAtom>,
    level: u32,
    caps: [u32; 3],
    sink: &mut dyn FnMut(&[ProductAtom]),
) {
    if level == 0 {
        sink(atoms);
        return;
    }
    let j = level - 1;
    let lowest = lowest_above(atoms, j);
    assert!(strictly_staircase(&lowest), "lowest atoms above a level form a staircase");
    let state = LevelState { level: j, lowest_above: lowest, caps };
    for_each_level_choice(&state, &mut |choice| {
        let len = atoms.len();
        atoms.extend_from_slice(&choice.atoms_at_level);
        descend(atoms, j, caps, sink);
        atoms.truncate(len);
    });
}

/// Runs the construction and hands every maximal-atom set to `sink`.
pub fn for_each_molecule3(caps: [u32; 3], sink: &mut dyn FnMut(&[ProductAtom])) {
    for top in 0..=caps[1] {
        for choice in top_level_choices(top, caps) {
            let mut atoms = choice.atoms_at_level;
            descend(&mut atoms, top, caps, sink);
        }
    }
}

/// All molecules of the triple product with dimensions bounded by `caps`,
/// sorted by their serialization.
pub fn enumerate3(caps: [u32; 3], mode: EnumMode) -> Result<Vec<Subcomplex>> {
    let plain = Signature::plain(3);
    let mut out = BTreeMap::new();
    let mut failure = None;
    for_each_molecule3(caps, &mut |atoms| {
        if failure.is_some() {
            return;
        }
        let x = Subcomplex::normalize_atoms(plain, atoms.to_vec());
        let x = match mode {
            EnumMode::Signed => Ok(x),
            EnumMode::Capped => cap_quotient(&x, &caps),
        };
        match x {
            Ok(x) => {
                out.insert(x.to_string(), x);
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(out.into_values().collect())
}

/// A construction state for `level`, checking that the given atoms lie
/// above it and form a staircase.
pub fn level_state(level: u32, lowest_above: &[ProductAtom], caps: [u32; 3]) -> Result<LevelState> {
    for a in lowest_above {
        if a.arity() != 3 {
            return Err(Error::ArityMismatch { expected: 3, found: a.arity() });
        }
        if a.has_top() {
            return Err(Error::TopNotAllowed);
        }
        if a.d(1) <= level {
            return Err(Error::Precondition(format!("{a} is not above level {level}")));
        }
    }
    let mut v = lowest_above.to_vec();
    v.sort_by(|a, b| b.d(0).cmp(&a.d(0)).then(a.d(2).cmp(&b.d(2))));
    if v.is_empty() || !strictly_staircase(&v) {
        return Err(Error::Precondition("lowest atoms must form a nonempty staircase".into()));
    }
    Ok(LevelState { level, lowest_above: v, caps })
}
