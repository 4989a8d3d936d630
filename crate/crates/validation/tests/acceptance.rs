//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use globemol::enumerate::{enumerate3, EnumMode};
use globemol::molecule::molecule_d;
use globemol::oracle::{check_axioms, signed_lifts, AtomSet, CellComplex, Oracle};
use globemol::pair::{pair_compose, pair_d};
use globemol::quad::{decompose4, quad_is_pairwise_def, quad_is_pairwise_explicit};
use globemol::reference::{
    cube_list, PAIRWISE_ADJACENT, PAIRWISE_EXAMPLE, PAIRWISE_PROJECTION_MAXIMAL, PAIR_COMPOSITE,
    PAIR_MIDDLE, PAIR_MINUS, PAIR_PLUS,
};
use globemol::triple::{
    adjacent3, decompose3, projection_maximal3, st_adjacent3, triple_is_pairwise_def,
    triple_is_pairwise_explicit,
};
use globemol::{ProductAtom, Result, Sign, Signature, Subcomplex};

type Criterion = fn(&mut Vec<String>) -> Result<bool>;

fn sub(sig: Signature, s: &str) -> Subcomplex {
    Subcomplex::parse(sig, s).unwrap()
}

fn at(s: &str) -> ProductAtom {
    s.parse().unwrap()
}

fn strings(xs: &[Subcomplex]) -> BTreeSet<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn oracle_molecules(caps: &[u32]) -> Result<(Oracle, Vec<Subcomplex>)> {
    let o = Oracle::new(&Signature::capped(caps)?)?;
    let v = o.molecules()?.to_subcomplexes(o.complex());
    Ok((o, v))
}

/// Molecular lifts of a capped subcomplex, by the given uncapped check.
fn molecular_lifts(x: &Subcomplex, check: fn(&Subcomplex) -> Result<bool>) -> Result<Vec<Subcomplex>> {
    let mut out = Vec::new();
    for l in signed_lifts(x) {
        if check(&l)? {
            out.push(l);
        }
    }
    Ok(out)
}

fn triple_ok(x: &Subcomplex) -> Result<bool> {
    Ok(triple_is_pairwise_def(x)?.ok())
}

fn quad_ok(x: &Subcomplex) -> Result<bool> {
    Ok(quad_is_pairwise_def(x)?.ok())
}

fn c1(notes: &mut Vec<String>) -> Result<bool> {
    let (_, mols) = oracle_molecules(&[1, 1, 1])?;
    let listed: Vec<Subcomplex> = cube_list()?.into_iter().map(|(_, x)| x).collect();
    notes.push(format!("oracle {} molecules, list {} items", mols.len(), listed.len()));
    Ok(mols.len() == 57 && strings(&mols) == strings(&listed))
}

/// Every antichain of the face order of the complex, as a down-closed set.
fn down_closed_sets(cx: &CellComplex, visit: &mut dyn FnMut(AtomSet)) {
    let n = cx.len();
    let comparable: Vec<AtomSet> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    j != i
                        && (cx.atom_closure(i) >> j & 1 == 1 || cx.atom_closure(j) >> i & 1 == 1)
                })
                .fold(0, |m, j| m | 1 << j)
        })
        .collect();
    fn rec(
        i: usize,
        blocked: AtomSet,
        acc: AtomSet,
        cx: &CellComplex,
        comparable: &[AtomSet],
        visit: &mut dyn FnMut(AtomSet),
    ) {
        if i == cx.len() {
            visit(acc);
            return;
        }
        rec(i + 1, blocked, acc, cx, comparable, visit);
        if blocked >> i & 1 == 0 {
            rec(i + 1, blocked | comparable[i], acc | cx.atom_closure(i), cx, comparable, visit);
        }
    }
    rec(0, 0, 0, cx, &comparable, visit);
}

fn c2(notes: &mut Vec<String>) -> Result<bool> {
    let mut all = true;
    for caps in [[1, 1, 1], [2, 1, 1], [1, 2, 1]] {
        let o = Oracle::new(&Signature::capped(&caps)?)?;
        let (cx, mols) = (o.complex(), o.molecules()?);
        let (mut seen, mut wrong, mut bad, mut err) = (0usize, 0usize, Vec::new(), None);
        down_closed_sets(cx, &mut |s| {
            if s == 0 || err.is_some() {
                return;
            }
            seen += 1;
            let x = cx.to_subcomplex(s);
            match molecular_lifts(&x, triple_ok) {
                Ok(lifts) => {
                    if mols.contains(s) != !lifts.is_empty() {
                        wrong += 1;
                        if bad.len() < 3 {
                            bad.push(x.to_string());
                        }
                    }
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        notes.push(format!("{caps:?}: {seen} nonempty down-closed sets, {wrong} disagreements"));
        for b in &bad {
            notes.push(format!("  disagreement on {b}"));
        }
        all &= wrong == 0;
    }
    Ok(all)
}

fn c3(notes: &mut Vec<String>) -> Result<bool> {
    let s2 = Signature::plain(2);
    let (minus, plus) = (sub(s2, PAIR_MINUS), sub(s2, PAIR_PLUS));
    let mid = sub(s2, PAIR_MIDDLE);
    let t = pair_d(&minus, 5, Sign::Plus)?;
    let s = pair_d(&plus, 5, Sign::Minus)?;
    let c = pair_compose(&minus, 5, &plus)?;
    notes.push(format!("d+ = {t}, d- = {s}, composite = {c}"));
    Ok(t == mid && s == mid && mid.len() == 6 && c == sub(s2, PAIR_COMPOSITE) && c.len() == 5)
}

/// Adjacency straight from the definition: no third maximal atom reaches
/// the common dimensions of the pair and meets each in more dimensions.
fn adjacent_by_definition(x: &Subcomplex, a: &ProductAtom, b: &ProductAtom) -> bool {
    let meet = |p: &ProductAtom, q: &ProductAtom| -> u32 { (0..3).map(|f| p.d(f).min(q.d(f))).sum() };
    let m = meet(a, b);
    !x.atoms().iter().any(|c| {
        c != a && c != b && (0..3).all(|f| c.d(f) >= a.d(f).min(b.d(f))) && meet(a, c) > m && meet(b, c) > m
    })
}

fn c4(notes: &mut Vec<String>) -> Result<bool> {
    let x = sub(Signature::plain(3), PAIRWISE_EXAMPLE);
    let def = triple_is_pairwise_def(&x)?.ok();
    let explicit = triple_is_pairwise_explicit(&x)?.ok();
    notes.push(format!("definition check: {def}, explicit check: {explicit}"));

    let listed: BTreeSet<(ProductAtom, ProductAtom)> = PAIRWISE_ADJACENT
        .iter()
        .map(|(a, b)| {
            let (a, b) = (at(a), at(b));
            (a.min(b), a.max(b))
        })
        .collect();
    let mut found = BTreeSet::new();
    let mut independent = BTreeSet::new();
    for (i, a) in x.atoms().iter().enumerate() {
        for b in &x.atoms()[i + 1..] {
            if adjacent3(a, b, &x)? {
                found.insert((*a.min(b), *a.max(b)));
            }
            if adjacent_by_definition(&x, a, b) {
                independent.insert((*a.min(b), *a.max(b)));
            }
        }
    }
    notes.push(format!("adjacent3 finds {} pairs, the list has {}", found.len(), listed.len()));
    for (a, b) in listed.difference(&found) {
        notes.push(format!("  listed but not adjacent: {a} {b}"));
    }
    for (a, b) in found.difference(&listed) {
        notes.push(format!("  adjacent but not listed: {a} {b}"));
    }
    let agree = found == independent;
    notes.push(format!("adjacent3 agrees with the direct definition: {agree}"));

    let mut maximal_ok = true;
    for (level, list) in PAIRWISE_PROJECTION_MAXIMAL.iter().enumerate() {
        let want: BTreeSet<ProductAtom> = list.split(';').map(at).collect();
        let mut got = BTreeSet::new();
        for a in x.atoms() {
            if projection_maximal3(a, &x, 1, level as u32)? {
                got.insert(*a);
            }
        }
        // independently: maximal atoms of the projection, pulled back
        let proj = x.project(1, level as u32)?;
        let pulled: BTreeSet<ProductAtom> = x
            .atoms()
            .iter()
            .filter(|a| {
                a.d(1) >= level as u32
                    && proj.atoms().iter().any(|p| p.d(0) == a.d(0) && p.d(1) == a.d(2))
            })
            .copied()
            .collect();
        let ok = got == want && got.len() == proj.len() && pulled.is_superset(&got);
        notes.push(format!("projection-maximal at (v,{level}): {} atoms, match {ok}", got.len()));
        maximal_ok &= ok;
    }
    Ok(def && explicit && agree && found == listed && maximal_ok)
}

fn c5(notes: &mut Vec<String>) -> Result<bool> {
    let x = sub(Signature::plain(3), PAIRWISE_EXAMPLE);
    let (a, b) = (at("(5-,2+,5-)"), at("(4-,0-,7+)"));
    let st = st_adjacent3(&a, &b, &x, 0, 1)?;
    let adj = adjacent3(&a, &b, &x)?;
    notes.push(format!("(1,2)-adjacent: {st} (expected true), adjacent: {adj} (expected false)"));
    let (i, j) = ((a.d(0), b.d(0)), (a.d(1), b.d(1)));
    notes.push(format!(
        "first dims {} vs {}, second dims {} vs {}: the atom with larger first dimension also has larger second dimension",
        i.0, i.1, j.0, j.1
    ));
    Ok(st && !adj)
}

fn c6(notes: &mut Vec<String>) -> Result<bool> {
    let mut all = true;
    for caps in [[1, 1, 1], [2, 1, 1], [1, 1, 2]] {
        let sig = Signature::capped(&caps)?;
        let cat = enumerate3(caps, EnumMode::Capped)?;
        let (mut trees, mut bad) = (0usize, 0usize);
        for x in &cat {
            let lifts = molecular_lifts(x, triple_ok)?;
            if lifts.is_empty() {
                bad += 1;
            }
            for l in lifts {
                let e = decompose3(&l)?;
                let back = e.evaluate(l.signature())?;
                let down = e.cap_quotient(&caps)?.evaluate(&sig)?;
                trees += 1;
                if back != l || down != *x {
                    bad += 1;
                }
            }
        }
        notes.push(format!("{caps:?}: {} molecules, {trees} lifted trees, {bad} failures", cat.len()));
        all &= bad == 0;
    }
    let caps = [1, 1, 1, 0];
    let (_, mols) = oracle_molecules(&caps)?;
    let sig = Signature::capped(&caps)?;
    let (mut trees, mut bad) = (0usize, 0usize);
    for x in &mols {
        let lifts = molecular_lifts(x, quad_ok)?;
        if lifts.is_empty() {
            bad += 1;
        }
        for l in lifts {
            let e = decompose4(&l)?;
            trees += 1;
            if e.evaluate(l.signature())? != l || e.cap_quotient(&caps)?.evaluate(&sig)? != *x {
                bad += 1;
            }
        }
    }
    notes.push(format!("{caps:?}: {} molecules, {trees} lifted trees, {bad} failures", mols.len()));
    Ok(all && bad == 0)
}

fn c7(notes: &mut Vec<String>) -> Result<bool> {
    let mut all = true;
    for caps in [&[1, 1, 1][..], &[2, 1]] {
        let o = Oracle::new(&Signature::capped(caps)?)?;
        let rep = check_axioms(o.complex(), o.molecules()?);
        let counts: Vec<String> = (2..=7).map(|a| format!("{a}:{}", rep.checked[a])).collect();
        notes.push(format!("{caps:?}: {} molecules, instances {}", o.molecules()?.len(), counts.join(" ")));
        for f in &rep.failures {
            notes.push(format!("  {f}"));
        }
        all &= rep.passed() && (2..=7).all(|a| rep.checked[a] > 0);
    }
    Ok(all)
}

/// Condition-1 antichains of dimension vectors in `[0, bound]^n`.
fn dim_antichains(n: usize, bound: u32, visit: &mut dyn FnMut(&[Vec<u32>])) {
    let mut pts = vec![Vec::new()];
    for _ in 0..n {
        pts = pts.into_iter().flat_map(|p: Vec<u32>| (0..=bound).map(move |d| [p.clone(), vec![d]].concat())).collect();
    }
    fn rec(pts: &[Vec<u32>], i: usize, cur: &mut Vec<Vec<u32>>, visit: &mut dyn FnMut(&[Vec<u32>])) {
        if i == pts.len() {
            if !cur.is_empty() {
                visit(cur);
            }
            return;
        }
        rec(pts, i + 1, cur, visit);
        let le = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
        if cur.iter().all(|q| !le(&pts[i], q) && !le(q, &pts[i])) {
            cur.push(pts[i].clone());
            rec(pts, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(&pts, 0, &mut Vec::new(), visit);
}

fn with_signs(dims: &[Vec<u32>], mask: u64) -> Vec<ProductAtom> {
    let n = dims[0].len();
    dims.iter()
        .enumerate()
        .map(|(t, d)| {
            let parts: Vec<(u32, Sign)> = (0..n)
                .map(|f| (d[f], if mask >> (n * t + f) & 1 == 1 { Sign::Plus } else { Sign::Minus }))
                .collect();
            ProductAtom::signed(&parts)
        })
        .collect()
}

fn sweep(n: usize, bound: u32, check: &dyn Fn(&Subcomplex) -> Result<Option<String>>) -> Result<(usize, Vec<String>)> {
    let sig = Signature::plain(n);
    let (mut count, mut bad, mut err) = (0usize, Vec::new(), None);
    dim_antichains(n, bound, &mut |dims| {
        if err.is_some() {
            return;
        }
        for mask in 0..1u64 << (n * dims.len()) {
            let x = Subcomplex::new(sig, with_signs(dims, mask)).unwrap();
            count += 1;
            match check(&x) {
                Ok(None) => {}
                Ok(Some(m)) => bad.push(m),
                Err(e) => {
                    err = Some(e);
                    return;
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok((count, bad)),
    }
}

fn c8(notes: &mut Vec<String>) -> Result<bool> {
    let triple = |x: &Subcomplex| -> Result<Option<String>> {
        let (a, b) = (triple_is_pairwise_def(x)?, triple_is_pairwise_explicit(x)?);
        Ok((a.ok() != b.ok()).then(|| format!("{x}: {a} vs {b}")))
    };
    let quad = |x: &Subcomplex| -> Result<Option<String>> {
        let (a, b) = (quad_is_pairwise_def(x)?, quad_is_pairwise_explicit(x)?);
        Ok((a.ok() != b.ok()).then(|| format!("{x}: {a} vs {b}")))
    };
    let mut all = true;
    for (label, n, bound, check) in [("triple", 3, 2, &triple as &dyn Fn(&Subcomplex) -> Result<Option<String>>), ("quad", 4, 1, &quad)] {
        let (count, bad) = sweep(n, bound, check)?;
        notes.push(format!("{label} dims <= {bound}: {count} sets, {} disagreements", bad.len()));
        notes.extend(bad.iter().take(3).map(|b| format!("  {b}")));
        all &= bad.is_empty();
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let s4 = Signature::plain(4);
    let (mut samples, mut accepted, mut bad) = (0usize, 0usize, Vec::new());
    while samples < 10_000 {
        let want = rng.gen_range(1..=6);
        let mut atoms: Vec<ProductAtom> = Vec::new();
        for _ in 0..want * 4 {
            if atoms.len() == want {
                break;
            }
            let parts: Vec<(u32, Sign)> = (0..4)
                .map(|_| (rng.gen_range(0..=2), if rng.gen() { Sign::Plus } else { Sign::Minus }))
                .collect();
            let a = ProductAtom::signed(&parts);
            if atoms.iter().all(|b| !a.dims_le(b) && !b.dims_le(&a)) {
                atoms.push(a);
            }
        }
        let x = Subcomplex::new(s4, atoms)?;
        samples += 1;
        let (a, b) = (quad_is_pairwise_def(&x)?, quad_is_pairwise_explicit(&x)?);
        accepted += a.ok() as usize;
        if a.ok() != b.ok() {
            bad.push(format!("{x}: {a} vs {b}"));
        }
    }
    notes.push(format!("quad dims <= 2: {samples} random sets ({accepted} molecules), {} disagreements", bad.len()));
    notes.extend(bad.iter().take(3).map(|b| format!("  {b}")));
    Ok(all && bad.is_empty())
}

fn c9(notes: &mut Vec<String>) -> Result<bool> {
    let mut all = true;
    for caps in [[1, 1, 1], [2, 1, 1]] {
        let (_, mols) = oracle_molecules(&caps)?;
        let ours = catch_unwind(|| enumerate3(caps, EnumMode::Capped));
        let ours = match ours {
            Ok(r) => r?,
            Err(_) => {
                notes.push(format!("{caps:?}: the construction hit an empty interval"));
                all = false;
                continue;
            }
        };
        let same = strings(&ours) == strings(&mols);
        notes.push(format!("{caps:?}: enumerated {}, oracle {}, equal {same}", ours.len(), mols.len()));
        all &= same && (caps != [1, 1, 1] || ours.len() == 57);
    }
    // the interval assertion also guards the larger signed runs
    for caps in [[2, 2, 1], [2, 2, 2]] {
        let run = catch_unwind(AssertUnwindSafe(|| enumerate3(caps, EnumMode::Signed)));
        let ok = matches!(run, Ok(Ok(_)));
        notes.push(format!("{caps:?} signed: every interval nonempty {ok}"));
        all &= ok;
    }
    Ok(all)
}

/// Checks F(d_p x) = d_{p-I} F(x) for every axis, level I and p >= I.
fn natural(x: &Subcomplex, checked: &mut usize) -> Result<Option<String>> {
    let top = x.dim();
    for axis in 0..3 {
        let high = x.atoms().iter().map(|a| a.d(axis)).max().unwrap_or(0);
        for level in 0..=high {
            let fx = x.project(axis, level)?;
            for p in level..=top {
                for g in Sign::BOTH {
                    let lhs = molecule_d(x, p, g)?.project(axis, level)?;
                    let rhs = if fx.is_empty() { fx.clone() } else { molecule_d(&fx, p - level, g)? };
                    *checked += 1;
                    if lhs != rhs {
                        return Ok(Some(format!("{x} axis {} level {level} p {p} {g:?}", axis + 1)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn c10(notes: &mut Vec<String>) -> Result<bool> {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    let x = sub(Signature::plain(3), PAIRWISE_EXAMPLE);
    bad.extend(natural(&x, &mut checked)?);
    let on_example = checked;
    let (_, mols) = oracle_molecules(&[1, 1, 1])?;
    let mut lifts = 0usize;
    for m in &mols {
        for l in molecular_lifts(m, triple_ok)? {
            lifts += 1;
            bad.extend(natural(&l, &mut checked)?);
        }
    }
    notes.push(format!(
        "{on_example} identities on the example, {} on {lifts} cube lifts, {} failures",
        checked - on_example,
        bad.len()
    ));
    notes.extend(bad.iter().take(3).map(|b| format!("  {b}")));
    Ok(bad.is_empty())
}

const CRITERIA: [(&str, Criterion); 10] = [
    ("cube catalog from the oracle", c1),
    ("checker against oracle on down-closed sets", c2),
    ("two-factor boundaries and composite", c3),
    ("pairwise example: checkers, adjacency, projections", c4),
    ("(1,2)-adjacent yet not adjacent", c5),
    ("decomposition round trips", c6),
    ("axiom suite", c7),
    ("equivalence of the characterizations", c8),
    ("enumeration against oracle", c9),
    ("projection naturality", c10),
];

fn main() {
    let mut failed = 0;
    for (k, (name, run)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let mut notes = Vec::new();
        let verdict = catch_unwind(AssertUnwindSafe(|| run(&mut notes)));
        let secs = start.elapsed().as_secs_f64();
        let ok = match verdict {
            Ok(Ok(ok)) => ok,
            Ok(Err(e)) => {
                notes.push(format!("error: {e}"));
                false
            }
            Err(_) => {
                notes.push("panicked".into());
                false
            }
        };
        failed += !ok as usize;
        println!("criterion {}: {} {name} ({secs:.1} s)", k + 1, if ok { "PASS" } else { "FAIL" });
        for n in notes {
            println!("    {n}");
        }
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
