use std::collections::BTreeSet;

use globemol::enumerate::{enumerate3, validate_maximal_atom_set, EnumMode};
use globemol::oracle::Oracle;
use globemol::triple::{triple_is_pairwise_def, triple_is_pairwise_explicit};
use globemol::{ProductAtom, Signature, Subcomplex};

fn oracle_set(caps: [u32; 3]) -> BTreeSet<String> {
    let sig = Signature::capped(&caps).unwrap();
    let o = Oracle::new(&sig).unwrap();
    let cx = o.complex();
    o.molecules().unwrap().to_subcomplexes(cx).iter().map(|x| x.to_string()).collect()
}

fn catalog(caps: [u32; 3]) -> BTreeSet<String> {
    enumerate3(caps, EnumMode::Capped).unwrap().iter().map(|x| x.to_string()).collect()
}

#[test]
fn capped_catalog_matches_oracle() {
    for caps in [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 1], [1, 1, 1], [2, 1, 1], [1, 2, 1], [1, 1, 2], [2, 2, 0]] {
        let (ours, theirs) = (catalog(caps), oracle_set(caps));
        let missing: Vec<_> = theirs.difference(&ours).take(5).collect();
        let extra: Vec<_> = ours.difference(&theirs).take(5).collect();
        assert!(missing.is_empty() && extra.is_empty(), "{caps:?}: missing {missing:?} extra {extra:?}");
    }
}

#[test]
fn signed_catalog_is_sound() {
    let s3 = Signature::plain(3);
    for caps in [[2, 1, 1], [1, 2, 1], [2, 2, 2]] {
        let cat = enumerate3(caps, EnumMode::Signed).unwrap();
        assert!(!cat.is_empty());
        for x in &cat {
            assert!(triple_is_pairwise_def(x).unwrap().ok(), "{x}");
            assert!(validate_maximal_atom_set(&s3, x.atoms()).unwrap().ok(), "{x}");
        }
        let sorted: Vec<String> = cat.iter().map(|x| x.to_string()).collect();
        let mut again = sorted.clone();
        again.sort();
        assert_eq!(sorted, again);
    }
}

fn antichains(bound: u32, visit: &mut dyn FnMut(&[[u32; 3]])) {
    let pts: Vec<[u32; 3]> = (0..=bound)
        .flat_map(|i| (0..=bound).flat_map(move |j| (0..=bound).map(move |k| [i, j, k])))
        .collect();
    fn rec(pts: &[[u32; 3]], idx: usize, cur: &mut Vec<[u32; 3]>, visit: &mut dyn FnMut(&[[u32; 3]])) {
        if idx == pts.len() {
            visit(cur);
            return;
        }
        rec(pts, idx + 1, cur, visit);
        let p = pts[idx];
        let le = |a: &[u32; 3], b: &[u32; 3]| (0..3).all(|f| a[f] <= b[f]);
        if cur.iter().all(|q| !le(&p, q) && !le(q, &p)) {
            cur.push(p);
            rec(pts, idx + 1, cur, visit);
            cur.pop();
        }
    }
    rec(&pts, 0, &mut Vec::new(), visit);
}

#[test]
fn level_clauses_agree_with_explicit_check() {
    use globemol::Sign;
    let s3 = Signature::plain(3);
    let mut checked = 0usize;
    antichains(2, &mut |dims| {
        if dims.is_empty() {
            return;
        }
        let n = dims.len();
        for mask in 0u32..(1 << (3 * n)) {
            let atoms: Vec<ProductAtom> = dims
                .iter()
                .enumerate()
                .map(|(t, d)| {
                    let sg = |f: usize| if mask >> (3 * t + f) & 1 == 1 { Sign::Plus } else { Sign::Minus };
                    ProductAtom::signed(&[(d[0], sg(0)), (d[1], sg(1)), (d[2], sg(2))])
                })
                .collect();
            let x = Subcomplex::new(s3, atoms.clone()).unwrap();
            let a = validate_maximal_atom_set(&s3, &atoms).unwrap();
            let b = triple_is_pairwise_explicit(&x).unwrap();
            assert_eq!(a.ok(), b.ok(), "{x}: {a} vs {b}");
            checked += 1;
        }
    });
    assert!(checked > 1000);
}
