use std::sync::OnceLock;

use proptest::prelude::*;

use globemol::atom::{atom_contains, atom_d, atom_intersect};
use globemol::catalog::Catalog;
use globemol::enumerate::{enumerate3, EnumMode};
use globemol::molecule::{decompose, is_molecule, molecule_compose, molecule_d};
use globemol::oracle::{CellComplex, Oracle};
use globemol::{MoleculeExpr, ProductAtom, Sign, Signature, Subcomplex};

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Minus), Just(Sign::Plus)]
}

fn atom(arity: usize, max_dim: u32) -> impl Strategy<Value = ProductAtom> {
    prop::collection::vec((0..=max_dim, sign()), arity).prop_map(|p| ProductAtom::signed(&p))
}

fn twists(arity: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..2, arity)
}

fn sub(arity: usize, max_dim: u32) -> impl Strategy<Value = Subcomplex> {
    prop::collection::vec(atom(arity, max_dim), 0..5)
        .prop_map(move |v| Subcomplex::new(Signature::plain(arity), v).unwrap())
}

/// Signed three-factor molecules with every dimension at most 2.
fn signed_catalog() -> &'static [Subcomplex] {
    static CAT: OnceLock<Vec<Subcomplex>> = OnceLock::new();
    CAT.get_or_init(|| enumerate3([2, 2, 2], EnumMode::Signed).unwrap())
}

fn molecule3() -> impl Strategy<Value = Subcomplex> {
    (0..signed_catalog().len()).prop_map(|i| signed_catalog()[i].clone())
}

fn pair_molecule() -> impl Strategy<Value = Subcomplex> {
    // staircases: first dims strictly decreasing, second strictly increasing
    (prop::collection::btree_set(0u32..6, 1..5), prop::collection::vec(0u32..2, 8), sign()).prop_map(
        |(firsts, gaps, s0)| {
            let firsts: Vec<u32> = firsts.into_iter().rev().collect();
            let mut j = 0u32;
            let mut atoms = Vec::new();
            let mut prev_second = Sign::Plus;
            for (t, &i) in firsts.iter().enumerate() {
                if t > 0 {
                    j += 1 + gaps[t];
                }
                // the second sign of the previous atom fixes the first sign here
                let first = if t == 0 { s0 } else { -prev_second.pow(i) };
                let second = if gaps[t + 1] == 0 { Sign::Minus } else { Sign::Plus };
                atoms.push(ProductAtom::signed(&[(i, first), (j, second)]));
                prev_second = second;
            }
            Subcomplex::new(Signature::plain(2), atoms).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn containment_is_a_partial_order(a in atom(3, 3), b in atom(3, 3), c in atom(3, 3)) {
        prop_assert!(atom_contains(&a, &a));
        if atom_contains(&a, &b) && atom_contains(&b, &a) {
            prop_assert_eq!(a, b);
        }
        if atom_contains(&a, &b) && atom_contains(&b, &c) {
            prop_assert!(atom_contains(&a, &c));
        }
    }

    #[test]
    fn atom_boundaries_are_globular(a in atom(3, 3), t in twists(3), p in 0u32..10, q in 0u32..10, g in sign(), h in sign()) {
        let sig = Signature::plain(3).with_twists(&t).unwrap();
        let (p, q) = (p.min(q), p.max(q));
        let once = atom_d(&sig, &a, p, g);
        if p < q {
            prop_assert_eq!(molecule_d(&atom_d(&sig, &a, q, h), p, g).unwrap(), once.clone());
        }
        prop_assert!(Subcomplex::atom(sig, a).unwrap().contains(&once));
        if p >= a.dim() {
            prop_assert_eq!(once, Subcomplex::atom(sig, a).unwrap());
        }
    }

    #[test]
    fn intersection_is_symmetric_and_below_both(a in atom(3, 3), b in atom(3, 3)) {
        let sig = Signature::plain(3);
        let ab = atom_intersect(&sig, &a, &b);
        prop_assert_eq!(&ab, &atom_intersect(&sig, &b, &a));
        prop_assert!(Subcomplex::atom(sig, a).unwrap().contains(&ab));
        prop_assert!(Subcomplex::atom(sig, b).unwrap().contains(&ab));
    }

    #[test]
    fn subcomplex_lattice_laws(x in sub(3, 3), y in sub(3, 3), z in sub(3, 3)) {
        let u = |a: &Subcomplex, b: &Subcomplex| a.union(b).unwrap();
        let i = |a: &Subcomplex, b: &Subcomplex| a.intersect(b).unwrap();
        prop_assert_eq!(u(&x, &y), u(&y, &x));
        prop_assert_eq!(i(&x, &y), i(&y, &x));
        prop_assert_eq!(u(&u(&x, &y), &z), u(&x, &u(&y, &z)));
        prop_assert_eq!(i(&i(&x, &y), &z), i(&x, &i(&y, &z)));
        prop_assert_eq!(u(&x, &x), x.clone());
        prop_assert_eq!(u(&x, &i(&x, &y)), x.clone());
        prop_assert_eq!(i(&x, &u(&x, &y)), x.clone());
        prop_assert!(u(&x, &y).contains(&x));
        prop_assert!(x.contains(&i(&x, &y)));
        prop_assert_eq!(x.contains(&y), u(&x, &y) == x);
    }

    #[test]
    fn text_round_trip(x in sub(4, 4), t in twists(4)) {
        let x = x.retwist(Signature::plain(4).with_twists(&t).unwrap()).unwrap();
        prop_assert_eq!(Subcomplex::parse(*x.signature(), &x.to_string()).unwrap(), x);
    }

    #[test]
    fn retwisting_is_an_isomorphism(x in molecule3(), t in twists(3), p in 0u32..7, g in sign()) {
        let target = Signature::plain(3).with_twists(&t).unwrap();
        let y = x.retwist(target).unwrap();
        prop_assert!(is_molecule(&y).unwrap());
        prop_assert_eq!(
            molecule_d(&y, p, g).unwrap(),
            molecule_d(&x, p, g).unwrap().retwist(target).unwrap()
        );
        prop_assert_eq!(y.retwist(Signature::plain(3)).unwrap(), x);
    }

    #[test]
    fn generated_staircases_are_molecules(x in pair_molecule(), p in 0u32..12) {
        prop_assert!(is_molecule(&x).unwrap(), "{}", x);
        let e = decompose(&x).unwrap();
        prop_assert_eq!(e.evaluate(x.signature()).unwrap(), x.clone());
        for g in Sign::BOTH {
            prop_assert!(is_molecule(&molecule_d(&x, p, g).unwrap()).unwrap());
        }
    }

    #[test]
    fn molecule_boundaries_are_globular(x in molecule3(), p in 0u32..7, q in 0u32..7, g in sign(), h in sign()) {
        let (p, q) = (p.min(q), p.max(q));
        let dq = molecule_d(&x, q, h).unwrap();
        prop_assert!(is_molecule(&dq).unwrap());
        prop_assert!(x.contains(&dq));
        if p < q {
            prop_assert_eq!(molecule_d(&dq, p, g).unwrap(), molecule_d(&x, p, g).unwrap());
        }
    }

    #[test]
    fn boundaries_are_units(x in molecule3(), p in 0u32..7) {
        let minus = molecule_d(&x, p, Sign::Minus).unwrap();
        let plus = molecule_d(&x, p, Sign::Plus).unwrap();
        prop_assert_eq!(molecule_compose(&minus, p, &x).unwrap(), x.clone());
        prop_assert_eq!(molecule_compose(&x, p, &plus).unwrap(), x.clone());
    }

    #[test]
    fn projections_are_natural(x in molecule3(), axis in 0usize..3, level in 0u32..3, p in 0u32..7, g in sign()) {
        let fx = x.project(axis, level).unwrap();
        prop_assume!(!fx.is_empty() && p >= level);
        prop_assert!(is_molecule(&fx).unwrap());
        prop_assert_eq!(
            molecule_d(&x, p, g).unwrap().project(axis, level).unwrap(),
            molecule_d(&fx, p - level, g).unwrap()
        );
    }

    #[test]
    fn decomposition_round_trips(x in molecule3()) {
        let e = decompose(&x).unwrap();
        prop_assert_eq!(e.evaluate(x.signature()).unwrap(), x.clone());
        let text = e.to_string();
        prop_assert_eq!(MoleculeExpr::parse(x.signature(), &text).unwrap(), e.clone());
        let leaves = e.leaves();
        prop_assert!(x.atoms().iter().all(|a| leaves.contains(a)));
        prop_assert!(leaves.iter().all(|l| x.contains_atom(l)));
    }

    #[test]
    fn catalog_round_trip(picks in prop::collection::vec(0..signed_catalog().len(), 0..20)) {
        let entries: Vec<Subcomplex> = picks.iter().map(|&i| signed_catalog()[i].clone()).collect();
        let cat = Catalog::new(Signature::plain(3), entries).unwrap();
        prop_assert_eq!(Catalog::parse(&cat.to_text()).unwrap(), cat);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_boundaries_commute_with_retwisting(caps in prop::collection::vec(0u32..3, 2), t in twists(2), i in 0usize..64, p in 0u32..5, g in sign()) {
        let plain = Signature::capped(&caps).unwrap();
        let twisted = plain.with_twists(&t).unwrap();
        let (a, b) = (CellComplex::build(&plain).unwrap(), CellComplex::build(&twisted).unwrap());
        let x = Subcomplex::atom(plain, a.atoms()[i % a.len()]).unwrap();
        let y = x.retwist(twisted).unwrap();
        prop_assert_eq!(b.d_sub(&y, p, g).unwrap(), a.d_sub(&x, p, g).unwrap().retwist(twisted).unwrap());
        let oracle = Oracle::new(&twisted).unwrap();
        prop_assert!(oracle.is_molecule(&y).unwrap());
    }
}
