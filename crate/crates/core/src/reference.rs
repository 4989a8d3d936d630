//! Worked examples with known answers, and a runner that checks them all.

use crate::atom::{atom_boundary, atom_intersect, ProductAtom, Sign, Signature};
use crate::catalog::Catalog;
use crate::enumerate::{
    enumerate3, level_state, next_level_choices, validate_maximal_atom_set, EnumMode,
};
use crate::error::Result;
use crate::expr::MoleculeExpr;
use crate::oracle::{build_complex, signed_lifts, Oracle};
use crate::pair::{pair_compose, pair_d, pair_is_molecule};
use crate::quad::st_adjacent4;
use crate::subcomplex::Subcomplex;
use crate::triple::{
    adjacent3, decompose3, projection_maximal3, st_adjacent3, triple_d, triple_is_pairwise_def,
    triple_is_pairwise_explicit,
};

/// Ten maximal atoms of a three-factor molecule.
pub const PAIRWISE_EXAMPLE: &str = "(8+,2+,1-);(5-,2+,5-);(1-,2+,8+);(9+,1-,2+);(4-,1-,6+);\
    (0+,1+,9+);(8-,0-,5-);(5-,0+,6+);(4-,0-,7+);(2-,0-,9+)";

/// Two two-factor molecules composable at level 5.
pub const PAIR_MINUS: &str = "(5-,0+);(4-,2+);(2-,3-);(1-,4+);(0-,5+)";
pub const PAIR_PLUS: &str = "(6+,0-);(5-,1+);(3+,2+);(2-,4+);(0-,5+)";
/// Their common 5-boundary and their composite.
pub const PAIR_MIDDLE: &str = "(5-,0+);(4-,1+);(3+,2+);(2-,3-);(1-,4+);(0-,5+)";
pub const PAIR_COMPOSITE: &str = "(6+,0-);(5-,1+);(4-,2+);(2-,4+);(0-,5+)";
/// Four atoms with pairwise equal dimensions; fails condition 1.
pub const EQUAL_DIMS: &str = "(1+,1+,1+);(1+,1-,1-);(1-,1+,1-);(1-,1-,1+)";

/// Adjacent pairs of maximal atoms of [`PAIRWISE_EXAMPLE`].
pub const PAIRWISE_ADJACENT: [(&str, &str); 17] = [
    ("(8+,2+,1-)", "(5-,2+,5-)"),
    ("(8+,2+,1-)", "(9+,1-,2+)"),
    ("(5-,2+,5-)", "(1-,2+,8+)"),
    ("(5-,2+,5-)", "(9+,1-,2+)"),
    ("(5-,2+,5-)", "(4-,1-,6+)"),
    ("(5-,2+,5-)", "(8-,0-,5-)"),
    ("(5-,2+,5-)", "(5-,0+,6+)"),
    ("(1-,2+,8+)", "(9+,1-,2+)"),
    ("(1-,2+,8+)", "(4-,1-,6+)"),
    ("(1-,2+,8+)", "(0+,1+,9+)"),
    ("(1-,2+,8+)", "(2-,0-,9+)"),
    ("(9+,1-,2+)", "(8-,0-,5-)"),
    ("(4-,1-,6+)", "(4-,0-,7+)"),
    ("(0+,1+,9+)", "(2-,0-,9+)"),
    ("(8-,0-,5-)", "(5-,0+,6+)"),
    ("(5-,0+,6+)", "(4-,0-,7+)"),
    ("(4-,0-,7+)", "(2-,0-,9+)"),
];

/// Maximal atoms of [`PAIRWISE_EXAMPLE`] whose middle projection at level
/// 0, 1, 2 stays maximal.
pub const PAIRWISE_PROJECTION_MAXIMAL: [&str; 3] = [
    "(9+,1-,2+);(8-,0-,5-);(5-,0+,6+);(4-,0-,7+);(2-,0-,9+)",
    "(9+,1-,2+);(5-,2+,5-);(4-,1-,6+);(1-,2+,8+);(0+,1+,9+)",
    "(8+,2+,1-);(5-,2+,5-);(1-,2+,8+)",
];

/// Image of [`PAIRWISE_EXAMPLE`] under the middle projection at level 1.
pub const PAIRWISE_MIDDLE_1: &str = "(9+,2+);(5-,5-);(4-,6+);(1-,8+);(0+,9+)";

/// Molecules of the product of three 1-dimensional globes, numbered 1 to 57.
pub const CUBE_LIST: &str = include_str!("../data/cube_list.txt");

/// Item 31 of [`CUBE_LIST`] and a composite of atoms that gives it.
pub const CUBE_ITEM31: &str = "(1*,1*,0-);(1*,0+,1*)";
pub const CUBE_ITEM31_EXPR: &str = "(((0-,1*,0-)#0(1*,0+,1*))#1((1*,1*,0-)#0(0+,0+,1*)))";

/// Parses [`CUBE_LIST`] into `(number, subcomplex)` pairs.
pub fn cube_list() -> Result<Vec<(u32, Subcomplex)>> {
    let cube = Signature::capped(&[1, 1, 1])?;
    let mut out = Vec::new();
    for line in CUBE_LIST.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (num, atoms) = line.split_once(' ').unwrap_or((line, ""));
        let num = num.parse().map_err(|_| crate::Error::Catalog(format!("bad item number in `{line}`")))?;
        out.push((num, Subcomplex::parse(cube, atoms)?));
    }
    Ok(out)
}

/// Result of one worked example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    /// Error text when the example could not be evaluated.
    pub error: Option<String>,
}

type Check = fn() -> Result<bool>;

fn sub(sig: Signature, s: &str) -> Result<Subcomplex> {
    Subcomplex::parse(sig, s)
}

fn at(s: &str) -> Result<ProductAtom> {
    s.parse()
}

fn pairwise() -> Result<Subcomplex> {
    sub(Signature::plain(3), PAIRWISE_EXAMPLE)
}

fn cube() -> Result<Signature> {
    Signature::capped(&[1, 1, 1])
}

const CHECKS: &[(&str, Check)] = &[
    ("atom dimension", || Ok(at("(8+,2+,1-)")?.dim() == 11)),
    ("atom containment in the cube", || {
        Ok(crate::atom::atom_contains(&at("(1*,1*,0-)")?, &at("(0-,1*,0-)")?))
    }),
    ("source of the cube", || {
        let c = cube()?;
        Ok(atom_boundary(&c, &at("(1*,1*,1*)")?, Sign::Minus)?
            == sub(c, "(0-,1*,1*);(1*,0+,1*);(1*,1*,0-)")?)
    }),
    ("source of the 2-by-1 globe", || {
        let c = Signature::capped(&[2, 1])?;
        Ok(atom_boundary(&c, &at("(2*,1*)")?, Sign::Minus)? == sub(c, "(1-,1*);(2*,0-)")?)
    }),
    ("intersections in the cube", || {
        let c = cube()?;
        Ok(atom_intersect(&c, &at("(1*,1*,0-)")?, &at("(0-,1*,1*)")?) == sub(c, "(0-,1*,0-)")?
            && atom_intersect(&c, &at("(1*,0-,0-)")?, &at("(0-,1*,0-)")?) == sub(c, "(0-,0-,0-)")?)
    }),
    ("pairwise example keeps its ten atoms", || Ok(pairwise()?.len() == 10)),
    ("union giving cube item 31", || {
        let c = cube()?;
        Ok(sub(c, "(1*,1*,0-)")?.union(&sub(c, "(1*,0+,1*)")?)? == sub(c, CUBE_ITEM31)?)
    }),
    ("intersection of the two-factor pair", || {
        let s2 = Signature::plain(2);
        Ok(sub(s2, PAIR_MINUS)?.intersect(&sub(s2, PAIR_PLUS)?)? == sub(s2, PAIR_MIDDLE)?)
    }),
    ("cube item 31 contains an edge", || Ok(sub(cube()?, CUBE_ITEM31)?.contains_atom(&at("(0-,1*,0-)")?))),
    ("condition 1", || {
        let s3 = Signature::plain(3);
        Ok(pairwise()?.is_condition1()? && !sub(s3, EQUAL_DIMS)?.is_condition1()?)
    }),
    ("two-factor pair are molecules", || {
        let s2 = Signature::plain(2);
        Ok(pair_is_molecule(&sub(s2, PAIR_MINUS)?)?.ok() && pair_is_molecule(&sub(s2, PAIR_PLUS)?)?.ok())
    }),
    ("two-factor boundaries meet", || {
        let s2 = Signature::plain(2);
        let mid = sub(s2, PAIR_MIDDLE)?;
        Ok(pair_d(&sub(s2, PAIR_MINUS)?, 5, Sign::Plus)? == mid
            && pair_d(&sub(s2, PAIR_PLUS)?, 5, Sign::Minus)? == mid)
    }),
    ("two-factor composite", || {
        let s2 = Signature::plain(2);
        Ok(pair_compose(&sub(s2, PAIR_MINUS)?, 5, &sub(s2, PAIR_PLUS)?)? == sub(s2, PAIR_COMPOSITE)?)
    }),
    ("middle projections of the pairwise example", || {
        let x = pairwise()?;
        let p1 = x.project(1, 1)?;
        Ok(p1 == sub(*p1.signature(), PAIRWISE_MIDDLE_1)? && x.project(1, 3)?.is_empty())
    }),
    ("pairwise example is a molecule", || {
        let x = pairwise()?;
        Ok(triple_is_pairwise_def(&x)?.ok() && triple_is_pairwise_explicit(&x)?.ok())
    }),
    ("equal dimensions violate condition 1", || {
        let y = sub(Signature::plain(3), EQUAL_DIMS)?;
        let tag = |v: crate::triple::TripleVerdict| v.violation().map(|v| v.tag());
        Ok(tag(triple_is_pairwise_def(&y)?) == Some("cond1")
            && tag(triple_is_pairwise_explicit(&y)?) == Some("cond1"))
    }),
    ("the seventeen adjacent pairs", || {
        let x = pairwise()?;
        let mut expected = Vec::new();
        for (a, b) in PAIRWISE_ADJACENT {
            let (a, b) = (at(a)?, at(b)?);
            expected.push((a.min(b), a.max(b)));
        }
        expected.sort();
        let mut found = Vec::new();
        for (i, a) in x.atoms().iter().enumerate() {
            for b in &x.atoms()[i + 1..] {
                if adjacent3(a, b, &x)? {
                    found.push((*a.min(b), *a.max(b)));
                }
            }
        }
        found.sort();
        Ok(found == expected)
    }),
    ("projection-maximal atoms by level", || {
        let x = pairwise()?;
        for (level, list) in PAIRWISE_PROJECTION_MAXIMAL.iter().enumerate() {
            let mut want: Vec<ProductAtom> = list.split(';').map(at).collect::<Result<_>>()?;
            want.sort();
            let mut got = Vec::new();
            for a in x.atoms() {
                if projection_maximal3(a, &x, 1, level as u32)? {
                    got.push(*a);
                }
            }
            got.sort();
            if got != want {
                return Ok(false);
            }
        }
        let none_above = x.atoms().iter().all(|a| !projection_maximal3(a, &x, 1, 3).unwrap_or(true));
        Ok(none_above
            && projection_maximal3(&at("(8+,2+,1-)")?, &x, 1, 2)?
            && !projection_maximal3(&at("(8+,2+,1-)")?, &x, 1, 1)?)
    }),
    ("a non-adjacent pair", || {
        let x = pairwise()?;
        Ok(adjacent3(&at("(8+,2+,1-)")?, &at("(5-,2+,5-)")?, &x)?
            && !adjacent3(&at("(5-,2+,5-)")?, &at("(4-,0-,7+)")?, &x)?
            && !adjacent3(&at("(8+,2+,1-)")?, &at("(1-,2+,8+)")?, &x)?)
    }),
    ("the non-adjacent pair is (1,2)-adjacent", || {
        let x = pairwise()?;
        st_adjacent3(&at("(5-,2+,5-)")?, &at("(4-,0-,7+)")?, &x, 0, 1)
    }),
    ("projection commutes with boundaries", || {
        let x = pairwise()?;
        for g in Sign::BOTH {
            let lhs = triple_d(&x, 10, g)?.project(1, 1)?;
            let rhs = pair_d(&x.project(1, 1)?, 9, g)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("atom composite for cube item 31", || {
        let c = cube()?;
        Ok(MoleculeExpr::parse(&c, CUBE_ITEM31_EXPR)?.evaluate(&c)? == sub(c, CUBE_ITEM31)?)
    }),
    ("decomposing cube item 31", || {
        let x = sub(cube()?, CUBE_ITEM31)?;
        for lift in signed_lifts(&x) {
            if triple_is_pairwise_def(&lift)?.ok() {
                let e = decompose3(&lift)?;
                return Ok(e.leaf_count() == 4 && e.evaluate(lift.signature())? == lift);
            }
        }
        Ok(false)
    }),
    ("level clauses accept the pairwise example", || {
        let x = pairwise()?;
        Ok(validate_maximal_atom_set(x.signature(), x.atoms())?.ok())
    }),
    ("empty levels", || {
        let one = level_state(0, &[at("(1+,1-,1+)")?], [2, 2, 2])?;
        let two = level_state(0, &[at("(1-,1+,0-)")?, at("(0-,1+,1+)")?], [2, 2, 2])?;
        Ok(next_level_choices(&one).iter().any(|c| c.atoms_at_level.is_empty())
            && next_level_choices(&two).iter().all(|c| !c.atoms_at_level.is_empty()))
    }),
    ("enumerated cube list", || {
        let mut want: Vec<String> = cube_list()?.iter().map(|(_, x)| x.to_string()).collect();
        want.sort();
        let got: Vec<String> =
            enumerate3([1, 1, 1], EnumMode::Capped)?.iter().map(|x| x.to_string()).collect();
        Ok(want.len() == 57 && got == want)
    }),
    ("(1,2)-adjacency blocked by a third atom", || {
        let s4 = Signature::plain(4);
        let (l, m) = (at("(5+,0-,1+,1+)")?, at("(0-,5+,1+,2+)")?);
        let with = sub(s4, "(5+,0-,1+,1+);(0-,5+,1+,2+);(1-,1-,2+,1-)")?;
        let without = sub(s4, "(5+,0-,1+,1+);(0-,5+,1+,2+)")?;
        Ok(!st_adjacent4(&l, &m, &with, 0, 1)? && st_adjacent4(&l, &m, &without, 0, 1)?)
    }),
    ("atom counts", || Ok(build_complex(&[1, 1, 1])?.len() == 27 && build_complex(&[2, 1])?.len() == 15)),
    ("oracle boundaries", || {
        let cx = build_complex(&[1, 1, 1])?;
        let c = *cx.signature();
        let ok = cx.d_sub(&sub(c, "(1*,1*,1*)")?, 2, Sign::Minus)?
            == sub(c, "(1*,1*,0-);(0-,1*,1*);(1*,0+,1*)")?;
        let cy = build_complex(&[2, 1])?;
        let g = *cy.signature();
        Ok(ok && cy.d_sub(&sub(g, "(2*,1*)")?, 2, Sign::Minus)? == sub(g, "(1-,1*);(2*,0-)")?)
    }),
    ("oracle cube list", || {
        let o = Oracle::new(&cube()?)?;
        let mut got: Vec<String> =
            o.molecules()?.to_subcomplexes(o.complex()).iter().map(|x| x.to_string()).collect();
        got.sort();
        let mut want: Vec<String> = cube_list()?.iter().map(|(_, x)| x.to_string()).collect();
        want.sort();
        Ok(got == want && o.is_molecule(&sub(cube()?, CUBE_ITEM31)?)?)
    }),
    ("serialization round trip", || {
        let x = pairwise()?;
        Ok(sub(*x.signature(), &x.to_string())? == x)
    }),
    ("cube catalog round trip", || {
        let c = cube()?;
        let cat = Catalog::new(c, cube_list()?.into_iter().map(|(_, x)| x).collect())?;
        Ok(cat.len() == 57 && Catalog::parse(&cat.to_text())? == cat)
    }),
];

/// Runs every worked example.
pub fn run_worked_examples() -> Vec<Outcome> {
    CHECKS
        .iter()
        .map(|(name, check)| match check() {
            Ok(passed) => Outcome { name, passed, error: None },
            Err(e) => Outcome { name, passed: false, error: Some(e.to_string()) },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_list_parses() {
        let items = cube_list().unwrap();
        assert_eq!(items.len(), 57);
        assert!(items.iter().enumerate().all(|(i, (n, _))| *n as usize == i + 1));
        assert_eq!(items[30].1, Subcomplex::parse(cube().unwrap(), CUBE_ITEM31).unwrap());
    }

    #[test]
    fn worked_examples() {
        for o in run_worked_examples() {
            assert_eq!(o.error, None, "{}", o.name);
            // These two disagree with the definitions they cite. The pair
            // (5-,2+,5-), (4-,0-,7+) crosses in neither order of the first
            // two factors. The listed pair (1-,2+,8+), (9+,1-,2+) is
            // separated by (5-,2+,5-), while (4-,1-,6+), (5-,0+,6+) is
            // adjacent and missing.
            let expected = !matches!(
                o.name,
                "the non-adjacent pair is (1,2)-adjacent" | "the seventeen adjacent pairs"
            );
            assert_eq!(o.passed, expected, "{}", o.name);
        }
    }
}
