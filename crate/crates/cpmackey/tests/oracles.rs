mod common;

use common::{hom_count, snf_violations, solve_agrees};
use cpmackey::module::hom_space;
use cpmackey::{FGModule, GroundRing, Mat, ModuleMap};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Mat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r)
            .prop_map(move |rows| Mat::from_rows(&rows, c))
    })
}

fn ring() -> impl Strategy<Value = GroundRing> {
    prop_oneof![
        Just(GroundRing::Integers),
        Just(GroundRing::PrimeField(2)),
        Just(GroundRing::PrimeField(3)),
        Just(GroundRing::PrimeField(7)),
        Just(GroundRing::ModRing(4)),
        Just(GroundRing::ModRing(6)),
    ]
}

/// A finite module over Z: torsion relations on every generator plus random extra relations.
fn finite_module() -> impl Strategy<Value = FGModule> {
    (1usize..=2, proptest::collection::vec(2i64..=4, 2), matrix(2, 2, 3)).prop_map(|(g, orders, extra)| {
        let mut rels = Mat::diag(&orders[..g]);
        let extra = extra.block(0, 0, g.min(extra.rows()), extra.cols());
        if extra.rows() == g {
            rels = rels.hstack(&extra);
        }
        FGModule::new(GroundRing::Integers, g, rels).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(common::seed()),
        ..ProptestConfig::default()
    })]

    #[test]
    fn smith_form_postconditions(m in matrix(5, 5, 9)) {
        let bad = snf_violations(&m);
        prop_assert!(bad.is_empty(), "{:?}: {:?}", m, bad);
    }

    #[test]
    fn solve_matches_exhaustive_search(r in ring(), a in matrix(3, 3, 3), x in proptest::collection::vec(-3i64..=3, 3), b in proptest::collection::vec(-6i64..=6, 3), solvable in any::<bool>()) {
        let a = a.map(|v| r.reduce(v));
        let rhs: Vec<i64> = if solvable { a.mul_vec(&x[..a.cols()]) } else { b[..a.rows()].to_vec() };
        let rhs: Vec<i64> = rhs.into_iter().map(|v| r.reduce(v)).collect();
        prop_assert_eq!(solve_agrees(&a, &rhs, r), Ok(()));
    }

    #[test]
    fn hom_space_matches_enumeration(m in finite_module(), n in finite_module()) {
        let h = hom_space(&m, &n).unwrap();
        prop_assert_eq!(h.module.order(), Some(hom_count(&m, &n) as i64));
        for f in &h.maps {
            prop_assert!(ModuleMap::new(m.clone(), n.clone(), f.clone()).is_ok());
        }
    }
}
