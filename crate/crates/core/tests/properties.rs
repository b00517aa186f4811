use std::collections::HashMap;

use num_traits::{One, Zero};
use proptest::prelude::*;

use nested_arches::cyclo::Cyclo;
use nested_arches::fourarch::{d0_reduction, FourArchParams};
use nested_arches::fpl::{fpl_counts, FplCensus};
use nested_arches::linkpat::{enumerate_patterns, FourArchSpec, LinkPattern, NestedArchSpec};
use nested_arches::mvpoly::{interpolate, MultiPoly, VarTable};
use nested_arches::nested::{phi_det, phi_lgv, phi_subset, ParamSet};
use nested_arches::scalar::{rational, Field};
use nested_arches::tilings::{build_hexagon, check_swap_symmetry, region_from_text, region_to_text, WeightMode};
use nested_arches::CycloNum;

fn cyclo() -> impl Strategy<Value = CycloNum> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| Cyclo::new(rational(a, b), rational(c, d)))
}

fn distinct(k: usize) -> impl Strategy<Value = Vec<CycloNum>> {
    proptest::collection::btree_set(-1000i64..1000, k).prop_map(|s| s.into_iter().map(|x| Cyclo::new(rational(x, 1), rational(x % 7, 3))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(x in cyclo(), y in cyclo(), z in cyclo()) {
        prop_assert_eq!((x.clone() + &y) * &z, x.clone() * &z + &(y.clone() * &z));
        prop_assert_eq!(x.clone() * &y, y.clone() * &x);
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * &x.inv().unwrap(), CycloNum::one());
        }
    }

    #[test]
    fn cyclo_text_round_trip(x in cyclo()) {
        prop_assert_eq!(x.to_string().parse::<CycloNum>().unwrap(), x);
    }

    #[test]
    fn interpolation_recovers_polynomial(coeffs in proptest::collection::vec(-20i64..20, 12)) {
        let table = VarTable::numbered("x", 2);
        let terms = coeffs.iter().enumerate().map(|(k, &c)| (vec![(k / 4) as u32, (k % 4) as u32], Cyclo::from_base(rational(c, 1))));
        let p = MultiPoly::from_terms(&table, terms).unwrap();
        let mut samples = Vec::new();
        for i in 0..3 {
            for j in 0..4 {
                let pt = vec![CycloNum::from_i64(i + 1), CycloNum::from_i64(2 * j - 3)];
                samples.push((pt.clone(), p.eval_slice(&pt)));
            }
        }
        prop_assert_eq!(interpolate(&table, &samples, &[2, 3]).unwrap(), p);
    }

    #[test]
    fn little_arch_round_trip(n in 1usize..6, pick in 0usize..1000, at in 0usize..20) {
        let pats = enumerate_patterns(n);
        let p = &pats[pick % pats.len()];
        let i = at % (p.size() + 1);
        let q = p.insert_little_arch(i);
        prop_assert!(q.has_little_arch(i));
        prop_assert_eq!(&q.remove_little_arch(i).unwrap(), p);
        prop_assert_eq!(&p.rotate(p.size()), p);
        prop_assert_eq!(&LinkPattern::from_word(&p.to_word()).unwrap(), p);
    }

    #[test]
    fn phi_methods_agree(a in 0usize..3, b in 0usize..3, c in 0usize..3, xs in distinct(12)) {
        prop_assume!(a + b + c > 0);
        let spec = NestedArchSpec::new(a, b, c);
        let [na, nb, ng] = spec.block_sizes();
        let p = ParamSet { alphas: xs[..na].to_vec(), betas: xs[6..6 + nb].to_vec(), gammas: xs[na..na + ng].to_vec() };
        if let Ok(s) = phi_subset(spec, &p) {
            prop_assert_eq!(&phi_det(spec, &p).unwrap(), &s);
            prop_assert_eq!(&phi_lgv(spec, &p).unwrap(), &s);
            prop_assert_eq!(build_hexagon(spec, &p).unwrap().difference_partition_function(), s);
        }
    }

    #[test]
    fn hexagon_line_swaps(xs in distinct(8), f in 0usize..3) {
        let spec = NestedArchSpec::new(1, 2, 1);
        let p = ParamSet { alphas: xs[..3].to_vec(), betas: xs[3..5].to_vec(), gammas: xs[5..8].to_vec() };
        let h = build_hexagon(spec, &p).unwrap();
        prop_assert!(check_swap_symmetry(&h, f, 0, 1));
        let back = region_from_text(&region_to_text(&h)).unwrap();
        prop_assert_eq!(back.partition_function(WeightMode::QDifference), h.partition_function(WeightMode::QDifference));
    }

    #[test]
    fn four_arch_d0(xs in distinct(10), e in 0usize..2) {
        let spec = FourArchSpec::new(1, 1, e, 1, 0);
        let [sx, sy, sz, st] = spec.block_sizes();
        let mut it = xs.into_iter();
        let mut take = |k: usize| (&mut it).take(k).collect::<Vec<_>>();
        let p = FourArchParams::new(spec, take(sx), take(sy), take(sz), take(st)).unwrap();
        let (want, got) = d0_reduction(spec, &p).unwrap();
        prop_assert_eq!(want, got);
    }
}

#[test]
fn census_tsv_round_trip() {
    for n in 1..=4 {
        let c = fpl_counts(n).unwrap();
        assert_eq!(FplCensus::from_tsv(&c.to_tsv()).unwrap(), c);
    }
}

#[test]
fn eval_by_name_matches_slice() {
    let table = VarTable::numbered("z", 2);
    let p = MultiPoly::linear(&table, &[("z1", CycloNum::from_i64(2)), ("z2", CycloNum::from_i64(-1))], CycloNum::one()).unwrap();
    let point: HashMap<String, CycloNum> = table.names().iter().cloned().zip([CycloNum::from_i64(3), CycloNum::from_i64(4)]).collect();
    assert_eq!(p.eval(&point).unwrap(), p.eval_slice(&[CycloNum::from_i64(3), CycloNum::from_i64(4)]));
}
