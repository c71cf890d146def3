mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;
use kgamma::chern::{chern_class, whitney_check};
use kgamma::filtration::{build_gamma, torsion_report};
use kgamma::intlattice::{hnf_rows, quotient_torsion, IntegerLattice};
use kgamma::kmodel::{quillen_generators, IndexFunction, KGenerator};
use kgamma::truncring::{expand_line_bundle, RingSpec, TruncPoly};

fn spec_strategy(max_n: usize, max_r: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(2..=max_r, 1..=max_n)
}

fn dense_strategy(trunc: Vec<u32>) -> impl Strategy<Value = Dense> {
    let exps: Vec<_> = trunc.iter().map(|&r| 0..r).collect();
    prop::collection::btree_map(exps, -5i64..=5, 0..7).prop_map(|m| m.into_iter().filter(|(_, c)| *c != 0).collect())
}

fn ring_and_three() -> impl Strategy<Value = (Vec<u32>, Dense, Dense, Dense)> {
    spec_strategy(4, 3).prop_flat_map(|t| {
        (Just(t.clone()), dense_strategy(t.clone()), dense_strategy(t.clone()), dense_strategy(t))
    })
}

fn exponent_strategy(trunc: &[u32]) -> impl Strategy<Value = Vec<u32>> {
    trunc.iter().map(|&r| 0..r).collect::<Vec<_>>()
}

fn orbit_strategy(trunc: Vec<u32>) -> impl Strategy<Value = KGenerator> {
    (1u64..=3, prop::collection::vec(exponent_strategy(&trunc), 1..=3)).prop_map(|(m, o)| KGenerator::new(m, o))
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Random two- and three-conic index tables; values capped at `2^{|U|}`.
fn conic_table() -> impl Strategy<Value = IndexFunction> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0u32..=3, 1 << n)))
        .prop_filter_map("inadmissible", |(n, exps)| {
            let idx = IndexFunction::conics(n, |t| {
                let k = t.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum::<usize>();
                let w: u32 = t.iter().sum();
                if k == 0 {
                    1
                } else {
                    1 << exps[k].clamp(1, w.min(3))
                }
            })
            .ok()?;
            idx.admissibility().ok()?;
            Some(idx)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_product_matches_dense_oracle((t, a, b, _) in ring_and_three()) {
        let spec = RingSpec::new(t.clone()).unwrap();
        let prod = &to_poly(&spec, &a) * &to_poly(&spec, &b);
        prop_assert_eq!(from_poly(&prod), dense_mul(&t, &a, &b));
        let sum = &to_poly(&spec, &a) + &to_poly(&spec, &b);
        prop_assert_eq!(from_poly(&sum), dense_add(&a, &b, 1));
    }

    #[test]
    fn ring_axioms((t, a, b, c) in ring_and_three()) {
        let spec = RingSpec::new(t).unwrap();
        let (a, b, c) = (to_poly(&spec, &a), to_poly(&spec, &b), to_poly(&spec, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &TruncPoly::one(&spec), a.clone());
        if let (Some(da), Some(db)) = (a.min_total_degree(), b.min_total_degree()) {
            let ab = &a * &b;
            match ab.min_total_degree() {
                Some(d) => prop_assert!(d >= da + db),
                None => {}
            }
            if da + db > spec.dim() {
                prop_assert!(ab.is_zero());
            }
        }
    }

    #[test]
    fn dense_mul_agrees_with_library_mul_dense((t, a, b, _) in ring_and_three()) {
        let spec = RingSpec::new(t).unwrap();
        let (pa, pb) = (to_poly(&spec, &a), to_poly(&spec, &b));
        let d = spec.mul_dense(&pa.to_dense(), &pb.to_dense());
        prop_assert_eq!(TruncPoly::from_dense(&spec, &d), &pa * &pb);
    }

    #[test]
    fn line_bundles_multiply(t in spec_strategy(3, 3), seed in any::<u64>()) {
        let spec = RingSpec::new(t.clone()).unwrap();
        let pick = |s: u64| -> Vec<u32> { t.iter().enumerate().map(|(i, &r)| ((s >> (4 * i)) % r as u64) as u32).collect() };
        let (a, b) = (pick(seed), pick(seed >> 20));
        let ab: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let (za, zb) = (expand_line_bundle(&spec, &a), expand_line_bundle(&spec, &b));
        prop_assert_eq!(&(&za + &zb) + &(&za * &zb), expand_line_bundle(&spec, &ab));
        prop_assert_eq!(from_poly(&za), dense_line_minus_one(&t, &a));
    }

    #[test]
    fn lattice_matches_minor_oracle(
        n in 1usize..=4,
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..=4),
        v in prop::collection::vec(-8i64..=8, 4),
    ) {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r[..n].to_vec()).collect();
        let v = &v[..n];
        let l = IntegerLattice::from_i64(n, &rows).unwrap();
        let q = quotient_torsion(&l, &IntegerLattice::standard(n)).unwrap();
        let (factors, free) = quotient_by_minors(n, &rows);
        prop_assert_eq!(q.divisors, factors);
        prop_assert_eq!(q.free_rank, free);
        prop_assert_eq!(l.rank(), n - free);
        prop_assert_eq!(l.contains(&big(v)), member_by_minors(&rows, v));
        for r in &rows {
            prop_assert!(l.contains(&big(r)));
        }
    }

    #[test]
    fn lattice_sum_and_intersection_match_oracle(
        a in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=3),
        b in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=3),
        v in prop::collection::vec(-6i64..=6, 3),
    ) {
        let la = IntegerLattice::from_i64(3, &a).unwrap();
        let lb = IntegerLattice::from_i64(3, &b).unwrap();
        let s = la.sum(&lb).unwrap();
        let all: Vec<Vec<i64>> = a.iter().chain(&b).cloned().collect();
        prop_assert_eq!(s.contains(&big(&v)), member_by_minors(&all, &v));
        let i = la.intersect(&lb).unwrap();
        prop_assert_eq!(i.contains(&big(&v)), member_by_minors(&a, &v) && member_by_minors(&b, &v));
        prop_assert!(i.is_sublattice_of(&la).unwrap() && i.is_sublattice_of(&lb).unwrap());
    }

    #[test]
    fn hnf_is_canonical_and_idempotent(
        rows in prop::collection::vec(prop::collection::vec(-1000i64..=1000, 5), 1..=6),
        k in -5i64..=5,
    ) {
        let l = IntegerLattice::from_i64(5, &rows).unwrap();
        let again = hnf_rows(5, l.basis());
        prop_assert_eq!(l.basis(), &again[..]);
        let mut moved = rows.clone();
        moved.reverse();
        let first = moved[0].clone();
        for r in moved.iter_mut().skip(1) {
            for (x, y) in r.iter_mut().zip(&first) {
                *x += k * y;
            }
        }
        let m = IntegerLattice::from_i64(5, &moved).unwrap();
        prop_assert_eq!(l.basis(), m.basis());
    }

    #[test]
    fn whitney_holds_on_random_orbits(
        (t, g1, g2) in spec_strategy(3, 3)
            .prop_filter("D <= 27", |t| t.iter().product::<u32>() <= 27)
            .prop_flat_map(|t| (Just(t.clone()), orbit_strategy(t.clone()), orbit_strategy(t)))
    ) {
        let spec = RingSpec::new(t).unwrap();
        prop_assert!(whitney_check(&g1, &g2, &spec));
    }

    #[test]
    fn chern_classes_have_expected_degree_and_first_class(
        (t, g) in spec_strategy(3, 3).prop_flat_map(|t| (Just(t.clone()), orbit_strategy(t)))
    ) {
        let spec = RingSpec::new(t).unwrap();
        for j in 1..=spec.dim() {
            if let Some(d) = chern_class(&g, &spec, j).min_total_degree() {
                prop_assert!(d >= j);
            }
        }
        let rank = TruncPoly::constant(&spec, g.rank());
        prop_assert_eq!(chern_class(&g, &spec, 1), &g.to_poly(&spec) - &rank);
    }

    #[test]
    fn binomial_law_for_line_bundles(
        (t, a) in spec_strategy(3, 3).prop_flat_map(|t| (Just(t.clone()), exponent_strategy(&t))),
        m in 1u64..=8,
    ) {
        let spec = RingSpec::new(t.clone()).unwrap();
        let g = KGenerator::line(m, a.clone());
        for j in 1..=6u32 {
            prop_assert_eq!(from_poly(&chern_class(&g, &spec, j)), dense_line_chern(&t, m as i64, &a, j));
        }
    }

    #[test]
    fn point_factor_leaves_reports_unchanged(idx in conic_table()) {
        let report = |i: &IndexFunction| {
            let (ke, kx) = quillen_generators(i).unwrap();
            torsion_report(&build_gamma(&kx), &build_gamma(&ke)).unwrap()
        };
        let base = report(&idx);
        let with_point = report(&idx.with_point_factor());
        prop_assert_eq!(&base.per_codim, &with_point.per_codim);
        prop_assert_eq!(&base.alpha, &with_point.alpha);
        prop_assert_eq!(&base.index, &with_point.index);
        let with_split = report(&idx.with_split_factor(2));
        prop_assert_eq!(base.torsion_only(2), with_split.torsion_only(2));
    }

    #[test]
    fn gamma_levels_respect_degree_and_nesting(idx in conic_table()) {
        let (ke, kx) = quillen_generators(&idx).unwrap();
        let (fx, fe) = (build_gamma(&kx), build_gamma(&ke));
        prop_assert!(fx.is_nested() && fe.is_nested());
        let spec = fx.spec().clone();
        for d in 0..=spec.dim() + 1 {
            prop_assert!(fx.level(d).is_sublattice_of(fe.level(d)).unwrap());
            let start = spec.first_index_of_degree(d.min(spec.dim() + 1));
            for row in fx.level(d).basis() {
                prop_assert!(row[..start.min(row.len())].iter().all(|c| c == &BigInt::from(0)));
            }
        }
        for d in 0..=spec.dim() {
            let q = fe.quotient(d).unwrap();
            prop_assert!(q.is_torsion_free());
            prop_assert_eq!(q.free_rank, spec.count_of_degree(d));
        }
    }
}
