use std::collections::BTreeSet;

use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilelab_core::poly::Poly;
use tilelab_core::vieta::{
    enumerate_patterns, oracle_real_roots, solve_case, CaseStatus, Mode, MultiplicityPattern, SolveConfig, VietaSystem,
};
use tilelab_core::vieta::find_real;
use tilelab_core::FindOptions;

/// Partitions of `s` via compositions: every bitmask of the `s − 1` gaps.
fn brute_partitions(s: usize) -> BTreeSet<Vec<usize>> {
    if s == 0 {
        return BTreeSet::from([vec![]]);
    }
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (s - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for gap in 0..s - 1 {
            if mask >> gap & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(parts);
    }
    out
}

#[test]
fn pattern_enumeration_matches_brute_force() {
    for d in 1..=8 {
        let complex = enumerate_patterns(d, Mode::Complex);
        let want: BTreeSet<_> = brute_partitions(d);
        assert_eq!(complex.len(), want.len());
        assert_eq!(complex.iter().map(|p| p.mults().to_vec()).collect::<BTreeSet<_>>(), want);

        let real = enumerate_patterns(d, Mode::Real);
        let mut want = BTreeSet::new();
        for q in (0..=d).filter(|&q| q != 1) {
            for p in brute_partitions(d - q) {
                want.insert((p, q));
            }
        }
        assert_eq!(real.len(), want.len(), "d = {d}");
        let got: BTreeSet<_> = real.iter().map(|p| (p.mults().to_vec(), p.cofactor_degree())).collect();
        assert_eq!(got, want);
        // Descending root part, then the partitions of that part in reverse-lex order.
        let keys: Vec<_> = real.iter().map(|p| (d - p.cofactor_degree(), p.mults().to_vec())).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(keys, sorted);
    }
}

#[test]
fn expansion_matches_exact_products_up_to_degree_eight() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=8 {
        for pattern in enumerate_patterns(d, Mode::Real) {
            let roots: Vec<i64> = (0..pattern.k()).map(|_| rng.gen_range(-3..=3)).collect();
            let cof: Vec<i64> = (0..pattern.cofactor_degree()).map(|_| rng.gen_range(-3..=3)).collect();
            let c = rng.gen_range(1..=3);
            let q = |v: i64| BigRational::from_integer(v.into());
            let mut monic = cof.clone();
            monic.push(1);
            let mut exact = Poly::from_ints(&monic).scale(&q(c));
            for (&r, &m) in roots.iter().zip(pattern.mults()) {
                exact = exact.mul(&Poly::linear_root(q(r)).pow(m as u32));
            }
            let target = Poly::from_f64(&vec![1.0; d + 1]);
            let sys = VietaSystem::build(pattern.clone(), &target).unwrap();
            let f = sys.coeff_fns(
                &roots.iter().map(|&r| r as f64).collect::<Vec<_>>(),
                c as f64,
                &cof.iter().map(|&r| r as f64).collect::<Vec<_>>(),
            );
            // Small integers: every intermediate is exact in f64.
            let got: Vec<BigRational> = f.iter().map(|&x| BigRational::from_float(x).unwrap()).collect();
            let mut want = exact.coeffs().to_vec();
            want.resize(d + 1, q(0));
            assert_eq!(got, want, "{pattern}");
        }
    }
}

#[test]
fn jacobian_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 1..=5 {
        let target: Vec<f64> = (0..=d).map(|i| if i == d { 2.0 } else { rng.gen_range(-3.0..3.0) }).collect();
        let real = Poly::from_f64(&target);
        let complex = real.to_complex();
        for pattern in enumerate_patterns(d, Mode::Real) {
            let rs = VietaSystem::build(pattern.clone(), &real).unwrap();
            let cs = VietaSystem::build(pattern.clone(), &complex).unwrap();
            for _ in 0..100 {
                let u: Vec<f64> = (0..rs.n_unknowns()).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let (a, f) = (rs.jacobian(&u), rs.jacobian_fd(&u, 1e-7));
                assert!((&a - &f).norm() <= 1e-4 * a.norm().max(1.0), "{pattern}: {a} vs {f}");
                let z: Vec<Complex64> =
                    u.iter().map(|&x| Complex64::new(x, rng.gen_range(-1.0..1.0))).collect();
                let (a, f) = (cs.jacobian(&z), cs.jacobian_fd(&z, 1e-7));
                assert!((&a - &f).norm() <= 1e-4 * a.norm().max(1.0), "{pattern}");
            }
        }
    }
}

fn distinct_roots(k: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, k).prop_filter("roots well separated", |r| {
        r.iter().enumerate().all(|(i, a)| r[i + 1..].iter().all(|b| (a - b).abs() > 0.05))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn solved_cases_have_small_residuals(roots in (1usize..=4).prop_flat_map(distinct_roots), c in prop::sample::select(vec![-2.0, -1.0, 1.0, 2.0])) {
        let p = roots.iter().fold(Poly::from_f64(&[c]), |acc, &r| acc.mul(&Poly::linear_root(r)));
        let cfg = SolveConfig::default();
        for pattern in enumerate_patterns(roots.len(), Mode::Real) {
            let sys = VietaSystem::build(pattern, &p).unwrap();
            if let CaseStatus::Solved { roots: found, .. } = solve_case(&sys, Mode::Real, &cfg).status {
                for r in found {
                    let x = r.value.to_complex();
                    let scale = p.coeffs().iter().fold(1.0f64, |m, a| m.max(a.abs()));
                    prop_assert!(p.to_complex().eval(&x).norm() < 10.0 * cfg.tol * scale);
                }
            }
        }
    }

    #[test]
    fn round_trip_recovers_roots(roots in (1usize..=5).prop_flat_map(distinct_roots), c in prop::sample::select(vec![-2.0, -1.0, 1.0, 2.0])) {
        let p = roots.iter().fold(Poly::from_f64(&[c]), |acc, &r| acc.mul(&Poly::linear_root(r)));
        let mut want = roots.clone();
        want.sort_by(f64::total_cmp);
        let oracle: Vec<f64> = oracle_real_roots(&p).roots.iter().map(|r| r.value.to_complex().re).collect();
        prop_assert_eq!(oracle.len(), want.len());
        match find_real(&p, &FindOptions::default()) {
            Ok(r) => {
                let got: Vec<f64> = r.roots.roots.iter().map(|x| x.value.to_complex().re).collect();
                prop_assert_eq!(got.len(), want.len());
                for (a, b) in got.iter().zip(&want) {
                    prop_assert!((a - b).abs() < 1e-6, "{got:?} vs {want:?}");
                }
            }
            // A miss must never be a wrong answer.
            Err(e) => prop_assert!(matches!(e, tilelab_core::VietaError::NoPatternSolved { no_real_roots: false, .. }), "{e:?}"),
        }
    }
}

#[test]
fn near_coincident_roots_are_merged() {
    // (x − 1)² read as two simple roots collapses onto the double root.
    let p = Poly::from_f64(&[1.0, -2.0, 1.0]);
    let sys = VietaSystem::build(MultiplicityPattern::new(vec![1, 1], 0).unwrap(), &p).unwrap();
    let o = solve_case(&sys, Mode::Real, &SolveConfig::default());
    assert!(!o.is_solved(), "{o:#?}");
    assert_eq!(o.merged_into.map(|m| m.label()).as_deref(), Some("2"));
}
