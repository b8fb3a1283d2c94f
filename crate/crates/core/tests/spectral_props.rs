use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use tgf::fixtures;
use tgf::spectral::poly::{chebyshev_t, q_poly};
use tgf::spectral::{
    bounds_table, hankel_ladder, jacobi_coefficients, lambda_max, lambda_min, reconstruct_moments, MomentVector,
    DEFAULT_TOLERANCE,
};

#[test]
fn free_norm_bounds_approach_the_kesten_edge() {
    for q in [2u64, 3] {
        let n = 200;
        let mv = MomentVector::free(q, n);
        let j = jacobi_coefficients(&hankel_ladder(&mv, n).unwrap(), 128);
        let edge = 2.0 * (q as f64).sqrt();
        let mut prev = 0.0;
        for k in [10, 50, 100, 200] {
            let l = lambda_max(&j, k, 1e-13).unwrap();
            assert!(l < edge && l >= prev);
            prev = l;
        }
        assert!(edge - prev < 1e-3, "q={q}: {prev}");
    }
}

#[test]
fn walks_reproduce_case_moments() {
    for t in [fixtures::table1(), fixtures::table2()] {
        let mv = MomentVector::from_table(&t);
        let j = jacobi_coefficients(&hankel_ladder(&mv, 12).unwrap(), 256);
        for (k, r) in reconstruct_moments(&j, 12, 12).iter().enumerate() {
            assert_eq!(r, &BigRational::from_integer(mv.m()[k].clone()));
        }
    }
}

#[test]
fn exact_alpha_identity() {
    let mv = MomentVector::from_table(&fixtures::table1());
    let hl = hankel_ladder(&mv, 37).unwrap();
    let j = jacobi_coefficients(&hl, 512);
    for n in 1..=37isize {
        let lhs = j.alpha_sq(n as usize).clone() * BigRational::from_integer(hl.d(n - 1) * hl.d(n - 1));
        assert_eq!(lhs, BigRational::from_integer(hl.d(n - 2) * hl.d(n)));
        assert!(j.alpha(n as usize).to_f64() > 0.0);
    }
}

#[test]
fn spectra_are_symmetric_and_bounds_ordered() {
    for t in [fixtures::table1(), fixtures::table2()] {
        let mv = MomentVector::from_table(&t);
        mv.check_invariants().unwrap();
        let n = mv.order();
        let j = jacobi_coefficients(&hankel_ladder(&mv, n).unwrap(), 512);
        for k in 1..=n {
            let (hi, lo) = (lambda_max(&j, k, 1e-12).unwrap(), lambda_min(&j, k, 1e-12).unwrap());
            assert!((hi + lo).abs() < 1e-10);
        }
        let b = bounds_table(&mv, &j, n, DEFAULT_TOLERANCE).unwrap();
        for w in b.rows.windows(2) {
            assert!(w[1].lambda_max >= w[0].lambda_max);
        }
        for r in &b.rows {
            assert!(r.root_moment <= r.ratio_root + 1e-12 && r.ratio_root <= r.lambda_max + 1e-12);
        }
    }
}

#[test]
fn degenerate_input_reports_truncation() {
    // Equal masses at ±1 and ±3.
    let m: Vec<BigInt> = (0..8usize).map(|k| (BigInt::from(1) + num_traits::pow(BigInt::from(9), k)) / 2).collect();
    let mv = MomentVector::new(1, m).unwrap();
    let hl = hankel_ladder(&mv, 7).unwrap();
    assert_eq!(hl.top(), 3);
    assert_eq!(hl.degenerate_at().unwrap().0, 4);
    let err = hl.require(7).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    let j = jacobi_coefficients(&hl, 128);
    assert_eq!(j.len(), 3);
    assert!((lambda_max(&j, 3, 1e-13).unwrap() - 3.0).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn free_bounds_hold_for_any_rank(q in 2u64..9, n in 4usize..24) {
        let mv = MomentVector::free(q, n);
        let j = jacobi_coefficients(&hankel_ladder(&mv, n).unwrap(), 128);
        for k in 1..=n {
            let a2 = j.alpha_sq(k);
            let want = if k == 1 { BigRational::from_integer(BigInt::from(q + 1)) } else { BigRational::from_integer(BigInt::from(q)) };
            prop_assert_eq!(a2, &want);
        }
        let b = bounds_table(&mv, &j, n, DEFAULT_TOLERANCE).unwrap();
        prop_assert!(b.best_lower_bound() < 2.0 * (q as f64).sqrt());
    }

    #[test]
    fn chebyshev_even_identity(q in 2u64..6, n in 1usize..7, t in -4.0f64..4.0) {
        let s = 2.0 * (q as f64).sqrt();
        let tail: f64 = (1..n).map(|k| q_poly(q, 2 * k).eval_f64(t)).sum();
        let lhs = q_poly(q, 2 * n).eval_f64(t) - (q as f64 - 1.0) * tail - (q as f64 - 1.0);
        let rhs = 2.0 * chebyshev_t(2 * n).eval_f64(t / s) * (q as f64).powi(n as i32);
        prop_assert!((lhs - rhs).abs() < 1e-7 * (1.0 + rhs.abs()));
    }
}
