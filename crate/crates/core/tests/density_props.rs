use num_bigint::BigInt;
use num_rational::BigRational;
use tgf::density::{evaluate_curve, free_density, project_density, tail_average};
use tgf::fixtures;
use tgf::spectral::MomentVector;

fn sup_error(q: u64, n: usize) -> f64 {
    let e = project_density(&MomentVector::free(q, n), n).unwrap();
    let edge = 2.0 * (q as f64).sqrt() - 0.2;
    (0..=400)
        .map(|i| -edge + 2.0 * edge * i as f64 / 400.0)
        .map(|t| (e.eval(t) - free_density(q, t)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn free_projections_converge() {
    for q in [2u64, 3] {
        let errs: Vec<f64> = [8, 16, 24].iter().map(|&n| sup_error(q, n)).collect();
        assert!(errs[2] < errs[0], "q={q}: {errs:?}");
    }
}

#[test]
fn case1_tail_is_small() {
    let mv = MomentVector::from_table(&fixtures::table1());
    let e = project_density(&mv, 37).unwrap();
    assert_eq!(e.moment(0), BigRational::from_integer(BigInt::from(1)));
    let c = evaluate_curve(&e, 2.95, 3.0, 0.005).unwrap();
    assert!(c.rho.iter().all(|r| r.is_finite() && *r < 0.02), "{:?}", c.rho);
    let full = evaluate_curve(&e, 0.0, 3.0, 0.01).unwrap();
    assert_eq!(full.len(), 301);
    assert!(full.rho.iter().all(|r| r.is_finite()));
}

#[test]
fn case2_tail_average() {
    let mv = MomentVector::from_table(&fixtures::table2());
    let (a, b) = (project_density(&mv, 23).unwrap(), project_density(&mv, 24).unwrap());
    let avg = tail_average(&a, &b, 2.0 * 3f64.sqrt(), 4.0, 0.01).unwrap();
    let (ca, cb) = (
        evaluate_curve(&a, 2.0 * 3f64.sqrt(), 4.0, 0.01).unwrap(),
        evaluate_curve(&b, 2.0 * 3f64.sqrt(), 4.0, 0.01).unwrap(),
    );
    for i in 0..avg.len() {
        assert!((avg.rho[i] - 0.5 * (ca.rho[i] + cb.rho[i])).abs() < 1e-15);
    }
}

#[test]
fn symmetric_everywhere() {
    let e = project_density(&MomentVector::from_table(&fixtures::table2()), 24).unwrap();
    let c = evaluate_curve(&e, -4.0, 4.0, 0.05).unwrap();
    let k = c.len();
    for i in 0..k {
        assert!((c.rho[i] - c.rho[k - 1 - i]).abs() < 1e-9 * (1.0 + c.rho[i].abs()));
    }
}
