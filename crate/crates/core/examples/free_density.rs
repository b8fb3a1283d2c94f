//! Projections of the free-group moments against the closed-form density.
//!
//! cargo run --release --example free_density -- [q]

use tgf::density::{free_density, free_moment_quadrature, project_density};
use tgf::spectral::MomentVector;

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let q: u64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let edge = 2.0 * (q as f64).sqrt();
    let mv = MomentVector::free(q, 32);
    println!("k,exact m_k,quadrature");
    for k in 1..=4u32 {
        println!("{k},{},{:.6}", mv.m()[k as usize], free_moment_quadrature(q, 2 * k, 4000));
    }
    println!("N,sup error on inner interval");
    for n in [4, 8, 16, 32] {
        let e = project_density(&mv, n)?;
        let inner = edge - 0.2;
        let err = (0..=200)
            .map(|i| -inner + 2.0 * inner * i as f64 / 200.0)
            .map(|t| (e.eval(t) - free_density(q, t)).abs())
            .fold(0.0, f64::max);
        println!("{n},{err:.3e}");
    }
    Ok(())
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Err(e) = run_example(&args) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
