//! Legendre projections of the spectral measure near the right edge, and
//! the average of two consecutive orders.
//!
//! cargo run --release --example density_curves -- [case1|case2] [order]

use tgf::density::{evaluate_curve, project_density, tail_average};
use tgf::fixtures;
use tgf::spectral::MomentVector;

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let case2 = args.first().map(String::as_str) == Some("case2");
    let (table, top) = if case2 { (fixtures::table2(), 24) } else { (fixtures::table1(), 37) };
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(top);
    let mv = MomentVector::from_table(&table);
    let (lo, hi) = if case2 { (3.4, 4.0) } else { (2.5, 3.0) };
    let e = project_density(&mv, n)?;
    let prev = project_density(&mv, n - 1)?;
    let a = evaluate_curve(&e, lo, hi, 0.05)?;
    let b = evaluate_curve(&prev, lo, hi, 0.05)?;
    let avg = tail_average(&prev, &e, lo, hi, 0.05)?;
    println!("t,rho_{n},rho_{},avg", n - 1);
    for i in 0..a.len() {
        println!("{:.2},{:.6},{:.6},{:.6}", a.t[i], a.rho[i], b.rho[i], avg.rho[i]);
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
