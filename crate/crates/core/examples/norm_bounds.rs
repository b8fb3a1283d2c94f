//! Lower bounds for the norm of `h` from the bundled moment tables, with
//! the extrapolation fit and the cogrowth rate it implies.
//!
//! cargo run --release --example norm_bounds -- [case1|case2]

use tgf::fixtures;
use tgf::spectral::{
    bounds_table, fit_extrapolation, gamma_cogrowth, hankel_ladder, jacobi_coefficients, MomentVector,
    DEFAULT_PRECISION_BITS, DEFAULT_TOLERANCE,
};

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let case2 = args.first().map(String::as_str) == Some("case2");
    let (table, n, window) = if case2 {
        (fixtures::table2(), 24, (8, 24))
    } else {
        (fixtures::table1(), 37, (12, 37))
    };
    let mv = MomentVector::from_table(&table);
    let hankel = hankel_ladder(&mv, n)?;
    hankel.require(n)?;
    let alpha = jacobi_coefficients(&hankel, DEFAULT_PRECISION_BITS);
    let bounds = bounds_table(&mv, &alpha, n, DEFAULT_TOLERANCE)?;
    print!("{}", bounds.to_csv());
    let pts: Vec<(usize, f64)> = bounds.rows.iter().map(|r| (r.n, r.lambda_max)).collect();
    let fit = fit_extrapolation(&pts, window.0, window.1)?;
    println!(
        "# fit on [{}, {}]: a={:.5} b={:.5} c={:.5} d={:.5} residual={:.3e}",
        window.0, window.1, fit.a, fit.b, fit.c, fit.d, fit.residual
    );
    let best = bounds.best_lower_bound();
    println!(
        "# gamma from lambda_max = {:.5}, from fitted a = {:.5}",
        gamma_cogrowth(best, mv.q())?,
        gamma_cogrowth(fit.a, mv.q())?
    );
    Ok(())
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Err(e) = run_example(&args) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
