//! Checks the ladder against polynomial identities in the group ring,
//! comparing materialized elements key by key.
//!
//! cargo run --release --example group_ring -- [m]

use tgf::group::GroupBackend;
use tgf::moments::{group_ring_check, GeneratorSet};

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let m: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(3);
    let sets = [
        GeneratorSet::case1(),
        GeneratorSet::case2(),
        GeneratorSet::custom(GroupBackend::Thompson, "A,B,ab")?,
        GeneratorSet::free(3)?,
    ];
    for gen in &sets {
        let r = group_ring_check(gen, m)?;
        println!(
            "{:>8} m={}: chebyshev={} adjoint={} inverse_norms={}",
            gen.label(),
            r.m,
            r.chebyshev_form,
            r.adjoint_products,
            r.inverse_ladder_norms
        );
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
