//! Computes the exact sequence table for a generator set and checks it.
//!
//! cargo run --release --example ladder_tables -- [case1|case2] [max_n] [threads]

use tgf::moments::{moebius_verify, GeneratorSet, LadderOptions, SequenceTable};

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let gen = match args.first().map(String::as_str) {
        Some("case2") => GeneratorSet::case2(),
        _ => GeneratorSet::case1(),
    };
    let max_n = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let threads = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let opts = LadderOptions {
        threads,
        checkpoint_dir: None,
    };
    let table = SequenceTable::compute(&gen, max_n, &opts)?;
    moebius_verify(&table, gen.backend().is_torsion_free())?;
    print!("{}", table.to_csv());
    Ok(())
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Err(e) = run_example(&args) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
