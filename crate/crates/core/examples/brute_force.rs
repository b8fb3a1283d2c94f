//! Counts closed walks by direct enumeration and compares them with the
//! ladder pipeline, for F and the free and lattice oracle groups.
//!
//! cargo run --release --example brute_force -- [max_n]

use tgf::moments::{brute_force_sequences, GeneratorSet, LadderOptions, SequenceTable, DEFAULT_BRUTE_BUDGET};

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let cap: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(4);
    let sets = [
        (GeneratorSet::case1(), cap),
        (GeneratorSet::case2(), cap.min(4)),
        (GeneratorSet::free(2)?, cap),
        (GeneratorSet::lattice(2)?, cap),
    ];
    for (gen, n) in sets {
        let brute = brute_force_sequences(&gen, n, DEFAULT_BRUTE_BUDGET)?;
        let ladder = SequenceTable::compute(&gen, n, &LadderOptions::default())?;
        let same = brute == ladder;
        println!("{:>10} n<={n}: {}", gen.label(), if same { "agree" } else { "DIFFER" });
        if !same {
            print!("brute:\n{}ladder:\n{}", brute.to_csv(), ladder.to_csv());
            return Err(tgf::Error::Verification(format!("{} disagrees", gen.label())));
        }
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
