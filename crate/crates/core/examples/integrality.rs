//! Moebius-inversion integrality checks and growth diagnostics, plus a
//! deliberately corrupted column to show a failure report.

use num_bigint::BigInt;
use tgf::fixtures;
use tgf::moments::{cogrowth_diagnostics, moebius_report, SequenceTable};

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let corrupt: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(8);
    let table = fixtures::table1();
    let report = moebius_report(&table, true);
    println!("case 1, n<={}: {}", table.len(), if report.passed() { "ok" } else { "failed" });
    println!("n,zeta^(1/2n),m^(1/2n)");
    for r in cogrowth_diagnostics(&table).iter().step_by(6) {
        println!("{},{:.5},{:.5}", r.n, r.zeta_root, r.m_root);
    }
    let mut zeta = table.zeta.clone();
    zeta[corrupt - 1] += BigInt::from(1);
    let bad = SequenceTable::from_zeta(table.q, zeta);
    for msg in moebius_report(&bad, true).failures() {
        println!("corrupted zeta_{corrupt}: {msg}");
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
