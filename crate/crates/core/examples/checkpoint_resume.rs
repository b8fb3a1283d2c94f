//! Runs part of a ladder with checkpoints, then resumes it to a deeper
//! level and compares with an uninterrupted run.
//!
//! cargo run --release --example checkpoint_resume -- [dir]

use std::path::PathBuf;

use tgf::moments::{GeneratorSet, LadderOptions, SequenceTable};

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let scratch;
    let dir: PathBuf = match args.first() {
        Some(d) => PathBuf::from(d),
        None => {
            scratch = std::env::temp_dir().join(format!("tgf-ckpt-{}", std::process::id()));
            scratch.clone()
        }
    };
    std::fs::create_dir_all(&dir).map_err(|e| tgf::Error::Io { path: dir.clone(), source: e })?;
    let gen = GeneratorSet::case2();
    let opts = LadderOptions {
        threads: 1,
        checkpoint_dir: Some(dir.clone()),
    };
    SequenceTable::compute(&gen, 5, &opts)?;
    let resumed = SequenceTable::compute(&gen, 8, &opts)?;
    let fresh = SequenceTable::compute(&gen, 8, &LadderOptions::default())?;
    let files = std::fs::read_dir(&dir).map(|d| d.count()).unwrap_or(0);
    println!("{} checkpoint files in {}", files, dir.display());
    println!("resumed run matches: {}", resumed == fresh);
    print!("{}", resumed.to_csv());
    if args.is_empty() {
        let _ = std::fs::remove_dir_all(&dir);
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
