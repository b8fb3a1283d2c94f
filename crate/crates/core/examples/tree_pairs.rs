//! Arithmetic in F on reduced tree pairs: products of words, inverses,
//! canonical keys and the two defining relators.
//!
//! cargo run --example tree_pairs -- [word ...]

use tgf::group::{CanonicalElement, GroupBackend, Word};

fn show(label: &str, g: &CanonicalElement) {
    println!("{label:>12}  {g}  key={} bytes", g.key().as_bytes().len());
}

pub fn run_example(args: &[String]) -> tgf::Result<()> {
    let f = GroupBackend::Thompson;
    let words: Vec<String> = if args.is_empty() {
        ["A", "B", "AB", "BA", "Ab aBA Ba abA", "Ab aaBAA Ba aabAA"].iter().map(|s| s.to_string()).collect()
    } else {
        args.to_vec()
    };
    for w in &words {
        let word = Word::parse(w)?;
        let g = f.element_from_word(&word)?;
        show(&word.to_string(), &g);
        let back = f.multiply(&g, &f.invert(&g)?)?;
        assert!(back.is_identity());
        // Keys round-trip to the same canonical element.
        assert_eq!(CanonicalElement::from_key(&g.key())?, g);
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
