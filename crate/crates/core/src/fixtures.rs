//! Published sequence and bound tables bundled with the crate.

use crate::moments::SequenceTable;

/// Sequence table for `Y = {I, A, B}`, `n = 1..=37`.
pub const TABLE1_CSV: &str = include_str!("../fixtures/table1.csv");
/// Sequence table for `Y = {A, A⁻¹, B, B⁻¹}`, `n = 1..=24`.
pub const TABLE2_CSV: &str = include_str!("../fixtures/table2.csv");
/// Bounds for `Y = {I, A, B}`, `n = 1..=37`, at 5 decimals.
pub const TABLE3_CSV: &str = include_str!("../fixtures/table3.csv");
/// Bounds for `Y = {A, A⁻¹, B, B⁻¹}`, `n = 1..=24`, at 5 decimals.
pub const TABLE4_CSV: &str = include_str!("../fixtures/table4.csv");

pub fn table1() -> SequenceTable {
    SequenceTable::from_csv(2, TABLE1_CSV).expect("bundled table 1 parses")
}

pub fn table2() -> SequenceTable {
    SequenceTable::from_csv(3, TABLE2_CSV).expect("bundled table 2 parses")
}

/// One parsed row of a bundled bounds table; `alpha_sum` is absent at `n = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PublishedBounds {
    pub n: usize,
    pub root_moment: f64,
    pub ratio_root: f64,
    pub lambda_max: f64,
    pub alpha: f64,
    pub alpha_sum: Option<f64>,
}

fn parse_bounds(text: &str) -> Vec<PublishedBounds> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let x = |i: usize| f[i].trim().parse::<f64>().expect("bundled bounds parse");
            PublishedBounds {
                n: f[0].parse().expect("bundled bounds parse"),
                root_moment: x(1),
                ratio_root: x(2),
                lambda_max: x(3),
                alpha: x(4),
                alpha_sum: (!f[5].trim().is_empty()).then(|| x(5)),
            }
        })
        .collect()
}

pub fn table3() -> Vec<PublishedBounds> {
    parse_bounds(TABLE3_CSV)
}

pub fn table4() -> Vec<PublishedBounds> {
    parse_bounds(TABLE4_CSV)
}
