//! Exact moment sequences from the group-ring ladder.
//!
//! For a generator set `Y` of size `q + 1` and `h = Σ_{y∈Y} y`, the ladder
//! `h_n` sums the alternating products `s1⁻¹ s2 s3⁻¹ …` over tuples with
//! distinct neighbours. Its squared 2-norms give `ξ_n`, and the transforms
//! here turn those into the reduced numbers `η_n`, the cyclic numbers `ζ_n`
//! and the moments `m_n = τ((h*h)^n)`.

mod brute;
mod ladder;
mod ring;
mod table;
mod transforms;
mod verify;

pub use brute::{brute_force_sequences, DEFAULT_BRUTE_BUDGET};
pub use ladder::{
    build_ladder, eta_direct, read_checkpoint, write_checkpoint, LadderLevel, LadderOptions,
    LadderRun, MultiplicityVector, Parity,
};
pub use ring::{group_ring_check, GroupRingReport};
pub use table::SequenceTable;
pub use transforms::{
    eta_from_xi, eta_from_zeta, h2norm_from_xi, m_free, m_from_zeta, xi_from_eta, xi_from_h2norm, zeta_from_eta,
    zeta_from_m,
};
pub use verify::{cogrowth_diagnostics, moebius, moebius_report, moebius_verify, CogrowthRow, MoebiusReport, MoebiusRow};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{CanonicalElement, GroupBackend, Word};

/// The finite set `Y` whose sum `h` is studied, together with `q = |Y| - 1`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    backend: GroupBackend,
    elements: Vec<CanonicalElement>,
    label: String,
}

impl GeneratorSet {
    /// Builds a set from explicit words; the elements must be distinct and
    /// there must be at least two of them.
    pub fn from_words(backend: GroupBackend, words: &[Word], label: impl Into<String>) -> Result<Self> {
        let elements = words
            .iter()
            .map(|w| backend.element_from_word(w))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = HashSet::new();
        for (w, e) in words.iter().zip(&elements) {
            if !seen.insert(e.key()) {
                return Err(Error::usage(format!("generator {w} repeats an earlier element")));
            }
        }
        if elements.len() < 2 {
            return Err(Error::usage("a generator set needs at least two elements (q >= 1)"));
        }
        Ok(GeneratorSet {
            backend,
            elements,
            label: label.into(),
        })
    }

    fn parse(backend: GroupBackend, words: &[&str], label: &str) -> Self {
        let words: Vec<Word> = words.iter().map(|w| Word::parse(w).unwrap()).collect();
        Self::from_words(backend, &words, label).expect("built-in generator set")
    }

    /// `Y = {I, A, B}` in F, `q = 2`.
    pub fn case1() -> Self {
        Self::parse(GroupBackend::Thompson, &["", "A", "B"], "case1")
    }

    /// `Y = {A, A⁻¹, B, B⁻¹}` in F, `q = 3`.
    pub fn case2() -> Self {
        Self::parse(GroupBackend::Thompson, &["A", "a", "B", "b"], "case2")
    }

    /// `Y = {e, a_1, …, a_q}` in the free group of rank `q`.
    pub fn free(q: usize) -> Result<Self> {
        if q == 0 || q > 26 {
            return Err(Error::usage(format!("free rank must be in 1..=26, got {q}")));
        }
        let words: Vec<Word> = std::iter::once(Word::empty())
            .chain((0..q).map(|i| Word::new(vec![crate::group::GeneratorLetter::new(i, false)])))
            .collect();
        Self::from_words(GroupBackend::Free { rank: q }, &words, format!("free{q}"))
    }

    /// `Y = {0, e_1, …, e_d}` in `Z^d`, `q = d`.
    pub fn lattice(d: usize) -> Result<Self> {
        if d == 0 || d > 26 {
            return Err(Error::usage(format!("lattice dimension must be in 1..=26, got {d}")));
        }
        let words: Vec<Word> = std::iter::once(Word::empty())
            .chain((0..d).map(|i| Word::new(vec![crate::group::GeneratorLetter::new(i, false)])))
            .collect();
        Self::from_words(GroupBackend::Lattice { dim: d }, &words, format!("lattice{d}"))
    }

    /// Comma-separated words over the alphabet of `backend`, e.g. `"1,A,B"`.
    pub fn custom(backend: GroupBackend, list: &str) -> Result<Self> {
        let words = list
            .split(',')
            .map(Word::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::from_words(backend, &words, format!("custom[{list}]"))
    }

    pub fn backend(&self) -> GroupBackend {
        self.backend
    }

    pub fn elements(&self) -> &[CanonicalElement] {
        &self.elements
    }

    pub fn q(&self) -> u64 {
        (self.elements.len() - 1) as u64
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The set `Y⁻¹`, whose ladder is the `k_n` of the same group ring.
    pub fn inverted(&self) -> GeneratorSet {
        GeneratorSet {
            backend: self.backend,
            elements: self
                .elements
                .iter()
                .map(|e| crate::group::invert_unchecked(e))
                .collect(),
            label: format!("{}^-1", self.label),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_in_sets() {
        assert_eq!(GeneratorSet::case1().q(), 2);
        assert_eq!(GeneratorSet::case2().q(), 3);
        assert_eq!(GeneratorSet::free(3).unwrap().q(), 3);
        assert_eq!(GeneratorSet::lattice(2).unwrap().q(), 2);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(GeneratorSet::custom(GroupBackend::Thompson, "A,Aa A").is_err());
        assert!(GeneratorSet::custom(GroupBackend::Thompson, "A").is_err());
        assert!(GeneratorSet::custom(GroupBackend::Thompson, "1,A,B").is_ok());
    }
}
