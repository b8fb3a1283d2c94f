//! Direct enumeration of `Y^(2n)`, `E_{2n}` and `Ẽ_{2n}`.

use num_bigint::BigInt;

use super::table::SequenceTable;
use super::transforms::{h2norm_from_xi, xi_from_eta};
use super::GeneratorSet;
use crate::error::{Error, Result};
use crate::group::{invert_unchecked, multiply_unchecked, CanonicalElement};

pub const DEFAULT_BRUTE_BUDGET: u64 = 100_000_000;

#[derive(Default)]
struct Counts {
    m: u64,
    eta: u64,
    zeta: u64,
}

struct Search<'a> {
    plain: &'a [CanonicalElement],
    inverse: &'a [CanonicalElement],
    len: usize,
    first: usize,
    counts: Counts,
}

impl Search<'_> {
    fn walk(&mut self, depth: usize, prefix: &CanonicalElement, last: usize, distinct: bool) {
        if depth == self.len {
            if prefix.is_identity() {
                self.counts.m += 1;
                if distinct {
                    self.counts.eta += 1;
                    if last != self.first {
                        self.counts.zeta += 1;
                    }
                }
            }
            return;
        }
        let letters = if depth % 2 == 0 { self.inverse } else { self.plain };
        for (i, s) in letters.iter().enumerate() {
            let next = multiply_unchecked(prefix, s);
            if depth == 0 {
                self.first = i;
            }
            self.walk(depth + 1, &next, i, distinct && (depth == 0 || i != last));
        }
    }
}

/// Counts `(s_1, …, s_{2n})` with `s1⁻¹ s2 s3⁻¹ ⋯ s_{2n} = e` over all
/// tuples (`m_n`), tuples with distinct neighbours (`η_n`) and tuples that
/// are also distinct cyclically (`ζ_n`). The remaining columns are derived
/// from `η`.
///
/// Fails with a usage error when `Σ_n (q+1)^(2n)` exceeds `budget`.
pub fn brute_force_sequences(gen: &GeneratorSet, max_n: usize, budget: u64) -> Result<SequenceTable> {
    let size = gen.elements().len() as u64;
    let mut work: u64 = 0;
    for n in 1..=max_n {
        let cost = u32::try_from(2 * n)
            .ok()
            .and_then(|e| size.checked_pow(e))
            .unwrap_or(u64::MAX);
        work = work.saturating_add(cost);
    }
    if work > budget {
        return Err(Error::usage(format!(
            "enumerating up to n = {max_n} needs {work} products, over the budget of {budget}"
        )));
    }
    let plain = gen.elements();
    let inverse: Vec<CanonicalElement> = plain.iter().map(invert_unchecked).collect();
    let id = gen.backend().identity();
    let (mut m, mut eta, mut zeta) = (vec![], vec![], vec![]);
    for n in 1..=max_n {
        let mut s = Search {
            plain,
            inverse: &inverse,
            len: 2 * n,
            first: 0,
            counts: Counts::default(),
        };
        s.walk(0, &id, 0, true);
        m.push(BigInt::from(s.counts.m));
        eta.push(BigInt::from(s.counts.eta));
        zeta.push(BigInt::from(s.counts.zeta));
    }
    let q = gen.q();
    let xi = xi_from_eta(q, &eta);
    let h2norm = h2norm_from_xi(q, &xi);
    Ok(SequenceTable { q, h2norm, xi, eta, zeta, m })
}
