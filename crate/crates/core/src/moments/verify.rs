//! Integrality checks on computed tables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::table::SequenceTable;
use crate::error::{Error, Result};

/// Möbius function by trial division.
pub fn moebius(mut n: u64) -> i64 {
    assert!(n > 0);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusRow {
    pub n: usize,
    /// `ζ'_n = Σ_{d|n} μ(n/d) ζ_d`; `None` when the group may have torsion.
    pub zeta_prime: Option<BigInt>,
    pub nonnegative: bool,
    pub divisible: bool,
    pub parity_ok: bool,
    pub chain_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusReport {
    pub rows: Vec<MoebiusRow>,
}

impl MoebiusReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.rows {
            if !r.nonnegative {
                out.push(format!("n={}: zeta' is negative", r.n));
            }
            if !r.divisible {
                out.push(format!("n={}: zeta' not divisible by {}", r.n, 2 * r.n));
            }
            if !r.parity_ok {
                out.push(format!("n={}: parity rule violated", r.n));
            }
            if !r.chain_ok {
                out.push(format!("n={}: 0 <= zeta <= eta <= xi <= 4q^(2n) violated", r.n));
            }
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Evaluates every row without failing; see [`moebius_verify`].
pub fn moebius_report(table: &SequenceTable, torsion_free: bool) -> MoebiusReport {
    let q = BigInt::from(table.q);
    let rows = (1..=table.len())
        .map(|n| {
            let i = n - 1;
            let zeta_prime = torsion_free.then(|| {
                (1..=n)
                    .filter(|d| n % d == 0)
                    .map(|d| BigInt::from(moebius((n / d) as u64)) * &table.zeta[d - 1])
                    .sum::<BigInt>()
            });
            let (nonnegative, divisible) = match &zeta_prime {
                Some(z) => (!z.is_negative(), z.is_multiple_of(&BigInt::from(2 * n))),
                None => (true, true),
            };
            let parity_ok = if n == 1 {
                table.xi[0].is_zero() && table.eta[0].is_zero() && table.zeta[0].is_zero()
            } else {
                [&table.h2norm[i], &table.xi[i], &table.eta[i], &table.zeta[i]]
                    .iter()
                    .all(|v| v.is_even())
                    && (&table.m[i] - &q - 1u32).is_even()
            };
            let cap = BigInt::from(4) * num_traits::pow(q.clone(), 2 * n);
            let chain_ok = !table.zeta[i].is_negative()
                && table.zeta[i] <= table.eta[i]
                && table.eta[i] <= table.xi[i]
                && table.xi[i] <= cap;
            MoebiusRow {
                n,
                zeta_prime,
                nonnegative,
                divisible,
                parity_ok,
                chain_ok,
            }
        })
        .collect();
    MoebiusReport { rows }
}

/// Checks that `ζ'_n` is a nonnegative multiple of `2n` (only meaningful in
/// torsion-free groups), the parity rules, and the chain
/// `0 ≤ ζ_n ≤ η_n ≤ ξ_n ≤ 4q^(2n)`.
pub fn moebius_verify(table: &SequenceTable, torsion_free: bool) -> Result<MoebiusReport> {
    let report = moebius_report(table, torsion_free);
    let failures = report.failures();
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(Error::Verification(failures.join("; ")))
    }
}

/// Growth rates that approach `q` (and `q+1` for the moments) exactly when
/// the group generated by `Y⁻¹Y` is amenable.
#[derive(Clone, Debug, PartialEq)]
pub struct CogrowthRow {
    pub n: usize,
    pub zeta_root: f64,
    pub eta_root: f64,
    pub xi_root: f64,
    /// `‖h_n‖₂^(1/n)`.
    pub h_root: f64,
    pub m_root: f64,
}

fn ln_big(x: &BigInt) -> f64 {
    if !x.is_positive() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 900;
        (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn root(x: &BigInt, k: usize) -> f64 {
    (ln_big(x) / k as f64).exp()
}

pub fn cogrowth_diagnostics(table: &SequenceTable) -> Vec<CogrowthRow> {
    (1..=table.len())
        .map(|n| {
            let i = n - 1;
            CogrowthRow {
                n,
                zeta_root: root(&table.zeta[i], 2 * n),
                eta_root: root(&table.eta[i], 2 * n),
                xi_root: root(&table.xi[i], 2 * n),
                h_root: root(&table.h2norm[i], 2 * n),
                m_root: root(&table.m[i], 2 * n),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_values() {
        let mu: Vec<i64> = (1..=12).map(moebius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn corrupted_zeta_is_caught() {
        let mut zeta = vec![BigInt::zero(); 10];
        zeta[7] = BigInt::from(16);
        zeta[9] = BigInt::from(40);
        let t = SequenceTable::from_zeta(2, zeta.clone());
        let r = moebius_verify(&t, true).unwrap();
        assert_eq!(r.rows[7].zeta_prime, Some(BigInt::from(16)));
        assert_eq!(r.rows[9].zeta_prime, Some(BigInt::from(40)));
        assert_eq!(r.rows[0].zeta_prime, Some(BigInt::zero()));
        let mut bad = t.clone();
        bad.zeta[7] = BigInt::from(15);
        let err = moebius_verify(&bad, true).unwrap_err().to_string();
        assert!(err.contains("n=8: zeta' not divisible by 16"), "{err}");
    }
}
