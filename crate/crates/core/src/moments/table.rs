use std::fmt::Write as _;

use num_bigint::BigInt;

use super::ladder::{build_ladder, LadderLevel, LadderOptions};
use super::transforms::{eta_from_xi, h2norm_from_xi, m_from_zeta, xi_from_eta, xi_from_h2norm, zeta_from_eta, zeta_from_m};
use super::GeneratorSet;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "n,h2norm,xi,eta,zeta,m";

/// Exact columns `‖h_n‖², ξ_n, η_n, ζ_n, m_n` for `n = 1..=len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    pub q: u64,
    pub h2norm: Vec<BigInt>,
    pub xi: Vec<BigInt>,
    pub eta: Vec<BigInt>,
    pub zeta: Vec<BigInt>,
    pub m: Vec<BigInt>,
}

impl SequenceTable {
    /// Fills every column from the ladder norms.
    pub fn from_h2norm(q: u64, h2norm: Vec<BigInt>) -> Self {
        let xi = xi_from_h2norm(q, &h2norm);
        let eta = eta_from_xi(q, &xi);
        let zeta = zeta_from_eta(q, &eta);
        let m = m_from_zeta(q, &zeta);
        SequenceTable { q, h2norm, xi, eta, zeta, m }
    }

    /// Fills every column from the cyclic numbers.
    pub fn from_zeta(q: u64, zeta: Vec<BigInt>) -> Self {
        let eta = super::transforms::eta_from_zeta(q, &zeta);
        let xi = xi_from_eta(q, &eta);
        let h2norm = h2norm_from_xi(q, &xi);
        let m = m_from_zeta(q, &zeta);
        SequenceTable { q, h2norm, xi, eta, zeta, m }
    }

    /// Fills every column from the moments `m_1..m_N`.
    pub fn from_moments(q: u64, m: Vec<BigInt>) -> Self {
        Self::from_zeta(q, zeta_from_m(q, &m))
    }

    pub fn from_levels(q: u64, levels: &[LadderLevel]) -> Self {
        Self::from_h2norm(q, levels.iter().map(|l| l.h2norm.clone()).collect())
    }

    /// Runs the ladder to `max_n` and derives the table.
    pub fn compute(gen: &GeneratorSet, max_n: usize, opts: &LadderOptions) -> Result<Self> {
        Ok(Self::from_levels(gen.q(), &build_ladder(gen, max_n, opts)?))
    }

    pub fn len(&self) -> usize {
        self.h2norm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h2norm.is_empty()
    }

    pub fn truncated(&self, n: usize) -> Self {
        let t = |v: &Vec<BigInt>| v[..n.min(v.len())].to_vec();
        SequenceTable {
            q: self.q,
            h2norm: t(&self.h2norm),
            xi: t(&self.xi),
            eta: t(&self.eta),
            zeta: t(&self.zeta),
            m: t(&self.m),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for i in 0..self.len() {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                i + 1,
                self.h2norm[i],
                self.xi[i],
                self.eta[i],
                self.zeta[i],
                self.m[i]
            );
        }
        s
    }

    /// Parses the CSV written by [`SequenceTable::to_csv`]. Rows must run
    /// `1, 2, …` without gaps.
    pub fn from_csv(q: u64, text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some(CSV_HEADER) {
            return Err(Error::usage(format!("table must start with header {CSV_HEADER}")));
        }
        let mut t = SequenceTable {
            q,
            h2norm: vec![],
            xi: vec![],
            eta: vec![],
            zeta: vec![],
            m: vec![],
        };
        for (i, line) in lines.enumerate() {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 6 {
                return Err(Error::usage(format!("row {line:?} does not have 6 fields")));
            }
            let num = |s: &str| -> Result<BigInt> {
                s.trim().parse().map_err(|_| Error::usage(format!("bad integer {s:?} in row {line:?}")))
            };
            if num(f[0])? != BigInt::from(i + 1) {
                return Err(Error::usage(format!("row {line:?} out of sequence")));
            }
            t.h2norm.push(num(f[1])?);
            t.xi.push(num(f[2])?);
            t.eta.push(num(f[3])?);
            t.zeta.push(num(f[4])?);
            t.m.push(num(f[5])?);
        }
        Ok(t)
    }

    /// Moments `m_0 = 1, m_1, …, m_N`.
    pub fn moments_from_zero(&self) -> Vec<BigInt> {
        std::iter::once(BigInt::from(1)).chain(self.m.iter().cloned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        let t = SequenceTable::compute(&GeneratorSet::case2(), 6, &LadderOptions::default()).unwrap();
        assert_eq!(SequenceTable::from_csv(3, &t.to_csv()).unwrap(), t);
        assert!(t.to_csv().starts_with("n,h2norm,xi,eta,zeta,m\n1,4,0,0,0,4\n"));
    }

    #[test]
    fn column_sources_agree() {
        let t = SequenceTable::compute(&GeneratorSet::case1(), 10, &LadderOptions::default()).unwrap();
        assert_eq!(SequenceTable::from_zeta(2, t.zeta.clone()), t);
        assert_eq!(SequenceTable::from_moments(2, t.m.clone()), t);
        assert_eq!(t.xi[9], BigInt::from(120));
        assert_eq!(t.eta[9], BigInt::from(72));
        assert_eq!(t.zeta[9], BigInt::from(40));
    }
}
