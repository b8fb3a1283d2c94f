use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::moments::{m_free, SequenceTable};

/// Even moments `m_0 = 1, m_1, …, m_N` of a symmetric measure; odd moments
/// are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentVector {
    q: u64,
    m: Vec<BigInt>,
}

impl MomentVector {
    /// `m` starts at `m_0`, which must be 1; all entries must be positive.
    pub fn new(q: u64, m: Vec<BigInt>) -> Result<Self> {
        if m.first().map(|x| x.is_one()) != Some(true) {
            return Err(Error::usage("moment vector must start with m_0 = 1"));
        }
        if let Some((i, _)) = m.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(Error::usage(format!("moment m_{i} is not positive")));
        }
        Ok(MomentVector { q, m })
    }

    pub fn from_table(t: &SequenceTable) -> Self {
        MomentVector {
            q: t.q,
            m: t.moments_from_zero(),
        }
    }

    /// Moments of the Kesten measure up to `m_N`.
    pub fn free(q: u64, n: usize) -> Self {
        MomentVector {
            q,
            m: (0..=n).map(|k| m_free(q, k)).collect(),
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Highest available index `N`.
    pub fn order(&self) -> usize {
        self.m.len() - 1
    }

    pub fn m(&self) -> &[BigInt] {
        &self.m
    }

    /// The full moment `c_k`: `m_{k/2}` for even `k`, zero otherwise.
    pub fn c(&self, k: usize) -> BigInt {
        if k % 2 == 1 {
            BigInt::from(0)
        } else {
            self.m[k / 2].clone()
        }
    }

    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n > self.order() {
            return Err(Error::usage(format!(
                "order {n} requested but moments only reach m_{}",
                self.order()
            )));
        }
        Ok(MomentVector {
            q: self.q,
            m: self.m[..=n].to_vec(),
        })
    }

    /// Checks `m_1 = q + 1` and that `m_n / m_{n−1}` never decreases.
    pub fn check_invariants(&self) -> Result<()> {
        if self.m.len() > 1 && self.m[1] != BigInt::from(self.q + 1) {
            return Err(Error::Verification(format!("m_1 = {} but q + 1 = {}", self.m[1], self.q + 1)));
        }
        for n in 2..self.m.len() {
            // m_n / m_{n-1} >= m_{n-1} / m_{n-2}
            if &self.m[n] * &self.m[n - 2] < &self.m[n - 1] * &self.m[n - 1] {
                return Err(Error::Verification(format!("moment ratio decreases at n = {n}")));
            }
        }
        Ok(())
    }

    /// Parses lines `n m_n` (blank lines and `#` comments ignored). Indices
    /// must be consecutive from 0 or from 1; `m_0 = 1` is implied in the
    /// latter case.
    pub fn parse(q: u64, text: &str) -> Result<Self> {
        let mut m = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::usage(format!("moments line {}: expected `n m_n`, got {raw:?}", lineno + 1));
            let mut parts = line.split_whitespace();
            let n: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let v: BigInt = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if parts.next().is_some() {
                return Err(bad());
            }
            if m.is_empty() && n == 1 {
                m.push(BigInt::one());
            }
            if n != m.len() {
                return Err(Error::usage(format!(
                    "moments line {}: expected index {}, got {n}",
                    lineno + 1,
                    m.len()
                )));
            }
            m.push(v);
        }
        if m.is_empty() {
            return Err(Error::usage("moments file is empty"));
        }
        Self::new(q, m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# q = {}\n", self.q);
        for (n, v) in self.m.iter().enumerate() {
            let _ = writeln!(s, "{n} {v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_from_one_and_zero() {
        let a = MomentVector::parse(2, "# case 1\n1 3\n2 15\n\n3 87 # trailing\n").unwrap();
        let b = MomentVector::parse(2, "0 1\n1 3\n2 15\n3 87\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), 3);
        assert_eq!(a.c(4), BigInt::from(15));
        assert_eq!(a.c(3), BigInt::from(0));
        assert_eq!(MomentVector::parse(2, &a.to_text()).unwrap(), a);
    }

    #[test]
    fn parse_errors() {
        assert!(MomentVector::parse(2, "2 15\n").is_err());
        assert!(MomentVector::parse(2, "1 3\n3 87\n").is_err());
        assert!(MomentVector::parse(2, "1 x\n").is_err());
        assert!(MomentVector::parse(2, "0 2\n").is_err());
        assert!(MomentVector::parse(2, "").is_err());
    }

    #[test]
    fn free_moments_are_consistent() {
        let mv = MomentVector::free(3, 10);
        mv.check_invariants().unwrap();
        assert_eq!(mv.m()[2], BigInt::from(28));
    }
}
