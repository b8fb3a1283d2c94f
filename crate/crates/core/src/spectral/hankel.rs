use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::moments::MomentVector;
use crate::error::{Error, Result};

/// Hankel determinants `D_n = det[c_{i+j}]_{i,j=0..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelLadder {
    /// `D_0, …, D_K`, all positive.
    d: Vec<BigInt>,
    /// First index whose determinant was not positive, with its value.
    degenerate_at: Option<(usize, BigInt)>,
}

impl HankelLadder {
    /// `D_n` for `n ≥ −1`, with `D_{−1} = 1`.
    pub fn d(&self, n: isize) -> &BigInt {
        static ONE: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        if n < 0 {
            ONE.get_or_init(BigInt::one)
        } else {
            &self.d[n as usize]
        }
    }

    pub fn determinants(&self) -> &[BigInt] {
        &self.d
    }

    /// Highest index with a positive determinant.
    pub fn top(&self) -> usize {
        self.d.len() - 1
    }

    pub fn degenerate_at(&self) -> Option<(usize, &BigInt)> {
        self.degenerate_at.as_ref().map(|(i, v)| (*i, v))
    }

    /// Errors if the ladder stopped before index `n`.
    pub fn require(&self, n: usize) -> Result<()> {
        match &self.degenerate_at {
            Some((i, v)) if *i <= n => Err(Error::Degenerate {
                index: *i,
                value: v.to_string(),
                truncated_at: self.top(),
            }),
            _ if n > self.top() => Err(Error::usage(format!("Hankel ladder only reaches D_{}", self.top()))),
            _ => Ok(()),
        }
    }
}

/// One fraction-free elimination pass over the `(N+1)×(N+1)` Hankel
/// matrix; the pivots are the leading principal minors.
pub fn hankel_ladder(mv: &MomentVector, n: usize) -> Result<HankelLadder> {
    if n > mv.order() {
        return Err(Error::usage(format!(
            "D_{n} needs m_{n} but moments stop at m_{}",
            mv.order()
        )));
    }
    let size = n + 1;
    let mut a: Vec<Vec<BigInt>> = (0..size).map(|i| (0..size).map(|j| mv.c(i + j)).collect()).collect();
    let mut d = vec![a[0][0].clone()];
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        let pivot = a[k][k].clone();
        if !pivot.is_positive() {
            break;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
        d.push(a[k + 1][k + 1].clone());
    }
    // Symmetric moments keep the checkerboard of zeros through elimination.
    for (i, row) in a.iter().enumerate().take(d.len()) {
        for (j, v) in row.iter().enumerate().skip(i) {
            if (i + j) % 2 == 1 && !v.is_zero() {
                return Err(Error::Numeric(format!("checkerboard broken at ({i}, {j})")));
            }
        }
    }
    let degenerate_at = d
        .iter()
        .position(|x| !x.is_positive())
        .map(|i| (i, d[i].clone()));
    if let Some((i, _)) = degenerate_at {
        d.truncate(i);
    }
    Ok(HankelLadder { d, degenerate_at })
}
