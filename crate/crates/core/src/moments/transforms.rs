//! Exact conversions between `‖h_n‖²`, `ξ_n`, `η_n`, `ζ_n` and `m_n`.
//!
//! Every function takes a column indexed from `n = 1` (slot 0 holds `n = 1`)
//! and returns the converted column of the same length.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn pow(q: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), e)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `ξ_n = ‖h_n‖² − (q+1) q^(n−1)`.
pub fn xi_from_h2norm(q: u64, h2norm: &[BigInt]) -> Vec<BigInt> {
    h2norm
        .iter()
        .enumerate()
        .map(|(i, h)| h - BigInt::from(q + 1) * pow(q, i))
        .collect()
}

/// Inverse of [`xi_from_h2norm`].
pub fn h2norm_from_xi(q: u64, xi: &[BigInt]) -> Vec<BigInt> {
    xi.iter()
        .enumerate()
        .map(|(i, x)| x + BigInt::from(q + 1) * pow(q, i))
        .collect()
}

/// `b_n = a_n − (q−1) Σ_{i<n} a_i`.
fn subtract_running_sum(q: u64, a: &[BigInt]) -> Vec<BigInt> {
    let qm1 = BigInt::from(q) - 1;
    let mut sum = BigInt::zero();
    let mut out = Vec::with_capacity(a.len());
    for x in a {
        out.push(x - &qm1 * &sum);
        sum += x;
    }
    out
}

/// `a_n = b_n + (q−1) Σ_{i=1}^{n−1} q^(i−1) b_{n−i}`.
fn add_geometric_tail(q: u64, b: &[BigInt]) -> Vec<BigInt> {
    let qm1 = BigInt::from(q) - 1;
    // tail_n = Σ_{i=1}^{n-1} q^(i-1) b_{n-i} satisfies tail_{n+1} = q·tail_n + b_n.
    let mut tail = BigInt::zero();
    let mut out = Vec::with_capacity(b.len());
    for x in b {
        out.push(x + &qm1 * &tail);
        tail = tail * q + x;
    }
    out
}

pub fn eta_from_xi(q: u64, xi: &[BigInt]) -> Vec<BigInt> {
    subtract_running_sum(q, xi)
}

pub fn xi_from_eta(q: u64, eta: &[BigInt]) -> Vec<BigInt> {
    add_geometric_tail(q, eta)
}

pub fn zeta_from_eta(q: u64, eta: &[BigInt]) -> Vec<BigInt> {
    subtract_running_sum(q, eta)
}

pub fn eta_from_zeta(q: u64, zeta: &[BigInt]) -> Vec<BigInt> {
    add_geometric_tail(q, zeta)
}

/// The `2n`-th moment of the Kesten measure:
/// `C(2n,n) q^n − (q−1) Σ_{k<n} C(2n,k) q^k`. For `n = 0` this is 1.
pub fn m_free(q: u64, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let qm1 = BigInt::from(q) - 1;
    let tail: BigInt = (0..n).map(|k| binomial(2 * n, k) * pow(q, k)).sum();
    binomial(2 * n, n) * pow(q, n) - qm1 * tail
}

/// `m_n = m_n^(q) + Σ_{k=0}^{n−1} C(2n,k) q^k ζ_{n−k}`.
pub fn m_from_zeta(q: u64, zeta: &[BigInt]) -> Vec<BigInt> {
    (1..=zeta.len())
        .map(|n| {
            let extra: BigInt = (0..n)
                .map(|k| binomial(2 * n, k) * pow(q, k) * &zeta[n - k - 1])
                .sum();
            m_free(q, n) + extra
        })
        .collect()
}

/// `ζ_n = m_n − m_n^(q) − Σ_{k=1}^{n−1} C(2n,k) q^k ζ_{n−k}`.
pub fn zeta_from_m(q: u64, m: &[BigInt]) -> Vec<BigInt> {
    let mut zeta: Vec<BigInt> = Vec::with_capacity(m.len());
    for n in 1..=m.len() {
        let lower: BigInt = (1..n)
            .map(|k| binomial(2 * n, k) * pow(q, k) * &zeta[n - k - 1])
            .sum();
        zeta.push(&m[n - 1] - m_free(q, n) - lower);
    }
    zeta
}
