//! Recurrence coefficients, the truncated Jacobi matrices `M_n` and the
//! lower bounds they give for the norm.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::fixed::Fixed;
use super::hankel::HankelLadder;
use super::moments::MomentVector;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 512;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// `α_n = sqrt(D_{n−2} D_n) / D_{n−1}` for `n = 1..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiCoefficients {
    /// Exact `α_n²`; index 0 holds `α_1²`.
    alpha_sq: Vec<BigRational>,
    alpha: Vec<Fixed>,
    precision_bits: u32,
}

impl JacobiCoefficients {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `α_n` for `1 ≤ n ≤ len`.
    pub fn alpha(&self, n: usize) -> &Fixed {
        &self.alpha[n - 1]
    }

    pub fn alpha_sq(&self, n: usize) -> &BigRational {
        &self.alpha_sq[n - 1]
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    fn alpha_sq_f64(&self, n: usize) -> Vec<f64> {
        self.alpha_sq[..n].iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// Coefficients for every index the ladder supports.
pub fn jacobi_coefficients(hl: &HankelLadder, precision_bits: u32) -> JacobiCoefficients {
    let alpha_sq: Vec<BigRational> = (1..=hl.top())
        .map(|n| {
            let n = n as isize;
            let den = hl.d(n - 1) * hl.d(n - 1);
            BigRational::new(hl.d(n - 2) * hl.d(n), den)
        })
        .collect();
    let alpha = alpha_sq.iter().map(|a| Fixed::sqrt_rational(a, precision_bits)).collect();
    JacobiCoefficients {
        alpha_sq,
        alpha,
        precision_bits,
    }
}

/// Number of eigenvalues of `M_n` strictly greater than `x`.
fn count_above(alpha_sq: &[f64], x: f64) -> usize {
    let size = alpha_sq.len() + 1;
    let mut below = 0;
    let mut d = -x;
    for i in 0..size {
        if i > 0 {
            d = -x - alpha_sq[i - 1] / d;
        }
        if d == 0.0 {
            d = -f64::EPSILON * (1.0 + x.abs());
        }
        if d < 0.0 {
            below += 1;
        }
    }
    size - below
}

/// Schur-test bound `max_k (α_{k−1} + α_k)` with `α_0 = α_{n+1} = 0`.
fn row_sum_bound(alpha_sq: &[f64]) -> f64 {
    let a: Vec<f64> = std::iter::once(0.0)
        .chain(alpha_sq.iter().map(|x| x.sqrt()))
        .chain(std::iter::once(0.0))
        .collect();
    a.windows(2).map(|w| w[0] + w[1]).fold(0.0, f64::max)
}

/// Largest eigenvalue of `M_n` by Sturm-count bisection started from
/// `[lo, max_k(α_{k−1}+α_k)]`.
pub fn lambda_max_bracketed(alpha: &JacobiCoefficients, n: usize, lo: f64, tol: f64) -> Result<f64> {
    if n == 0 || n > alpha.len() {
        return Err(Error::usage(format!("M_{n} needs α_1..α_{n}, have {}", alpha.len())));
    }
    if !(tol > 0.0) {
        return Err(Error::usage("tolerance must be positive"));
    }
    let a2 = alpha.alpha_sq_f64(n);
    let mut hi = row_sum_bound(&a2) * (1.0 + 4.0 * f64::EPSILON) + tol;
    let mut lo = lo;
    if count_above(&a2, lo) == 0 || count_above(&a2, hi) != 0 {
        return Err(Error::Numeric(format!(
            "eigenvalue bracket [{lo}, {hi}] for M_{n} does not contain the top eigenvalue"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if count_above(&a2, mid) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest eigenvalue of `M_n`; the spectrum is symmetric so it is `≥ 0`.
pub fn lambda_max(alpha: &JacobiCoefficients, n: usize, tol: f64) -> Result<f64> {
    lambda_max_bracketed(alpha, n, -tol, tol)
}

/// Smallest eigenvalue of `M_n`, used to confirm the spectrum is symmetric.
pub fn lambda_min(alpha: &JacobiCoefficients, n: usize, tol: f64) -> Result<f64> {
    let a2 = alpha.alpha_sq_f64(n);
    let size = n + 1;
    let mut lo = -row_sum_bound(&a2) - tol;
    let mut hi = tol;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if count_above(&a2, mid) == size {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `m_k = ‖M_n^k δ_0‖²` for `k = 0..=k_max`, computed exactly as weighted
/// closed walks on the path `0, 1, …, n`.
pub fn reconstruct_moments(alpha: &JacobiCoefficients, n: usize, k_max: usize) -> Vec<BigRational> {
    let size = n + 1;
    let mut v = vec![BigRational::zero(); size];
    v[0] = BigRational::from_integer(1.into());
    let mut out = vec![v[0].clone()];
    for step in 1..=2 * k_max {
        let mut w = vec![BigRational::zero(); size];
        for i in 0..size {
            if i > 0 {
                w[i] += &v[i - 1];
            }
            if i + 1 < size {
                w[i] += alpha.alpha_sq(i + 1) * &v[i + 1];
            }
        }
        v = w;
        if step % 2 == 0 {
            out.push(v[0].clone());
        }
    }
    out
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(900);
    (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// One row of the bounds table.
#[derive(Clone, Debug, PartialEq)]
pub struct NormBoundsRow {
    pub n: usize,
    /// `m_n^(1/2n)`.
    pub root_moment: f64,
    /// `(m_n / m_{n−1})^(1/2)`.
    pub ratio_root: f64,
    pub lambda_max: f64,
    pub alpha: Fixed,
    /// `α_{n−1} + α_n`, absent for `n = 1`.
    pub alpha_sum: Option<Fixed>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsTable {
    pub q: u64,
    pub rows: Vec<NormBoundsRow>,
    /// Smallest and largest `α_{n−1}+α_n` over the second half of the rows,
    /// as estimates of the liminf and limsup of the pair sums.
    pub tail_alpha_sum_range: Option<(f64, f64)>,
}

pub const BOUNDS_HEADER: &str = "n,root_moment,ratio_root,lambda_max,alpha,alpha_sum";

impl BoundsTable {
    pub fn best_lower_bound(&self) -> f64 {
        self.rows.iter().map(|r| r.lambda_max).fold(0.0, f64::max)
    }

    /// Values to 5 decimal places.
    pub fn to_csv(&self) -> String {
        let mut s = format!("{BOUNDS_HEADER}\n");
        for r in &self.rows {
            let sum = r.alpha_sum.as_ref().map(|x| format!("{:.5}", x.to_f64())).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{:.5},{:.5},{:.5},{:.5},{}",
                r.n,
                r.root_moment,
                r.ratio_root,
                r.lambda_max,
                r.alpha.to_f64(),
                sum
            );
        }
        s
    }

    /// Companion file: floating columns to 15 decimals, `α` columns to the
    /// full working precision.
    pub fn to_full_csv(&self) -> String {
        let mut s = format!("{BOUNDS_HEADER}\n");
        for r in &self.rows {
            let digits = ((r.alpha.bits() as f64) * std::f64::consts::LOG10_2) as usize;
            let sum = r.alpha_sum.as_ref().map(|x| x.to_decimal(digits)).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{:.15},{:.15},{:.15},{},{}",
                r.n,
                r.root_moment,
                r.ratio_root,
                r.lambda_max,
                r.alpha.to_decimal(digits),
                sum
            );
        }
        s
    }
}

/// Assembles the rows for `n = 1..=N` and checks
/// `root_moment ≤ ratio_root ≤ λ_max ≤ max(α_{k−1}+α_k)` with `λ_max`
/// nondecreasing and the spectrum of each `M_n` symmetric.
pub fn bounds_table(mv: &MomentVector, alpha: &JacobiCoefficients, n_max: usize, tol: f64) -> Result<BoundsTable> {
    if n_max > alpha.len() || n_max > mv.order() {
        return Err(Error::usage(format!(
            "bounds to n = {n_max} need {n_max} coefficients; have {} (moments to m_{})",
            alpha.len(),
            mv.order()
        )));
    }
    let slack = 1e-9;
    let m = mv.m();
    let mut rows: Vec<NormBoundsRow> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let root_moment = (ln_big(&m[n]) / (2 * n) as f64).exp();
        let ratio_root = (0.5 * (ln_big(&m[n]) - ln_big(&m[n - 1]))).exp();
        let lmax = lambda_max_bracketed(alpha, n, ratio_root - 1e3 * tol - slack, tol)?;
        let lmin = lambda_min(alpha, n, tol)?;
        let alpha_sum = (n > 1).then(|| alpha.alpha(n - 1).add(alpha.alpha(n)));
        let schur = row_sum_bound(&alpha.alpha_sq_f64(n));
        let fail = |what: &str| Error::Verification(format!("bounds row {n}: {what}"));
        if root_moment > ratio_root + slack {
            return Err(fail("m_n^(1/2n) exceeds (m_n/m_{n-1})^(1/2)"));
        }
        if ratio_root > lmax + slack {
            return Err(fail("(m_n/m_{n-1})^(1/2) exceeds lambda_max"));
        }
        if lmax > schur + slack {
            return Err(fail("lambda_max exceeds the Schur bound"));
        }
        if (lmin + lmax).abs() > 10.0 * tol + slack {
            return Err(fail("spectrum of M_n is not symmetric"));
        }
        if let Some(prev) = rows.last() {
            if lmax + slack < prev.lambda_max {
                return Err(fail("lambda_max decreased"));
            }
            if root_moment + slack < prev.root_moment || ratio_root + slack < prev.ratio_root {
                return Err(fail("moment bound decreased"));
            }
        }
        rows.push(NormBoundsRow {
            n,
            root_moment,
            ratio_root,
            lambda_max: lmax,
            alpha: alpha.alpha(n).clone(),
            alpha_sum,
        });
    }
    let tail: Vec<f64> = rows[rows.len() / 2..]
        .iter()
        .filter_map(|r| r.alpha_sum.as_ref().map(Fixed::to_f64))
        .collect();
    let tail_alpha_sum_range = (!tail.is_empty()).then(|| {
        (
            tail.iter().copied().fold(f64::INFINITY, f64::min),
            tail.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    });
    Ok(BoundsTable {
        q: mv.q(),
        rows,
        tail_alpha_sum_range,
    })
}

/// `γ = ½(‖h‖ + sqrt(‖h‖² − 4q))`, the root of `γ + q/γ = ‖h‖` in `[√q, q]`.
pub fn gamma_cogrowth(norm: f64, q: u64) -> Result<f64> {
    let qf = q as f64;
    let lo = 2.0 * qf.sqrt();
    let eps = 1e-12 * (1.0 + qf);
    if !(norm >= lo - eps && norm <= qf + 1.0 + eps) {
        return Err(Error::usage(format!(
            "norm {norm} outside [2√q, q+1] = [{lo}, {}]",
            qf + 1.0
        )));
    }
    Ok(0.5 * (norm + (norm * norm - 4.0 * qf).max(0.0).sqrt()))
}
