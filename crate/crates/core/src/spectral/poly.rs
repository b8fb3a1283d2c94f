//! Exact rational polynomials: Chebyshev `T_n`, `U_n`, the ladder
//! polynomials `Q_n` and Legendre `P_n`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::from_ints(&[1])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Splits `p(t) = e(t²) + t·o(t²)` into `(e, o)`.
    pub fn split_even_odd(&self) -> (Poly, Poly) {
        let even = self.coeffs.iter().step_by(2).cloned().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        (Poly::new(even), Poly::new(odd))
    }

    /// `∫_a^b p(t) dt`.
    pub fn integrate(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let mut anti = vec![BigRational::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            anti.push(c / rat(k as i64 + 1));
        }
        let anti = Poly::new(anti);
        anti.eval(b) - anti.eval(a)
    }

    /// `p(s·t)`.
    pub fn compose_scale(&self, s: &BigRational) -> Poly {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= s;
        }
        Poly::new(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Three-term recurrence `p_{n+1} = (a t) p_n − b p_{n−1}` from two seeds.
fn recurrence(n: usize, p0: Poly, p1: Poly, a: &Poly, b: &BigRational) -> Poly {
    if n == 0 {
        return p0;
    }
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..n {
        let next = &(a * &cur) - &prev.scale(b);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Chebyshev polynomial of the first kind.
pub fn chebyshev_t(n: usize) -> Poly {
    recurrence(n, Poly::one(), Poly::t(), &Poly::from_ints(&[0, 2]), &rat(1))
}

/// Chebyshev polynomial of the second kind.
pub fn chebyshev_u(n: usize) -> Poly {
    recurrence(n, Poly::one(), Poly::from_ints(&[0, 2]), &Poly::from_ints(&[0, 2]), &rat(1))
}

/// `Q_0 = 1`, `Q_1 = t`, `Q_2 = t² − (q+1)`, `Q_{n+1} = t Q_n − q Q_{n−1}`.
pub fn q_poly(q: u64, n: usize) -> Poly {
    let q = q as i64;
    match n {
        0 => Poly::one(),
        1 => Poly::t(),
        _ => recurrence(
            n - 1,
            Poly::t(),
            Poly::from_ints(&[-(q + 1), 0, 1]),
            &Poly::t(),
            &rat(q),
        ),
    }
}

/// `(Q_n^(1), Q_n^(2))` with `Q_{2n}(t) = Q_n^(1)(t²)` and
/// `Q_{2n+1}(t) = t·Q_n^(2)(t²)`.
pub fn q_split(q: u64, n: usize) -> (Poly, Poly) {
    (q_poly(q, 2 * n).split_even_odd().0, q_poly(q, 2 * n + 1).split_even_odd().1)
}

/// Legendre polynomial on `[−1, 1]` with `P_n(1) = 1`.
pub fn legendre_p(n: usize) -> Poly {
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::t();
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) t P_k − k P_{k−1}
        let a = (&Poly::t() * &cur).scale(&rat(2 * k as i64 + 1));
        let next = (&a - &prev.scale(&rat(k as i64))).scale(&BigRational::new(1.into(), (k as i64 + 1).into()));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_polynomials() {
        assert_eq!(q_poly(2, 2), Poly::from_ints(&[-3, 0, 1]));
        assert_eq!(q_poly(5, 2).to_string(), "t^2 - 6");
        assert_eq!(q_poly(2, 3), Poly::from_ints(&[0, -5, 0, 1]));
        assert_eq!(chebyshev_t(3), Poly::from_ints(&[0, -3, 0, 4]));
        assert_eq!(chebyshev_u(2), Poly::from_ints(&[-1, 0, 4]));
        assert_eq!(
            legendre_p(2),
            Poly::new(vec![BigRational::new((-1).into(), 2.into()), rat(0), BigRational::new(3.into(), 2.into())])
        );
    }

    #[test]
    fn split_rebuilds() {
        let (e, o) = q_split(3, 4);
        let t2 = &Poly::t() * &Poly::t();
        let rebuild = |p: &Poly| -> Poly {
            p.coeffs().iter().enumerate().fold(Poly::zero(), |acc, (k, c)| {
                let mut m = Poly::one();
                for _ in 0..k {
                    m = &m * &t2;
                }
                &acc + &m.scale(c)
            })
        };
        assert_eq!(rebuild(&e), q_poly(3, 8));
        assert_eq!(&Poly::t() * &rebuild(&o), q_poly(3, 9));
    }

    #[test]
    fn legendre_orthogonality() {
        let (a, b) = (rat(-1), rat(1));
        for i in 0..7 {
            for j in 0..7 {
                let v = (&legendre_p(i) * &legendre_p(j)).integrate(&a, &b);
                let expect = if i == j { BigRational::new(2.into(), (2 * i as i64 + 1).into()) } else { rat(0) };
                assert_eq!(v, expect);
            }
        }
    }

    #[test]
    fn chebyshev_identities_for_q() {
        for q in [2u64, 3, 5] {
            let s = 2.0 * (q as f64).sqrt();
            for n in 1..=12usize {
                let (qn, tn, un) = (q_poly(q, n), chebyshev_t(n), chebyshev_u(n));
                for i in 0..20 {
                    let t = -3.5 + 0.37 * i as f64;
                    let lhs = qn.eval_f64(t) * (q as f64).powf(-(n as f64) / 2.0);
                    let rhs = 2.0 / q as f64 * tn.eval_f64(t / s) + (q as f64 - 1.0) / q as f64 * un.eval_f64(t / s);
                    assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()), "q={q} n={n} t={t}");
                }
            }
            for n in 1..=6usize {
                let tail = (1..n).fold(Poly::zero(), |acc, k| &acc + &q_poly(q, 2 * k));
                for i in 0..20 {
                    let t = -3.5 + 0.37 * i as f64;
                    let lhs = q_poly(q, 2 * n).eval_f64(t) - (q as f64 - 1.0) * tail.eval_f64(t) - (q as f64 - 1.0);
                    let rhs = 2.0 * chebyshev_t(2 * n).eval_f64(t / s) * (q as f64).powi(n as i32);
                    assert!((lhs - rhs).abs() < 1e-7 * (1.0 + rhs.abs()), "q={q} n={n} t={t}");
                }
            }
        }
    }
}
