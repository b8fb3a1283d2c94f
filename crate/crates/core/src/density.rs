//! Density estimates `ρ_N` for the symmetric spectral measure, obtained by
//! projecting onto Legendre polynomials on `J = [−(q+1), q+1]`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::spectral::poly::{legendre_p, Poly};
use crate::spectral::MomentVector;

/// `ρ_N(t) = Σ_{n ≤ 2N} r_n (2n+1)/(2L) P_n(t/L)` with `L = q + 1` and
/// exact cores `r_n = ∫ P_n(t/L) dμ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendreExpansion {
    q: u64,
    order: usize,
    cores: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LegendreExpansion {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn half_width(&self) -> f64 {
        (self.q + 1) as f64
    }

    /// `r_0, …, r_{2N}`.
    pub fn cores(&self) -> &[BigRational] {
        &self.cores
    }

    fn weights(&self) -> Vec<f64> {
        let l = self.half_width();
        self.cores
            .iter()
            .enumerate()
            .map(|(n, r)| r.to_f64().unwrap_or(f64::NAN) * (2 * n + 1) as f64 / (2.0 * l))
            .collect()
    }

    /// Value at `t` by the Legendre three-term recurrence.
    pub fn eval(&self, t: f64) -> f64 {
        let x = t / self.half_width();
        let w = self.weights();
        let (mut p_prev, mut p) = (1.0, x);
        let mut sum = w[0];
        for (n, wn) in w.iter().enumerate().skip(1) {
            if n > 1 {
                let k = (n - 1) as f64;
                let next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
                p_prev = p;
                p = next;
            }
            sum += wn * p;
        }
        sum
    }

    /// The expansion as an exact polynomial in `t`.
    pub fn to_poly(&self) -> Poly {
        let l = rat((self.q + 1) as i64);
        let inv_l = BigRational::new(1.into(), BigInt::from(self.q + 1));
        self.cores.iter().enumerate().fold(Poly::zero(), |acc, (n, r)| {
            let w = r * rat(2 * n as i64 + 1) / (rat(2) * &l);
            &acc + &legendre_p(n).compose_scale(&inv_l).scale(&w)
        })
    }

    /// `∫_J t^k ρ_N(t) dt` in exact arithmetic.
    pub fn moment(&self, k: usize) -> BigRational {
        let mut mono = vec![BigRational::zero(); k + 1];
        mono[k] = rat(1);
        let l = rat((self.q + 1) as i64);
        (&self.to_poly() * &Poly::new(mono)).integrate(&-l.clone(), &l)
    }
}

/// Projects the measure with moments `mv` onto polynomials of degree `≤ 2N`.
pub fn project_density(mv: &MomentVector, order: usize) -> Result<LegendreExpansion> {
    if order > mv.order() {
        return Err(Error::usage(format!(
            "order {order} needs m_{order}; moments stop at m_{}",
            mv.order()
        )));
    }
    let l = BigInt::from(mv.q() + 1);
    let cores = (0..=2 * order)
        .map(|n| {
            if n % 2 == 1 {
                return BigRational::zero();
            }
            legendre_p(n)
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(k, _)| k % 2 == 0)
                .map(|(k, c)| c * BigRational::new(mv.c(k), num_traits::pow(l.clone(), k)))
                .sum()
        })
        .collect();
    Ok(LegendreExpansion {
        q: mv.q(),
        order,
        cores,
    })
}

/// Sampled curve with a label for the output comment line.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityCurve {
    pub label: String,
    pub t: Vec<f64>,
    pub rho: Vec<f64>,
}

impl DensityCurve {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        if !self.label.is_empty() {
            let _ = writeln!(s, "# {}", self.label);
        }
        s.push_str("t,rho\n");
        for (t, r) in self.t.iter().zip(&self.rho) {
            let _ = writeln!(s, "{t:.6},{r:.6}");
        }
        s
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// Evenly spaced points from `lo` to `hi` inclusive.
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::usage(format!("bad grid {lo}:{hi} with step {step}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut out: Vec<f64> = (0..=count).map(|i| lo + i as f64 * step).collect();
    if let Some(last) = out.last_mut() {
        if (hi - *last).abs() < 1e-9 * step {
            *last = hi;
        } else {
            out.push(hi);
        }
    }
    Ok(out)
}

fn check_range(q: u64, lo: f64, hi: f64) -> Result<()> {
    let l = (q + 1) as f64;
    if lo < -l - 1e-12 || hi > l + 1e-12 {
        return Err(Error::usage(format!("range {lo}:{hi} leaves [-{l}, {l}]")));
    }
    Ok(())
}

pub fn evaluate_curve(e: &LegendreExpansion, lo: f64, hi: f64, step: f64) -> Result<DensityCurve> {
    check_range(e.q, lo, hi)?;
    let t = grid(lo, hi, step)?;
    let rho = t.iter().map(|&x| e.eval(x)).collect();
    Ok(DensityCurve {
        label: format!("rho_{} q={}", e.order, e.q),
        t,
        rho,
    })
}

/// Pointwise mean of two consecutive orders.
pub fn tail_average(e1: &LegendreExpansion, e2: &LegendreExpansion, lo: f64, hi: f64, step: f64) -> Result<DensityCurve> {
    if e1.q != e2.q {
        return Err(Error::usage(format!("expansions for q={} and q={} cannot be averaged", e1.q, e2.q)));
    }
    let (a, b) = (evaluate_curve(e1, lo, hi, step)?, evaluate_curve(e2, lo, hi, step)?);
    Ok(DensityCurve {
        label: format!("(rho_{} + rho_{})/2 q={}", e1.order, e2.order, e1.q),
        t: a.t,
        rho: a.rho.iter().zip(&b.rho).map(|(x, y)| 0.5 * (x + y)).collect(),
    })
}

/// Density of the Kesten measure,
/// `((q+1)/2π) sqrt(4q − t²) / ((q+1)² − t²)` on `|t| ≤ 2√q`, else 0.
pub fn free_density(q: u64, t: f64) -> f64 {
    let qf = q as f64;
    let inside = 4.0 * qf - t * t;
    if inside <= 0.0 {
        return 0.0;
    }
    (qf + 1.0) / (2.0 * PI) * inside.sqrt() / ((qf + 1.0).powi(2) - t * t)
}

pub fn free_density_curve(q: u64, lo: f64, hi: f64, step: f64) -> Result<DensityCurve> {
    let t = grid(lo, hi, step)?;
    let rho = t.iter().map(|&x| free_density(q, x)).collect();
    Ok(DensityCurve {
        label: format!("free density q={q}"),
        t,
        rho,
    })
}

/// `∫ t^k dμ^(q)` by the trapezoid rule in `t = 2√q cos θ`.
pub fn free_moment_quadrature(q: u64, k: u32, panels: usize) -> f64 {
    let r = 2.0 * (q as f64).sqrt();
    let h = PI / panels as f64;
    (1..panels)
        .map(|i| {
            let th = i as f64 * h;
            let t = r * th.cos();
            t.powi(k as i32) * free_density(q, t) * r * th.sin()
        })
        .sum::<f64>()
        * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::m_free;

    #[test]
    fn free_density_values() {
        assert!((free_density(2, 0.0) - 2f64.sqrt() / (3.0 * PI)).abs() < 1e-15);
        assert_eq!(free_density(3, 3.5), 0.0);
        assert!((free_moment_quadrature(2, 0, 2000) - 1.0).abs() < 1e-8);
        assert!((free_moment_quadrature(2, 2, 2000) - 3.0).abs() < 1e-8);
        for q in [2u64, 3] {
            for n in 0..=6u32 {
                let exact = m_free(q, n as usize).to_f64().unwrap();
                assert!((free_moment_quadrature(q, 2 * n, 4000) - exact).abs() < 1e-8 * exact);
            }
        }
    }

    #[test]
    fn projection_matches_moments() {
        let mv = MomentVector::free(2, 6);
        let e = project_density(&mv, 6).unwrap();
        for k in 0..=6 {
            assert_eq!(e.moment(2 * k), BigRational::from_integer(mv.m()[k].clone()));
            assert!(e.moment(2 * k + 1).is_zero());
        }
        assert!(e.cores().iter().skip(1).step_by(2).all(|c| c.is_zero()));
    }

    #[test]
    fn recurrence_matches_monomials() {
        for n in 1..=10 {
            let e = project_density(&MomentVector::free(3, 10), n).unwrap();
            let p = e.to_poly();
            for i in 0..=40 {
                let t = -4.0 + 0.2 * i as f64;
                assert!((e.eval(t) - p.eval_f64(t)).abs() < 1e-9);
                assert!((e.eval(t) - e.eval(-t)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn grids_and_ranges() {
        assert_eq!(grid(0.0, 3.0, 0.01).unwrap().len(), 301);
        assert_eq!(*grid(0.0, 1.05, 0.1).unwrap().last().unwrap(), 1.05);
        let e = project_density(&MomentVector::free(2, 4), 4).unwrap();
        assert!(evaluate_curve(&e, -3.5, 0.0, 0.1).is_err());
        let f = project_density(&MomentVector::free(3, 4), 3).unwrap();
        assert!(tail_average(&e, &f, 0.0, 1.0, 0.1).is_err());
        let same = tail_average(&e, &e, 0.0, 3.0, 0.05).unwrap();
        assert_eq!(same.rho, evaluate_curve(&e, 0.0, 3.0, 0.05).unwrap().rho);
        assert!(same.to_csv().starts_with("# (rho_4 + rho_4)/2 q=2\nt,rho\n0.000000,"));
    }
}
