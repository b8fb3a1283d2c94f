//! Least-squares fit of `f(n) = a − b (n − c)^(−d)` to a tail of the
//! `λ_max` column.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FitParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Sum of squared errors over the window.
    pub residual: f64,
    pub window: (usize, usize),
}

impl FitParams {
    pub fn eval(&self, n: f64) -> f64 {
        model(&[self.a, self.b, self.c, self.d], n)
    }
}

fn model(p: &[f64; 4], n: f64) -> f64 {
    p[0] - p[1] * (n - p[2]).powf(-p[3])
}

/// Nelder–Mead on `f`, returning the best vertex and its value.
fn nelder_mead<const K: usize>(f: &dyn Fn(&[f64; K]) -> f64, start: [f64; K], step: [f64; K], max_iter: usize) -> ([f64; K], f64) {
    let mut simplex: Vec<([f64; K], f64)> = Vec::with_capacity(K + 1);
    simplex.push((start, f(&start)));
    for i in 0..K {
        let mut v = start;
        v[i] += step[i];
        simplex.push((v, f(&v)));
    }
    let lerp = |a: &[f64; K], b: &[f64; K], t: f64| -> [f64; K] {
        let mut out = [0.0; K];
        for i in 0..K {
            out[i] = a[i] + t * (b[i] - a[i]);
        }
        out
    };
    for _ in 0..max_iter {
        simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
        let spread = simplex[K].1 - simplex[0].1;
        if spread.abs() <= 1e-30 + 1e-15 * simplex[0].1.abs() {
            let size: f64 = simplex[1..]
                .iter()
                .map(|(v, _)| (0..K).map(|i| (v[i] - simplex[0].0[i]).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if size < 1e-12 {
                break;
            }
        }
        let mut centroid = [0.0; K];
        for (v, _) in &simplex[..K] {
            for i in 0..K {
                centroid[i] += v[i] / K as f64;
            }
        }
        let worst = simplex[K].0;
        let reflected = lerp(&centroid, &worst, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst, -2.0);
            let fe = f(&expanded);
            simplex[K] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[K - 1].1 {
            simplex[K] = (reflected, fr);
        } else {
            let (target, ft) = if fr < simplex[K].1 { (reflected, fr) } else { (worst, simplex[K].1) };
            let contracted = lerp(&centroid, &target, 0.5);
            let fc = f(&contracted);
            if fc < ft {
                simplex[K] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    let v = lerp(&best, &entry.0, 0.5);
                    *entry = (v, f(&v));
                }
            }
        }
    }
    simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
    simplex[0]
}

/// For fixed `c, d` the model is linear in `a, b`; returns the
/// least-squares `(a, b, sse)`.
fn linear_part(points: &[(f64, f64)], c: f64, d: f64) -> Option<(f64, f64, f64)> {
    let xs: Vec<f64> = points.iter().map(|&(n, _)| -(n - c).powf(-d)).collect();
    let k = points.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(points).map(|(x, p)| x * p.1).sum();
    let det = k * sxx - sx * sx;
    if !det.is_finite() || det.abs() < 1e-300 {
        return None;
    }
    let b = (k * sxy - sx * sy) / det;
    let a = (sy - b * sx) / k;
    let sse = xs.iter().zip(points).map(|(x, p)| (a + b * x - p.1).powi(2)).sum();
    Some((a, b, sse))
}

/// Fits `λ_max(M_n) ≈ a − b(n−c)^(−d)` over `n_lo ≤ n ≤ n_hi`, keeping
/// `b > 0`, `d > 0` and `c < n_lo`. `points` holds `(n, value)` pairs; those
/// outside the window are ignored.
pub fn fit_extrapolation(points: &[(usize, f64)], n_lo: usize, n_hi: usize) -> Result<FitParams> {
    if n_hi < n_lo + 6 {
        return Err(Error::usage(format!("fit window [{n_lo}, {n_hi}] needs at least 7 points")));
    }
    let data: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, _)| (n_lo..=n_hi).contains(n))
        .map(|&(n, v)| (n as f64, v))
        .collect();
    if data.len() != n_hi - n_lo + 1 {
        return Err(Error::usage(format!("values missing inside fit window [{n_lo}, {n_hi}]")));
    }
    let lo = n_lo as f64;
    let penalty = |p: &[f64; 4]| -> f64 {
        let mut pen = 0.0;
        if p[1] <= 0.0 {
            pen += 1.0 + p[1] * p[1];
        }
        if p[3] <= 0.0 {
            pen += 1.0 + p[3] * p[3];
        }
        if p[2] >= lo {
            pen += 1.0 + (p[2] - lo).powi(2);
        }
        pen
    };
    let sse = |p: &[f64; 4]| -> f64 {
        let pen = penalty(p);
        if pen > 0.0 {
            return 1e6 * pen;
        }
        let s: f64 = data.iter().map(|&(n, y)| (model(p, n) - y).powi(2)).sum();
        if s.is_finite() { s } else { 1e12 }
    };
    let reduced = |cd: &[f64; 2]| -> f64 {
        match linear_part(&data, cd[0], cd[1]) {
            Some((a, b, _)) => sse(&[a, b, cd[0], cd[1]]),
            None => 1e12,
        }
    };
    let mut best: Option<([f64; 4], f64)> = None;
    for ci in 0..6 {
        for d0 in [0.5, 1.0, 2.0] {
            let c0 = 0.5 * ci as f64;
            if c0 >= lo {
                continue;
            }
            let (cd, _) = nelder_mead(&reduced, [c0, d0], [0.25, 0.25], 4000);
            let Some((a, b, _)) = linear_part(&data, cd[0], cd[1]) else { continue };
            let start = [a, b, cd[0], cd[1]];
            let step = [1e-3, 1e-2 * b.abs().max(1e-3), 0.05, 0.05];
            let (p, v) = nelder_mead(&sse, start, step, 20000);
            if best.as_ref().map_or(true, |(_, bv)| v < *bv) {
                best = Some((p, v));
            }
        }
    }
    let (p, residual) = best.ok_or_else(|| Error::Numeric("no fit start converged".into()))?;
    if penalty(&p) > 0.0 || !residual.is_finite() {
        return Err(Error::Numeric(format!(
            "fit did not reach the feasible region; best so far a={}, b={}, c={}, d={}",
            p[0], p[1], p[2], p[3]
        )));
    }
    Ok(FitParams {
        a: p[0],
        b: p[1],
        c: p[2],
        d: p[3],
        residual,
        window: (n_lo, n_hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_its_own_model() {
        let truth = [3.1, 0.8, 1.2, 0.7];
        let pts: Vec<(usize, f64)> = (5..=40).map(|n| (n, model(&truth, n as f64))).collect();
        let f = fit_extrapolation(&pts, 8, 40).unwrap();
        for (got, want) in [f.a, f.b, f.c, f.d].iter().zip(truth) {
            assert!((got - want).abs() < 1e-6, "{got} vs {want}");
        }
        assert!(f.residual < 1e-20);
    }

    #[test]
    fn narrow_window_rejected() {
        let pts: Vec<(usize, f64)> = (1..=10).map(|n| (n, n as f64)).collect();
        assert!(fit_extrapolation(&pts, 2, 7).is_err());
        assert!(fit_extrapolation(&pts, 5, 14).is_err());
    }
}
