//! Group-ring identities checked on materialized ladder levels.

use num_bigint::BigInt;

use super::ladder::{LadderOptions, LadderRun, MultiplicityVector};
use super::GeneratorSet;
use crate::error::{Error, Result};
use crate::spectral::poly::q_split;

/// What [`group_ring_check`] compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingReport {
    pub m: usize,
    /// `h_{2m} = Q_m^(1)(h*h)` held.
    pub chebyshev_form: bool,
    /// `h_n* h_n = h_{2n} + (q+1)q^(n−1)e + (q−1)Σ q^(i−1) h_{2n−2i}` for `n ≤ m`.
    pub adjoint_products: bool,
    /// `‖h_n‖ = ‖k_n‖` for `n ≤ 2m`.
    pub inverse_ladder_norms: bool,
}

fn mismatch(what: &str, a: &MultiplicityVector, b: &MultiplicityVector) -> Error {
    let detail = match a.first_difference(b) {
        Some((k, x, y)) => format!("first difference at key {k:?}: {x} vs {y}"),
        None => "vectors differ".into(),
    };
    Error::Verification(format!("{what}: {detail}"))
}

/// Materializes `h*h`, evaluates `Q_m^(1)` on it and compares the result
/// with ladder level `2m` key by key; also checks the expansion of
/// `h_n* h_n` and that the ladder for `Y⁻¹` has the same norms.
pub fn group_ring_check(gen: &GeneratorSet, m: usize) -> Result<GroupRingReport> {
    if m == 0 {
        return Err(Error::usage("group ring check needs m >= 1"));
    }
    let q = gen.q();
    let opts = LadderOptions::default();
    let mut run = LadderRun::new(gen, &opts)?;
    let mut levels = vec![run.current().clone()];
    while levels.len() < 2 * m {
        levels.push(run.advance()?.clone());
    }
    let h = &levels[0];
    let id = gen.backend().identity();
    let e = MultiplicityVector::from_terms(0, [(id, BigInt::from(1))]);
    let hh = h.adjoint().mul(h);

    let (q1, _) = q_split(q, m);
    let mut power = e.clone();
    let mut poly_value = MultiplicityVector::from_terms(0, []);
    for (j, c) in q1.coeffs().iter().enumerate() {
        if j > 0 {
            power = power.mul(&hh);
        }
        let c = c.to_integer();
        poly_value = poly_value.add_scaled(&power, &c);
    }
    let target = &levels[2 * m - 1];
    if !poly_value.same_element(target) {
        return Err(mismatch(&format!("Q_{m}^(1)(h*h) against h_{}", 2 * m), &poly_value, target));
    }

    for n in 1..=m {
        let hn = &levels[n - 1];
        let lhs = hn.adjoint().mul(hn);
        let qb = BigInt::from(q);
        let mut rhs = levels[2 * n - 1].add_scaled(&e, &(BigInt::from(q + 1) * num_traits::pow(qb.clone(), n - 1)));
        for i in 1..n {
            let coef = (&qb - 1) * num_traits::pow(qb.clone(), i - 1);
            rhs = rhs.add_scaled(&levels[2 * n - 2 * i - 1], &coef);
        }
        if !lhs.same_element(&rhs) {
            return Err(mismatch(&format!("h_{n}* h_{n} expansion"), &lhs, &rhs));
        }
    }

    let inv = gen.inverted();
    let mut krun = LadderRun::new(&inv, &opts)?;
    for (n, hn) in levels.iter().enumerate() {
        if n > 0 {
            krun.advance()?;
        }
        let (a, b) = (hn.norm2(), krun.current().norm2());
        if a != b {
            return Err(Error::Verification(format!(
                "‖h_{}‖² = {a} but ‖k_{}‖² = {b}",
                n + 1,
                n + 1
            )));
        }
    }
    Ok(GroupRingReport {
        m,
        chebyshev_form: true,
        adjoint_products: true,
        inverse_ladder_norms: true,
    })
}
