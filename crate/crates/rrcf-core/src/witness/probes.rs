//! Numeric probes: the Schur bound at primitive roots, and empirical
//! validation of the growth and Lipschitz envelopes on `M_R`.

use astro_float::BigFloat;
use num_integer::Integer;

use super::lambda::lambda_r;
use super::RadiusSpec;
use crate::bigfloat::{bf_max, bf_zero, RM};
use crate::cf::{CfSpec, ConvergentPair};
use crate::complex::ComplexBF;
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::BigRational;

/// `max(|Q_(d-1)(x_d)|, |Q_(d-2)(x_d)|)` at the primitive `d`-th root
/// `x_d = e^(2 pi i c/d)`.
///
/// Runs the exact cyclotomic recursion for `d <= exact_threshold` (moduli
/// evaluated from the exact values at `prec` bits) and the big-float
/// recursion beyond.
pub fn schur_root_bound(d: u32, c: u32, prec: usize, exact_threshold: u32) -> Result<BigFloat> {
    if d < 2 {
        return Err(Error::out_of_range("need d >= 2 (x = 1 is excluded)"));
    }
    if c.gcd(&d) != 1 {
        return Err(Error::out_of_range(format!(
            "c = {c} must be coprime to d = {d}"
        )));
    }
    if d <= exact_threshold {
        let x = CycloElem::root_of_unity(d, c as i64);
        let spec = CfSpec::schur(x);
        let mut pair = ConvergentPair::new(&spec);
        pair.advance(&spec, d as u64 - 1)?;
        let top = pair.q_curr.to_complex(prec).abs();
        let second = pair.q_prev.to_complex(prec).abs();
        Ok(bf_max(top, second))
    } else {
        let x = ComplexBF::unit_circle_rational(
            &BigRational::new((c as i64).into(), (d as i64).into()),
            prec,
        );
        let spec = CfSpec::schur(x);
        let mut pair = ConvergentPair::new(&spec);
        pair.advance(&spec, d as u64 - 1)?;
        Ok(bf_max(pair.q_curr.abs(), pair.q_prev.abs()))
    }
}

#[derive(Debug, Clone)]
pub struct GrowthProbe {
    /// `sup |Q_n(x)| / lambda_R^(n/2)` over the sampled range.
    pub sup_ratio: BigFloat,
    pub at_n: i64,
    /// The same sup over only the first half of the range (stabilization
    /// evidence: equal values mean the sup stopped moving).
    pub sup_first_half: BigFloat,
}

/// Empirical check of `|Q_n(x)| <= C(R) lambda_R^(n/2)` on `M_R`.
pub fn growth_bound_probe(
    x: &ComplexBF,
    r: &RadiusSpec,
    n_max: i64,
    prec: usize,
) -> Result<GrowthProbe> {
    if n_max < 1 {
        return Err(Error::out_of_range("n_max must be positive"));
    }
    let lam = lambda_r(r, prec);
    let sqrt_lam = lam.sqrt_lambda();
    let spec = CfSpec::schur(x.clone());
    let mut pair = ConvergentPair::new(&spec);
    let mut denom = crate::bigfloat::bf_one(prec);
    let mut sup = bf_zero(prec);
    let mut at_n = 0i64;
    let mut sup_first_half = bf_zero(prec);
    for n in 1..=n_max {
        pair.advance(&spec, 1)?;
        denom = denom.mul(&sqrt_lam, prec, RM);
        let ratio = pair.q_curr.abs().div(&denom, prec, RM);
        if crate::bigfloat::bf_lt(&sup, &ratio) {
            sup = ratio;
            at_n = n;
        }
        if n == n_max / 2 {
            sup_first_half = sup.clone();
        }
    }
    Ok(GrowthProbe {
        sup_ratio: sup,
        at_n,
        sup_first_half,
    })
}

#[derive(Debug, Clone)]
pub struct LipschitzProbe {
    /// `sup |Q_n(x) - Q_n(y)| / ((n+1)^2 lambda_R^(n/2) |x - y|)`.
    pub sup_ratio: BigFloat,
    pub at_n: i64,
}

/// Empirical check of the Lipschitz envelope
/// `|Q_n(x) - Q_n(y)| <= A(R) (n + mu)^2 lambda_R^(n/2) |x - y|`.
pub fn lipschitz_probe(
    x: &ComplexBF,
    y: &ComplexBF,
    r: &RadiusSpec,
    n_max: i64,
    prec: usize,
) -> Result<LipschitzProbe> {
    let dist = x.dist(y);
    if dist.is_zero() {
        return Err(Error::out_of_range("x and y must differ"));
    }
    let lam = lambda_r(r, prec);
    let sqrt_lam = lam.sqrt_lambda();
    let spec_x = CfSpec::schur(x.clone());
    let spec_y = CfSpec::schur(y.clone());
    let mut px = ConvergentPair::new(&spec_x);
    let mut py = ConvergentPair::new(&spec_y);
    let mut denom = dist.clone();
    let mut sup = bf_zero(prec);
    let mut at_n = 0i64;
    for n in 1..=n_max {
        px.advance(&spec_x, 1)?;
        py.advance(&spec_y, 1)?;
        denom = denom.mul(&sqrt_lam, prec, RM);
        let diff = px.q_curr.sub(&py.q_curr).abs();
        let poly = crate::bigfloat::bf_i64((n + 1) * (n + 1), prec);
        let ratio = diff.div(&denom.mul(&poly, prec, RM), prec, RM);
        if crate::bigfloat::bf_lt(&sup, &ratio) {
            sup = ratio;
            at_n = n;
        }
    }
    Ok(LipschitzProbe {
        sup_ratio: sup,
        at_n,
    })
}
