//! Divergence certificates: bounded values of `|Q_(d_n - 1)(x) Q_(d_n - 2)(x)|`
//! along the convergent denominators `d_n` of the witness digits.
//!
//! For each feasible index the certificate reports the Schur bound at the
//! root-of-unity proxy `x_n = e^(2 pi i c_n/d_n)`, the perturbation
//! `|Q(x_n) - Q(x~)|` measured by direct dual evaluation at a deeper
//! convergent `x~`, and the resulting bound on the product. A bounded
//! subsequence of such products is incompatible with convergence (all
//! partial numerators have modulus one), which is the certificate.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::region::{in_m_r, RealArg};
use super::{CFDigits, RadiusSpec};
use crate::bigfloat::{bf_max, RM};
use crate::cf::{CfSpec, ConvergentPair};
use crate::complex::ComplexBF;
use crate::error::{Error, Result};
use crate::BigRational;

#[derive(Debug, Clone)]
pub struct IndexCertificate {
    /// Digit index `n` (the certificate concerns `d_n`).
    pub n: usize,
    pub c_n: BigInt,
    pub d_n: BigInt,
    pub feasible: bool,
    /// Set when infeasible: why the recursion was not attempted.
    pub budget_note: Option<String>,
    /// `x_n` membership in `M_R` (margin > 0 means inside).
    pub in_m_r: Option<bool>,
    pub m_r_margin: Option<BigFloat>,
    /// `|Q_(d_n - 1)(x_n)|` and `|Q_(d_n - 2)(x_n)|` (Schur-bounded by 2).
    pub schur_top: Option<BigFloat>,
    pub schur_second: Option<BigFloat>,
    /// Direct perturbations `|Q_(d_n - j)(x_n) - Q_(d_n - j)(x~)|`.
    pub perturbation_top: Option<BigFloat>,
    pub perturbation_second: Option<BigFloat>,
    /// `(schur_top + pert_top) * (schur_second + pert_second)`.
    pub product_bound: Option<BigFloat>,
    /// `|Q_(d_n - 1)(x~) Q_(d_n - 2)(x~)|` evaluated directly.
    pub product_direct: Option<BigFloat>,
}

/// Builds certificates for the requested digit indices.
///
/// `x~` is the deepest available convergent of `digits`, standing in for
/// the witness value (the gap to the true value is far below any working
/// precision once one more digit is known). Indices whose `d_n` exceeds
/// `recursion_budget` are reported, not attempted.
pub fn divergence_certificate(
    digits: &CFDigits,
    r: &RadiusSpec,
    indices: &[usize],
    prec: usize,
    recursion_budget: u64,
) -> Result<Vec<IndexCertificate>> {
    if digits.is_empty() {
        return Err(Error::out_of_range("digit sequence is empty"));
    }
    let t_proxy = digits.value();
    let x_proxy = ComplexBF::unit_circle_rational(&t_proxy, prec);
    let mut out = Vec::new();
    for &n in indices {
        if n == 0 || n > digits.len() {
            return Err(Error::out_of_range(format!(
                "certificate index {n} outside 1..={}",
                digits.len()
            )));
        }
        let c_n = digits.c(n).clone();
        let d_n = digits.d(n).clone();
        let membership = in_m_r(
            &RealArg::Rational(BigRational::new(c_n.clone(), d_n.clone())),
            r,
            prec,
        )
        .ok();
        let (in_mr, margin) = match membership {
            Some(m) => (Some(m.inside), Some(m.margin)),
            None => (None, None),
        };
        let Some(d_u) = d_n.to_u64().filter(|d| *d <= recursion_budget) else {
            out.push(IndexCertificate {
                n,
                c_n,
                d_n: d_n.clone(),
                feasible: false,
                budget_note: Some(format!(
                    "d_{n} = {d_n} exceeds the recursion budget {recursion_budget}"
                )),
                in_m_r: in_mr,
                m_r_margin: margin,
                schur_top: None,
                schur_second: None,
                perturbation_top: None,
                perturbation_second: None,
                product_bound: None,
                product_direct: None,
            });
            continue;
        };
        // dual evaluation at x_n and at the proxy
        let x_n = ComplexBF::unit_circle_rational(
            &BigRational::new(c_n.clone(), d_n.clone()),
            prec,
        );
        let (qn_top, qn_second) = schur_pair(&x_n, d_u, prec)?;
        let (qp_top, qp_second) = schur_pair(&x_proxy, d_u, prec)?;
        let pert_top = qn_top.sub(&qp_top).abs();
        let pert_second = qn_second.sub(&qp_second).abs();
        let s_top = qn_top.abs();
        let s_second = qn_second.abs();
        let bound = s_top
            .add(&pert_top, prec, RM)
            .mul(&s_second.add(&pert_second, prec, RM), prec, RM);
        let direct = qp_top.abs().mul(&qp_second.abs(), prec, RM);
        out.push(IndexCertificate {
            n,
            c_n,
            d_n,
            feasible: true,
            budget_note: None,
            in_m_r: in_mr,
            m_r_margin: margin,
            schur_top: Some(s_top),
            schur_second: Some(s_second),
            perturbation_top: Some(pert_top),
            perturbation_second: Some(pert_second),
            product_bound: Some(bound),
            product_direct: Some(direct),
        });
    }
    Ok(out)
}

/// `(Q_(d-1)(x), Q_(d-2)(x))` by the Schur-array recursion.
fn schur_pair(x: &ComplexBF, d: u64, prec: usize) -> Result<(ComplexBF, ComplexBF)> {
    let _ = prec;
    let spec = CfSpec::schur(x.clone());
    let mut pair = ConvergentPair::new(&spec);
    pair.advance(&spec, d - 1)?;
    Ok((pair.q_curr.clone(), pair.q_prev.clone()))
}

/// Convenience: the largest product bound over the feasible indices (the
/// quantity that must stay bounded along a subsequence for divergence).
pub fn max_product_bound(certs: &[IndexCertificate], prec: usize) -> Option<BigFloat> {
    let mut acc: Option<BigFloat> = None;
    for c in certs {
        if let Some(b) = &c.product_bound {
            acc = Some(match acc {
                None => b.clone(),
                Some(a) => bf_max(a, b.clone()),
            });
        }
    }
    let _ = prec;
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{bf_i64, bf_lt};
    use crate::witness::build::{construct_witness, WitnessParams};

    #[test]
    fn witness_certificates_at_paper_indices() {
        let res = construct_witness(&WitnessParams::worked_example(5)).unwrap();
        let r = RadiusSpec::TwoPiTimes(BigRational::new(15.into(), 100.into()));
        let certs = divergence_certificate(&res.digits, &r, &[3, 4, 5], 256, 1 << 20).unwrap();
        assert_eq!(certs.len(), 3);
        // n = 3: d_3 = 5, fully evaluated, x_3 in M_R
        let c3 = &certs[0];
        assert!(c3.feasible);
        assert_eq!(c3.d_n, BigInt::from(5));
        assert_eq!(c3.in_m_r, Some(true));
        assert!(bf_lt(c3.schur_top.as_ref().unwrap(), &bf_i64(2, 64)));
        assert!(bf_lt(c3.schur_second.as_ref().unwrap(), &bf_i64(2, 64)));
        // n = 4: d_4 = 47, the headline bound (B + 2)^2 stays small
        let c4 = &certs[1];
        assert!(c4.feasible);
        assert_eq!(c4.d_n, BigInt::from(47));
        assert_eq!(c4.in_m_r, Some(true));
        assert!(bf_lt(c4.product_bound.as_ref().unwrap(), &bf_i64(25, 64)));
        assert!(bf_lt(c4.product_direct.as_ref().unwrap(), &bf_i64(10, 64)));
        // n = 5: d_5 = 28725489662 is out of recursion reach
        let c5 = &certs[2];
        assert!(!c5.feasible);
        assert_eq!(c5.d_n, BigInt::from(28_725_489_662u64));
        assert!(c5.budget_note.is_some());
    }

    #[test]
    fn index_validation() {
        let res = construct_witness(&WitnessParams::worked_example(4)).unwrap();
        let r = RadiusSpec::TwoPiTimes(BigRational::new(15.into(), 100.into()));
        assert!(divergence_certificate(&res.digits, &r, &[0], 128, 100).is_err());
        assert!(divergence_certificate(&res.digits, &r, &[9], 128, 100).is_err());
    }
}
