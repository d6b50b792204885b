//! Construction of divergence witnesses: digit sequences with
//! `e_(n+1) = round(lambda_R^(d_n/2))`, extended from a seed prefix.
//!
//! Every generated digit is certified: the power is evaluated inside an
//! explicit error enclosure and the precision is doubled until the
//! enclosure determines the nearest integer uniquely. A digit whose size
//! estimate exceeds the bit budget stops the construction (the first such
//! digit for the worked parameters is `e_6`, with about `10^10` digits).

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::lambda::{lambda_r, LambdaR};
use super::{CFDigits, RadiusSpec};
use crate::bigfloat::{bf_from_bigint, bf_i64, bigint_from_bf, RM};
use crate::error::{Error, Result};
use crate::BigRational;

#[derive(Debug, Clone)]
pub struct WitnessParams {
    pub radius: RadiusSpec,
    pub seed_digits: Vec<u64>,
    pub max_terms: usize,
    /// Cap on the bit length of any computed digit.
    pub digit_budget_bits: u64,
}

impl WitnessParams {
    /// The worked example: `R = 2 pi 15/100`, seed `[0; 1, 1, 2]`.
    pub fn worked_example(max_terms: usize) -> Self {
        WitnessParams {
            radius: RadiusSpec::TwoPiTimes(BigRational::new(15.into(), 100.into())),
            seed_digits: vec![1, 1, 2],
            max_terms,
            digit_budget_bits: 1 << 20,
        }
    }
}

#[derive(Debug, Clone)]
pub enum StopReason {
    Completed,
    /// The digit at `digit_index` (1-based position in the sequence) would
    /// have roughly `estimated_bits` bits, beyond the budget; `d_prev` is
    /// the convergent denominator that drives it.
    BudgetExhausted {
        digit_index: usize,
        d_prev: BigInt,
        estimated_bits: u64,
    },
}

#[derive(Debug, Clone)]
pub struct WitnessResult {
    pub digits: CFDigits,
    pub lambda: LambdaR,
    /// `lambda^(d_n/2) / e_(n+1)` for each generated digit: the finite
    /// evidence that the value lies in `T_R` (ratios hover around 1).
    pub ratios: Vec<BigFloat>,
    pub stop: StopReason,
}

/// Builds the witness digit sequence.
pub fn construct_witness(params: &WitnessParams) -> Result<WitnessResult> {
    if params.seed_digits.is_empty() {
        return Err(Error::out_of_range("seed must provide at least one digit"));
    }
    let report_prec = 192usize;
    let lambda = lambda_r(&params.radius, report_prec);
    let log2_lambda = bf_to_f64_approx(&lambda.lambda).log2();
    if !(log2_lambda.is_finite() && log2_lambda > 0.0) {
        return Err(Error::out_of_range("lambda_R must exceed 1"));
    }

    let mut digits = CFDigits::new();
    for &e in &params.seed_digits {
        if digits.len() >= params.max_terms {
            break;
        }
        digits.push_digit(e.into())?;
    }
    let mut ratios = Vec::new();
    let mut stop = StopReason::Completed;
    while digits.len() < params.max_terms {
        let n = digits.len();
        let d_n = digits.d(n).clone();
        let d_f = d_n.to_f64().unwrap_or(f64::INFINITY);
        let est_bits = (d_f / 2.0) * log2_lambda;
        let within_budget =
            est_bits.is_finite() && est_bits < params.digit_budget_bits as f64 && est_bits < 2e8;
        if !within_budget {
            stop = StopReason::BudgetExhausted {
                digit_index: n + 1,
                d_prev: d_n,
                estimated_bits: est_bits.min(u64::MAX as f64) as u64,
            };
            break;
        }
        let d_u = d_n.to_u64().expect("within budget");
        let e_next = certified_round_half_power(&params.radius, d_u, est_bits as usize + 96)?;
        if !e_next.is_positive() {
            return Err(Error::domain(
                "digit rule produced a nonpositive digit; lambda_R too small",
            ));
        }
        // ratio lambda^(d_n/2) / e_(n+1) at reporting precision
        let pow = half_power(&lambda.lambda, d_u, report_prec);
        ratios.push(pow.div(&bf_from_bigint(&e_next, report_prec), report_prec, RM));
        digits.push_digit(e_next.to_biguint().expect("positive"))?;
    }
    Ok(WitnessResult {
        digits,
        lambda,
        ratios,
        stop,
    })
}

/// `lambda^(d/2)` at `prec` bits (no certification).
fn half_power(lambda: &BigFloat, d: u64, prec: usize) -> BigFloat {
    if d.is_multiple_of(2) {
        lambda.powi(d as usize / 2, prec, RM)
    } else {
        lambda.powi(d as usize, prec, RM).sqrt(prec, RM)
    }
}

/// Nearest integer to `lambda_R^(d/2)`, certified by interval doubling.
fn certified_round_half_power(radius: &RadiusSpec, d: u64, start_prec: usize) -> Result<BigInt> {
    let mut p = start_prec.max(128);
    while p <= (1 << 22) {
        let lambda = lambda_r(radius, p).lambda;
        let v = half_power(&lambda, d, p);
        // conservative relative error: the base is accurate to a few ulp and
        // powering by d multiplies the budget by about d
        let err_bits = 8 + 64 - (d + 64).leading_zeros() as i32 - p as i32;
        let mut err = v.abs();
        let e_v = err.exponent().expect("finite");
        err.set_exponent(e_v + err_bits);
        let half = bf_i64(1, p).div(&bf_i64(2, p), p, RM);
        let lo = v.sub(&err, p, RM).add(&half, p, RM).floor();
        let hi = v.add(&err, p, RM).add(&half, p, RM).floor();
        let lo_i = bigint_from_bf(&lo);
        let hi_i = bigint_from_bf(&hi);
        if lo_i == hi_i {
            return Ok(lo_i);
        }
        p *= 2;
    }
    Err(Error::PrecisionExhausted {
        msg: format!("could not certify digit round(lambda^({d}/2))"),
    })
}

/// Crude double-precision approximation (magnitude only needs to be right).
pub(crate) fn bf_to_f64_approx(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap() as f64 / (u64::MAX as f64 + 1.0);
    let mag = top * 2f64.powi(e);
    if sign == astro_float::Sign::Neg {
        -mag
    } else {
        mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{bf_lt, bf_parse_decimal, bf_pow2};

    #[test]
    fn worked_digits_reproduced() {
        let params = WitnessParams::worked_example(5);
        let res = construct_witness(&params).unwrap();
        let digits: Vec<u64> = res
            .digits
            .digits()
            .iter()
            .map(|e| e.try_into().unwrap())
            .collect();
        assert_eq!(digits, vec![1, 1, 2, 9, 611180631]);
        assert_eq!(res.digits.d(4), &BigInt::from(47));
        assert!(matches!(res.stop, StopReason::Completed));
    }

    #[test]
    fn sixth_digit_exceeds_budget() {
        let params = WitnessParams::worked_example(6);
        let res = construct_witness(&params).unwrap();
        assert_eq!(res.digits.len(), 5);
        match &res.stop {
            StopReason::BudgetExhausted {
                digit_index,
                d_prev,
                estimated_bits,
            } => {
                assert_eq!(*digit_index, 6);
                // d_5 = 611180631 * 47 + 5
                assert_eq!(d_prev, &BigInt::from(28_725_489_662u64));
                assert!(*estimated_bits > 10_000_000_000u64);
            }
            other => panic!("expected budget stop, got {other:?}"),
        }
    }

    #[test]
    fn ratios_hover_around_one() {
        let res = construct_witness(&WitnessParams::worked_example(5)).unwrap();
        assert_eq!(res.ratios.len(), 2);
        // lambda^2.5/9 = 0.956...; lambda^23.5/611180631 = 0.99999999965...
        let first = bf_parse_decimal("0.956", 64).unwrap();
        assert!(bf_lt(&res.ratios[0].sub(&first, 64, RM).abs(), &bf_parse_decimal("0.001", 64).unwrap()));
        let one = bf_i64(1, 192);
        assert!(bf_lt(&res.ratios[1].sub(&one, 192, RM).abs(), &bf_pow2(-25, 64)));
        // both within (0.9, lambda^(1/2))
        let upper = res.lambda.sqrt_lambda();
        for r in &res.ratios {
            assert!(bf_lt(&bf_parse_decimal("0.9", 64).unwrap(), r));
            assert!(bf_lt(r, &upper));
        }
    }

    #[test]
    fn membership_in_larger_set_fails() {
        // lambda_R^(1/2) < phi, so phi^(d_n)/e_(n+1) explodes: the witness
        // lies outside the golden-ratio set
        let res = construct_witness(&WitnessParams::worked_example(5)).unwrap();
        let phi = crate::classify::golden_ratio(192);
        let lam_half = res.lambda.sqrt_lambda();
        assert!(bf_lt(&lam_half, &phi));
        // the ratio phi^(d_4) / e_5 is astronomically large; compare in logs
        let d4 = 47.0f64;
        let log_ratio = d4 * bf_to_f64_approx(&phi).log2() - 30.0;
        assert!(log_ratio > 2.0);
    }

    #[test]
    fn certified_rounding_against_oracle() {
        // floor/round values computed independently at high precision
        let radius = RadiusSpec::TwoPiTimes(BigRational::new(15.into(), 100.into()));
        let lam = lambda_r(&radius, 640).lambda;
        for d in [5u64, 47, 100, 333] {
            let certified = certified_round_half_power(&radius, d, 128).unwrap();
            let v = half_power(&lam, d, 640);
            let direct = bigint_from_bf(
                &v.add(&bf_i64(1, 640).div(&bf_i64(2, 640), 640, RM), 640, RM).floor(),
            );
            assert_eq!(certified, direct, "d={d}");
        }
    }
}
