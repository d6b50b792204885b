//! The growth constant `lambda_R`: the dominant root of
//! `alpha^2 - (1 + R) alpha - 1 = 0`, which controls `|Q_n|` growth on the
//! arc `M_R` near `-1`, and tends to the golden ratio as `R -> 0`.

use astro_float::BigFloat;

use super::RadiusSpec;
use crate::bigfloat::{bf_i64, RM};

#[derive(Debug, Clone)]
pub struct LambdaR {
    pub r: BigFloat,
    pub lambda: BigFloat,
    pub lambda_conj: BigFloat,
    pub prec: usize,
}

/// Both characteristic roots at `prec` bits.
pub fn lambda_r(r: &RadiusSpec, prec: usize) -> LambdaR {
    let work = prec + 16;
    let r_bf = r.to_bigfloat(work);
    let half_sum = bf_i64(1, work).add(&r_bf, work, RM).div(&bf_i64(2, work), work, RM);
    let disc = bf_i64(1, work)
        .add(&half_sum.mul(&half_sum, work, RM), work, RM)
        .sqrt(work, RM);
    let mut lambda = half_sum.add(&disc, prec, RM);
    let mut conj = half_sum.sub(&disc, prec, RM);
    lambda.set_precision(prec, RM).expect("precision");
    conj.set_precision(prec, RM).expect("precision");
    let mut r_out = r_bf;
    r_out.set_precision(prec, RM).expect("precision");
    LambdaR {
        r: r_out,
        lambda,
        lambda_conj: conj,
        prec,
    }
}

impl LambdaR {
    /// `lambda^(1/2)`, the per-step growth rate of `|Q_n|`.
    pub fn sqrt_lambda(&self) -> BigFloat {
        self.lambda.sqrt(self.prec, RM)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{bf_lt, bf_pow2};
    use crate::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn vieta_relations() {
        let lr = lambda_r(&RadiusSpec::Exact(rat(7, 10)), 256);
        // sum = 1 + R, product = -1
        let sum = lr.lambda.add(&lr.lambda_conj, 256, RM);
        let expect = bf_i64(1, 256).add(&lr.r, 256, RM);
        assert!(bf_lt(&sum.sub(&expect, 256, RM).abs(), &bf_pow2(-250, 64)));
        let prod = lr.lambda.mul(&lr.lambda_conj, 256, RM);
        assert!(bf_lt(
            &prod.add(&bf_i64(1, 256), 256, RM).abs(),
            &bf_pow2(-250, 64)
        ));
        assert!(lr.lambda.is_positive() && lr.lambda_conj.is_negative());
    }

    #[test]
    fn approaches_golden_ratio() {
        let lr = lambda_r(&RadiusSpec::Exact(rat(1, 10_000_000)), 256);
        let phi = crate::classify::golden_ratio(256);
        let gap = lr.lambda.sub(&phi, 256, RM).abs();
        assert!(bf_lt(&gap, &bf_pow2(-20, 64)));
        assert!(bf_lt(&phi, &lr.lambda), "lambda_R decreases to phi");
    }

    #[test]
    fn worked_radius_value() {
        // R = 2 pi 15/100: lambda ~ 2.3652636...
        let lr = lambda_r(&RadiusSpec::TwoPiTimes(rat(15, 100)), 256);
        let expect = crate::bigfloat::bf_parse_decimal("2.365263645689305905693", 256).unwrap();
        assert!(bf_lt(&lr.lambda.sub(&expect, 256, RM).abs(), &bf_pow2(-60, 64)));
    }
}
