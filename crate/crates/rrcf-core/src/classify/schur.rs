//! Schur's closed form for `K(x)` at primitive `m`-th roots of unity with
//! `5` not dividing `m`:
//! `K(x) = lambda x^((1 - lambda sigma m)/5) K(lambda)`,
//! where `lambda` is the Legendre symbol `(m|5)`, `sigma` the least positive
//! residue of `m` mod 5, `K(1)` the golden ratio and `K(-1)` its inverse.

use astro_float::BigFloat;

use super::RootOfUnitySpec;
use crate::bigfloat::{bf_i64, RM};
use crate::complex::ComplexBF;
use crate::error::{Error, Result};

/// Legendre symbol `(m | 5)`: quadratic residues mod 5 are `{1, 4}`.
pub fn legendre5(m: u64) -> Result<i8> {
    match m % 5 {
        0 => Err(Error::FiveDivides { m }),
        1 | 4 => Ok(1),
        _ => Ok(-1),
    }
}

/// `(1 + sqrt(5))/2` at `prec` bits.
pub fn golden_ratio(prec: usize) -> BigFloat {
    bf_i64(5, prec + 8)
        .sqrt(prec + 8, RM)
        .add(&bf_i64(1, prec + 8), prec + 8, RM)
        .div(&bf_i64(2, prec), prec, RM)
}

/// Transport between the two normalizations: `K_1 = K/(K + 1)`.
pub fn k1_from_k(k: &ComplexBF) -> ComplexBF {
    k.div(&k.add(&ComplexBF::one(k.prec())))
}

/// Inverse transport: `K = K_1/(1 - K_1)`.
pub fn k_from_k1(k1: &ComplexBF) -> ComplexBF {
    k1.div(&ComplexBF::one(k1.prec()).sub(k1))
}

#[derive(Debug, Clone)]
pub struct SchurLimit {
    pub m: u64,
    /// Legendre symbol `(m|5)`.
    pub legendre: i8,
    /// Least positive residue of `m` mod 5.
    pub sigma: u64,
    /// The integer exponent `(1 - legendre * sigma * m) / 5`.
    pub exponent: i64,
    pub value: ComplexBF,
}

/// Evaluates Schur's formula at the primitive `m`-th root `x`.
pub fn schur_limit(m: u64, x: &RootOfUnitySpec, prec: usize) -> Result<SchurLimit> {
    let lambda = legendre5(m)?;
    if x.order() as u64 != m {
        return Err(Error::out_of_range(format!(
            "x has order {}, expected primitive {m}-th root",
            x.order()
        )));
    }
    let sigma = m % 5;
    let num = 1i128 - (lambda as i128) * (sigma as i128) * (m as i128);
    debug_assert_eq!(num % 5, 0, "exponent (1 - lambda sigma m)/5 is integral");
    let exponent = (num / 5) as i64;
    let phase = x.pow(exponent).embed(prec);
    let base = golden_ratio(prec);
    let k_lambda = if lambda == 1 {
        base
    } else {
        bf_i64(1, prec).div(&base, prec, RM)
    };
    let mut value = phase.mul_real(&k_lambda);
    if lambda == -1 {
        value = value.neg();
    }
    Ok(SchurLimit {
        m,
        legendre: lambda,
        sigma,
        exponent,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{bf_lt, bf_pow2};
    use crate::cf::{truncated_value, CfSpec};

    #[test]
    fn legendre_table() {
        assert_eq!(legendre5(1).unwrap(), 1);
        assert_eq!(legendre5(2).unwrap(), -1);
        assert_eq!(legendre5(3).unwrap(), -1);
        assert_eq!(legendre5(4).unwrap(), 1);
        assert_eq!(legendre5(6).unwrap(), 1);
        assert!(matches!(legendre5(10), Err(Error::FiveDivides { m: 10 })));
    }

    #[test]
    fn exponents_match_worked_cases() {
        // m=3: lambda=-1, sigma=3 -> (1+9)/5 = 2
        let x3 = RootOfUnitySpec::new(1, 3).unwrap();
        let s = schur_limit(3, &x3, 192).unwrap();
        assert_eq!((s.legendre, s.sigma, s.exponent), (-1, 3, 2));
        // m=4: lambda=+1, sigma=4 -> (1-16)/5 = -3
        let x4 = RootOfUnitySpec::new(1, 4).unwrap();
        let s = schur_limit(4, &x4, 192).unwrap();
        assert_eq!((s.legendre, s.sigma, s.exponent), (1, 4, -3));
        // m=2: lambda=-1, sigma=2 -> (1+4)/5 = 1; value -(-1)*(1/phi) = 1/phi
        let x2 = RootOfUnitySpec::minus_one();
        let s = schur_limit(2, &x2, 256).unwrap();
        assert_eq!((s.legendre, s.sigma, s.exponent), (-1, 2, 1));
        let inv_phi = bf_i64(1, 256).div(&golden_ratio(256), 256, RM);
        assert!(bf_lt(
            &s.value.re.sub(&inv_phi, 256, RM).abs(),
            &bf_pow2(-240, 64)
        ));
        assert!(bf_lt(&s.value.im.abs(), &bf_pow2(-240, 64)));
    }

    #[test]
    fn schur_value_matches_truncation() {
        // K(zeta_m) by truncation vs the closed form, m = 3 and 4
        for m in [3u32, 4] {
            let x = RootOfUnitySpec::new(1, m).unwrap();
            let s = schur_limit(m as u64, &x, 256).unwrap();
            let spec = CfSpec::schur(x.embed(256));
            let t = truncated_value(&spec, 600 * m as i64, 256).unwrap();
            let err = s.value.sub(&t).abs();
            assert!(bf_lt(&err, &bf_pow2(-90, 64)), "m={m}");
        }
    }

    #[test]
    fn transports_are_mutually_inverse() {
        let k = ComplexBF::from_i64(3, 192);
        let back = k_from_k1(&k1_from_k(&k));
        let err = back.sub(&k).abs();
        assert!(bf_lt(&err, &bf_pow2(-180, 64)));
    }
}
