//! Real continued-fraction expansions and the divergence-witness machinery
//! around `x = -1`.
//!
//! Witness reals are represented by their digit sequences, never by decimal
//! approximations: the digits grow doubly exponentially, so only the lazy
//! representation is faithful. Any numeric value needed downstream is an
//! interval derived from a finite digit prefix.

pub mod build;
pub mod certificate;
pub mod lambda;
pub mod probes;
pub mod region;

pub use build::{construct_witness, StopReason, WitnessParams, WitnessResult};
pub use certificate::{divergence_certificate, IndexCertificate};
pub use lambda::{lambda_r, LambdaR};
pub use probes::{growth_bound_probe, lipschitz_probe, schur_root_bound};
pub use region::{in_m_r, MRMargin, RealArg};

use astro_float::BigFloat;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bigfloat::{bf_pow2, ratio_from_bf};
use crate::error::{Error, Result};
use crate::BigRational;

/// The arc radius `R` defining `M_R = {|x| = 1, |x + 1| < R}`.
///
/// `TwoPiTimes(q)` represents `R = 2 pi q` exactly, which keeps the chord
/// test `|t - 1/2| < R/(2 pi)` a rational comparison.
#[derive(Debug, Clone)]
pub enum RadiusSpec {
    Exact(BigRational),
    TwoPiTimes(BigRational),
}

impl RadiusSpec {
    pub fn to_bigfloat(&self, prec: usize) -> BigFloat {
        match self {
            RadiusSpec::Exact(q) => crate::bigfloat::bf_from_ratio(q, prec),
            RadiusSpec::TwoPiTimes(q) => {
                let tp = crate::bigfloat::two_pi(prec + 8);
                tp.mul(
                    &crate::bigfloat::bf_from_ratio(q, prec + 8),
                    prec,
                    crate::bigfloat::RM,
                )
            }
        }
    }

    /// `R / (2 pi)` when exactly rational.
    pub fn over_two_pi(&self) -> Option<BigRational> {
        match self {
            RadiusSpec::TwoPiTimes(q) => Some(q.clone()),
            RadiusSpec::Exact(_) => None,
        }
    }
}

/// A real number in `(0, 1)` represented by its regular continued-fraction
/// digits `[0; e_1, e_2, ...]` together with the convergents `c_n / d_n`.
///
/// `convergents[0] = (0, 1)` and `convergents[n]` is the value of the
/// prefix `[0; e_1..e_n]`; denominators satisfy
/// `d_(n+1) = e_(n+1) d_n + d_(n-1)` and are coprime to the numerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFDigits {
    digits: Vec<BigUint>,
    convergents: Vec<(BigInt, BigInt)>,
    /// Whether the expansion is complete (rational input fully expanded).
    terminated: bool,
}

impl CFDigits {
    pub fn new() -> Self {
        CFDigits {
            digits: Vec::new(),
            convergents: vec![(BigInt::zero(), BigInt::one())],
            terminated: false,
        }
    }

    pub fn from_digits<I: Into<BigUint>>(digits: impl IntoIterator<Item = I>) -> Result<Self> {
        let mut out = Self::new();
        for d in digits {
            out.push_digit(d.into())?;
        }
        Ok(out)
    }

    pub fn push_digit(&mut self, e: BigUint) -> Result<()> {
        if e.is_zero() {
            return Err(Error::out_of_range("continued-fraction digits are >= 1"));
        }
        if self.terminated {
            return Err(Error::out_of_range("expansion already terminated"));
        }
        let n = self.convergents.len();
        let (c_prev, d_prev) = if n >= 2 {
            self.convergents[n - 2].clone()
        } else {
            (BigInt::one(), BigInt::zero())
        };
        let (c_last, d_last) = self.convergents[n - 1].clone();
        let e_int = BigInt::from(e.clone());
        self.convergents
            .push((&e_int * &c_last + c_prev, &e_int * &d_last + d_prev));
        self.digits.push(e);
        Ok(())
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    /// Numerator of the `n`-th convergent (`n = 0` is the empty prefix).
    pub fn c(&self, n: usize) -> &BigInt {
        &self.convergents[n].0
    }

    /// Denominator of the `n`-th convergent.
    pub fn d(&self, n: usize) -> &BigInt {
        &self.convergents[n].1
    }

    /// Exact value of the full digit prefix.
    pub fn value(&self) -> BigRational {
        let (c, d) = self.convergents.last().unwrap();
        BigRational::new(c.clone(), d.clone())
    }

    /// Convergent-error bound `1/(d_n^2 e_(n+1))` on `|t - c_n/d_n|`.
    ///
    /// For a terminated expansion at its last index the error is exactly 0.
    pub fn approx_error_bound(&self, n: usize) -> Result<BigRational> {
        if n >= self.convergents.len() {
            return Err(Error::out_of_range(format!(
                "convergent index {n} out of range"
            )));
        }
        if n == self.digits.len() {
            if self.terminated {
                return Ok(BigRational::zero());
            }
            return Err(Error::out_of_range(format!(
                "digit e_{} not available",
                n + 1
            )));
        }
        let d = self.d(n);
        let e_next = BigInt::from(self.digits[n].clone());
        Ok(BigRational::new(BigInt::one(), d * d * e_next))
    }
}

impl Default for CFDigits {
    fn default() -> Self {
        Self::new()
    }
}

/// Regular continued-fraction expansion of a rational `t` in `(0, 1)`.
///
/// The Euclidean algorithm terminates; the canonical form has final digit
/// `>= 2` (except for `t` with a single digit expansion `[0; e]`).
pub fn expand_real(t: &BigRational, max_terms: usize) -> Result<CFDigits> {
    if !(t > &BigRational::zero() && t < &BigRational::one()) {
        return Err(Error::out_of_range("t must lie in (0, 1)"));
    }
    let mut out = CFDigits::new();
    let mut num = t.numer().clone();
    let mut den = t.denom().clone();
    // digits of t = num/den: e = floor(den/num), remainder chain
    while !num.is_zero() && out.len() < max_terms {
        let (q, r) = den.div_rem(&num);
        out.push_digit(q.to_biguint().expect("positive quotient"))?;
        den = num;
        num = r;
    }
    if num.is_zero() {
        out.terminated = true;
    }
    Ok(out)
}

/// Expansion of a big-float `t`, treated as its exact binary rational value
/// with a half-ulp uncertainty interval. Digits are emitted only while both
/// interval endpoints agree; `exhausted` reports an early stop.
pub struct FloatExpansion {
    pub digits: CFDigits,
    pub exhausted: bool,
}

pub fn expand_real_float(t: &BigFloat, max_terms: usize) -> Result<FloatExpansion> {
    let prec = t.precision().ok_or_else(|| Error::out_of_range("t must be finite"))?;
    let center = ratio_from_bf(t);
    let radius = ratio_from_bf(&{
        let mut ulp = bf_pow2(-1 - (prec as i32), 64);
        let e = t.exponent().unwrap_or(0);
        ulp.set_exponent(ulp.exponent().unwrap() + e);
        ulp
    });
    let lo = &center - &radius;
    let hi = &center + &radius;
    if !(lo > BigRational::zero() && hi < BigRational::one()) {
        return Err(Error::out_of_range("t must lie in (0, 1) with its interval"));
    }
    let mut out = CFDigits::new();
    // run the interval Euclidean algorithm
    let (mut lo_n, mut lo_d) = (lo.numer().clone(), lo.denom().clone());
    let (mut hi_n, mut hi_d) = (hi.numer().clone(), hi.denom().clone());
    let mut exhausted = false;
    while out.len() < max_terms {
        if lo_n.is_zero() || hi_n.is_zero() {
            // an endpoint terminated: the next digit is undetermined
            exhausted = true;
            break;
        }
        // e = floor(1/t): for the interval [lo, hi], 1/t in [1/hi, 1/lo]
        let e_min = hi_d.div_floor(&hi_n);
        let e_max = lo_d.div_floor(&lo_n);
        if e_min != e_max {
            exhausted = true;
            break;
        }
        out.push_digit(e_min.to_biguint().expect("positive digit"))?;
        // t -> 1/t - e, applied to both endpoints (order swaps)
        let new_lo = (&hi_d - &e_min * &hi_n, hi_n);
        let new_hi = (&lo_d - &e_min * &lo_n, lo_n);
        lo_n = new_lo.0;
        lo_d = new_lo.1;
        hi_n = new_hi.0;
        hi_d = new_hi.1;
    }
    Ok(FloatExpansion {
        digits: out,
        exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn three_fifths_expands_canonically() {
        let d = expand_real(&rat(3, 5), 10).unwrap();
        let digits: Vec<u64> = d.digits().iter().map(|e| e.try_into().unwrap()).collect();
        assert_eq!(digits, vec![1, 1, 2]);
        assert!(d.terminated());
        // convergent chain 0/1, 1/1, 1/2, 3/5
        assert_eq!((d.c(0), d.d(0)), (&BigInt::from(0), &BigInt::from(1)));
        assert_eq!((d.c(1), d.d(1)), (&BigInt::from(1), &BigInt::from(1)));
        assert_eq!((d.c(2), d.d(2)), (&BigInt::from(1), &BigInt::from(2)));
        assert_eq!((d.c(3), d.d(3)), (&BigInt::from(3), &BigInt::from(5)));
        assert_eq!(d.value(), rat(3, 5));
    }

    #[test]
    fn one_half_is_single_digit() {
        let d = expand_real(&rat(1, 2), 10).unwrap();
        let digits: Vec<u64> = d.digits().iter().map(|e| e.try_into().unwrap()).collect();
        assert_eq!(digits, vec![2]);
        assert!(d.terminated());
        // degenerate terminating case: error 0 at the last index
        assert_eq!(d.approx_error_bound(1).unwrap(), BigRational::zero());
    }

    #[test]
    fn error_bound_formula() {
        // [0; 1, 1, 2, 9]: at n = 3, bound = 1/(5^2 * 9) = 1/225
        let d = CFDigits::from_digits([1u32, 1, 2, 9]).unwrap();
        assert_eq!(d.approx_error_bound(3).unwrap(), rat(1, 225));
        assert!(d.approx_error_bound(4).is_err());
    }

    #[test]
    fn convergents_are_coprime_and_monotone() {
        let d = CFDigits::from_digits([1u32, 1, 2, 9, 7, 3, 11, 1, 2]).unwrap();
        for n in 0..=d.len() {
            assert!(d.c(n).gcd(d.d(n)).is_one(), "n={n}");
            if n >= 2 {
                assert!(d.d(n) > d.d(n - 1), "denominators increase from n=2");
            }
        }
    }

    #[test]
    fn error_bound_holds_for_prefix_value() {
        // t = value of a long expansion; check |t - c_n/d_n| <= 1/(d_n^2 e_(n+1))
        let digits = [2u32, 7, 1, 4, 2, 9, 3, 1, 5];
        let d = CFDigits::from_digits(digits).unwrap();
        let t = d.value();
        for n in 1..d.len() {
            let err = (&t - BigRational::new(d.c(n).clone(), d.d(n).clone())).abs();
            let bound = d.approx_error_bound(n).unwrap();
            assert!(err <= bound, "n={n}: {err} > {bound}");
        }
    }

    #[test]
    fn roundtrip_rational_expansion() {
        for (n, dd) in [(3i64, 5i64), (22, 61), (355, 452), (1, 997), (610, 987)] {
            let t = rat(n, dd);
            let digits = expand_real(&t, 100).unwrap();
            assert!(digits.terminated());
            assert_eq!(digits.value(), t, "{n}/{dd}");
            // canonical: final digit >= 2 unless the expansion has length 1
            if digits.len() > 1 {
                assert!(digits.digits().last().unwrap() >= &BigUint::from(2u32));
            }
        }
    }

    #[test]
    fn float_expansion_matches_rational_prefix() {
        // the binary rounding of 3/5 sits half an ulp from the exact value,
        // whose continued-fraction tail turns at exactly that scale: only
        // the first two digits are determined, and the expansion must say so
        let t = crate::bigfloat::bf_from_ratio(&rat(3, 5), 256);
        let fe = expand_real_float(&t, 10).unwrap();
        let digits: Vec<u64> = fe
            .digits
            .digits()
            .iter()
            .map(|e| e.try_into().unwrap())
            .collect();
        assert_eq!(digits, vec![1, 1]);
        assert!(fe.exhausted);
        // golden-ratio-like irrational: sqrt(2) - 1 = [0; 2, 2, 2, ...]
        let s = crate::bigfloat::bf_i64(2, 256)
            .sqrt(256, crate::bigfloat::RM)
            .sub(&crate::bigfloat::bf_i64(1, 256), 256, crate::bigfloat::RM);
        let fe = expand_real_float(&s, 40).unwrap();
        assert!(fe.digits.len() >= 30, "plenty of digits determined");
        for e in fe.digits.digits() {
            assert_eq!(u64::try_from(e).unwrap(), 2);
        }
    }

    #[test]
    fn float_expansion_stops_when_undetermined() {
        // at 32 bits the digit supply runs out quickly
        let t = crate::bigfloat::bf_from_ratio(&rat(355, 1130), 32);
        let fe = expand_real_float(&t, 100).unwrap();
        assert!(fe.exhausted);
        assert!(fe.digits.len() < 40);
    }

    #[test]
    fn domain_checks() {
        assert!(expand_real(&rat(3, 2), 5).is_err());
        assert!(expand_real(&rat(0, 1), 5).is_err());
        assert!(CFDigits::from_digits([0u32]).is_err());
    }
}
