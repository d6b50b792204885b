//! Arbitrary-precision complex numbers.

use astro_float::BigFloat;
use num_bigint::BigInt;

use crate::bigfloat::{bf_from_bigint, bf_from_ratio, bf_i64, bf_max, bf_zero, log2_abs, with_consts, RM};
use crate::BigRational;

/// A complex number with arbitrary-precision real and imaginary parts.
///
/// The precision in bits is carried with the value; binary operations work
/// at the minimum of the operand precisions and round each component to
/// nearest.
#[derive(Debug, Clone)]
pub struct ComplexBF {
    pub re: BigFloat,
    pub im: BigFloat,
    prec: usize,
}

impl ComplexBF {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        ComplexBF { re, im, prec }
    }

    pub fn zero(prec: usize) -> Self {
        ComplexBF::new(bf_zero(prec), bf_zero(prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        ComplexBF::new(bf_i64(1, prec), bf_zero(prec), prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        ComplexBF::new(bf_i64(v, prec), bf_zero(prec), prec)
    }

    pub fn from_real(re: BigFloat, prec: usize) -> Self {
        ComplexBF::new(re, bf_zero(prec), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: usize) -> Self {
        ComplexBF::new(bf_from_bigint(v, prec), bf_zero(prec), prec)
    }

    pub fn from_ratio(v: &BigRational, prec: usize) -> Self {
        ComplexBF::new(bf_from_ratio(v, prec), bf_zero(prec), prec)
    }

    /// `e^(2*pi*i*t)` for rational `t`.
    pub fn unit_circle_rational(t: &BigRational, prec: usize) -> Self {
        let work = prec + 16;
        let angle = crate::bigfloat::two_pi(work).mul(&bf_from_ratio(t, work), work, RM);
        Self::from_angle(&angle, prec)
    }

    /// `e^(2*pi*i*t)` for real `t`.
    pub fn unit_circle_real(t: &BigFloat, prec: usize) -> Self {
        let work = prec + 16;
        let angle = crate::bigfloat::two_pi(work).mul(t, work, RM);
        Self::from_angle(&angle, prec)
    }

    /// `e^(i*angle)`.
    pub fn from_angle(angle: &BigFloat, prec: usize) -> Self {
        let work = prec + 16;
        let (c, s) = with_consts(|cc| {
            (angle.cos(work, RM, cc), angle.sin(work, RM, cc))
        });
        let mut c = c;
        let mut s = s;
        c.set_precision(prec, RM).expect("precision");
        s.set_precision(prec, RM).expect("precision");
        ComplexBF::new(c, s, prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn join(&self, rhs: &Self) -> usize {
        self.prec.min(rhs.prec)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        ComplexBF::new(self.re.add(&rhs.re, p, RM), self.im.add(&rhs.im, p, RM), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        ComplexBF::new(self.re.sub(&rhs.re, p, RM), self.im.sub(&rhs.im, p, RM), p)
    }

    pub fn neg(&self) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.inv_sign();
        im.inv_sign();
        ComplexBF::new(re, im, self.prec)
    }

    pub fn conj(&self) -> Self {
        let mut im = self.im.clone();
        im.inv_sign();
        ComplexBF::new(self.re.clone(), im, self.prec)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        let ac = self.re.mul(&rhs.re, p + 8, RM);
        let bd = self.im.mul(&rhs.im, p + 8, RM);
        let ad = self.re.mul(&rhs.im, p + 8, RM);
        let bc = self.im.mul(&rhs.re, p + 8, RM);
        ComplexBF::new(ac.sub(&bd, p, RM), ad.add(&bc, p, RM), p)
    }

    pub fn mul_real(&self, rhs: &BigFloat) -> Self {
        let p = self.prec;
        ComplexBF::new(self.re.mul(rhs, p, RM), self.im.mul(rhs, p, RM), p)
    }

    /// Squared modulus as a real number.
    pub fn abs_sq(&self) -> BigFloat {
        let p = self.prec + 8;
        let rr = self.re.mul(&self.re, p, RM);
        let ii = self.im.mul(&self.im, p, RM);
        rr.add(&ii, self.prec, RM)
    }

    /// Modulus as a real number.
    pub fn abs(&self) -> BigFloat {
        self.abs_sq().sqrt(self.prec, RM)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        let den = rhs.abs_sq();
        let num = self.mul(&rhs.conj());
        ComplexBF::new(num.re.div(&den, p, RM), num.im.div(&den, p, RM), p)
    }

    pub fn recip(&self) -> Self {
        ComplexBF::one(self.prec).div(self)
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexBF::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Principal square root (branch cut along the negative real axis).
    pub fn sqrt_principal(&self) -> Self {
        let p = self.prec + 16;
        if self.im.is_zero() && !self.re.is_negative() {
            return ComplexBF::new(self.re.sqrt(self.prec, RM), bf_zero(self.prec), self.prec);
        }
        let r = self.abs();
        // re(sqrt) = sqrt((r + re)/2), im(sqrt) = sign(im) * sqrt((r - re)/2)
        let two = bf_i64(2, p);
        let re_part = r.add(&self.re, p, RM).div(&two, p, RM).sqrt(self.prec, RM);
        let mut im_part = r.sub(&self.re, p, RM).div(&two, p, RM).sqrt(self.prec, RM);
        if self.im.is_negative() {
            im_part.inv_sign();
        }
        ComplexBF::new(re_part, im_part, self.prec)
    }

    /// Base-2 magnitude estimate: exponent of `max(|re|, |im|)`, `None` if zero.
    pub fn log2_mag(&self) -> Option<i64> {
        match (log2_abs(&self.re), log2_abs(&self.im)) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
        }
    }

    /// Distance `|self - rhs|`.
    pub fn dist(&self, rhs: &Self) -> BigFloat {
        self.sub(rhs).abs()
    }

    /// Multiplies both components by `2^e` exactly.
    pub fn scale_exp2(&mut self, e: i32) {
        for part in [&mut self.re, &mut self.im] {
            if !part.is_zero() {
                let cur = part.exponent().expect("finite");
                part.set_exponent(cur + e);
            }
        }
    }

    /// Max component magnitude, as a real number.
    pub fn max_component_abs(&self) -> BigFloat {
        bf_max(self.re.abs(), self.im.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{bf_lt, bf_pow2};

    fn close(a: &BigFloat, b: &BigFloat, tol_exp: i32) -> bool {
        bf_lt(&a.sub(b, 256, RM).abs(), &bf_pow2(tol_exp, 64))
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = ComplexBF::new(bf_i64(3, 256), bf_i64(4, 256), 256);
        let b = ComplexBF::new(bf_i64(-1, 256), bf_i64(2, 256), 256);
        let c = a.mul(&b).div(&b);
        assert!(close(&c.re, &a.re, -240));
        assert!(close(&c.im, &a.im, -240));
    }

    #[test]
    fn unit_circle_has_modulus_one() {
        let t = BigRational::new(3.into(), 7.into());
        let z = ComplexBF::unit_circle_rational(&t, 256);
        assert!(close(&z.abs(), &bf_i64(1, 256), -240));
    }

    #[test]
    fn sqrt_principal_branch() {
        // sqrt(-3/4) = i*sqrt(3)/2: positive imaginary part
        let z = ComplexBF::new(
            bf_from_ratio(&BigRational::new((-3).into(), 4.into()), 256),
            bf_zero(256),
            256,
        );
        let s = z.sqrt_principal();
        assert!(s.im.is_positive());
        let sq = s.mul(&s);
        assert!(close(&sq.re, &z.re, -240));
        assert!(close(&sq.im, &z.im, -240));
        // sqrt of a positive real is real positive
        let w = ComplexBF::from_i64(5, 128).sqrt_principal();
        assert!(w.im.is_zero() && w.re.is_positive());
    }

    #[test]
    fn scaling_is_exact() {
        let mut z = ComplexBF::new(bf_i64(3, 64), bf_i64(-7, 64), 64);
        z.scale_exp2(5);
        assert_eq!(crate::bigfloat::bigint_from_bf(&z.re), BigInt::from(96));
        assert_eq!(crate::bigfloat::bigint_from_bf(&z.im), BigInt::from(-224));
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let z = ComplexBF::unit_circle_rational(&BigRational::new(1.into(), 5.into()), 192);
        let mut acc = ComplexBF::one(192);
        for _ in 0..5 {
            acc = acc.mul(&z);
        }
        let p = z.powi(5);
        assert!(close(&p.re, &acc.re, -180));
        assert!(close(&p.im, &acc.im, -180));
        // fifth power of a fifth root of unity is 1
        assert!(close(&p.re, &bf_i64(1, 192), -180));
    }
}
