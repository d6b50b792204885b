//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are stored in canonical form: coefficient vectors of length
//! `phi(N)` over the rationals with respect to the power basis
//! `1, zeta, ..., zeta^(phi(N)-1)` modulo the `N`-th cyclotomic polynomial.
//! Canonical form is unique, so structural equality is field equality at a
//! fixed level. Mixed-level operands are lifted to the lcm level through
//! `zeta_N = zeta_M^(M/N)`.
//!
//! Multiplication carries a fast path for powers of `zeta` (the common case
//! in convergent recursions, where every step multiplies by `a x^n`), and
//! clears denominators so the bulk of the work runs over integers.
//!
//! The infix-style operations (`add`, `sub`, `mul`) panic when the lcm of
//! the operand levels overflows `u32`; fallible callers can pre-coerce with
//! [`CycloElem::coerce`], which reports the overflow as an error instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::Arc;

use crate::complex::ComplexBF;
use crate::error::{Error, Result};
use crate::poly::QPolynomial;
use crate::BigRational;

pub mod level;
pub mod roots;
pub mod transfer;

pub use roots::{sqrt5, sqrt_minus3};
pub use transfer::{p_closed_form, q_closed_form, transfer_matrix, PqTable, TransferMatrix};

use level::{level_data, LevelData};

#[derive(Debug, Clone)]
pub struct CycloElem {
    level: u32,
    coeffs: Vec<BigRational>,
    /// Set when the element is known to be `zeta_level^e`.
    pow_tag: Option<u32>,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElem {}

impl CycloElem {
    fn data(&self) -> Arc<LevelData> {
        level_data(self.level)
    }

    pub fn zero(level: u32) -> Self {
        let d = level_data(level);
        CycloElem {
            level,
            coeffs: vec![BigRational::zero(); d.phi],
            pow_tag: None,
        }
    }

    pub fn one(level: u32) -> Self {
        Self::root_of_unity(level, 0)
    }

    pub fn from_int(level: u32, v: i64) -> Self {
        Self::from_rational(level, BigRational::from_integer(v.into()))
    }

    pub fn from_rational(level: u32, q: BigRational) -> Self {
        let mut e = Self::zero(level);
        e.coeffs[0] = q;
        e.pow_tag = if e.coeffs[0].is_one() { Some(0) } else { None };
        e
    }

    /// Canonical form of `zeta_level^exp` (exponent reduced mod level).
    pub fn root_of_unity(level: u32, exp: i64) -> Self {
        let d = level_data(level);
        let e = exp.rem_euclid(level as i64) as usize;
        let mut ints = vec![BigInt::zero(); d.phi];
        d.monomial(e, &mut ints);
        CycloElem {
            level,
            coeffs: ints.into_iter().map(BigRational::from_integer).collect(),
            pow_tag: Some(e as u32),
        }
    }

    /// Builds an element from power-basis coordinates (length at most
    /// `phi(level)`; shorter vectors are padded with zeros).
    pub fn from_coeffs(level: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        let d = level_data(level);
        if coeffs.len() > d.phi {
            return Err(Error::bad_level(format!(
                "coefficient vector of length {} exceeds phi({level}) = {}",
                coeffs.len(),
                d.phi
            )));
        }
        let mut c = coeffs;
        c.resize(d.phi, BigRational::zero());
        Ok(CycloElem {
            level,
            coeffs: c,
            pow_tag: None,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn phi(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn equals_int(&self, v: i64) -> bool {
        self.as_rational()
            .is_some_and(|q| q == BigRational::from_integer(v.into()))
    }

    /// Clears denominators: returns integer coordinates and the common
    /// (positive) denominator.
    fn to_int_vec(&self) -> (Vec<BigInt>, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    }

    fn from_int_vec(level: u32, ints: Vec<BigInt>, den: &BigInt) -> Self {
        let coeffs = if den.is_one() {
            ints.into_iter().map(BigRational::from_integer).collect()
        } else {
            ints.into_iter()
                .map(|n| BigRational::new(n, den.clone()))
                .collect()
        };
        CycloElem {
            level,
            coeffs,
            pow_tag: None,
        }
    }

    /// Lifts the element into `Q(zeta_target)`; `level` must divide `target`.
    pub fn lift_to(&self, target: u32) -> Result<Self> {
        if target == self.level {
            return Ok(self.clone());
        }
        if !target.is_multiple_of(self.level) {
            return Err(Error::bad_level(format!(
                "cannot lift level {} into level {target}",
                self.level
            )));
        }
        let ratio = (target / self.level) as usize;
        if let Some(e) = self.pow_tag {
            return Ok(Self::root_of_unity(target, e as i64 * ratio as i64));
        }
        let d = level_data(target);
        let (ints, den) = self.to_int_vec();
        let mut acc = vec![BigInt::zero(); d.phi];
        let mut buf = vec![BigInt::zero(); d.phi];
        for (i, c) in ints.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            add_monomial_multiple(&d, i * ratio, c, &mut acc, &mut buf);
        }
        Ok(Self::from_int_vec(target, acc, &den))
    }

    /// Lifts both operands to the lcm of their levels.
    pub fn coerce(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.level == b.level {
            return Ok((a.clone(), b.clone()));
        }
        let l = (a.level as u64).lcm(&(b.level as u64));
        let l = u32::try_from(l)
            .map_err(|_| Error::bad_level(format!("lcm of {} and {} overflows", a.level, b.level)))?;
        Ok((a.lift_to(l)?, b.lift_to(l)?))
    }

    /// Field equality across levels.
    pub fn eq_lifted(&self, other: &Self) -> bool {
        match Self::coerce(self, other) {
            Ok((a, b)) => a == b,
            Err(_) => false,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b) = Self::coerce(self, rhs).expect("compatible levels");
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        CycloElem {
            level: a.level,
            coeffs,
            pow_tag: None,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (a, b) = Self::coerce(self, rhs).expect("compatible levels");
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x - y)
            .collect();
        CycloElem {
            level: a.level,
            coeffs,
            pow_tag: None,
        }
    }

    pub fn neg(&self) -> Self {
        let pow_tag = self.pow_tag.and_then(|e| {
            if self.level.is_multiple_of(2) {
                Some((e + self.level / 2) % self.level)
            } else {
                None
            }
        });
        CycloElem {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            pow_tag,
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        CycloElem {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            pow_tag: if q.is_one() { self.pow_tag } else { None },
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = Self::coerce(self, rhs).expect("compatible levels");
        match (a.pow_tag, b.pow_tag) {
            (Some(e1), Some(e2)) => {
                Self::root_of_unity(a.level, e1 as i64 + e2 as i64)
            }
            (Some(e), None) => b.mul_zeta_pow(e as i64),
            (None, Some(e)) => a.mul_zeta_pow(e as i64),
            (None, None) => a.mul_dense(&b),
        }
    }

    /// Multiplication by `zeta_level^e`.
    pub fn mul_zeta_pow(&self, e: i64) -> Self {
        let d = self.data();
        let e = e.rem_euclid(self.level as i64) as usize;
        if e == 0 {
            return self.clone();
        }
        if let Some(t) = self.pow_tag {
            return Self::root_of_unity(self.level, t as i64 + e as i64);
        }
        let (ints, den) = self.to_int_vec();
        let n = self.level as usize;
        let mut acc = vec![BigInt::zero(); d.phi];
        let mut buf = vec![BigInt::zero(); d.phi];
        for (i, c) in ints.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            add_monomial_multiple(&d, (i + e) % n, c, &mut acc, &mut buf);
        }
        Self::from_int_vec(self.level, acc, &den)
    }

    fn mul_dense(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.level, rhs.level);
        let d = self.data();
        let (x, dx) = self.to_int_vec();
        let (y, dy) = rhs.to_int_vec();
        let phi = d.phi;
        if phi == 1 {
            return Self::from_int_vec(self.level, vec![&x[0] * &y[0]], &(dx * dy));
        }
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        // fold exponents >= phi back through the reduction rows
        let mut acc: Vec<BigInt> = conv[..phi].to_vec();
        for (i, c) in conv[phi..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in d.red_rows[i].iter().enumerate() {
                if !r.is_zero() {
                    acc[j] += c * r;
                }
            }
        }
        Self::from_int_vec(self.level, acc, &(dx * dy))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero { level: self.level });
        }
        if let Some(e) = self.pow_tag {
            return Ok(Self::root_of_unity(self.level, -(e as i64)));
        }
        let d = self.data();
        // extended Euclid against the minimal polynomial over Q[y]
        let phi_poly: Vec<BigRational> = d
            .minimal
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let f: Vec<BigRational> = self.coeffs.clone();
        let (mut r0, mut r1) = (trim(f), trim(phi_poly));
        let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
        while !r1.is_empty() {
            let (q, r) = poly_div_rem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert_eq!(r0.len(), 1, "cyclotomic polynomial is irreducible over Q");
        let g = r0[0].clone();
        let inv_coeffs: Vec<BigRational> = s0.iter().map(|c| c / &g).collect();
        let mut out = Self::zero(self.level);
        for (i, c) in inv_coeffs.into_iter().enumerate() {
            out.coeffs[i] = c;
        }
        Ok(out)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = Self::coerce(self, rhs)?;
        Ok(a.mul(&b.inv()?))
    }

    /// Integer power (negative exponents invert; zero element with negative
    /// exponent errors).
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if let Some(e) = self.pow_tag {
            return Ok(Self::root_of_unity(self.level, e as i64 * exp));
        }
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut n = exp.unsigned_abs();
        let mut acc = Self::one(self.level);
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Complex embedding at `zeta_N = exp(2 pi i / N)`.
    pub fn to_complex(&self, prec: usize) -> ComplexBF {
        let work = prec + 32;
        let zeta = ComplexBF::unit_circle_rational(
            &BigRational::new(BigInt::one(), BigInt::from(self.level)),
            work,
        );
        let mut acc = ComplexBF::zero(work);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&zeta);
            if !c.is_zero() {
                acc = acc.add(&ComplexBF::from_ratio(c, work));
            }
        }
        let mut re = acc.re;
        let mut im = acc.im;
        re.set_precision(prec, crate::bigfloat::RM).expect("precision");
        im.set_precision(prec, crate::bigfloat::RM).expect("precision");
        ComplexBF::new(re, im, prec)
    }

    /// The exponent `e` with `self = zeta_level^e`, when tracked.
    pub fn as_root_power(&self) -> Option<(u32, u32)> {
        self.pow_tag.map(|e| (self.level, e))
    }
}

/// Adds `c * zeta^e` (exponent already reduced mod `n`) into `acc`.
fn add_monomial_multiple(
    d: &LevelData,
    e: usize,
    c: &BigInt,
    acc: &mut [BigInt],
    buf: &mut [BigInt],
) {
    if e < d.phi {
        acc[e] += c;
    } else {
        d.monomial(e, buf);
        for (a, b) in acc.iter_mut().zip(buf.iter()) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }
}

/// Evaluates an integer polynomial at `zeta_level^root_exp` with exponent
/// reduction mod the level (cheap even for q-binomial-sized degrees).
pub fn eval_int_poly_at_root(level: u32, root_exp: i64, poly: &QPolynomial) -> CycloElem {
    let d = level_data(level);
    let n = level as usize;
    let e = root_exp.rem_euclid(level as i64) as usize;
    let mut acc = vec![BigInt::zero(); d.phi];
    let mut buf = vec![BigInt::zero(); d.phi];
    for (j, c) in poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        add_monomial_multiple(&d, (j * e) % n, c, &mut acc, &mut buf);
    }
    CycloElem::from_int_vec(level, acc, &BigInt::one())
}

/// Evaluates an integer polynomial at an arbitrary element (Horner).
pub fn eval_int_poly(x: &CycloElem, poly: &QPolynomial) -> CycloElem {
    if let Some((level, e)) = x.as_root_power() {
        return eval_int_poly_at_root(level, e as i64, poly);
    }
    let mut acc = CycloElem::zero(x.level());
    for c in poly.coeffs().iter().rev() {
        acc = acc.mul(x);
        if !c.is_zero() {
            acc = acc.add(&CycloElem::from_rational(
                x.level(),
                BigRational::from_integer(c.clone()),
            ));
        }
    }
    acc
}

// ---- rational polynomial helpers for the inverse ----

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_div_rem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty());
    if num.len() < den.len() {
        return (Vec::new(), num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigRational::zero(); num.len() - den.len() + 1];
    let lead = den.last().unwrap();
    for i in (den.len() - 1..num.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / lead;
        let off = i + 1 - den.len();
        quot[off] = q.clone();
        for (j, c) in den.iter().enumerate() {
            let t = &q * c;
            rem[off + j] -= t;
        }
    }
    (trim(quot), trim(rem))
}
