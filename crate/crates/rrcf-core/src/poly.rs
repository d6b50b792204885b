//! Dense univariate polynomials over the integers, q-binomial coefficients,
//! and the formal bivariate objects built from them.
//!
//! `QPolynomial` stores coefficients in ascending degree order; the vector is
//! empty for the zero polynomial and otherwise has a nonzero last element.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn x() -> Self {
        QPolynomial {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = QPolynomial { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        Self::from_coeffs(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        QPolynomial { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact division; `None` when the remainder is nonzero or a coefficient
    /// division fails over the integers.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = den.degree().unwrap();
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = den.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&c, lead);
            if !r.is_zero() {
                return None;
            }
            quot[i - dd] = q.clone();
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * d;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// True if every coefficient is nonnegative.
    pub fn coeffs_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// Gaussian binomial coefficient as a polynomial in `x`.
///
/// Built iteratively as `b_i = b_{i-1} * (x^(m-k+i) - 1) / (x^i - 1)`; every
/// intermediate value is itself a Gaussian binomial, so each division is
/// exact.
pub fn gaussian_binomial(m: u64, k: u64) -> Result<QPolynomial> {
    if k > m {
        return Err(Error::out_of_range(format!(
            "gaussian binomial needs 0 <= k <= m, got m={m}, k={k}"
        )));
    }
    let mut b = QPolynomial::one();
    for i in 1..=k {
        let num = b.mul(&QPolynomial::x_pow_minus_one((m - k + i) as usize));
        b = num
            .div_exact(&QPolynomial::x_pow_minus_one(i as usize))
            .expect("Gaussian binomial division is exact");
    }
    Ok(b)
}

/// Trace component `T_{m,k}(x) = (x^m - 1)/(x^(m-k) - 1) * binom(m-k, k)_x`.
///
/// The quotient is taken of the product, which is exactly divisible.
/// Inexact division here would falsify the trace decomposition, so it is a
/// hard panic rather than a recoverable error.
pub fn trace_component(m: u64, k: u64) -> Result<QPolynomial> {
    if m < 3 || k < 1 || k > m / 2 {
        return Err(Error::out_of_range(format!(
            "trace component needs 3 <= m and 1 <= k <= m/2, got m={m}, k={k}"
        )));
    }
    let num = QPolynomial::x_pow_minus_one(m as usize).mul(&gaussian_binomial(m - k, k)?);
    Ok(num
        .div_exact(&QPolynomial::x_pow_minus_one((m - k) as usize))
        .expect("trace component division is exact"))
}

/// A polynomial in `a` whose coefficients are integer polynomials in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    /// `a_coeffs[k]` is the coefficient of `a^k`.
    pub a_coeffs: Vec<QPolynomial>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { a_coeffs: vec![] }
    }

    pub fn one() -> Self {
        BiPoly {
            a_coeffs: vec![QPolynomial::one()],
        }
    }

    fn normalize(&mut self) {
        while self.a_coeffs.last().is_some_and(|p| p.is_zero()) {
            self.a_coeffs.pop();
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.a_coeffs.len().max(rhs.a_coeffs.len());
        let mut out = vec![QPolynomial::zero(); n];
        for (i, p) in self.a_coeffs.iter().enumerate() {
            out[i] = out[i].add(p);
        }
        for (i, p) in rhs.a_coeffs.iter().enumerate() {
            out[i] = out[i].add(p);
        }
        let mut b = BiPoly { a_coeffs: out };
        b.normalize();
        b
    }

    /// Multiplication by `a * x^e`.
    pub fn mul_a_x_pow(&self, e: usize) -> Self {
        let mut out = Vec::with_capacity(self.a_coeffs.len() + 1);
        out.push(QPolynomial::zero());
        for p in &self.a_coeffs {
            out.push(p.shift_up(e));
        }
        let mut b = BiPoly { a_coeffs: out };
        b.normalize();
        b
    }

    /// Multiplication by `x^e`.
    pub fn mul_x_pow(&self, e: usize) -> Self {
        BiPoly {
            a_coeffs: self.a_coeffs.iter().map(|p| p.shift_up(e)).collect(),
        }
    }
}

/// Formal numerator `P_m(a, x)` from the closed form
/// `1 + sum_k binom(m+1-k, k)_x x^(k^2) a^k`.
pub fn formal_p(m: i64) -> BiPoly {
    match m {
        -2 => return BiPoly::zero(),
        -1 => return BiPoly::one(),
        _ => {}
    }
    let m = m as u64;
    let kmax = m.div_ceil(2);
    let mut a_coeffs = vec![QPolynomial::one()];
    for k in 1..=kmax {
        let b = gaussian_binomial(m + 1 - k, k).expect("k <= m+1-k");
        a_coeffs.push(b.shift_up((k * k) as usize));
    }
    let mut p = BiPoly { a_coeffs };
    p.normalize();
    p
}

/// Formal denominator `Q_m(a, x)` from the closed form
/// `1 + sum_k binom(m+2-k, k)_x x^(k(k-1)) a^k`.
pub fn formal_q(m: i64) -> BiPoly {
    match m {
        -2 | -1 => return BiPoly::one(),
        _ => {}
    }
    let m = m as u64;
    let kmax = m / 2 + 1;
    let mut a_coeffs = vec![QPolynomial::one()];
    for k in 1..=kmax {
        let b = gaussian_binomial(m + 2 - k, k).expect("k <= m+2-k");
        a_coeffs.push(b.shift_up((k * (k - 1)) as usize));
    }
    let mut q = BiPoly { a_coeffs };
    q.normalize();
    q
}

/// Formal trace `T_m(a, x) = a x^(m-1) P_(m-3) + Q_(m-2)`.
pub fn formal_trace(m: u64) -> BiPoly {
    assert!(m >= 3);
    formal_p(m as i64 - 3)
        .mul_a_x_pow((m - 1) as usize)
        .add(&formal_q(m as i64 - 2))
}

/// Formal trace assembled from the trace components:
/// `1 + sum_k T_{m,k}(x) x^(k(k-1)) a^k`.
pub fn formal_trace_from_components(m: u64) -> BiPoly {
    assert!(m >= 3);
    let mut a_coeffs = vec![QPolynomial::one()];
    for k in 1..=(m / 2) {
        let t = trace_component(m, k).expect("valid trace component range");
        a_coeffs.push(t.shift_up((k * (k - 1)) as usize));
    }
    let mut b = BiPoly { a_coeffs };
    b.normalize();
    b
}
