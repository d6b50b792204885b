//! Minimal commutative-ring interface shared by the exact and numeric
//! coefficient types.
//!
//! Constants are derived from an existing element (`one_like`) so that the
//! ring context (cyclotomic level or float precision) travels with values.

use crate::complex::ComplexBF;
use crate::cyclo::CycloElem;
use crate::BigRational;
use num_traits::{One, Zero};

pub trait Ring: Clone + std::fmt::Debug {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;

    /// Base-2 magnitude for floating-point rings; `None` for exact rings
    /// (disables magnitude-loss tracking) and for zero values.
    fn log2_mag_hint(&self) -> Option<i64> {
        None
    }

    /// Working precision in bits for floating-point rings.
    fn prec_hint(&self) -> Option<usize> {
        None
    }

    /// Exact multiplication by `2^e` for floating-point rings; no-op for
    /// exact rings (which are never rescaled).
    fn scale_exp2_hint(&mut self, _e: i32) {}
}

impl Ring for CycloElem {
    fn add(&self, rhs: &Self) -> Self {
        CycloElem::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        CycloElem::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        CycloElem::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        CycloElem::neg(self)
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn one_like(&self) -> Self {
        CycloElem::one(self.level())
    }
    fn zero_like(&self) -> Self {
        CycloElem::zero(self.level())
    }
}

impl Ring for ComplexBF {
    fn add(&self, rhs: &Self) -> Self {
        ComplexBF::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ComplexBF::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ComplexBF::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        ComplexBF::neg(self)
    }
    fn is_zero(&self) -> bool {
        ComplexBF::is_zero(self)
    }
    fn one_like(&self) -> Self {
        ComplexBF::one(self.prec())
    }
    fn zero_like(&self) -> Self {
        ComplexBF::zero(self.prec())
    }
    fn log2_mag_hint(&self) -> Option<i64> {
        self.log2_mag()
    }
    fn prec_hint(&self) -> Option<usize> {
        Some(self.prec())
    }
    fn scale_exp2_hint(&mut self, e: i32) {
        self.scale_exp2(e);
    }
}

impl Ring for BigRational {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
}
