//! Exact and arbitrary-precision computation of Rogers-Ramanujan continued
//! fractions on the unit circle.
//!
//! The crate is organized around four layers:
//!
//! - [`cyclo`]: exact arithmetic in cyclotomic fields `Q(zeta_N)`, plus the
//!   polynomial objects attached to the period-`m` transfer matrix
//!   (q-binomials, tridiagonal determinants, closed forms, trace components).
//! - [`cf`]: generic convergent recursions for the continued fractions
//!   `K(x)` and `K_a(x)` over exact or big-float complex coefficients,
//!   including Rogers' recombined recursion, matrix-accelerated stepping and
//!   trajectory extraction.
//! - [`classify`]: convergence/divergence classification of `K_a(zeta_m)`,
//!   the explicit limit formula, eigenvector data of the transfer matrix,
//!   Schur's Legendre-symbol limit, cyclotomic square-root membership
//!   searches and the eigenvector-index grid checks.
//! - [`witness`]: real continued-fraction expansions, growth constants
//!   `lambda_R`, construction of divergence witnesses near `x = -1`, and
//!   divergence certificates built from bounded `|Q_N Q_{N-1}|` subsequences.
//!
//! Shared scalar types live in [`complex`] (arbitrary-precision complex
//! numbers) and [`bigfloat`] (helpers over the underlying real type).

pub mod bigfloat;
pub mod cf;
pub mod classify;
pub mod complex;
pub mod cyclo;
pub mod error;
pub mod poly;
pub mod report;
pub mod ring;
pub mod tridiag;
pub mod witness;

pub use complex::ComplexBF;
pub use cyclo::CycloElem;
pub use error::Error;
pub use poly::QPolynomial;

/// Arbitrary-precision rational scalar used throughout the exact layer.
pub type BigRational = num_rational::BigRational;

/// Default working precision in bits for numeric paths.
pub const DEFAULT_PRECISION_BITS: usize = 256;
