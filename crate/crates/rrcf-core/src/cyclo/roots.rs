//! Exact square roots available inside cyclotomic fields.
//!
//! `sqrt(5)` lies in `Q(zeta_5)` via the quadratic Gauss sum
//! `zeta - zeta^2 - zeta^3 + zeta^4` (Legendre-symbol signs), normalized so
//! that the complex embedding is the positive root. Similarly
//! `sqrt(-3) = 1 + 2 zeta_3` lies in `Q(zeta_3)` with the principal
//! (positive imaginary) embedding.

use super::CycloElem;
use crate::error::{Error, Result};

/// The element of `Q(zeta_level)` squaring to 5, with positive embedding.
///
/// Requires `5 | level`.
pub fn sqrt5(level: u32) -> Result<CycloElem> {
    if !level.is_multiple_of(5) {
        return Err(Error::bad_level(format!(
            "sqrt(5) lives in Q(zeta_m) iff 5 | m; got level {level}"
        )));
    }
    let step = (level / 5) as i64;
    let z = |t: i64| CycloElem::root_of_unity(level, step * t);
    Ok(z(1).sub(&z(2)).sub(&z(3)).add(&z(4)))
}

/// The element of `Q(zeta_level)` squaring to -3, with positive-imaginary
/// embedding (`1 + 2 zeta_3`).
///
/// Requires `3 | level`.
pub fn sqrt_minus3(level: u32) -> Result<CycloElem> {
    if !level.is_multiple_of(3) {
        return Err(Error::bad_level(format!(
            "sqrt(-3) lives in Q(zeta_m) iff 3 | m; got level {level}"
        )));
    }
    let step = (level / 3) as i64;
    let z3 = CycloElem::root_of_unity(level, step);
    Ok(CycloElem::one(level).add(&z3).add(&z3))
}
