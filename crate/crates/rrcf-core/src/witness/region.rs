//! Membership in the arc `M_R = {x: |x| = 1, |x + 1| < R}` for points
//! `x = e^(2 pi i t)`, with a certified margin.

use astro_float::BigFloat;
use num_traits::Signed;

use super::RadiusSpec;
use crate::bigfloat::{bf_from_ratio, bf_lt, bf_pow2, pi, with_consts, RM};
use crate::error::{Error, Result};
use crate::BigRational;

#[derive(Debug, Clone)]
pub enum RealArg {
    Rational(BigRational),
    Float(BigFloat),
}

#[derive(Debug, Clone)]
pub struct MRMargin {
    pub inside: bool,
    /// Lower bound on `R - |x + 1|` when inside (or its negation outside).
    pub margin: BigFloat,
    /// Whether the exact rational chord shortcut decided the call.
    pub via_chord: bool,
}

/// Decides `|e^(2 pi i t) + 1| < R`.
///
/// When `t` is rational and `R = 2 pi q`, the chord bound
/// `|x + 1| <= 2 pi |t - 1/2|` turns `|t - 1/2| < q` into an exact rational
/// comparison; the margin reported is then the (numeric) chord slack.
/// Otherwise `|x + 1| = 2 |cos(pi t)|` is evaluated at `prec` bits and the
/// call is `Inconclusive` when the margin falls under `2^(-prec/2)`.
pub fn in_m_r(t: &RealArg, r: &RadiusSpec, prec: usize) -> Result<MRMargin> {
    if let (RealArg::Rational(tq), Some(q)) = (t, r.over_two_pi()) {
        let half = BigRational::new(1.into(), 2.into());
        let dist = (tq - half).abs();
        if dist < q {
            let work = prec + 8;
            let margin = crate::bigfloat::two_pi(work).mul(
                &bf_from_ratio(&(&q - &dist), work),
                prec,
                RM,
            );
            return Ok(MRMargin {
                inside: true,
                margin,
                via_chord: true,
            });
        }
        // chord bound inconclusive for exclusion; fall through to numerics
    }
    let work = prec + 16;
    let t_bf = match t {
        RealArg::Rational(q) => bf_from_ratio(q, work),
        RealArg::Float(f) => f.clone(),
    };
    let angle = pi(work).mul(&t_bf, work, RM);
    let cos = with_consts(|cc| angle.cos(work, RM, cc));
    let chord = cos.abs().mul(&crate::bigfloat::bf_i64(2, work), work, RM);
    let margin = r.to_bigfloat(work).sub(&chord, prec, RM);
    if bf_lt(&margin.abs(), &bf_pow2(-(prec as i32) / 2, 64)) {
        return Err(Error::Inconclusive {
            msg: format!("|x+1| within 2^(-{}/2) of R", prec),
        });
    }
    Ok(MRMargin {
        inside: margin.is_positive(),
        margin,
        via_chord: false,
    })
}
