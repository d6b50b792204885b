//! Convergent engine for the continued fractions under study.
//!
//! Two normalizations are supported, matching the two halves of the theory:
//!
//! - `SchurK`: the arrays behind `K(x) = 1 + x/1 + x^2/1 + ...`, with
//!   recursion `R_n = R_(n-1) + x^n R_(n-2)` from
//!   `(P_0, P_(-1), Q_0, Q_(-1)) = (1, 0, 1, 1)`. The `n`-th truncation of
//!   `K` itself is `Q_n / P_n` in these arrays.
//! - `GeneralizedKa`: the convergents of
//!   `K_a(x) = 1/(1 + a/(1 + a x/(1 + ...)))`, with the same recursion
//!   multiplied by `a` and started one index earlier:
//!   `(P_(-1), P_(-2), Q_(-1), Q_(-2)) = (1, 0, 1, 1)`; the truncation is
//!   `P_n / Q_n`.
//!
//! Both satisfy the determinant identity
//! `P_n Q_(n-1) - P_(n-1) Q_n = (-1)^(n-1) * prod(a_i)`, which the engine
//! tracks incrementally and exposes for verification.
//!
//! Over the big-float complex ring the engine jointly rescales the state by
//! powers of two when magnitudes leave `[2^-65536, 2^65536]` (approximants
//! and the tracked identity are scale-corrected), and signals
//! `PrecisionExhausted` when both live entries of a sequence collapse more
//! than the working precision below that sequence's running peak.

pub mod rogers;
pub mod trajectory;

pub use rogers::RogersState;
pub use trajectory::{trajectory, trajectory_points, TrajectoryPoint, CSV_HEADER};

use crate::complex::ComplexBF;
use crate::cyclo::{CycloElem, TransferMatrix};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Magnitude (log2) beyond which numeric states are renormalized.
const RENORM_THRESHOLD: i64 = 1 << 16;
/// Headroom subtracted from the precision in the collapse detector.
const LOSS_MARGIN: i64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfKind {
    SchurK,
    GeneralizedKa,
}

/// Parameters of a continued fraction: the point `x` and, for `K_a`, the
/// coefficient `a`.
#[derive(Debug, Clone)]
pub struct CfSpec<R: Ring> {
    pub kind: CfKind,
    pub a: Option<R>,
    pub x: R,
}

impl<R: Ring> CfSpec<R> {
    pub fn schur(x: R) -> Self {
        CfSpec {
            kind: CfKind::SchurK,
            a: None,
            x,
        }
    }

    pub fn generalized(a: R, x: R) -> Self {
        CfSpec {
            kind: CfKind::GeneralizedKa,
            a: Some(a),
            x,
        }
    }

    /// Coefficient `c` in the step multiplier `c * x^n`.
    pub fn step_coefficient(&self) -> R {
        match self.kind {
            CfKind::SchurK => self.x.one_like(),
            CfKind::GeneralizedKa => self.a.clone().expect("K_a spec carries a"),
        }
    }
}

/// The live recursion state `(P_n, P_(n-1), Q_n, Q_(n-1))` at index `n`.
#[derive(Debug, Clone)]
pub struct ConvergentPair<R: Ring> {
    pub p_curr: R,
    pub p_prev: R,
    pub q_curr: R,
    pub q_prev: R,
    pub index: i64,
    /// Multiplier for the next step (`c * x^(index+1)`).
    next_mult: R,
    /// Expected value of `P_n Q_(n-1) - P_(n-1) Q_n` at the current scale.
    det_expected: R,
    /// Joint power-of-two rescale applied to all four entries.
    scale_log2: i64,
    peak_p: Option<i64>,
    peak_q: Option<i64>,
}

impl<R: Ring> ConvergentPair<R> {
    /// Initial state for the given normalization.
    pub fn new(spec: &CfSpec<R>) -> Self {
        let one = spec.x.one_like();
        let zero = spec.x.zero_like();
        let (index, next_mult) = match spec.kind {
            // P_0 = 1, P_(-1) = 0, Q_0 = 1, Q_(-1) = 1; next multiplier x^1
            CfKind::SchurK => (0, spec.x.clone()),
            // P_(-1) = 1, P_(-2) = 0, Q_(-1) = Q_(-2) = 1; next multiplier a x^0
            CfKind::GeneralizedKa => (-1, spec.step_coefficient()),
        };
        ConvergentPair {
            p_curr: one.clone(),
            p_prev: zero,
            q_curr: one.clone(),
            q_prev: one.clone(),
            index,
            next_mult,
            det_expected: one,
            scale_log2: 0,
            peak_p: None,
            peak_q: None,
        }
    }

    pub fn scale_log2(&self) -> i64 {
        self.scale_log2
    }

    /// Expected determinant `P_n Q_(n-1) - P_(n-1) Q_n` at the current scale.
    pub fn expected_det(&self) -> &R {
        &self.det_expected
    }

    /// Actual `P_n Q_(n-1) - P_(n-1) Q_n` of the stored state.
    pub fn det_lhs(&self) -> R {
        self.p_curr.mul(&self.q_prev).sub(&self.p_prev.mul(&self.q_curr))
    }

    /// Advances the recursion by `steps`.
    pub fn advance(&mut self, spec: &CfSpec<R>, steps: u64) -> Result<()> {
        for _ in 0..steps {
            let mult = self.next_mult.clone();
            let np = self.p_curr.add(&mult.mul(&self.p_prev));
            let nq = self.q_curr.add(&mult.mul(&self.q_prev));
            self.p_prev = std::mem::replace(&mut self.p_curr, np);
            self.q_prev = std::mem::replace(&mut self.q_curr, nq);
            self.index += 1;
            self.next_mult = self.next_mult.mul(&spec.x);
            // det identity picks up a factor -mult per step
            self.det_expected = self.det_expected.mul(&mult).neg();
            self.after_step()?;
        }
        Ok(())
    }

    fn after_step(&mut self) -> Result<()> {
        let Some(prec) = self.p_curr.prec_hint() else {
            return Ok(());
        };
        // track peaks and detect collapse of both live entries of a sequence
        let mp = mag2(&self.p_curr, &self.p_prev);
        let mq = mag2(&self.q_curr, &self.q_prev);
        for (peak, cur, label) in [
            (&mut self.peak_p, mp, "P"),
            (&mut self.peak_q, mq, "Q"),
        ] {
            if let Some(c) = cur {
                let pk = peak.get_or_insert(c);
                if c > *pk {
                    *pk = c;
                } else if *pk - c > prec as i64 - LOSS_MARGIN {
                    return Err(Error::PrecisionExhausted {
                        msg: format!(
                            "{label}-sequence lost {} bits of magnitude at index {} (precision {prec})",
                            *pk - c,
                            self.index
                        ),
                    });
                }
            }
        }
        // joint renormalization
        let mag = [&self.p_curr, &self.p_prev, &self.q_curr, &self.q_prev]
            .iter()
            .filter_map(|v| v.log2_mag_hint())
            .max();
        if let Some(m) = mag {
            if m.abs() > RENORM_THRESHOLD {
                let shift = i32::try_from(-m).map_err(|_| Error::PrecisionExhausted {
                    msg: "state magnitude exceeds representable scaling".into(),
                })?;
                for v in [
                    &mut self.p_curr,
                    &mut self.p_prev,
                    &mut self.q_curr,
                    &mut self.q_prev,
                ] {
                    v.scale_exp2_hint(shift);
                }
                self.det_expected.scale_exp2_hint(2 * shift);
                self.scale_log2 += shift as i64;
                if let Some(pk) = &mut self.peak_p {
                    *pk += shift as i64;
                }
                if let Some(pk) = &mut self.peak_q {
                    *pk += shift as i64;
                }
            }
        }
        Ok(())
    }
}

fn mag2<R: Ring>(a: &R, b: &R) -> Option<i64> {
    match (a.log2_mag_hint(), b.log2_mag_hint()) {
        (None, None) => None,
        (x, y) => Some(x.unwrap_or(i64::MIN).max(y.unwrap_or(i64::MIN))),
    }
}

impl ConvergentPair<CycloElem> {
    /// Advances by one period `m` using the transfer matrix (requires the
    /// spec's `x` to be an `m`-th root of unity; exact ring only).
    pub fn apply_transfer(&mut self, t: &TransferMatrix) -> Result<()> {
        let level = t.entries[0][0].level();
        if self.p_curr.level() != level {
            return Err(Error::bad_level(format!(
                "transfer matrix at level {level}, state at level {}",
                self.p_curr.level()
            )));
        }
        let (pc, qc) = t.apply(&self.p_curr, &self.q_curr);
        let (pp, qp) = t.apply(&self.p_prev, &self.q_prev);
        self.p_curr = pc;
        self.q_curr = qc;
        self.p_prev = pp;
        self.q_prev = qp;
        self.index += t.m as i64;
        // both columns advance, so the identity picks up det(A) = -a^m
        self.det_expected = self.det_expected.mul(&t.det());
        Ok(())
    }
}

/// The `n`-th truncation of the continued fraction as a complex value.
///
/// For `SchurK` this is `K_n(x) = 1 + x/1 + ... + x^n/1`; for
/// `GeneralizedKa` it is `P_n/Q_n`. An exact zero denominator is reported as
/// a pole (the projective value is infinity).
pub fn truncated_value(spec: &CfSpec<ComplexBF>, n: i64, _precision_bits: usize) -> Result<ComplexBF> {
    if n < 0 {
        return Err(Error::out_of_range("truncation index must be >= 0"));
    }
    let mut pair = ConvergentPair::new(spec);
    let steps = match spec.kind {
        CfKind::SchurK => n as u64,
        CfKind::GeneralizedKa => (n + 1) as u64,
    };
    pair.advance(spec, steps)?;
    let (num, den) = match spec.kind {
        CfKind::SchurK => (&pair.q_curr, &pair.p_curr),
        CfKind::GeneralizedKa => (&pair.p_curr, &pair.q_curr),
    };
    if den.is_zero() {
        return Err(Error::PoleEncountered { index: n });
    }
    Ok(num.div(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{bf_i64, bf_lt, bf_pow2, RM};
    use crate::BigRational;

    fn assert_close(a: &ComplexBF, b: &ComplexBF, tol_exp: i32) {
        let d = a.sub(b).abs();
        assert!(
            bf_lt(&d, &bf_pow2(tol_exp, 64)),
            "difference {:?} exceeds 2^{tol_exp}",
            d
        );
    }

    #[test]
    fn schur_at_one_gives_fibonacci_ratios() {
        // P_n, Q_n at x=1 are Fibonacci numbers; K_n -> phi
        let spec = CfSpec::schur(ComplexBF::one(192));
        let v = truncated_value(&spec, 60, 192).unwrap();
        let phi = bf_i64(1, 192)
            .add(&bf_i64(5, 192).sqrt(192, RM), 192, RM)
            .div(&bf_i64(2, 192), 192, RM);
        assert_close(&v, &ComplexBF::from_real(phi, 192), -60);
    }

    #[test]
    fn generalized_first_approximant() {
        // K_a truncation at n=0 is 1/(1+a); a=1 gives 1/2
        let spec = CfSpec::generalized(ComplexBF::one(128), ComplexBF::from_i64(-1, 128));
        let v = truncated_value(&spec, 0, 128).unwrap();
        let half = ComplexBF::from_ratio(&BigRational::new(1.into(), 2.into()), 128);
        assert_close(&v, &half, -120);
    }

    #[test]
    fn generalized_at_one_converges_to_inverse_phi() {
        let spec = CfSpec::generalized(ComplexBF::one(256), ComplexBF::one(256));
        let v = truncated_value(&spec, 200, 256).unwrap();
        // 1/phi = (sqrt(5)-1)/2
        let inv_phi = bf_i64(5, 256)
            .sqrt(256, RM)
            .sub(&bf_i64(1, 256), 256, RM)
            .div(&bf_i64(2, 256), 256, RM);
        assert_close(&v, &ComplexBF::from_real(inv_phi, 256), -150);
    }

    #[test]
    fn schur_and_generalized_normalizations_agree() {
        // K_1(x) = K(x) / (K(x) + 1) at matched truncations, x = -1:
        // K(-1) = 1/phi so K_1(-1) = (3 - sqrt(5))/2
        let x = ComplexBF::from_i64(-1, 256);
        let ks = truncated_value(&CfSpec::schur(x.clone()), 400, 256).unwrap();
        let ka = truncated_value(&CfSpec::generalized(ComplexBF::one(256), x), 400, 256).unwrap();
        let transported = ks.div(&ks.add(&ComplexBF::one(256)));
        assert_close(&ka, &transported, -100);
        let expect = bf_i64(3, 256)
            .sub(&bf_i64(5, 256).sqrt(256, RM), 256, RM)
            .div(&bf_i64(2, 256), 256, RM);
        assert_close(&ka, &ComplexBF::from_real(expect, 256), -100);
    }

    #[test]
    fn determinant_identity_exact_ring() {
        // over Q(zeta_7): det stays exactly (+-) a^(n+1) x^(n(n+1)/2)
        let a = CycloElem::root_of_unity(14, 3);
        let x = CycloElem::root_of_unity(7, 1);
        let (a, x) = CycloElem::coerce(&a, &x).unwrap();
        let spec = CfSpec::generalized(a, x);
        let mut pair = ConvergentPair::new(&spec);
        for _ in 0..40 {
            pair.advance(&spec, 1).unwrap();
            assert_eq!(pair.det_lhs(), *pair.expected_det(), "index {}", pair.index);
        }
    }

    #[test]
    fn determinant_identity_exact_deep() {
        // the identity holds exactly over long runs (monomial multipliers
        // keep the cost linear in the depth)
        let x = CycloElem::root_of_unity(7, 3);
        let spec = CfSpec::schur(x);
        let mut pair = ConvergentPair::new(&spec);
        for _ in 0..8 {
            pair.advance(&spec, 250).unwrap();
            assert_eq!(pair.det_lhs(), *pair.expected_det(), "index {}", pair.index);
        }
        assert_eq!(pair.index, 2000);
    }

    #[test]
    fn determinant_identity_numeric_ring() {
        let x = ComplexBF::unit_circle_rational(&BigRational::new(1.into(), 12.into()), 256);
        let spec = CfSpec::schur(x);
        let mut pair = ConvergentPair::new(&spec);
        for _ in 0..300 {
            pair.advance(&spec, 1).unwrap();
        }
        let resid = pair.det_lhs().sub(pair.expected_det()).abs();
        // relative to the identity magnitude 1, 2^(-prec/2) tolerance
        assert!(bf_lt(&resid, &bf_pow2(-128, 64)));
    }

    #[test]
    fn convergent_case_period_gaps_contract_geometrically() {
        // at a primitive m-th root with 5 not dividing m (a = 1), the gaps
        // |K_1(n + m) - K_1(n)| shrink by |lambda_-/lambda_+| = (3 - sqrt 5)/2
        // per period
        let m = 3i64;
        let x = ComplexBF::unit_circle_rational(&BigRational::new(1.into(), m.into()), 256);
        let spec = CfSpec::generalized(ComplexBF::one(256), x);
        let value = |n: i64| truncated_value(&spec, n, 256).unwrap();
        let gap = |n: i64| value(n + m).sub(&value(n)).abs();
        let ratio_expect = crate::bigfloat::bf_parse_decimal("0.38196601125", 256).unwrap();
        for n in [30i64, 60, 90] {
            let r = gap(n + m).div(&gap(n), 256, RM);
            let err = r.sub(&ratio_expect, 256, RM).abs();
            assert!(
                bf_lt(&err, &crate::bigfloat::bf_parse_decimal("0.01", 64).unwrap()),
                "period-gap contraction ratio off at n = {n}: {r:?}"
            );
        }
    }

    #[test]
    fn matrix_advance_matches_direct_stepping() {
        for (jk, m, r0) in [((1i64, 1u32), 3u32, 0i64), ((1, 2), 5, 2), ((2, 5), 5, 1)] {
            let lcm = num_integer::Integer::lcm(&jk.1, &m);
            let a = CycloElem::root_of_unity(jk.1, jk.0).lift_to(lcm).unwrap();
            let x = CycloElem::root_of_unity(m, 1).lift_to(lcm).unwrap();
            let t = crate::cyclo::transfer_matrix(&a, &x, m).unwrap();
            let spec = CfSpec::generalized(a, x);
            let mut fast = ConvergentPair::new(&spec);
            fast.advance(&spec, (r0 + 1) as u64).unwrap();
            let mut slow = fast.clone();
            for q in 1..=6 {
                fast.apply_transfer(&t).unwrap();
                slow.advance(&spec, m as u64).unwrap();
                assert_eq!(fast.p_curr, slow.p_curr, "q={q}");
                assert_eq!(fast.q_curr, slow.q_curr, "q={q}");
                assert_eq!(fast.p_prev, slow.p_prev, "q={q}");
                assert_eq!(fast.q_prev, slow.q_prev, "q={q}");
                assert_eq!(fast.index, slow.index);
                // det identity preserved through the matrix path
                assert_eq!(fast.det_lhs(), *fast.expected_det());
            }
        }
    }

    #[test]
    fn exact_zero_in_schur_arrays_at_zeta5() {
        // Q_3(zeta_5) = 1 + x + x^2 + x^3 + x^4 = 0 exactly
        let x = CycloElem::root_of_unity(5, 1);
        let spec = CfSpec::schur(x);
        let mut pair = ConvergentPair::new(&spec);
        pair.advance(&spec, 3).unwrap();
        assert!(pair.q_curr.is_zero());
        assert!(!pair.p_curr.is_zero());
        // the determinant identity forbids consecutive zeros
        assert_eq!(pair.det_lhs(), *pair.expected_det());
    }

    #[test]
    fn renormalization_triggers_on_huge_magnitudes() {
        // Fibonacci growth passes 2^65536 near step 94500; the state must
        // rescale while keeping approximants and the tracked identity
        let spec = CfSpec::schur(ComplexBF::one(64));
        let mut pair = ConvergentPair::new(&spec);
        pair.advance(&spec, 100_000).unwrap();
        assert!(pair.scale_log2() < 0, "joint rescale applied");
        // stored entries are back inside the window
        assert!(pair.q_curr.log2_mag().unwrap().abs() <= (1 << 16) + 64);
        // approximant is scale-invariant: Q_n/P_n ~ phi
        let phi = bf_i64(1, 64)
            .add(&bf_i64(5, 64).sqrt(64, RM), 64, RM)
            .div(&bf_i64(2, 64), 64, RM);
        let approx = pair.q_curr.div(&pair.p_curr);
        assert!(bf_lt(&approx.sub(&ComplexBF::from_real(phi, 64)).abs(), &bf_pow2(-30, 64)));
        // identity residual stays small relative to the (rescaled) products
        let resid = pair.det_lhs().sub(pair.expected_det()).abs();
        let scale = pair.p_curr.abs().mul(&pair.q_prev.abs(), 64, RM);
        assert!(bf_lt(&resid.div(&scale, 64, RM), &bf_pow2(-20, 64)));
    }

    #[test]
    fn long_run_scale_bookkeeping() {
        let spec = CfSpec::schur(ComplexBF::one(64));
        let mut pair = ConvergentPair::new(&spec);
        pair.advance(&spec, 2000).unwrap();
        // Fibonacci growth: log2 F_2000 ~ 1388, below the renorm threshold
        assert_eq!(pair.scale_log2(), 0);
        // identity is +-1, far below the product scale at 64 bits; residual
        // must be small relative to |P_n Q_(n-1)| ~ 2^2776
        let resid = pair.det_lhs().sub(pair.expected_det()).abs();
        let scale = pair.p_curr.abs().mul(&pair.q_prev.abs(), 64, RM);
        let rel = resid.div(&scale, 64, RM);
        assert!(bf_lt(&rel, &bf_pow2(-32, 64)));
    }
}
