//! Rogers' recombined recursion: even- and odd-indexed convergents advance
//! independently by
//! `R_n = (1 + c x^(n-1) + c x^n) R_(n-2) - c^2 x^(2n-3) R_(n-4)`,
//! where `c = 1` for the `K` arrays and `c = a` for the `K_a` arrays.
//!
//! At `x = -1` the middle terms cancel and the step degenerates to
//! `R_n = R_(n-2) + c^2 R_(n-4)`, the period-2 recursion used for `m = 2`.

use super::{CfSpec, ConvergentPair};
use crate::error::Result;
use crate::ring::Ring;

/// One decoupled sequence `(R_n, R_(n-2))` advancing in steps of two.
#[derive(Debug, Clone)]
pub struct RogersState<R: Ring> {
    pub curr: R,
    pub prev2: R,
    /// Index `n` of `curr`.
    pub index: i64,
    coefficient: R,
    x: R,
    x_sq: R,
    x_pow4: R,
    /// `x^(index+1)`: the lower multiplier power of the next step.
    x_mid: R,
    /// `x^(2*index+1)`: the far multiplier power of the next step.
    x_far: R,
}

impl<R: Ring> RogersState<R> {
    /// Builds a state from two known values `R_(start-2)` and `R_start`.
    pub fn from_values(spec: &CfSpec<R>, prev2: R, curr: R, start: i64) -> Result<Self> {
        let c = spec.step_coefficient();
        let x = spec.x.clone();
        let x_sq = x.mul(&x);
        let x_pow4 = x_sq.mul(&x_sq);
        let x_mid = pow_ring(&x, start + 1);
        let x_far = pow_ring(&x, 2 * start + 1);
        Ok(RogersState {
            curr,
            prev2,
            index: start,
            coefficient: c,
            x,
            x_sq,
            x_pow4,
            x_mid,
            x_far,
        })
    }

    /// Advances `steps` times (each step increases the index by two).
    pub fn advance(&mut self, steps: u64) {
        for _ in 0..steps {
            // target index n = self.index + 2:
            // multiplier 1 + c x^(n-1) + c x^n with x^(n-1) = x_mid
            let mid = self.coefficient.mul(&self.x_mid);
            let one = self.curr.one_like();
            let tri = one.add(&mid).add(&mid.mul(&self.x));
            // subtracted term c^2 x^(2n-3), with x^(2n-3) = x_far
            let far = self.coefficient.mul(&self.coefficient).mul(&self.x_far);
            let next = tri.mul(&self.curr).sub(&far.mul(&self.prev2));
            self.prev2 = std::mem::replace(&mut self.curr, next);
            self.index += 2;
            self.x_mid = self.x_mid.mul(&self.x_sq);
            self.x_far = self.x_far.mul(&self.x_pow4);
        }
    }
}

fn pow_ring<R: Ring>(x: &R, e: i64) -> R {
    assert!(e >= 0, "Rogers stepping starts at index >= 1");
    let mut acc = x.one_like();
    let mut base = x.clone();
    let mut n = e as u64;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        n >>= 1;
    }
    acc
}

/// The four decoupled sequences: P even, P odd, Q even, Q odd.
pub type DecoupledStates<R> = (RogersState<R>, RogersState<R>, RogersState<R>, RogersState<R>);

/// Seeds the four decoupled sequences from the plain engine and returns
/// them at top indices 2 and 3.
pub fn seed_states<R: Ring>(spec: &CfSpec<R>) -> Result<DecoupledStates<R>> {
    let mut pair = ConvergentPair::new(spec);
    let mut p = Vec::new();
    let mut q = Vec::new();
    // collect values at indices 0..=3
    while pair.index < 0 {
        pair.advance(spec, 1)?;
    }
    p.push(pair.p_curr.clone());
    q.push(pair.q_curr.clone());
    while p.len() < 4 {
        pair.advance(spec, 1)?;
        p.push(pair.p_curr.clone());
        q.push(pair.q_curr.clone());
    }
    Ok((
        RogersState::from_values(spec, p[0].clone(), p[2].clone(), 2)?,
        RogersState::from_values(spec, p[1].clone(), p[3].clone(), 3)?,
        RogersState::from_values(spec, q[0].clone(), q[2].clone(), 2)?,
        RogersState::from_values(spec, q[1].clone(), q[3].clone(), 3)?,
    ))
}
