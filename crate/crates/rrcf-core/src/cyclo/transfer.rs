//! Closed forms for the convergent numerators/denominators of `K_a(x)` and
//! the period-`m` transfer matrix at roots of unity.

use super::{eval_int_poly, CycloElem};
use crate::error::{Error, Result};
use crate::poly::gaussian_binomial;

/// Table of convergents `P_n(a, x)`, `Q_n(a, x)` for `n >= -2`, filled by the
/// forward recursion `R_n = R_(n-1) + a x^n R_(n-2)` from
/// `P_(-1) = 1, P_(-2) = 0, Q_(-1) = Q_(-2) = 1`.
pub struct PqTable {
    p: Vec<CycloElem>,
    q: Vec<CycloElem>,
}

impl PqTable {
    /// Fills the table up to index `n_max`.
    pub fn new(n_max: i64, a: &CycloElem, x: &CycloElem) -> Result<Self> {
        let (a, x) = CycloElem::coerce(a, x)?;
        let level = a.level();
        let zero = CycloElem::zero(level);
        let one = CycloElem::one(level);
        let mut p = vec![zero.clone(), one.clone()]; // P_(-2), P_(-1)
        let mut q = vec![one.clone(), one.clone()]; // Q_(-2), Q_(-1)
        let mut ax_pow = a.clone(); // a x^n for the current step
        for n in 0..=n_max {
            if n > 0 {
                ax_pow = ax_pow.mul(&x);
            }
            let np = p[p.len() - 1].add(&ax_pow.mul(&p[p.len() - 2]));
            let nq = q[q.len() - 1].add(&ax_pow.mul(&q[q.len() - 2]));
            p.push(np);
            q.push(nq);
        }
        Ok(PqTable { p, q })
    }

    pub fn p(&self, idx: i64) -> &CycloElem {
        &self.p[(idx + 2) as usize]
    }

    pub fn q(&self, idx: i64) -> &CycloElem {
        &self.q[(idx + 2) as usize]
    }

    pub fn max_index(&self) -> i64 {
        self.p.len() as i64 - 3
    }
}

/// `P_m(a, x) = 1 + sum_k binom(m+1-k, k)_x x^(k^2) a^k` for `m >= -2`
/// (`P_(-1) = 1`, `P_(-2) = 0`).
pub fn p_closed_form(m: i64, a: &CycloElem, x: &CycloElem) -> Result<CycloElem> {
    if m < -2 {
        return Err(Error::out_of_range(format!("P_m needs m >= -2, got {m}")));
    }
    let (a, x) = CycloElem::coerce(a, x)?;
    match m {
        -2 => return Ok(CycloElem::zero(a.level())),
        -1 => return Ok(CycloElem::one(a.level())),
        _ => {}
    }
    let mu = m as u64;
    let mut acc = CycloElem::one(a.level());
    let mut a_pow = CycloElem::one(a.level());
    for k in 1..=mu.div_ceil(2) {
        a_pow = a_pow.mul(&a);
        let binom = gaussian_binomial(mu + 1 - k, k)?;
        let b_at_x = eval_int_poly(&x, &binom);
        let x_pow = x.pow((k * k) as i64)?;
        acc = acc.add(&b_at_x.mul(&x_pow).mul(&a_pow));
    }
    Ok(acc)
}

/// `Q_m(a, x) = 1 + sum_k binom(m+2-k, k)_x x^(k(k-1)) a^k` for `m >= -2`
/// (`Q_(-1) = Q_(-2) = 1`).
pub fn q_closed_form(m: i64, a: &CycloElem, x: &CycloElem) -> Result<CycloElem> {
    if m < -2 {
        return Err(Error::out_of_range(format!("Q_m needs m >= -2, got {m}")));
    }
    let (a, x) = CycloElem::coerce(a, x)?;
    if m < 0 {
        return Ok(CycloElem::one(a.level()));
    }
    let mu = m as u64;
    let mut acc = CycloElem::one(a.level());
    let mut a_pow = CycloElem::one(a.level());
    for k in 1..=(mu / 2 + 1) {
        a_pow = a_pow.mul(&a);
        let binom = gaussian_binomial(mu + 2 - k, k)?;
        let b_at_x = eval_int_poly(&x, &binom);
        let x_pow = x.pow((k * (k - 1)) as i64)?;
        acc = acc.add(&b_at_x.mul(&x_pow).mul(&a_pow));
    }
    Ok(acc)
}

/// Multiplicative order of `x`, provided it divides `bound`.
pub fn multiplicative_order(x: &CycloElem, bound: u32) -> Option<u32> {
    if let Some((level, e)) = x.as_root_power() {
        let g = num_integer::Integer::gcd(&level, &e);
        let ord = level / g;
        return if bound.is_multiple_of(ord) { Some(ord) } else { None };
    }
    let mut d = 1u32;
    while d <= bound {
        if bound.is_multiple_of(d) {
            if let Ok(p) = x.pow(d as i64) {
                if p.is_one() {
                    return Some(d);
                }
            }
        }
        d += 1;
    }
    None
}

/// The 2x2 matrix advancing convergent pairs of `K_a` by one period `m` at a
/// primitive `m`-th root of unity `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    pub m: u32,
    /// `[[a x^(m-1) P_(m-3), P_(m-2)], [a x^(m-1) Q_(m-3), Q_(m-2)]]`
    pub entries: [[CycloElem; 2]; 2],
}

/// Builds the transfer matrix; `x` must have exact order `m >= 3` and be
/// coercible to a common level with `a`.
pub fn transfer_matrix(a: &CycloElem, x: &CycloElem, m: u32) -> Result<TransferMatrix> {
    if m < 3 {
        return Err(Error::out_of_range(format!(
            "transfer matrix needs m >= 3, got {m}"
        )));
    }
    let ord = multiplicative_order(x, m);
    if ord != Some(m) {
        return Err(Error::bad_level(format!(
            "x must be a primitive {m}-th root of unity (order {ord:?})"
        )));
    }
    let (a, x) = CycloElem::coerce(a, x)?;
    let table = PqTable::new(m as i64 - 2, &a, &x)?;
    let ax_top = a.mul(&x.pow(m as i64 - 1)?);
    Ok(TransferMatrix {
        m,
        entries: [
            [
                ax_top.mul(table.p(m as i64 - 3)),
                table.p(m as i64 - 2).clone(),
            ],
            [
                ax_top.mul(table.q(m as i64 - 3)),
                table.q(m as i64 - 2).clone(),
            ],
        ],
    })
}

impl TransferMatrix {
    pub fn trace(&self) -> CycloElem {
        self.entries[0][0].add(&self.entries[1][1])
    }

    pub fn det(&self) -> CycloElem {
        self.entries[0][0]
            .mul(&self.entries[1][1])
            .sub(&self.entries[0][1].mul(&self.entries[1][0]))
    }

    /// Applies the matrix to a column vector `(p, q)`.
    pub fn apply(&self, p: &CycloElem, q: &CycloElem) -> (CycloElem, CycloElem) {
        (
            self.entries[0][0].mul(p).add(&self.entries[0][1].mul(q)),
            self.entries[1][0].mul(p).add(&self.entries[1][1].mul(q)),
        )
    }
}
