//! Per-level data for cyclotomic fields: the minimal polynomial and
//! reduction rows for the power basis.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::poly::QPolynomial;

/// Cached data for `Q(zeta_n) = Q[y] / Phi_n(y)`.
pub struct LevelData {
    pub n: u32,
    pub phi: usize,
    /// Coefficients of `Phi_n`, ascending, length `phi + 1`, monic.
    pub minimal: Vec<BigInt>,
    /// `red_rows[i]` is the canonical form of `y^(phi + i)`, length `phi`.
    /// Rows cover exponents up to `max(2*phi - 2, n - 1)`.
    pub red_rows: Vec<Vec<BigInt>>,
}

impl LevelData {
    /// Canonical coefficients of `y^e` for `0 <= e <=` highest cached row.
    pub fn monomial(&self, e: usize, out: &mut [BigInt]) {
        for c in out.iter_mut() {
            c.set_zero();
        }
        if e < self.phi {
            out[e] = BigInt::one();
        } else {
            out.clone_from_slice(&self.red_rows[e - self.phi]);
        }
    }
}

fn totient(mut n: u32) -> u32 {
    let mut phi = 1u32;
    let mut p = 2u32;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut pe = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pe *= p;
            }
            phi *= pe - pe / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn cyclotomic_memo() -> &'static Mutex<HashMap<u32, Arc<QPolynomial>>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<QPolynomial>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, computed as
/// `(y^n - 1) / prod_{d | n, d < n} Phi_d(y)`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<QPolynomial> {
    assert!(n >= 1);
    if let Some(p) = cyclotomic_memo().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = QPolynomial::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d < n {
            let phi_d = cyclotomic_polynomial(d);
            num = num.div_exact(&phi_d).expect("cyclotomic division is exact");
        }
    }
    let out = Arc::new(num);
    cyclotomic_memo().lock().unwrap().insert(n, out.clone());
    out
}

fn level_cache() -> &'static Mutex<HashMap<u32, Arc<LevelData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<LevelData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Level data for `Q(zeta_n)`, built once and shared.
pub fn level_data(n: u32) -> Arc<LevelData> {
    assert!(n >= 1, "cyclotomic level must be positive");
    if let Some(d) = level_cache().lock().unwrap().get(&n) {
        return d.clone();
    }
    let built = Arc::new(build_level(n));
    level_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(built)
        .clone()
}

fn build_level(n: u32) -> LevelData {
    let minimal_poly = cyclotomic_polynomial(n);
    let phi = minimal_poly.degree().expect("nonzero");
    debug_assert_eq!(phi, totient(n) as usize);
    let minimal: Vec<BigInt> = minimal_poly.coeffs().to_vec();
    assert!(minimal[phi].is_one(), "cyclotomic polynomial is monic");

    // Rows for y^(phi), y^(phi+1), ...: each row is y * previous reduced
    // again modulo Phi_n.
    let top = std::cmp::max(2 * phi.max(1) - 2, (n as usize).saturating_sub(1));
    let mut red_rows: Vec<Vec<BigInt>> = Vec::new();
    if top >= phi {
        // y^phi = -(c_0 + c_1 y + ... + c_(phi-1) y^(phi-1))
        let first: Vec<BigInt> = minimal[..phi].iter().map(|c| -c).collect();
        red_rows.push(first);
        for _ in (phi + 1)..=top {
            let prev = red_rows.last().unwrap();
            let mut row = vec![BigInt::zero(); phi];
            let lead = prev[phi - 1].clone();
            for j in (1..phi).rev() {
                row[j] = prev[j - 1].clone();
            }
            if !lead.is_zero() {
                for j in 0..phi {
                    row[j] -= &lead * &minimal[j];
                }
            }
            red_rows.push(row);
        }
    }
    LevelData {
        n,
        phi,
        minimal,
        red_rows,
    }
}
