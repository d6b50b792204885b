//! All-integer LLL lattice reduction (delta = 3/4), in the integral
//! Gram-Schmidt formulation: `d[i]` are the leading principal minors of the
//! Gram matrix and `lambda[i][j] = d[j+1] * mu[i][j]`, so every division in
//! the update formulas is exact over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Reduces `basis` (row vectors) in place.
///
/// Rows must be linearly independent.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let mut d: Vec<BigInt> = vec![BigInt::one(); n + 1];
    let mut lambda: Vec<Vec<BigInt>> = (0..n).map(|i| vec![BigInt::zero(); i]).collect();

    // integral Gram-Schmidt initialization
    for i in 0..n {
        for j in 0..=i {
            let mut u = dot(&basis[i], &basis[j]);
            for s in 0..j {
                u = (&d[s + 1] * &u - &lambda[i][s] * &lambda[j][s]) / &d[s];
            }
            if j < i {
                lambda[i][j] = u;
            } else {
                d[i + 1] = u;
                assert!(
                    d[i + 1].is_positive(),
                    "LLL requires linearly independent rows"
                );
            }
        }
    }

    let mut k = 1usize;
    while k < n {
        red(basis, &mut lambda, &d, k, k - 1);
        let lhs = 4u8 * (&d[k + 1] * &d[k - 1] + &lambda[k][k - 1] * &lambda[k][k - 1]);
        let rhs = 3u8 * (&d[k] * &d[k]);
        if lhs < rhs {
            swap_step(basis, &mut lambda, &mut d, k, n);
            k = k.max(2) - 1;
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                red(basis, &mut lambda, &d, k, l);
            }
            k += 1;
        }
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `a / b` for `b > 0`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two_a = 2 * a;
    num_integer::Integer::div_floor(&(two_a + b), &(2 * b))
}

#[allow(clippy::needless_range_loop)]
fn red(basis: &mut [Vec<BigInt>], lambda: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    if 2u8 * lambda[k][l].abs() <= d[l + 1] {
        return;
    }
    let q = round_div(&lambda[k][l], &d[l + 1]);
    if q.is_zero() {
        return;
    }
    let (head, tail) = basis.split_at_mut(k);
    for (x, y) in tail[0].iter_mut().zip(&head[l]) {
        *x -= &q * y;
    }
    for j in 0..l {
        let t = &q * &lambda[l][j];
        lambda[k][j] -= t;
    }
    lambda[k][l] -= q * &d[l + 1];
}

#[allow(clippy::needless_range_loop)]
fn swap_step(
    basis: &mut [Vec<BigInt>],
    lambda: &mut [Vec<BigInt>],
    d: &mut [BigInt],
    k: usize,
    n: usize,
) {
    basis.swap(k, k - 1);
    for j in 0..k.saturating_sub(1) {
        let (a, b) = lambda.split_at_mut(k);
        std::mem::swap(&mut a[k - 1][j], &mut b[0][j]);
    }
    let lam = lambda[k][k - 1].clone();
    let b_new = (&d[k - 1] * &d[k + 1] + &lam * &lam) / &d[k];
    for i in k + 1..n {
        let t = lambda[i][k].clone();
        lambda[i][k] = (&d[k + 1] * &lambda[i][k - 1] - &lam * &t) / &d[k];
        lambda[i][k - 1] = (&b_new * &t + &lam * &lambda[i][k]) / &d[k + 1];
    }
    d[k] = b_new;
}
