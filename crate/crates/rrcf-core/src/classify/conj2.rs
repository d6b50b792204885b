//! Exact eigenvector-index verification for the divergent
//! `5 | m`, `k | m` configurations.
//!
//! For `a = zeta_k^j` and `x = zeta_m^l` the residue class
//! `R = iota(pi([-1]_m))` in `Z/m` is mapped out of the compatibility
//! homomorphisms `pi: [l]_m -> [j]_k` and `iota: [1]_k -> [m/k]_m`; the
//! predicted eigenvector indices are the two consecutive residues
//! `R - 1, R - 2 (mod m)`. Both are checked exactly:
//! `A_m (P_r, Q_r)^T = lambda (P_r, Q_r)^T` with
//! `lambda = (1 +- sqrt 5)/2` adjoined via the Gauss sum.

use num_integer::Integer;

use crate::cyclo::{sqrt5, transfer_matrix, CycloElem, PqTable};
use crate::error::{Error, Result};
use crate::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhichEigenvalue {
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
pub struct CandidateCheck {
    /// Convergent index `r` in `0..m`.
    pub r: u32,
    /// The eigenvalue for which the eigen-equation holds exactly, if any.
    pub eigenvalue: Option<WhichEigenvalue>,
}

#[derive(Debug, Clone)]
pub struct Conjecture2Report {
    pub j: u32,
    pub k: u32,
    pub l: u32,
    pub m: u32,
    /// Canonical representative of `R` in `0..m`.
    pub class_residue: u32,
    pub candidates: Vec<CandidateCheck>,
    /// Both candidates are eigenvectors, for distinct eigenvalues.
    pub holds: bool,
}

/// Runs the exact check for one parameter tuple.
pub fn conjecture2_check(j: u32, k: u32, l: u32, m: u32) -> Result<Conjecture2Report> {
    if k == 0 || m == 0 {
        return Err(Error::HypothesisViolated {
            msg: "k and m must be positive".into(),
        });
    }
    if !m.is_multiple_of(5) || !m.is_multiple_of(k) {
        return Err(Error::HypothesisViolated {
            msg: format!("need 5 | m and k | m, got k={k}, m={m}"),
        });
    }
    if j.gcd(&k) != 1 || l.gcd(&m) != 1 {
        return Err(Error::HypothesisViolated {
            msg: format!("need gcd(j,k) = gcd(l,m) = 1, got j={j}/k={k}, l={l}/m={m}"),
        });
    }
    // pi sends [l]_m to [j]_k, i.e. multiplication by c with c l = j (mod k)
    let c = if k == 1 {
        0u64
    } else {
        let l_inv = mod_inverse(l as u64 % k as u64, k as u64).expect("l invertible mod k | m");
        (j as u64 * l_inv) % k as u64
    };
    // iota sends [1]_k to [m/k]_m; R = iota(pi([-1]_m)) = [-c m/k]_m
    let stride = (m / k) as u64;
    let s0 = ((m as u64 - (c * stride) % m as u64) % m as u64) as u32;
    let r1 = (s0 + m - 1) % m;
    let r2 = (s0 + m - 2) % m;

    let a = CycloElem::root_of_unity(m, (j as u64 * stride) as i64);
    let x = CycloElem::root_of_unity(m, l as i64);
    let t = transfer_matrix(&a, &x, m)?;
    let half = BigRational::new(1.into(), 2.into());
    let root_half = sqrt5(m)?.mul_rational(&half);
    let half_el = CycloElem::from_rational(m, half);
    let lambda_plus = half_el.add(&root_half);
    let lambda_minus = half_el.sub(&root_half);

    let table = PqTable::new(r1.max(r2) as i64, &a, &x)?;
    let mut candidates = Vec::new();
    for r in [r2, r1] {
        let p_r = table.p(r as i64);
        let q_r = table.q(r as i64);
        let (w0, w1) = t.apply(p_r, q_r);
        let eigenvalue = if w0 == lambda_plus.mul(p_r) && w1 == lambda_plus.mul(q_r) {
            Some(WhichEigenvalue::Plus)
        } else if w0 == lambda_minus.mul(p_r) && w1 == lambda_minus.mul(q_r) {
            Some(WhichEigenvalue::Minus)
        } else {
            None
        };
        candidates.push(CandidateCheck { r, eigenvalue });
    }
    let holds = match (&candidates[0].eigenvalue, &candidates[1].eigenvalue) {
        (Some(e1), Some(e2)) => e1 != e2,
        _ => false,
    };
    Ok(Conjecture2Report {
        j,
        k,
        l,
        m,
        class_residue: s0,
        candidates,
        holds,
    })
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

/// Enumerates all valid tuples of the grid `k <= k_max`, `m <= m_max`.
pub fn conjecture2_grid(k_max: u32, m_max: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut tuples = Vec::new();
    for m in (5..=m_max).step_by(5) {
        for k in 1..=k_max.min(m) {
            if m % k != 0 {
                continue;
            }
            for j in 0..k.max(1) {
                if j.gcd(&k) != 1 && !(k == 1 && j == 0) {
                    continue;
                }
                for l in 1..=m {
                    if l.gcd(&m) == 1 {
                        tuples.push((j, k, l, m));
                    }
                }
            }
        }
    }
    tuples
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_tuple_a1_m5() {
        // j/k = 0/1 (a = 1), l/m = 1/5: R = [0], candidates r = 3, 4
        let rep = conjecture2_check(0, 1, 1, 5).unwrap();
        assert_eq!(rep.class_residue, 0);
        let rs: Vec<u32> = rep.candidates.iter().map(|c| c.r).collect();
        assert_eq!(rs, vec![3, 4]);
        assert!(rep.holds, "both candidates eigen with distinct eigenvalues");
        // r = 3 pairs with the small eigenvalue, r = 4 with the large one
        assert_eq!(rep.candidates[0].eigenvalue, Some(WhichEigenvalue::Minus));
        assert_eq!(rep.candidates[1].eigenvalue, Some(WhichEigenvalue::Plus));
    }

    #[test]
    fn hypotheses_enforced() {
        assert!(matches!(
            conjecture2_check(0, 1, 1, 6),
            Err(Error::HypothesisViolated { .. })
        ));
        assert!(matches!(
            conjecture2_check(1, 3, 1, 10),
            Err(Error::HypothesisViolated { .. })
        ));
        assert!(matches!(
            conjecture2_check(2, 4, 1, 20),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn small_grid_holds() {
        for (j, k, l, m) in conjecture2_grid(5, 15) {
            let rep = conjecture2_check(j, k, l, m).unwrap();
            assert!(rep.holds, "tuple (j={j}, k={k}, l={l}, m={m}): {rep:?}");
        }
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(3, 10), Some(7));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(1, 1), Some(0));
    }
}
