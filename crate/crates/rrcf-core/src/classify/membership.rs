//! Membership of `sqrt(1 + 4 zeta_k)` in `Q(zeta_m)`.
//!
//! For `k = 1` (target `sqrt 5`) and `k = 2` (target `sqrt(-3)`) the answer
//! is classical and decided exactly via the Gauss-sum witnesses. For
//! `k >= 3` a bounded integer-relation search looks for rational power-basis
//! coordinates; any candidate is verified exactly by squaring in the
//! compositum, so `InField` results are sound. `NotDetected` is a bounded
//! search outcome, not a proof of non-membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lll::lll_reduce;
use crate::bigfloat::{bf_pow2, bigint_from_bf, RM};
use crate::complex::ComplexBF;
use crate::cyclo::{level::level_data, sqrt5, sqrt_minus3, CycloElem};
use crate::error::{Error, Result};
use crate::BigRational;

#[derive(Debug, Clone)]
pub enum Detected {
    InField { witness: CycloElem },
    NotDetected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipMethod {
    ExactGaussSum,
    IntegerRelation,
}

#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub k: u32,
    pub m: u32,
    pub detected: Detected,
    pub method: MembershipMethod,
    pub precision_bits: usize,
    pub height_bound: u64,
}

impl MembershipReport {
    pub fn in_field(&self) -> bool {
        matches!(self.detected, Detected::InField { .. })
    }
}

/// Decides (k <= 2) or searches (k >= 3) for `sqrt(1 + 4 zeta_k)` inside
/// `Q(zeta_m)`.
pub fn field_membership(
    k: u32,
    m: u32,
    precision_bits: usize,
    height_bound: u64,
) -> Result<MembershipReport> {
    if k == 0 || m == 0 {
        return Err(Error::out_of_range("k and m must be positive"));
    }
    match k {
        1 => {
            // 1 + 4 zeta_1 = 5
            let detected = if m.is_multiple_of(5) {
                let witness = sqrt5(m)?;
                debug_assert!(witness.mul(&witness).equals_int(5));
                Detected::InField { witness }
            } else {
                Detected::NotDetected
            };
            Ok(MembershipReport {
                k,
                m,
                detected,
                method: MembershipMethod::ExactGaussSum,
                precision_bits,
                height_bound,
            })
        }
        2 => {
            // 1 + 4 zeta_2 = -3
            let detected = if m.is_multiple_of(3) {
                let witness = sqrt_minus3(m)?;
                debug_assert!(witness.mul(&witness).equals_int(-3));
                Detected::InField { witness }
            } else {
                Detected::NotDetected
            };
            Ok(MembershipReport {
                k,
                m,
                detected,
                method: MembershipMethod::ExactGaussSum,
                precision_bits,
                height_bound,
            })
        }
        _ => integer_relation_search(k, m, precision_bits, height_bound),
    }
}

fn integer_relation_search(
    k: u32,
    m: u32,
    precision_bits: usize,
    height_bound: u64,
) -> Result<MembershipReport> {
    // exact obstruction: sqrt(1 + 4 zeta_k) in Q(zeta_m) forces
    // zeta_k = ((sqrt)^2 - 1)/4 in Q(zeta_m), whose roots of unity are the
    // lcm(2, m)-th ones; no lattice needed when k does not divide that
    let torsion = if m.is_multiple_of(2) { m as u64 } else { 2 * m as u64 };
    if torsion % k as u64 != 0 {
        return Ok(MembershipReport {
            k,
            m,
            detected: Detected::NotDetected,
            method: MembershipMethod::IntegerRelation,
            precision_bits,
            height_bound,
        });
    }
    let phi_m = level_data(m).phi;
    let prec = precision_bits;
    // target s = principal sqrt(1 + 4 zeta_k)
    let zeta_k = CycloElem::root_of_unity(k, 1);
    let target_sq = CycloElem::one(k).add(&zeta_k.mul_rational(&BigRational::from_integer(4.into())));
    let s = target_sq.to_complex(prec).sqrt_principal();

    // lattice rows: [ e_i | C*Re(v_i) | C*Im(v_i) ] with v_0 = s and
    // v_(i+1) = zeta_m^i; the scale leaves height-10^6 relations far
    // shorter than the generic lattice minimum at these dimensions
    let dim = phi_m + 1;
    let scale_bits = prec.saturating_sub(64).min(320) as i32;
    let scale = bf_pow2(scale_bits, prec);
    let round_scaled = |f: &astro_float::BigFloat| -> BigInt {
        let scaled = f.mul(&scale, prec, RM);
        let half = bf_pow2(-1, prec);
        bigint_from_bf(&scaled.add(&half, prec, RM).floor())
    };
    let mut values: Vec<ComplexBF> = Vec::with_capacity(dim);
    values.push(s);
    for i in 0..phi_m {
        values.push(CycloElem::root_of_unity(m, i as i64).to_complex(prec));
    }
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for (i, v) in values.iter().enumerate() {
        let mut row = vec![BigInt::zero(); dim + 2];
        row[i] = BigInt::one();
        row[dim] = round_scaled(&v.re);
        row[dim + 1] = round_scaled(&v.im);
        basis.push(row);
    }
    lll_reduce(&mut basis);

    let height = BigInt::from(height_bound);
    for row in &basis {
        let b0 = &row[0];
        if b0.is_zero() {
            continue;
        }
        if row[..dim].iter().any(|c| c.abs() > height) {
            continue;
        }
        // candidate coefficients of sqrt(1 + 4 zeta_k) in the power basis
        let coeffs: Vec<BigRational> = row[1..dim]
            .iter()
            .map(|c| -BigRational::new(c.clone(), b0.clone()))
            .collect();
        let candidate = CycloElem::from_coeffs(m, coeffs)?;
        if verify_witness(&candidate, k, m)? {
            return Ok(MembershipReport {
                k,
                m,
                detected: Detected::InField { witness: candidate },
                method: MembershipMethod::IntegerRelation,
                precision_bits,
                height_bound,
            });
        }
    }
    Ok(MembershipReport {
        k,
        m,
        detected: Detected::NotDetected,
        method: MembershipMethod::IntegerRelation,
        precision_bits,
        height_bound,
    })
}

/// Exact soundness check: does `candidate^2 = 1 + 4 zeta_k` in the
/// compositum `Q(zeta_lcm(k, m))`?
pub fn verify_witness(candidate: &CycloElem, k: u32, m: u32) -> Result<bool> {
    let level = u32::try_from((k as u64).lcm(&(m as u64)))
        .map_err(|_| Error::bad_level("compositum level overflow"))?;
    let sq = candidate.mul(candidate).lift_to(level)?;
    let target = CycloElem::one(level).add(
        &CycloElem::root_of_unity(level, (level / k) as i64)
            .mul_rational(&BigRational::from_integer(4.into())),
    );
    Ok(sq == target)
}
