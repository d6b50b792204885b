//! Eigen decomposition of the period-`m` transfer matrix.
//!
//! Eigenvalues are the roots of `lambda^2 - lambda - a^m`. Eigenvectors are
//! taken as a column of `A - lambda' I` for the other eigenvalue `lambda'`:
//! the second column `(P_(m-2), lambda - a x^(m-1) P_(m-3))` whenever it is
//! nonzero, else the first `(lambda - Q_(m-2), a x^(m-1) Q_(m-3))`. The
//! second column is the generic choice, but it degenerates to the zero
//! vector exactly when `P_(m-2)(a, zeta_m) = 0`, which happens in the
//! divergent `5 | m` configurations.

use astro_float::BigFloat;

use super::RootOfUnitySpec;
use crate::bigfloat::{bf_lt, bf_pow2, RM};
use crate::complex::ComplexBF;
use crate::cyclo::{sqrt5, sqrt_minus3, CycloElem, PqTable};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::BigRational;

/// Eigenvalues, eigenvectors and per-residue expansion coefficients.
#[derive(Debug, Clone)]
pub struct EigenSystem<V> {
    pub m: u32,
    pub lambda_plus: V,
    pub lambda_minus: V,
    pub v_plus: [V; 2],
    pub v_minus: [V; 2],
    /// `expansion[r] = (c_plus, c_minus)` with
    /// `(P_r, Q_r) = c_plus v_plus + c_minus v_minus`, `r = 0..m-1`.
    pub expansion: Vec<(V, V)>,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum EigenData {
    Exact(EigenSystem<CycloElem>),
    Numeric(EigenSystem<ComplexBF>),
}

/// Computes the eigen data of the transfer matrix for `x = e^(2 pi i/m)`.
///
/// The result is exact when `a^m = +-1` (the square root is adjoined via
/// the Gauss-sum elements); other root-of-unity cases fall back to the
/// numeric path with the principal branch.
pub fn eigen_data(a: &RootOfUnitySpec, m: u32, prec: usize) -> Result<EigenData> {
    if m < 3 {
        return Err(Error::out_of_range("eigen data needs m >= 3"));
    }
    let a_pow_m = a.pow(m as i64);
    if a_pow_m.is_one() || a_pow_m.is_minus_one() {
        let base = num_integer::Integer::lcm(&(a.order() as u64), &(m as u64));
        let extra = if a_pow_m.is_one() { 5u64 } else { 3u64 };
        let level = u32::try_from(num_integer::Integer::lcm(&base, &extra))
            .map_err(|_| Error::bad_level("eigen level overflow"))?;
        let half = BigRational::new(1.into(), 2.into());
        // lambda = 1/2 +- sqrt(1/4 + a^m)
        let root_half = if a_pow_m.is_one() {
            sqrt5(level)?.mul_rational(&half)
        } else {
            sqrt_minus3(level)?.mul_rational(&half)
        };
        let half_el = CycloElem::from_rational(level, half);
        let lambda_plus = half_el.add(&root_half);
        let lambda_minus = half_el.sub(&root_half);
        let sys = build_system(
            m,
            &a.as_cyclo(level)?,
            &CycloElem::root_of_unity(level, (level / m) as i64),
            lambda_plus,
            lambda_minus,
        )?;
        return Ok(EigenData::Exact(sys));
    }
    // numeric path
    let work = prec + 32;
    let a_c = a.embed(work);
    let x_c = ComplexBF::unit_circle_rational(
        &BigRational::new(1.into(), (m as i64).into()),
        work,
    );
    let quarter = ComplexBF::from_ratio(&BigRational::new(1.into(), 4.into()), work);
    let shifted = quarter.add(&a_pow_m.embed(work));
    if bf_lt(&shifted.abs(), &bf_pow2(-(prec as i32) / 2, 64)) {
        return Err(Error::DegenerateEigenvalues);
    }
    let s = shifted.sqrt_principal();
    let half = ComplexBF::from_ratio(&BigRational::new(1.into(), 2.into()), work);
    let sys = build_system(m, &a_c, &x_c, half.add(&s), half.sub(&s))?;
    Ok(EigenData::Numeric(sys))
}

fn build_system<V: Ring + EigenRing>(
    m: u32,
    a: &V,
    x: &V,
    lambda_plus: V,
    lambda_minus: V,
) -> Result<EigenSystem<V>> {
    let table = V::pq_table(a, x, 2 * m as i64)?;
    let x_top = V::pow_u(x, m as u64 - 1);
    let ax_top = a.mul(&x_top);
    // matrix entries
    let a11 = ax_top.mul(&table.0[(m as i64 - 3 + 2) as usize]);
    let a12 = table.0[(m as i64 - 2 + 2) as usize].clone();
    let a21 = ax_top.mul(&table.1[(m as i64 - 3 + 2) as usize]);
    let a22 = table.1[(m as i64 - 2 + 2) as usize].clone();

    let eigenvector = |lambda_other: &V| -> Result<[V; 2]> {
        // columns of A - lambda' I are eigenvectors for lambda
        let col2 = [a12.clone(), a22.sub(lambda_other)];
        if !(col2[0].is_zero() && col2[1].is_zero()) {
            return Ok(col2);
        }
        let col1 = [a11.sub(lambda_other), a21.clone()];
        if col1[0].is_zero() && col1[1].is_zero() {
            return Err(Error::DegenerateEigenvalues);
        }
        Ok(col1)
    };
    let v_plus = eigenvector(&lambda_minus)?;
    let v_minus = eigenvector(&lambda_plus)?;

    // expansion coefficients by Cramer's rule; the determinant is inverted
    // once (field inversion dominates the cost at larger levels)
    let det = v_plus[0]
        .mul(&v_minus[1])
        .sub(&v_minus[0].mul(&v_plus[1]));
    if det.is_zero() {
        return Err(Error::DegenerateEigenvalues);
    }
    let det_inv = V::div(&det.one_like(), &det)?;
    let mut expansion = Vec::with_capacity(m as usize);
    for r in 0..m as i64 {
        let p_r = &table.0[(r + 2) as usize];
        let q_r = &table.1[(r + 2) as usize];
        let c_plus = p_r.mul(&v_minus[1]).sub(&v_minus[0].mul(q_r)).mul(&det_inv);
        let c_minus = v_plus[0].mul(q_r).sub(&p_r.mul(&v_plus[1])).mul(&det_inv);
        expansion.push((c_plus, c_minus));
    }
    Ok(EigenSystem {
        m,
        lambda_plus,
        lambda_minus,
        v_plus,
        v_minus,
        expansion,
    })
}

/// Ring-specific pieces needed by the eigen solver.
pub trait EigenRing: Sized {
    fn pq_table(a: &Self, x: &Self, n_max: i64) -> Result<(Vec<Self>, Vec<Self>)>;
    fn pow_u(x: &Self, e: u64) -> Self;
    fn div(num: &Self, den: &Self) -> Result<Self>;
}

impl EigenRing for CycloElem {
    fn pq_table(a: &Self, x: &Self, n_max: i64) -> Result<(Vec<Self>, Vec<Self>)> {
        let t = PqTable::new(n_max, a, x)?;
        let mut p = Vec::new();
        let mut q = Vec::new();
        for idx in -2..=n_max {
            p.push(t.p(idx).clone());
            q.push(t.q(idx).clone());
        }
        Ok((p, q))
    }
    fn pow_u(x: &Self, e: u64) -> Self {
        x.pow(e as i64).expect("nonnegative power")
    }
    fn div(num: &Self, den: &Self) -> Result<Self> {
        CycloElem::div(num, den)
    }
}

impl EigenRing for ComplexBF {
    fn pq_table(a: &Self, x: &Self, n_max: i64) -> Result<(Vec<Self>, Vec<Self>)> {
        let spec = crate::cf::CfSpec::generalized(a.clone(), x.clone());
        let mut pair = crate::cf::ConvergentPair::new(&spec);
        let mut p = vec![pair.p_prev.clone(), pair.p_curr.clone()];
        let mut q = vec![pair.q_prev.clone(), pair.q_curr.clone()];
        for _ in 0..=n_max {
            pair.advance(&spec, 1)?;
            p.push(pair.p_curr.clone());
            q.push(pair.q_curr.clone());
        }
        Ok((p, q))
    }
    fn pow_u(x: &Self, e: u64) -> Self {
        x.powi(e)
    }
    fn div(num: &Self, den: &Self) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("division by zero in eigen expansion"));
        }
        Ok(ComplexBF::div(num, den))
    }
}

impl EigenData {
    /// Numeric view of the expansion coefficients at the given precision.
    pub fn expansion_numeric(&self, prec: usize) -> Vec<(ComplexBF, ComplexBF)> {
        match self {
            EigenData::Exact(sys) => sys
                .expansion
                .iter()
                .map(|(p, m)| (p.to_complex(prec), m.to_complex(prec)))
                .collect(),
            EigenData::Numeric(sys) => sys.expansion.clone(),
        }
    }

    /// Lower bound for the period-`m` approximant gaps in the
    /// equal-modulus (divergent) case:
    /// `|c+||c-| |1 - lambda_-/lambda_+| |det(v+|v-)| / (|c+||v2+| + |c-||v2-|)^2`
    /// for residue `r`. Zero when either expansion coefficient vanishes.
    pub fn non_cauchy_gap_bound(&self, r: usize, prec: usize) -> BigFloat {
        let (lp, lm, vp, vm, cp, cm) = match self {
            EigenData::Exact(sys) => (
                sys.lambda_plus.to_complex(prec),
                sys.lambda_minus.to_complex(prec),
                [sys.v_plus[0].to_complex(prec), sys.v_plus[1].to_complex(prec)],
                [sys.v_minus[0].to_complex(prec), sys.v_minus[1].to_complex(prec)],
                sys.expansion[r].0.to_complex(prec),
                sys.expansion[r].1.to_complex(prec),
            ),
            EigenData::Numeric(sys) => (
                sys.lambda_plus.clone(),
                sys.lambda_minus.clone(),
                sys.v_plus.clone(),
                sys.v_minus.clone(),
                sys.expansion[r].0.clone(),
                sys.expansion[r].1.clone(),
            ),
        };
        let ratio = lm.div(&lp);
        let one = ComplexBF::one(prec);
        let det = vp[0].mul(&vm[1]).sub(&vm[0].mul(&vp[1]));
        let num = cp
            .abs()
            .mul(&cm.abs(), prec, RM)
            .mul(&one.sub(&ratio).abs(), prec, RM)
            .mul(&det.abs(), prec, RM);
        let den_lin = cp
            .abs()
            .mul(&vp[1].abs(), prec, RM)
            .add(&cm.abs().mul(&vm[1].abs(), prec, RM), prec, RM);
        let den = den_lin.mul(&den_lin, prec, RM);
        num.div(&den, prec, RM)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::transfer_matrix;

    fn check_eigen_exact(sys: &EigenSystem<CycloElem>, a: &RootOfUnitySpec, m: u32) {
        let level = sys.lambda_plus.level();
        let a_el = a.as_cyclo(level).unwrap();
        let x_el = CycloElem::root_of_unity(level, (level / m) as i64);
        let t = transfer_matrix(&a_el, &x_el, m).unwrap();
        for (lambda, v) in [
            (&sys.lambda_plus, &sys.v_plus),
            (&sys.lambda_minus, &sys.v_minus),
        ] {
            let (w0, w1) = t.apply(&v[0], &v[1]);
            assert_eq!(w0, lambda.mul(&v[0]), "first coordinate");
            assert_eq!(w1, lambda.mul(&v[1]), "second coordinate");
            assert!(!(v[0].is_zero() && v[1].is_zero()), "nonzero eigenvector");
        }
        // Vieta: sum = 1, product = -a^m
        assert!(sys.lambda_plus.add(&sys.lambda_minus).is_one());
        let am = a.pow(m as i64).as_cyclo(level).unwrap();
        assert_eq!(sys.lambda_plus.mul(&sys.lambda_minus), am.neg());
        // reconstruction
        let table = PqTable::new(m as i64, &a_el, &x_el).unwrap();
        for (r, (cp, cm)) in sys.expansion.iter().enumerate() {
            let pr = cp.mul(&sys.v_plus[0]).add(&cm.mul(&sys.v_minus[0]));
            let qr = cp.mul(&sys.v_plus[1]).add(&cm.mul(&sys.v_minus[1]));
            assert_eq!(&pr, table.p(r as i64), "P_{r}");
            assert_eq!(&qr, table.q(r as i64), "Q_{r}");
        }
    }

    #[test]
    fn exact_eigen_a1_m3() {
        let a = RootOfUnitySpec::one();
        let EigenData::Exact(sys) = eigen_data(&a, 3, 192).unwrap() else {
            panic!("expected exact data");
        };
        check_eigen_exact(&sys, &a, 3);
        // all expansion coefficients nonzero in the convergent case
        for (r, (cp, cm)) in sys.expansion.iter().enumerate() {
            assert!(!cp.is_zero() && !cm.is_zero(), "r={r}");
        }
    }

    #[test]
    fn exact_eigen_a1_m5_degenerate_column() {
        // P_3(1, zeta_5) = 0: the generic eigenvector formula degenerates
        // and the fallback column must be used
        let a = RootOfUnitySpec::one();
        let EigenData::Exact(sys) = eigen_data(&a, 5, 192).unwrap() else {
            panic!("expected exact data");
        };
        check_eigen_exact(&sys, &a, 5);
        // at least one residue has both coefficients nonzero
        assert!(sys
            .expansion
            .iter()
            .any(|(cp, cm)| !cp.is_zero() && !cm.is_zero()));
        // and the eigen-residues exist: some r with c_plus = 0 or c_minus = 0
        assert!(sys.expansion.iter().any(|(cp, _)| cp.is_zero()));
    }

    #[test]
    fn exact_eigen_minus_one_m3() {
        // a = -1, m = 3: lambda are primitive 6th roots of unity
        let a = RootOfUnitySpec::minus_one();
        let EigenData::Exact(sys) = eigen_data(&a, 3, 192).unwrap() else {
            panic!("expected exact data");
        };
        check_eigen_exact(&sys, &a, 3);
        let level = sys.lambda_plus.level();
        assert_eq!(
            sys.lambda_plus,
            CycloElem::root_of_unity(level, (level / 6) as i64)
        );
    }

    #[test]
    fn exact_eigen_grid_small() {
        // every exact case (a^m = +-1) over a small grid
        for m in 3u32..=12 {
            for (j, k) in [(0i64, 1u32), (1, 2), (1, 3), (1, 4), (2, 5), (1, 6)] {
                let a = RootOfUnitySpec::new(j, k).unwrap();
                let apm = a.pow(m as i64);
                if !(apm.is_one() || apm.is_minus_one()) {
                    continue;
                }
                let EigenData::Exact(sys) = eigen_data(&a, m, 128).unwrap() else {
                    panic!("expected exact data at a={a}, m={m}");
                };
                check_eigen_exact(&sys, &a, m);
            }
        }
    }

    #[test]
    fn numeric_eigen_residual() {
        // a = zeta_3, m = 4: a^m has order 3, numeric path
        let a = RootOfUnitySpec::new(1, 3).unwrap();
        let EigenData::Numeric(sys) = eigen_data(&a, 4, 256).unwrap() else {
            panic!("expected numeric data");
        };
        // A v = lambda v within tolerance
        let a_c = a.embed(256);
        let x_c = ComplexBF::unit_circle_rational(&BigRational::new(1.into(), 4.into()), 256);
        let (p, q) = <ComplexBF as EigenRing>::pq_table(&a_c, &x_c, 8).unwrap();
        // table index i holds the convergent of index i - 2
        let ax_top = a_c.mul(&x_c.powi(3));
        let a11 = ax_top.mul(&p[(4 - 3) + 2]);
        let a12 = p[(4 - 2) + 2].clone();
        let a21 = ax_top.mul(&q[(4 - 3) + 2]);
        let a22 = q[(4 - 2) + 2].clone();
        for (lambda, v) in [
            (&sys.lambda_plus, &sys.v_plus),
            (&sys.lambda_minus, &sys.v_minus),
        ] {
            let r0 = a11.mul(&v[0]).add(&a12.mul(&v[1])).sub(&lambda.mul(&v[0]));
            let r1 = a21.mul(&v[0]).add(&a22.mul(&v[1])).sub(&lambda.mul(&v[1]));
            assert!(bf_lt(&r0.abs(), &bf_pow2(-200, 64)));
            assert!(bf_lt(&r1.abs(), &bf_pow2(-200, 64)));
        }
    }

    #[test]
    fn gap_bound_positive_for_minus_one_m3() {
        let a = RootOfUnitySpec::minus_one();
        let data = eigen_data(&a, 3, 256).unwrap();
        let mut some_positive = false;
        for r in 0..3 {
            let b = data.non_cauchy_gap_bound(r, 256);
            if b.is_positive() {
                some_positive = true;
            }
        }
        assert!(some_positive);
    }
}
