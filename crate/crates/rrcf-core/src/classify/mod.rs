//! Convergence classification of `K_a(zeta_m)` at roots of unity, the
//! explicit limit, and the verification harnesses around it.
//!
//! The decision procedure:
//!
//! 1. compute `a^m` (exactly for root-of-unity `a`);
//! 2. `1/4 + a^m` negative real means divergence with no limit points on a
//!    circle of approximants (two eigenvalues of equal modulus);
//! 3. otherwise convergence is governed by whether
//!    `sqrt(1/4 + a^m)` lies in `Q(a, zeta_m)`: outside the field the
//!    fraction converges to the explicit limit; inside it (which for
//!    `a^m = 1` happens exactly when `5 | m`) the approximants split into
//!    subsequences with two distinct limit points.
//!
//! For `a^m` of multiplicative order 3 or more the membership test is a
//! bounded integer-relation search (exact verification of any hit, honest
//! `NotDetected` otherwise); classifications that rely on a `NotDetected`
//! outcome carry the membership report so the caller can see the evidence.

pub mod conj2;
pub mod conj3;
pub mod eigen;
pub mod lll;
pub mod membership;
pub mod schur;

pub use conj2::{conjecture2_check, conjecture2_grid, Conjecture2Report, WhichEigenvalue};
pub use conj3::{conjecture3_check, Conjecture3Check, ResidueCluster};
pub use eigen::{eigen_data, EigenData, EigenSystem};
pub use membership::{field_membership, Detected, MembershipMethod, MembershipReport};
pub use schur::{golden_ratio, k1_from_k, legendre5, schur_limit, SchurLimit};

use num_integer::Integer;

use crate::bigfloat::{bf_lt, bf_pow2, RM};
use crate::complex::ComplexBF;
use crate::cyclo::{sqrt5, CycloElem, PqTable};
use crate::error::{Error, Result};
use crate::BigRational;

/// A primitive root of unity `e^(2 pi i numerator / order)`, stored with the
/// fraction in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnitySpec {
    numerator: u32,
    order: u32,
}

impl RootOfUnitySpec {
    pub fn new(numerator: i64, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::out_of_range("root-of-unity order must be positive"));
        }
        let num = numerator.rem_euclid(order as i64) as u32;
        let g = num.gcd(&order);
        Ok(RootOfUnitySpec {
            numerator: num / g,
            order: order / g,
        })
    }

    pub fn one() -> Self {
        RootOfUnitySpec {
            numerator: 0,
            order: 1,
        }
    }

    pub fn minus_one() -> Self {
        RootOfUnitySpec {
            numerator: 1,
            order: 2,
        }
    }

    /// Parses `"j/k"` (also accepts a bare integer as `j/1`).
    pub fn parse(s: &str) -> Result<Self> {
        let (j, k) = match s.split_once('/') {
            Some((j, k)) => (
                j.trim().parse::<i64>(),
                k.trim().parse::<u32>(),
            ),
            None => (s.trim().parse::<i64>(), Ok(1)),
        };
        match (j, k) {
            (Ok(j), Ok(k)) if k > 0 => Self::new(j, k),
            _ => Err(Error::out_of_range(format!(
                "cannot parse root of unity from {s:?} (expected j/k)"
            ))),
        }
    }

    pub fn numerator(&self) -> u32 {
        self.numerator
    }

    /// The exact multiplicative order.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn is_minus_one(&self) -> bool {
        self.order == 2
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(self.numerator as i64 * e, self.order).expect("order positive")
    }

    /// As an exact element of `Q(zeta_level)`; `order` must divide `level`.
    pub fn as_cyclo(&self, level: u32) -> Result<CycloElem> {
        if !level.is_multiple_of(self.order) {
            return Err(Error::bad_level(format!(
                "root of order {} does not live at level {level}",
                self.order
            )));
        }
        Ok(CycloElem::root_of_unity(
            level,
            (level / self.order) as i64 * self.numerator as i64,
        ))
    }

    pub fn embed(&self, prec: usize) -> ComplexBF {
        ComplexBF::unit_circle_rational(
            &BigRational::new((self.numerator as i64).into(), (self.order as i64).into()),
            prec,
        )
    }

    /// The rational `numerator/order` in `[0, 1)`.
    pub fn fraction(&self) -> BigRational {
        BigRational::new((self.numerator as i64).into(), (self.order as i64).into())
    }
}

impl std::fmt::Display for RootOfUnitySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ConvergentWithLimit,
    DivergentNegativeReal,
    DivergentTwoLimitPoints,
    DivergentThreeLimitPointsPossible,
    ConditionNotSatisfied,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Theorem3,
    Theorem4,
    SchurTheorem,
    Conjecture3,
    Heuristic,
}

/// A value that is exact when the ambient field permits, always with a
/// numeric embedding.
#[derive(Debug, Clone)]
pub struct ExactOrNumeric {
    pub exact: Option<CycloElem>,
    pub numeric: ComplexBF,
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone)]
pub enum ProjectiveValue {
    Finite(ExactOrNumeric),
    Infinity,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    pub limit: Option<ExactOrNumeric>,
    pub limit_points: Option<Vec<ProjectiveValue>>,
    pub provenance: Provenance,
    /// Whether `sqrt(1/4 + a^m)` was found to lie OUTSIDE `Q(a, zeta_m)`
    /// (the hypothesis enabling convergence).
    pub algebraic_condition_held: bool,
    /// Present when the condition was decided by the bounded search.
    pub membership: Option<MembershipReport>,
}

/// Options for [`classify`].
#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub precision_bits: usize,
    pub membership_precision_bits: usize,
    pub membership_height_bound: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            precision_bits: crate::DEFAULT_PRECISION_BITS,
            membership_precision_bits: 512,
            membership_height_bound: 1_000_000,
        }
    }
}

/// Classifies `K_a(zeta_m)` for a root-of-unity coefficient `a = zeta_k^j`.
pub fn classify(a: &RootOfUnitySpec, m: u32, opts: &ClassifyOptions) -> Result<Classification> {
    if m == 0 {
        return Err(Error::out_of_range("m must be positive"));
    }
    let prec = opts.precision_bits;
    let a_pow_m = a.pow(m as i64);
    let level = lcm_level(a.order(), m)?;

    if a_pow_m.is_minus_one() {
        // 1/4 + a^m = -3/4 < 0
        return Ok(Classification {
            verdict: Verdict::DivergentNegativeReal,
            limit: None,
            limit_points: None,
            provenance: Provenance::Theorem4,
            algebraic_condition_held: false,
            membership: None,
        });
    }

    if a_pow_m.is_one() {
        // a^m = 1 forces ord(a) | m, so the working field is Q(zeta_m) and
        // sqrt(5)/2 lies inside it exactly when 5 | m.
        debug_assert_eq!(level, m);
        if !m.is_multiple_of(5) {
            let limit = limit_formula(a, m, prec)?;
            return Ok(Classification {
                verdict: Verdict::ConvergentWithLimit,
                limit: Some(limit),
                limit_points: None,
                provenance: Provenance::Theorem3,
                algebraic_condition_held: true,
                membership: None,
            });
        }
        let provenance = if a.is_one() {
            Provenance::SchurTheorem
        } else {
            Provenance::Conjecture3
        };
        let points = two_limit_points(a, m, prec)?;
        return Ok(Classification {
            verdict: Verdict::DivergentTwoLimitPoints,
            limit: None,
            limit_points: Some(points),
            provenance,
            algebraic_condition_held: false,
            membership: None,
        });
    }

    // a^m is a root of unity of order >= 3: 1/4 + a^m is never in R_(<=0),
    // and membership of the square root is decided by the bounded search.
    let report = field_membership(
        a_pow_m.order(),
        level,
        opts.membership_precision_bits,
        opts.membership_height_bound,
    )?;
    match report.detected {
        Detected::InField { .. } => Ok(Classification {
            // the square root lies in the field but no theorem of the
            // framework covers this configuration
            verdict: Verdict::ConditionNotSatisfied,
            limit: None,
            limit_points: None,
            provenance: Provenance::Heuristic,
            algebraic_condition_held: false,
            membership: Some(report),
        }),
        Detected::NotDetected => {
            let limit = limit_formula(a, m, prec)?;
            Ok(Classification {
                verdict: Verdict::ConvergentWithLimit,
                limit: Some(limit),
                limit_points: None,
                provenance: Provenance::Theorem3,
                algebraic_condition_held: true,
                membership: Some(report),
            })
        }
    }
}

/// Heuristic classification for a raw complex coefficient `a`.
///
/// The sign tests run at working precision with tolerance `2^(-prec/2)`;
/// results are labeled `Heuristic` and the membership question is not
/// decidable from a floating-point `a`.
pub fn classify_complex(a: &ComplexBF, m: u32, opts: &ClassifyOptions) -> Result<Classification> {
    if m == 0 {
        return Err(Error::out_of_range("m must be positive"));
    }
    let prec = opts.precision_bits;
    let tol = bf_pow2(-(prec as i32) / 2, 64);
    let a_pow_m = a.powi(m as u64);
    let quarter = ComplexBF::from_ratio(&BigRational::new(1.into(), 4.into()), prec);
    let shifted = quarter.add(&a_pow_m);
    let re_negative = shifted.re.is_negative();
    let im_small = bf_lt(&shifted.im.abs(), &tol);
    if bf_lt(&shifted.abs(), &tol) {
        return Err(Error::DegenerateEigenvalues);
    }
    if im_small && re_negative {
        if bf_lt(&shifted.re.abs(), &tol) {
            return Err(Error::HeuristicInconclusive {
                msg: "1/4 + a^m too close to the branch point to sign".into(),
            });
        }
        return Ok(Classification {
            verdict: Verdict::DivergentNegativeReal,
            limit: None,
            limit_points: None,
            provenance: Provenance::Heuristic,
            algebraic_condition_held: false,
            membership: None,
        });
    }
    if im_small && !re_negative && bf_lt(&shifted.re.abs(), &tol) {
        return Err(Error::HeuristicInconclusive {
            msg: "cannot separate 1/4 + a^m from zero at this precision".into(),
        });
    }
    let limit = limit_formula_complex(a, m, prec)?;
    Ok(Classification {
        verdict: Verdict::ConvergentWithLimit,
        limit: Some(ExactOrNumeric {
            exact: None,
            numeric: limit,
        }),
        limit_points: None,
        provenance: Provenance::Heuristic,
        algebraic_condition_held: true,
        membership: None,
    })
}

fn lcm_level(k: u32, m: u32) -> Result<u32> {
    let l = (k as u64).lcm(&(m as u64));
    u32::try_from(l).map_err(|_| Error::bad_level(format!("level lcm({k},{m}) too large")))
}

/// The explicit limit
/// `K_a(zeta_m) = P_(m-2) / (1/2 + sqrt(1/4 + a^m) - a zeta_m^(m-1) P_(m-3))`,
/// exact when `a^m = 1` (adjoining `sqrt 5`), numeric otherwise.
pub fn limit_formula(a: &RootOfUnitySpec, m: u32, prec: usize) -> Result<ExactOrNumeric> {
    if m == 0 {
        return Err(Error::out_of_range("m must be positive"));
    }
    let a_pow_m = a.pow(m as i64);
    if a_pow_m.is_minus_one() {
        return Err(Error::domain(
            "1/4 + a^m = -3/4 is negative real; no limit exists",
        ));
    }
    let level = lcm_level(a.order(), m)?;
    if a_pow_m.is_one() {
        // exact value in Q(zeta_lcm(level,5), sqrt5) = Q(zeta_(lcm(level,5)))
        let big = lcm_level(level, 5)?;
        let a_el = a.as_cyclo(big)?;
        let x_el = CycloElem::root_of_unity(big, (big / m) as i64);
        let table = PqTable::new(m as i64 - 2, &a_el, &x_el)?;
        let half = CycloElem::from_rational(big, BigRational::new(1.into(), 2.into()));
        let root_half = sqrt5(big)?.mul_rational(&BigRational::new(1.into(), 2.into()));
        let den = half
            .add(&root_half)
            .sub(&a_el.mul(&x_el.pow(m as i64 - 1)?).mul(table.p(m as i64 - 3)));
        if den.is_zero() {
            return Err(Error::domain("limit denominator vanishes"));
        }
        let value = table.p(m as i64 - 2).div(&den)?;
        let numeric = value.to_complex(prec);
        return Ok(ExactOrNumeric {
            exact: Some(value),
            numeric,
        });
    }
    // numeric path with exact P-values embedded
    let a_el = a.as_cyclo(level)?;
    let x_el = CycloElem::root_of_unity(level, (level / m) as i64);
    let table = PqTable::new(m as i64 - 2, &a_el, &x_el)?;
    let work = prec + 32;
    let p_m2 = table.p(m as i64 - 2).to_complex(work);
    let p_m3 = table.p(m as i64 - 3).to_complex(work);
    let a_c = a.embed(work);
    let x_c = x_el.to_complex(work);
    let quarter = ComplexBF::from_ratio(&BigRational::new(1.into(), 4.into()), work);
    let half = ComplexBF::from_ratio(&BigRational::new(1.into(), 2.into()), work);
    let s = quarter.add(&a_pow_m.embed(work)).sqrt_principal();
    let den = half
        .add(&s)
        .sub(&a_c.mul(&x_c.powi(m as u64 - 1)).mul(&p_m3));
    if den.is_zero() {
        return Err(Error::domain("limit denominator vanishes"));
    }
    let mut v = p_m2.div(&den);
    v.re.set_precision(prec, RM).expect("precision");
    v.im.set_precision(prec, RM).expect("precision");
    Ok(ExactOrNumeric {
        exact: None,
        numeric: ComplexBF::new(v.re, v.im, prec),
    })
}

/// Numeric-only limit for raw complex `a` (`1/4 + a^m` must avoid the
/// closed negative real axis; checked with precision-scaled tolerance).
pub fn limit_formula_complex(a: &ComplexBF, m: u32, prec: usize) -> Result<ComplexBF> {
    if m == 0 {
        return Err(Error::out_of_range("m must be positive"));
    }
    let work = prec + 32;
    let tol = bf_pow2(-(prec as i32) / 2, 64);
    let a_pow_m = a.powi(m as u64);
    let quarter = ComplexBF::from_ratio(&BigRational::new(1.into(), 4.into()), work);
    let shifted = quarter.add(&a_pow_m);
    if bf_lt(&shifted.im.abs(), &tol) && !shifted.re.is_positive() {
        return Err(Error::domain(
            "1/4 + a^m on the closed negative real axis (within tolerance)",
        ));
    }
    // P_(m-2), P_(m-3) by the numeric recursion
    let x = ComplexBF::unit_circle_rational(&BigRational::new(1.into(), (m as i64).into()), work);
    let spec = crate::cf::CfSpec::generalized(a.clone(), x.clone());
    let mut pair = crate::cf::ConvergentPair::new(&spec);
    // advance to index m-2 (from index -1)
    pair.advance(&spec, (m as i64 - 2 + 1) as u64)?;
    let p_m2 = pair.p_curr.clone();
    let p_m3 = pair.p_prev.clone();
    let half = ComplexBF::from_ratio(&BigRational::new(1.into(), 2.into()), work);
    let s = shifted.sqrt_principal();
    let den = half.add(&s).sub(&a.mul(&x.powi(m as u64 - 1)).mul(&p_m3));
    if den.is_zero() {
        return Err(Error::domain("limit denominator vanishes"));
    }
    Ok(p_m2.div(&den))
}

/// The two limit points in the `5 | m`, `ord(a) | m` divergent case: the
/// coordinate ratios of the two eigenvectors of the transfer matrix.
fn two_limit_points(a: &RootOfUnitySpec, m: u32, prec: usize) -> Result<Vec<ProjectiveValue>> {
    if m >= 3 {
        let data = eigen::eigen_data(a, m, prec)?;
        return Ok(match data {
            EigenData::Exact(sys) => vec![
                ratio_exact(&sys.v_plus, prec),
                ratio_exact(&sys.v_minus, prec),
            ],
            EigenData::Numeric(sys) => vec![
                ratio_numeric(&sys.v_plus),
                ratio_numeric(&sys.v_minus),
            ],
        });
    }
    // m in {1, 2} with 5 | m is impossible
    Err(Error::domain("two-limit-point case needs 5 | m, so m >= 5"))
}

pub(crate) fn ratio_exact(v: &[CycloElem; 2], prec: usize) -> ProjectiveValue {
    if v[1].is_zero() {
        ProjectiveValue::Infinity
    } else {
        let value = v[0].div(&v[1]).expect("nonzero denominator");
        let numeric = value.to_complex(prec);
        ProjectiveValue::Finite(ExactOrNumeric {
            exact: Some(value),
            numeric,
        })
    }
}

pub(crate) fn ratio_numeric(v: &[ComplexBF; 2]) -> ProjectiveValue {
    if v[1].is_zero() {
        ProjectiveValue::Infinity
    } else {
        ProjectiveValue::Finite(ExactOrNumeric {
            exact: None,
            numeric: v[0].div(&v[1]),
        })
    }
}

/// Limit-point prediction (the conjectural picture): the two eigen-ratios
/// when `5 | m` and `ord(a) | m`; for `a^m = -1` with `3 | m`, additionally
/// the `zeta_3`-twisted three-point family per residue class.
#[derive(Debug, Clone)]
pub struct LimitPointsReport {
    pub two_points: Vec<ProjectiveValue>,
    /// `families[r][s]`, present in the `a^m = -1`, `3 | m` case.
    pub families: Option<Vec<[ProjectiveValue; 3]>>,
}

pub fn limit_points(a: &RootOfUnitySpec, m: u32, prec: usize) -> Result<LimitPointsReport> {
    let a_pow_m = a.pow(m as i64);
    let two_case = m.is_multiple_of(5) && m.is_multiple_of(a.order());
    let three_case = a_pow_m.is_minus_one() && m.is_multiple_of(3);
    if !two_case && !three_case {
        return Err(Error::domain(
            "limit points are predicted only for (5 | m and ord(a) | m) or (a^m = -1 and 3 | m)",
        ));
    }
    if two_case {
        return Ok(LimitPointsReport {
            two_points: two_limit_points(a, m, prec)?,
            families: None,
        });
    }
    // a^m = -1, 3 | m: exact eigen data and the twisted family
    let EigenData::Exact(sys) = eigen::eigen_data(a, m, prec)? else {
        return Err(Error::domain("expected exact eigen data for a^m = -1, 3 | m"));
    };
    let level = sys.lambda_plus.level();
    let zeta3 = CycloElem::root_of_unity(level, (level / 3) as i64);
    let mut families = Vec::new();
    for (c_plus, c_minus) in &sys.expansion {
        let mut fam: Vec<ProjectiveValue> = Vec::with_capacity(3);
        let mut tw = CycloElem::one(level);
        for _ in 0..3 {
            let num = c_plus.mul(&sys.v_plus[0]).add(&c_minus.mul(&sys.v_minus[0]).mul(&tw));
            let den = c_plus.mul(&sys.v_plus[1]).add(&c_minus.mul(&sys.v_minus[1]).mul(&tw));
            fam.push(ratio_exact(&[num, den], prec));
            tw = tw.mul(&zeta3);
        }
        families.push([fam[0].clone(), fam[1].clone(), fam[2].clone()]);
    }
    Ok(LimitPointsReport {
        two_points: vec![
            ratio_exact(&sys.v_plus, prec),
            ratio_exact(&sys.v_minus, prec),
        ],
        families: Some(families),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{bf_i64, bf_parse_decimal};

    fn close_to(v: &ComplexBF, re: &str, im: &str, tol_exp: i32) -> bool {
        let r = bf_parse_decimal(re, 256).unwrap();
        let i = bf_parse_decimal(im, 256).unwrap();
        let dr = v.re.sub(&r, 256, RM).abs();
        let di = v.im.sub(&i, 256, RM).abs();
        bf_lt(&dr, &bf_pow2(tol_exp, 64)) && bf_lt(&di, &bf_pow2(tol_exp, 64))
    }

    #[test]
    fn parse_and_normalize() {
        let r = RootOfUnitySpec::parse("2/4").unwrap();
        assert_eq!((r.numerator(), r.order()), (1, 2));
        assert!(r.is_minus_one());
        let one = RootOfUnitySpec::parse("1/1").unwrap();
        assert!(one.is_one());
        assert!(RootOfUnitySpec::parse("x/3").is_err());
        let neg = RootOfUnitySpec::parse("-1/5").unwrap();
        assert_eq!((neg.numerator(), neg.order()), (4, 5));
    }

    #[test]
    fn limit_a1_m1_is_inverse_golden_ratio() {
        let a = RootOfUnitySpec::one();
        let v = limit_formula(&a, 1, 256).unwrap();
        assert!(close_to(
            &v.numeric,
            "0.61803398874989484820458683436563811772",
            "0",
            -120
        ));
        assert!(v.exact.is_some());
    }

    #[test]
    fn limit_a1_m2() {
        // 2/(3+sqrt(5)) = (3-sqrt(5))/2 = 0.3819660112...
        let a = RootOfUnitySpec::one();
        let v = limit_formula(&a, 2, 256).unwrap();
        assert!(close_to(
            &v.numeric,
            "0.38196601125010515179541316563436188228",
            "0",
            -120
        ));
    }

    #[test]
    fn limit_matches_truncation_a1_m3() {
        let a = RootOfUnitySpec::one();
        let v = limit_formula(&a, 3, 256).unwrap();
        let x = ComplexBF::unit_circle_rational(&BigRational::new(1.into(), 3.into()), 256);
        let spec = crate::cf::CfSpec::generalized(ComplexBF::one(256), x);
        let trunc = crate::cf::truncated_value(&spec, 2000, 256).unwrap();
        let err = v.numeric.sub(&trunc).abs();
        // tighter than 1e-20
        assert!(bf_lt(&err, &bf_pow2(-80, 64)));
    }

    #[test]
    fn classify_examples_from_theory() {
        let opts = ClassifyOptions::default();
        // a = 1, m = 2: convergent
        let c = classify(&RootOfUnitySpec::one(), 2, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::ConvergentWithLimit);
        assert_eq!(c.provenance, Provenance::Theorem3);
        assert!(c.algebraic_condition_held);
        assert!(close_to(
            &c.limit.unwrap().numeric,
            "0.38196601125010515179541316563436188228",
            "0",
            -120
        ));
        // a = -1, m = 3: 1/4 + (-1)^3 < 0
        let c = classify(&RootOfUnitySpec::minus_one(), 3, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::DivergentNegativeReal);
        assert_eq!(c.provenance, Provenance::Theorem4);
        // a = 1, m = 5: Schur divergence
        let c = classify(&RootOfUnitySpec::one(), 5, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::DivergentTwoLimitPoints);
        assert_eq!(c.provenance, Provenance::SchurTheorem);
        let pts = c.limit_points.unwrap();
        assert_eq!(pts.len(), 2);
        // a = zeta_5, m = 5: conjectural two-point divergence
        let a = RootOfUnitySpec::new(1, 5).unwrap();
        let c = classify(&a, 5, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::DivergentTwoLimitPoints);
        assert_eq!(c.provenance, Provenance::Conjecture3);
    }

    #[test]
    fn convergence_envelope_is_monotone() {
        // |truncation(N) - limit| decreases like |lambda_-/lambda_+|^(N/m)
        let prec = 320usize;
        for m in [2u32, 3, 7] {
            let a = RootOfUnitySpec::one();
            let limit = limit_formula(&a, m, prec).unwrap().numeric;
            let x = ComplexBF::unit_circle_rational(
                &BigRational::new(1.into(), (m as i64).into()),
                prec,
            );
            let spec = crate::cf::CfSpec::generalized(ComplexBF::one(prec), x);
            let err_at = |mult: i64| {
                crate::cf::truncated_value(&spec, mult * m as i64, prec)
                    .unwrap()
                    .sub(&limit)
                    .abs()
            };
            let (e50, e100, e200) = (err_at(50), err_at(100), err_at(200));
            assert!(bf_lt(&e100, &e50), "m={m}");
            assert!(bf_lt(&e200, &e100), "m={m}");
        }
    }

    #[test]
    fn classify_complex_heuristic() {
        let opts = ClassifyOptions::default();
        // a = 0.3 (real, small): 1/4 + a^m > 0, convergent heuristically
        let a = ComplexBF::from_ratio(&BigRational::new(3.into(), 10.into()), 256);
        let c = classify_complex(&a, 4, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::ConvergentWithLimit);
        assert_eq!(c.provenance, Provenance::Heuristic);
        // a = i, m = 2: a^2 = -1: negative real
        let i = ComplexBF::new(crate::bigfloat::bf_zero(256), bf_i64(1, 256), 256);
        let c = classify_complex(&i, 2, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::DivergentNegativeReal);
    }

    #[test]
    fn limit_points_two_point_case() {
        let r = limit_points(&RootOfUnitySpec::one(), 5, 256).unwrap();
        assert_eq!(r.two_points.len(), 2);
        assert!(r.families.is_none());
        // one of the predicted points for a=1, m=5 is exactly 0 (the
        // small-eigenvalue eigenvector has first coordinate P_3(zeta_5) = 0)
        let has_zero = r.two_points.iter().any(|p| match p {
            ProjectiveValue::Finite(v) => v.numeric.is_zero(),
            _ => false,
        });
        assert!(has_zero);
    }

    #[test]
    fn limit_points_rejects_uncovered_inputs() {
        assert!(limit_points(&RootOfUnitySpec::one(), 3, 128).is_err());
    }
}
