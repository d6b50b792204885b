//! Trajectory extraction: the denominator products `|Q_N Q_(N-1)|` whose
//! bounded subsequences certify divergence, sampled along a run.

use astro_float::BigFloat;

use super::{CfSpec, ConvergentPair};
use crate::bigfloat::{bf_lt, bf_pow2, RM};
use crate::complex::ComplexBF;
use crate::error::{Error, Result};

/// One sampled point of a trajectory.
#[derive(Debug, Clone)]
pub struct TrajectoryPoint {
    pub n: i64,
    /// `|Q_n Q_(n-1)|`, corrected for internal rescaling.
    pub q_product_abs: BigFloat,
    /// `P_n / Q_n`; `None` marks a projective infinity (exact zero `Q_n`).
    pub approximant: Option<ComplexBF>,
}

impl TrajectoryPoint {
    /// CSV row `n,q_product_abs,approx_re,approx_im` (full decimal precision).
    pub fn csv_row(&self) -> String {
        match &self.approximant {
            Some(v) => format!("{},{},{},{}", self.n, self.q_product_abs, v.re, v.im),
            None => format!("{},{},inf,inf", self.n, self.q_product_abs),
        }
    }
}

/// CSV header matching [`TrajectoryPoint::csv_row`].
pub const CSV_HEADER: &str = "n,q_product_abs,approx_re,approx_im";

fn check_unit_modulus(label: &str, v: &ComplexBF) -> Result<()> {
    let prec = v.prec();
    let tol = bf_pow2(-(prec as i32) / 2, 64);
    let dev = v.abs().sub(&crate::bigfloat::bf_one(prec), prec, RM).abs();
    if bf_lt(&tol, &dev) {
        return Err(Error::domain(format!(
            "{label} must lie on the unit circle for the divergence interpretation"
        )));
    }
    Ok(())
}

/// Runs the recursion to `n_max`, invoking `emit` every `stride` steps
/// counted from the initial index (plus a final point at `n_max` when the
/// last stretch is partial).
///
/// Requires `|x| = 1` (and `|a| = 1` for `K_a`): the divergence reading of a
/// bounded `|Q_N Q_(N-1)|` subsequence needs unit partial numerators.
pub fn trajectory(
    spec: &CfSpec<ComplexBF>,
    n_max: i64,
    stride: u64,
    mut emit: impl FnMut(TrajectoryPoint),
) -> Result<()> {
    if stride == 0 {
        return Err(Error::out_of_range("stride must be positive"));
    }
    if n_max < 0 {
        return Err(Error::out_of_range("n_max must be nonnegative"));
    }
    check_unit_modulus("x", &spec.x)?;
    if let Some(a) = &spec.a {
        check_unit_modulus("a", a)?;
    }
    let mut pair = ConvergentPair::new(spec);
    while pair.index < n_max {
        let chunk = stride.min((n_max - pair.index) as u64);
        pair.advance(spec, chunk)?;
        let mut prod = pair.q_curr.abs().mul(&pair.q_prev.abs(), spec.x.prec(), RM);
        // undo the joint rescale: true product = stored * 2^(-2*scale)
        let unscale = -2 * pair.scale_log2();
        if !prod.is_zero() && unscale != 0 {
            let e = prod.exponent().expect("finite");
            prod.set_exponent(e + i32::try_from(unscale).unwrap_or(i32::MAX / 2));
        }
        let approximant = if pair.q_curr.is_zero() {
            None
        } else {
            Some(pair.p_curr.div(&pair.q_curr))
        };
        emit(TrajectoryPoint {
            n: pair.index,
            q_product_abs: prod,
            approximant,
        });
    }
    Ok(())
}

/// Collects a trajectory into a vector.
pub fn trajectory_points(
    spec: &CfSpec<ComplexBF>,
    n_max: i64,
    stride: u64,
) -> Result<Vec<TrajectoryPoint>> {
    let mut out = Vec::new();
    trajectory(spec, n_max, stride, |p| out.push(p))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::bf_i64;
    use crate::BigRational;

    fn root(num: i64, den: i64, prec: usize) -> ComplexBF {
        ComplexBF::unit_circle_rational(&BigRational::new(num.into(), den.into()), prec)
    }

    #[test]
    fn stride_zero_rejected() {
        let spec = CfSpec::schur(root(1, 3, 128));
        assert!(matches!(
            trajectory(&spec, 10, 0, |_| ()),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn off_circle_points_rejected() {
        let spec = CfSpec::schur(ComplexBF::from_i64(2, 128));
        assert!(trajectory(&spec, 10, 1, |_| ()).is_err());
    }

    #[test]
    fn convergent_case_grows() {
        // x = zeta_3: 5 does not divide 3, |Q_N Q_(N-1)| runs off to infinity
        let spec = CfSpec::schur(root(1, 3, 256));
        let pts = trajectory_points(&spec, 2000, 1).unwrap();
        let early_min = pts[..200]
            .iter()
            .map(|p| p.q_product_abs.clone())
            .reduce(|a, b| if bf_lt(&a, &b) { a } else { b })
            .unwrap();
        let late_min = pts[1000..]
            .iter()
            .map(|p| p.q_product_abs.clone())
            .reduce(|a, b| if bf_lt(&a, &b) { a } else { b })
            .unwrap();
        assert!(bf_lt(&early_min, &late_min));
        assert!(bf_lt(&bf_i64(1000, 64), &late_min));
    }

    #[test]
    fn schur_divergent_case_stays_bounded_below() {
        // x = zeta_5: divergence; some subsequence of |Q_N Q_(N-1)| stays small
        let spec = CfSpec::schur(root(1, 5, 256));
        let pts = trajectory_points(&spec, 2000, 1).unwrap();
        let min = pts[100..]
            .iter()
            .map(|p| p.q_product_abs.clone())
            .reduce(|a, b| if bf_lt(&a, &b) { a } else { b })
            .unwrap();
        assert!(bf_lt(&min, &bf_i64(10, 64)));
    }

    #[test]
    fn negative_real_case_keeps_bounded_products() {
        // a = -1, x = zeta_3: 1/4 + a^3 < 0, both eigenvalues have modulus
        // one, so |Q_N Q_(N-1)| never escapes (divergence by oscillation)
        let a = ComplexBF::from_i64(-1, 256);
        let spec = CfSpec::generalized(a, root(1, 3, 256));
        let pts = trajectory_points(&spec, 3000, 1).unwrap();
        let min = pts[10..]
            .iter()
            .map(|p| p.q_product_abs.clone())
            .reduce(|x, y| if bf_lt(&x, &y) { x } else { y })
            .unwrap();
        assert!(bf_lt(&min, &bf_i64(10, 64)));
        let max = pts
            .iter()
            .map(|p| p.q_product_abs.clone())
            .reduce(|x, y| if bf_lt(&x, &y) { y } else { x })
            .unwrap();
        assert!(bf_lt(&max, &bf_i64(100, 64)));
    }

    #[test]
    fn csv_rows_parse_back() {
        let spec = CfSpec::schur(root(1, 7, 128));
        let pts = trajectory_points(&spec, 20, 5).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            let row = p.csv_row();
            let fields: Vec<&str> = row.split(',').collect();
            assert_eq!(fields.len(), 4);
            assert_eq!(fields[0].parse::<i64>().unwrap(), p.n);
            assert!(crate::bigfloat::bf_parse_decimal(fields[1], 128).is_some());
        }
    }
}
