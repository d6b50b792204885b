//! Truncation-clustering harness for the conjectural limit-point picture:
//! runs the approximant subsequences `N = q m + r` and measures how close
//! their tails come to the predicted limit points.

use astro_float::BigFloat;

use super::{limit_points, LimitPointsReport, ProjectiveValue, RootOfUnitySpec};
use crate::bigfloat::{bf_lt, bf_parse_decimal, RM};
use crate::cf::{CfSpec, ConvergentPair};
use crate::complex::ComplexBF;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct ResidueCluster {
    pub r: u32,
    /// Distance of the last sampled approximant to the nearest candidate
    /// (`None` when the subsequence hit a pole at the sampled tail).
    pub tail_distance: Option<BigFloat>,
    pub matched: bool,
}

#[derive(Debug, Clone)]
pub struct Conjecture3Check {
    pub a: RootOfUnitySpec,
    pub m: u32,
    pub predictions: LimitPointsReport,
    pub per_residue: Vec<ResidueCluster>,
    pub all_matched: bool,
}

/// Chordal distance on the Riemann sphere:
/// `|u - v| / sqrt((1 + |u|^2)(1 + |v|^2))`, with `None` as infinity.
/// Poles and diverging subsequences are measured uniformly this way.
pub fn chordal_distance(u: &Option<ComplexBF>, v: &Option<ComplexBF>, prec: usize) -> BigFloat {
    let one = crate::bigfloat::bf_one(prec);
    match (u, v) {
        (Some(u), Some(v)) => {
            let num = u.dist(v);
            let du = one.add(&u.abs_sq(), prec, RM).sqrt(prec, RM);
            let dv = one.add(&v.abs_sq(), prec, RM).sqrt(prec, RM);
            num.div(&du.mul(&dv, prec, RM), prec, RM)
        }
        (Some(w), None) | (None, Some(w)) => {
            one.div(&one.add(&w.abs_sq(), prec, RM).sqrt(prec, RM), prec, RM)
        }
        (None, None) => crate::bigfloat::bf_zero(prec),
    }
}

/// Compares subsequence tails after about `q_max` periods against the
/// predicted candidate set, in the chordal metric with a fixed `1e-8`
/// tolerance. The sampling depth is capped so that the eigen-decay of the
/// slow subsequences stays above the rounding noise of the run.
pub fn conjecture3_check(
    a: &RootOfUnitySpec,
    m: u32,
    q_max: i64,
    prec: usize,
) -> Result<Conjecture3Check> {
    let predictions = limit_points(a, m, prec)?;
    let tol = bf_parse_decimal("1e-8", prec).unwrap();

    // cancellation in the decaying subsequences loses ~2 log2(phi) bits per
    // period; stay well inside the working precision
    let q_cap = ((prec as f64 - 64.0) / 1.4) as i64;
    let q_eff = q_max.min(q_cap).max(3);

    // run the numeric recursion once, keeping the last few periods
    let spec = CfSpec::generalized(a.embed(prec), RootOfUnitySpec::new(1, m).unwrap().embed(prec));
    let n_max = m as i64 * (q_eff + 1);
    let mut pair = ConvergentPair::new(&spec);
    let keep_from = m as i64 * (q_eff - 2);
    let mut tail: Vec<(i64, Option<ComplexBF>)> = Vec::new();
    while pair.index < n_max {
        pair.advance(&spec, 1)?;
        if pair.index >= keep_from {
            let v = if pair.q_curr.is_zero() {
                None
            } else {
                Some(pair.p_curr.div(&pair.q_curr))
            };
            tail.push((pair.index, v));
        }
    }

    // candidate set per residue: the two eigen-ratios plus, when present,
    // the `zeta_3`-twisted family of that residue
    let base: Vec<Option<ComplexBF>> = predictions
        .two_points
        .iter()
        .map(|p| match p {
            ProjectiveValue::Finite(v) => Some(v.numeric.clone()),
            ProjectiveValue::Infinity => None,
        })
        .collect();
    let mut per_residue = Vec::new();
    let mut all_matched = true;
    for r in 0..m {
        let mut candidates: Vec<Option<ComplexBF>> = base.clone();
        if let Some(families) = &predictions.families {
            for p in &families[r as usize] {
                candidates.push(match p {
                    ProjectiveValue::Finite(v) => Some(v.numeric.clone()),
                    ProjectiveValue::Infinity => None,
                });
            }
        }
        // the last sampled index of this residue class
        let last = tail
            .iter()
            .rev()
            .find(|(n, _)| (n - r as i64).rem_euclid(m as i64) == 0);
        let (matched, dist) = match last {
            Some((_, v)) => {
                let mut best: Option<BigFloat> = None;
                for c in &candidates {
                    let d = chordal_distance(v, c, prec);
                    best = Some(match best {
                        None => d,
                        Some(b) => {
                            if bf_lt(&d, &b) {
                                d
                            } else {
                                b
                            }
                        }
                    });
                }
                match best {
                    Some(d) => (bf_lt(&d, &tol), Some(d)),
                    None => (false, None),
                }
            }
            None => (false, None),
        };
        if !matched {
            all_matched = false;
        }
        per_residue.push(ResidueCluster {
            r,
            tail_distance: dist,
            matched,
        });
    }
    Ok(Conjecture3Check {
        a: *a,
        m,
        predictions,
        per_residue,
        all_matched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_clusters_a1_m5() {
        let a = RootOfUnitySpec::one();
        let chk = conjecture3_check(&a, 5, 200, 256).unwrap();
        assert!(chk.all_matched, "{:?}", chk.per_residue);
        assert_eq!(chk.per_residue.len(), 5);
    }

    #[test]
    fn two_point_clusters_zeta5_m5() {
        let a = RootOfUnitySpec::new(1, 5).unwrap();
        let chk = conjecture3_check(&a, 5, 200, 256).unwrap();
        assert!(chk.all_matched);
    }

    #[test]
    fn three_point_family_minus_one_m3() {
        let a = RootOfUnitySpec::minus_one();
        let chk = conjecture3_check(&a, 3, 300, 256).unwrap();
        assert!(chk.predictions.families.is_some());
        assert!(chk.all_matched, "{:?}", chk.per_residue);
    }
}
