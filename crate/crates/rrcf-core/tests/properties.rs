//! Generative property suites: the determinant identity, the
//! convergent-error inequality, digit-expansion round trips, the q-binomial
//! Pascal identity and the tridiagonal slice relation.

use num_traits::Signed;
use proptest::prelude::*;

use rrcf_core::bigfloat::{bf_lt, bf_pow2, RM};
use rrcf_core::cf::{CfSpec, ConvergentPair};
use rrcf_core::complex::ComplexBF;
use rrcf_core::cyclo::CycloElem;
use rrcf_core::poly::gaussian_binomial;
use rrcf_core::tridiag::{slice_relation_rhs, tridiagonal_det};
use rrcf_core::witness::{expand_real, CFDigits};
use rrcf_core::BigRational;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        max_shrink_iters: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(cases(1050))]

    // P_n Q_(n-1) - P_(n-1) Q_n = (-1)^(n-1) prod a_i, exact ring
    #[test]
    fn determinant_identity_exact(
        level in 1u32..24,
        a_exp in 0i64..24,
        x_exp in 0i64..24,
        kind in 0u8..2,
        steps in 1u64..12,
    ) {
        let a = CycloElem::root_of_unity(level, a_exp);
        let x = CycloElem::root_of_unity(level, x_exp);
        let spec = if kind == 0 {
            CfSpec::schur(x)
        } else {
            CfSpec::generalized(a, x)
        };
        let mut pair = ConvergentPair::new(&spec);
        pair.advance(&spec, steps).unwrap();
        prop_assert_eq!(pair.det_lhs(), pair.expected_det().clone());
    }

    // the same identity over the complex ring, relative tolerance 2^(-96)
    #[test]
    fn determinant_identity_numeric(
        num_seed in 0i64..100_000,
        den in 2i64..401,
        steps in 1u64..40,
    ) {
        let num = 1 + num_seed % (den - 1);
        let x = ComplexBF::unit_circle_rational(&rat(num, den), 192);
        let spec = CfSpec::schur(x);
        let mut pair = ConvergentPair::new(&spec);
        pair.advance(&spec, steps).unwrap();
        let resid = pair.det_lhs().sub(pair.expected_det()).abs();
        // scale: the identity has modulus 1, products stay moderate here
        let scale = pair.p_curr.abs().mul(&pair.q_prev.abs(), 192, RM)
            .add(&rrcf_core::bigfloat::bf_i64(1, 192), 192, RM);
        let rel = resid.div(&scale, 192, RM);
        prop_assert!(bf_lt(&rel, &bf_pow2(-96, 64)));
    }

    // |t - c_n/d_n| <= 1/(d_n^2 e_(n+1)): exact rational comparison
    #[test]
    fn convergent_error_bound(digits in prop::collection::vec(1u64..50, 2..14)) {
        let mut ds = digits;
        // canonical form: final digit >= 2 keeps the value's expansion equal
        if *ds.last().unwrap() < 2 {
            *ds.last_mut().unwrap() = 2;
        }
        let cf = CFDigits::from_digits(ds).unwrap();
        let t = cf.value();
        for n in 1..cf.len() {
            let approx = BigRational::new(cf.c(n).clone(), cf.d(n).clone());
            let err = (&t - approx).abs();
            let bound = cf.approx_error_bound(n).unwrap();
            prop_assert!(err <= bound, "n = {}", n);
        }
    }

    // expand_real(value(prefix)) reproduces the prefix
    #[test]
    fn digit_expansion_round_trip(digits in prop::collection::vec(1u64..60, 1..12)) {
        let mut ds = digits;
        if ds.len() > 1 && *ds.last().unwrap() < 2 {
            *ds.last_mut().unwrap() = 2;
        }
        let cf = CFDigits::from_digits(ds.clone()).unwrap();
        let t = cf.value();
        prop_assume!(t > BigRational::new(0.into(), 1.into())
            && t < BigRational::new(1.into(), 1.into()));
        let back = expand_real(&t, 100).unwrap();
        prop_assert!(back.terminated());
        prop_assert_eq!(back.digits(), cf.digits());
    }

    // binom(m,k)_x = binom(m-1,k-1)_x x^(m-k) + binom(m-1,k)_x
    #[test]
    fn qbinom_pascal(m in 1u64..=40, k_seed in 0u64..=40) {
        let k = 1 + k_seed % m;
        let lhs = gaussian_binomial(m, k).unwrap();
        let mut rhs = gaussian_binomial(m - 1, k - 1)
            .unwrap()
            .shift_up((m - k) as usize);
        if k < m {
            rhs = rhs.add(&gaussian_binomial(m - 1, k).unwrap());
        }
        prop_assert_eq!(lhs, rhs);
    }

    // D(x_1..x_n) = D(..x_(m-1)) D(x_(m+1)..) + x_m D(..x_(m-2)) D(x_(m+2)..)
    #[test]
    fn tridiagonal_slice_relation(
        entries in prop::collection::vec((-9i64..10, 1i64..8), 1..12),
        cut_seed in 0usize..64,
    ) {
        let xs: Vec<BigRational> = entries.iter().map(|&(n, d)| rat(n, d)).collect();
        let cut = 1 + cut_seed % xs.len();
        let one = rat(1, 1);
        let full = tridiagonal_det(&xs, &one);
        let sliced = slice_relation_rhs(&xs, cut, &one);
        prop_assert_eq!(full, sliced);
    }

    // the slice relation over the complex ring with short random runs
    #[test]
    fn tridiagonal_slice_relation_numeric(
        entries in prop::collection::vec((-50i64..50, -50i64..50), 1..30),
        cut_seed in 0usize..64,
    ) {
        let xs: Vec<ComplexBF> = entries
            .iter()
            .map(|&(re, im)| {
                ComplexBF::new(
                    rrcf_core::bigfloat::bf_from_ratio(&rat(re, 10), 192),
                    rrcf_core::bigfloat::bf_from_ratio(&rat(im, 10), 192),
                    192,
                )
            })
            .collect();
        let cut = 1 + cut_seed % xs.len();
        let one = ComplexBF::one(192);
        let full = tridiagonal_det(&xs, &one);
        let sliced = slice_relation_rhs(&xs, cut, &one);
        let resid = full.sub(&sliced).abs();
        let scale = full.abs().add(&rrcf_core::bigfloat::bf_i64(1, 192), 192, RM);
        prop_assert!(bf_lt(&resid.div(&scale, 192, RM), &bf_pow2(-100, 64)));
    }
}

proptest! {
    #![proptest_config(cases(300))]

    // mul(inv(v), v) = 1 for random nonzero elements across levels
    #[test]
    fn cyclo_inverse_roundtrip(
        level_seed in 0usize..12,
        coeffs in prop::collection::vec((-5i64..6, 1i64..5), 1..8),
    ) {
        let levels = [1u32, 2, 3, 4, 5, 8, 12, 15, 24, 30, 60, 120];
        let level = levels[level_seed];
        let phi = CycloElem::zero(level).phi();
        let cs: Vec<BigRational> = coeffs
            .iter()
            .take(phi)
            .map(|&(n, d)| rat(n, d))
            .collect();
        let v = CycloElem::from_coeffs(level, cs).unwrap();
        prop_assume!(!v.is_zero());
        let inv = v.inv().unwrap();
        prop_assert!(inv.mul(&v).is_one());
    }
}
