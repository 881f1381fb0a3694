use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use quatmod::lfun::*;
use quatmod::qalg::MatC;
use quatmod::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// sum_{n<N} n^{-s} + Euler-Maclaurin tail at N.
fn zeta_series(s: f64, big_n: u64) -> f64 {
    let head: f64 = (1..big_n).map(|n| (n as f64).powf(-s)).sum();
    let n = big_n as f64;
    head + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s / 12.0 * n.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * n.powf(-s - 3.0)
}

#[test]
fn zeta_two_against_series_oracle() {
    let t = DirichletCharacter::trivial(1);
    let r = dirichlet_l_partial(c(2.0), &t, &[], 100_000).unwrap();
    let oracle = zeta_series(2.0, 1000);
    assert!((oracle - PI * PI / 6.0).abs() < 1e-12);
    assert!((r.value.re - oracle).abs() < 1e-4);
    assert!(r.value.im == 0.0);
    for s in [3.0, 4.5, 7.0] {
        let r = dirichlet_l_partial(c(s), &t, &[], 10_000).unwrap();
        assert!((r.value.re - zeta_series(s, 1000)).abs() < 1e-8);
    }
}

#[test]
fn dirichlet_l_of_chi4_against_series() {
    // L(3, chi_4) = pi^3 / 32
    let chi4 = DirichletCharacter::from_int_table(4, &[0, 1, 0, -1]).unwrap();
    let r = dirichlet_l_partial(c(3.0), &chi4, &[], 100_000).unwrap();
    assert!((r.value.re - PI.powi(3) / 32.0).abs() < 1e-9);
}

#[test]
fn euler_product_with_n_one_matches_dirichlet_values() {
    let chi = DirichletCharacter::legendre(5).unwrap();
    let pmax = 20_000;
    let sat = SatakeData::trivial(1, 3, 1, pmax);
    let s = Complex64::new(3.5, 0.8);
    let rep = l_function(s, &sat, &chi, pmax, EulerFactorVariant::SDependent).unwrap();
    let l1 = dirichlet_l_partial(s, &chi, &[], pmax).unwrap().value;
    let l2 = dirichlet_l_partial(2.0 * s, &chi.square(), &[], pmax).unwrap().value;
    let oracle = l2 * l1 * l1;
    assert!((rep.l.value - oracle).norm() < 1e-8 * oracle.norm());
    assert!((rep.d_series - l1 * l1).norm() < 1e-8 * oracle.norm());
    assert!((rep.d_series * rep.lambda - rep.l.value).norm() < 1e-12 * rep.l.value.norm());
}

#[test]
fn trivial_satake_against_direct_loop() {
    let t = DirichletCharacter::trivial(1);
    let pmax = 100;
    let n = 2;
    let sat = SatakeData::trivial(n, 6, 1, pmax);
    let s = c(6.0);
    for variant in [EulerFactorVariant::AsPrinted, EulerFactorVariant::SDependent] {
        let rep = l_function(s, &sat, &t, pmax, variant).unwrap();
        let mut direct = 1.0f64;
        for p in 2..=pmax {
            if !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                continue;
            }
            let pf = p as f64;
            let first = match variant {
                EulerFactorVariant::AsPrinted => pf.powi(2 * n as i32 - 2),
                EulerFactorVariant::SDependent => pf.powf(2.0 * n as f64 - 2.0 - 12.0),
            };
            let x = pf.powf(n as f64 - 1.0 - 6.0);
            direct /= (1.0 - first) * (1.0 - x).powi(2 * n as i32);
        }
        assert!((rep.l.value.re - direct).abs() < 1e-10 * direct.abs(), "{variant:?}");
        assert!((rep.d_series * rep.lambda - rep.l.value).norm() < 1e-12 * rep.l.value.norm());
    }
    let empty = l_function(s, &sat, &t, 0, EulerFactorVariant::AsPrinted).unwrap();
    assert_eq!(empty.l.value, c(1.0));
}

#[test]
fn l_function_errors() {
    let t = DirichletCharacter::trivial(1);
    let mut sat = SatakeData::trivial(2, 6, 1, 50);
    assert!(matches!(l_function(c(3.0), &sat, &t, 50, EulerFactorVariant::SDependent), Err(Error::Convergence(_))));
    sat.params.remove(&7);
    assert!(matches!(l_function(c(6.0), &sat, &t, 50, EulerFactorVariant::SDependent), Err(Error::MissingSatake(7))));
    assert!(l_function(c(6.0), &sat, &t, 5, EulerFactorVariant::SDependent).is_ok());
    let json = serde_json::to_string(&SatakeData::trivial(2, 6, 3, 20)).unwrap();
    let back = SatakeData::from_json(&json).unwrap();
    assert_eq!(back.level, 3);
    assert!(!back.params.contains_key(&3));
    assert!(SatakeData::from_json("{").is_err());
}

#[test]
fn tail_estimate_decreases() {
    let t = DirichletCharacter::trivial(1);
    let sat = SatakeData::trivial(2, 6, 1, 5000);
    let a = l_function(c(6.0), &sat, &t, 100, EulerFactorVariant::SDependent).unwrap();
    let b = l_function(c(6.0), &sat, &t, 5000, EulerFactorVariant::SDependent).unwrap();
    assert!(b.l.tail < a.l.tail);
    assert!((a.l.value - b.l.value).norm() <= a.l.tail);
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> MatC {
    let mut a = MatC::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            a[(i, j)] = z;
            a[(j, i)] = -z;
        }
    }
    a
}

#[test]
fn pfaffian_transformation_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in [2, 4, 6] {
        let a = random_skew(&mut rng, n);
        let b = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let lhs = pfaffian(&(b.transpose() * &a * &b)).unwrap();
        let rhs = b.determinant() * pfaffian(&a).unwrap();
        assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pfaffian_squares_to_determinant(seed in any::<u64>(), half in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_skew(&mut rng, 2 * half);
        let pf = pfaffian(&a).unwrap();
        let det = a.determinant();
        prop_assert!((pf * pf - det).norm() < 1e-8 * det.norm().max(1e-3));
        let ex = pfaffian_expansion(&a).unwrap();
        prop_assert!((pf - ex).norm() < 1e-10 * (1.0 + ex.norm()));
    }

    #[test]
    fn gamma_m_recurrence(m in 1usize..=4, re in 7.5f64..20.0, im in -3.0f64..3.0) {
        let s = Complex64::new(re, im);
        let ratio = gamma_m(m, s + 2.0).unwrap() / gamma_m(m, s).unwrap();
        let mut expect = c(1.0);
        for i in 0..m {
            let a = s - 2.0 * i as f64;
            expect *= a * (a + 1.0);
        }
        prop_assert!((ratio - expect).norm() < 1e-10 * expect.norm());
    }

    #[test]
    fn reproducing_constant_depends_on_s_plus_k(n in 2usize..=4, k in 8i64..20, shift in -3i64..3, re in 2.0f64..9.0, im in -2.0f64..2.0) {
        let s = Complex64::new(re, im);
        let a = reproducing_constant(n, k, s).unwrap().value;
        let b = reproducing_constant(n, k + shift, s - shift as f64).unwrap().value;
        prop_assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn character_multiplicative(x in 1i64..10_000, y in 1i64..10_000) {
        let chi = DirichletCharacter::legendre(11).unwrap();
        prop_assert!((chi.eval(x * y) - chi.eval(x) * chi.eval(y)).norm() < 1e-15);
        prop_assert_eq!(chi.eval(x) == c(0.0), x % 11 == 0);
    }

    #[test]
    fn euler_factor_symmetric_under_inversion(re in 0.3f64..3.0, arg in 0.0f64..6.28, s in 6.0f64..12.0) {
        let t = DirichletCharacter::trivial(1);
        let a = Complex64::from_polar(re, arg);
        let f1 = euler_factor(3, &[a, c(1.0)], &t, c(s), EulerFactorVariant::AsPrinted).unwrap();
        let f2 = euler_factor(3, &[1.0 / a, c(1.0)], &t, c(s), EulerFactorVariant::AsPrinted).unwrap();
        prop_assert!((f1 - f2).norm() < 1e-13 * f1.norm());
    }
}
