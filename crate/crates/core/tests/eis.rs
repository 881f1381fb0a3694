use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use quatmod::eis::*;
use quatmod::lfun::{lambda_norm, DirichletCharacter};
use quatmod::qalg::{
    diag_quat, q, q_to_f64, qf, random_integral_mat, real_embed, reduced_det, Mat, MatQuat, QuatAlgebra,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn alg() -> QuatAlgebra {
    QuatAlgebra::new(-3, -7).unwrap()
}

fn params(m: usize, l: i64) -> EisensteinParams {
    EisensteinParams { m, l, chi: DirichletCharacter::trivial(1), level: 1 }
}

fn invertible(rng: &mut ChaCha8Rng, m: usize) -> MatQuat {
    loop {
        let g = random_integral_mat(rng, alg(), m, 3);
        if reduced_det(&g).unwrap() != q(0) {
            return g;
        }
    }
}

/// q* diag(signs) q for a random integral invertible q.
fn congruent(rng: &mut ChaCha8Rng, signs: &[i64]) -> MatQuat {
    let a = alg();
    let g = invertible(rng, signs.len());
    let d = diag_quat(&signs.iter().map(|&s| a.scalar(q(s))).collect::<Vec<_>>());
    Mat::product(&[&g.star(), &d, &g]).unwrap()
}

/// Integral matrix with reduced determinant 1, a product of elementary unipotents.
fn unimodular(rng: &mut ChaCha8Rng, m: usize) -> MatQuat {
    let a = alg();
    let mut g = Mat::identity(m, &a.zero());
    for _ in 0..4 {
        let (i, j) = (rng.random_range(0..m), rng.random_range(0..m));
        if i == j {
            continue;
        }
        let mut e = Mat::identity(m, &a.zero());
        e.set(i, j, quatmod::qalg::random_integral_quat(rng, a, 2));
        g = g.try_mul(&e).unwrap();
    }
    g
}

#[test]
fn indefinite_indices_give_exact_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for signs in [vec![-1], vec![1, -1], vec![-1, -1], vec![1, 0], vec![0, 0]] {
        for _ in 0..5 {
            let h = congruent(&mut rng, &signs);
            let p = params(signs.len(), 2 * signs.len() as i64 + 1);
            let c = coefficient_special_point(&h, None, &p, TOL).unwrap();
            assert_eq!(c.value, Complex64::new(0.0, 0.0));
        }
    }
}

#[test]
fn inertia_agrees_with_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for signs in [vec![1, 1, 1], vec![1, -1, 1], vec![1, 0, -1], vec![0, 0, 1]] {
        for _ in 0..4 {
            let h = congruent(&mut rng, &signs);
            let inr = inertia(&h).unwrap();
            let pos = signs.iter().filter(|&&s| s > 0).count();
            let neg = signs.iter().filter(|&&s| s < 0).count();
            assert_eq!((inr.positive, inr.negative), (pos, neg));
            let ev = quatmod::linalg::hermitian_eigenvalues(&real_embed(&h));
            let scale = ev.iter().fold(1.0f64, |a, b| a.max(b.abs()));
            assert_eq!(ev.iter().filter(|&&x| x > 1e-9 * scale).count(), 2 * pos);
            assert_eq!(positivity(&h, TOL).unwrap(), inr.class());
            if inr.zero == 0 {
                assert_eq!(inr.pivot_det.clone() * &inr.pivot_det, reduced_det(&h).unwrap());
            }
        }
    }
}

#[test]
fn xi_special_det_power_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for m in [1usize, 2] {
        let l = 2 * m as i64 + 1;
        let h = congruent(&mut rng, &vec![1; m]);
        let y0 = real_embed(&congruent(&mut rng, &vec![1; m]));
        let y = y0.scale(0.5 / lambda_numeric(&h, &y0));
        let base = xi_special(&y, &h, l, TOL).unwrap();
        for t in [qf(2, 1), qf(1, 3), qf(5, 2)] {
            let th = h.map(|x| x.scale(&t));
            let v = xi_special(&y, &th, l, TOL).unwrap();
            let tf = q_to_f64(&t);
            let lam = lambda_numeric(&h, &y);
            let mf = m as f64;
            let expect =
                base * tf.powf(2.0 * mf * (l as f64 - (2.0 * mf - 1.0) / 2.0)) * (-2.0 * PI * (tf - 1.0) * lam).exp();
            assert!((v - expect).norm() < 1e-10 * expect.norm(), "m = {m}: {v} vs {expect}, lambda {lam}");
        }
    }
}

#[test]
fn xi_decays() {
    let a = alg();
    let h = diag_quat(&[a.one()]);
    let mut prev = f64::INFINITY;
    for k in 1..6 {
        let y = real_embed(&diag_quat(&[a.scalar(q(k))]));
        let v = xi_special(&y, &h, 2, TOL).unwrap().norm();
        assert!(v < prev);
        prev = v;
    }
}

#[test]
fn alpha_ratio_full_rank_inverts_lambda() {
    let a = alg();
    let t = DirichletCharacter::trivial(1);
    for (m, h) in [
        (1, diag_quat(&[a.scalar(q(4))])),
        (2, diag_quat(&[a.scalar(q(2)), a.scalar(q(4))])),
        (2, diag_quat(&[a.scalar(qf(1, 2)), a.scalar(q(16))])),
    ] {
        for s in [Complex64::new(4.0, 0.0), Complex64::new(5.5, 1.25)] {
            let r = alpha_ratio(&h, s, &t, 1, 20_000, false).unwrap();
            let lam = lambda_norm(s, &t, m, 1, 20_000).unwrap();
            assert!((r.value * lam - 1.0).norm() < 1e-10);
        }
    }
}

#[test]
fn q_substitution_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for m in [1usize, 2] {
        let p = params(m, 2 * m as i64 + 2);
        for _ in 0..5 {
            let h = congruent(&mut rng, &vec![1; m]);
            let u = unimodular(&mut rng, m);
            assert_eq!(reduced_det(&u).unwrap(), q(1));
            let with_q = coefficient_special_point(&h, Some(&u), &p, TOL).unwrap();
            let hq = Mat::product(&[&u.star(), &h, &u]).unwrap();
            let direct = coefficient_special_point(&hq, None, &p, TOL).unwrap();
            assert!((with_q.value - direct.value).norm() < 1e-15 * direct.value.norm().max(1e-300));
        }
    }
    let a = alg();
    let h = diag_quat(&[a.one()]);
    let two = diag_quat(&[a.scalar(q(2))]);
    let p = params(1, 3);
    let c = coefficient_special_point(&h, Some(&two), &p, TOL).unwrap();
    // reduced det 4, |4|_h^{2m-1-l} = 4^{2}, lambda(q* h q) = 4
    assert!((c.value - 16.0 * (-8.0 * PI).exp()).norm() < 1e-12 * c.value.norm());
}

#[test]
fn partial_sum_monotone_tail() {
    let a = alg();
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let p = params(2, 4);
    let y = real_embed(&congruent(&mut rng, &[1, 1])).scale(0.1);
    let sigma = diag_quat(&[a.scalar(qf(1, 3)), a.scalar(qf(1, 5))]);
    let s3 = partial_fourier_sum(&sigma, &y, &p, 3, 200_000, TOL).unwrap().value;
    let s4 = partial_fourier_sum(&sigma, &y, &p, 4, 200_000, TOL).unwrap().value;
    let new: Vec<MatQuat> = enumerate_positive(a, 2, 4, 200_000)
        .unwrap()
        .into_iter()
        .filter(|h| quatmod::qalg::reduced_trace(h).unwrap() == q(8))
        .collect();
    let min_lam = new.iter().map(|h| lambda_numeric(h, &y)).fold(f64::INFINITY, f64::min);
    let bound = new.len() as f64 * (-2.0 * PI * min_lam).exp();
    assert!((s4 - s3).norm() <= bound * (1.0 + 1e-12));
    assert!(partial_fourier_sum(&sigma, &y, &params(3, 7), 3, 1000, TOL).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adelic_char_is_trivial_on_rationals(n in -1_000_000i64..1_000_000, d in 1i64..=10_000) {
        let x = qf(n, d);
        prop_assert_eq!(adelic_char(&x), Complex64::new(1.0, 0.0));
        let finite = adelic_finite_char(&x);
        let inf = Complex64::new(0.0, 2.0 * PI * q_to_f64(&x)).exp();
        prop_assert!((finite * inf - 1.0).norm() < 1e-9);
    }

    #[test]
    fn principal_parts_sum_to_x_mod_one(n in -100_000i64..100_000, d in 1i64..=10_000) {
        let x = qf(n, d);
        let mut s = q(0);
        for p in quatmod::lfun::prime_divisors(d as u64) {
            let y = principal_part(&x, p);
            prop_assert!(y >= q(0) && y < q(1));
            s += y;
        }
        prop_assert!((x - s).is_integer());
    }
}
