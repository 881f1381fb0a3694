//! Exact arithmetic in a definite quaternion algebra, its splitting field,
//! matrices over both, and the numeric Hamilton embedding.

mod embed;
mod fixture;
mod mat;
mod quad;
mod quat;
mod ring;

pub use embed::{
    hamilton_block, hamilton_coords, i_prime, j_prime, j_prime_c, lambda_pairing, mat_split_embed, quad_to_c,
    real_embed, reduced_det, reduced_det_trace, reduced_trace, split_embed, transport_identities, MatC, MatQuad,
    MatQuat,
};
pub use fixture::{
    mat_from_json, mat_to_json, parse_rational, quat_from_json, quat_to_json, rational_to_string, AlgebraJson,
    MatQuatJson, QuatJson,
};
pub use mat::Mat;
pub use quad::QuadElem;
pub use quat::{q, q_to_f64, qf, Quat, QuatAlgebra, Q};
pub use ring::Ring;

use rand::Rng;

/// Random quaternion with integer coordinates in [-bound, bound].
pub fn random_integral_quat<R: Rng + ?Sized>(rng: &mut R, alg: QuatAlgebra, bound: i64) -> Quat {
    let mut c = || rng.random_range(-bound..=bound);
    alg.from_ints(c(), c(), c(), c())
}

/// Random n x n quaternion matrix with integral coordinates in [-bound, bound].
pub fn random_integral_mat<R: Rng + ?Sized>(rng: &mut R, alg: QuatAlgebra, n: usize, bound: i64) -> MatQuat {
    Mat::from_fn(n, n, &alg.zero(), |_, _| random_integral_quat(rng, alg, bound))
}

/// Quaternion matrix with the given scalar diagonal entries.
pub fn diag_quat(entries: &[Quat]) -> MatQuat {
    let z = entries[0].zero_like();
    let mut m = Mat::zeros(entries.len(), entries.len(), &z);
    for (i, e) in entries.iter().enumerate() {
        m.set(i, i, e.clone());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg() -> QuatAlgebra {
        QuatAlgebra::new(-3, -7).unwrap()
    }

    #[test]
    fn basis_products() {
        let a = alg();
        assert_eq!(&a.zeta() * &a.xi(), a.zeta_xi());
        assert_eq!(&a.xi() * &a.zeta(), a.zeta_xi().neg());
        assert_eq!(&a.zeta() * &a.zeta(), a.scalar(q(-3)));
        assert_eq!(&a.xi() * &a.xi(), a.scalar(q(-7)));
        // (zeta xi)^2 = -alpha beta
        assert_eq!(&a.zeta_xi() * &a.zeta_xi(), a.scalar(q(-21)));
        let x = &a.from_ints(1, 1, 0, 0) * &a.from_ints(1, -1, 0, 0);
        assert_eq!(x, a.scalar(q(1 + 3)));
    }

    #[test]
    fn algebra_validation() {
        assert!(QuatAlgebra::new(-4, -1).is_err());
        assert!(QuatAlgebra::new(1, -1).is_err());
        assert!(QuatAlgebra::new(-6, -5).is_ok());
        let b = QuatAlgebra::new(-1, -2).unwrap();
        assert_eq!(alg().one().checked_mul(&b.one()), Err(crate::error::Error::AlgebraMismatch));
    }

    #[test]
    fn trace_norm_examples() {
        let a = alg();
        assert_eq!(a.zeta().trace_norm(), (q(0), q(3)));
        assert_eq!(a.one().trace_norm(), (q(2), q(1)));
        let h = QuatAlgebra::hamilton();
        assert_eq!(h.from_ints(1, 1, 0, 0).trace_norm(), (q(2), q(2)));
        assert_eq!(a.zeta().conj(), a.zeta().neg());
        assert_eq!(a.zeta_xi().conj(), a.zeta_xi().neg());
    }

    #[test]
    fn split_embed_examples() {
        let a = alg();
        let z = QuadElem::rational(-7, q(0));
        assert!(split_embed(&a.one()).is_identity());
        let ez = split_embed(&a.zeta());
        let expect =
            Mat::from_rows(vec![vec![z.clone(), QuadElem::rational(-7, q(-3))], vec![z.one_like(), z.clone()]], &z)
                .unwrap();
        assert_eq!(ez, expect);
        let ex = split_embed(&a.xi());
        assert_eq!(*ex.get(0, 0), QuadElem::new(-7, q(0), q(1)));
        assert_eq!(*ex.get(1, 1), QuadElem::new(-7, q(0), q(-1)));
        assert!(ex.get(0, 1).is_zero() && ex.get(1, 0).is_zero());
    }

    #[test]
    fn reduced_det_examples() {
        let a = alg();
        assert_eq!(reduced_det_trace(&Mat::identity(3, &a.zero())).unwrap(), (q(1), q(6)));
        assert_eq!(reduced_det_trace(&diag_quat(&[a.zeta()])).unwrap(), (q(3), q(0)));
        let h = QuatAlgebra::hamilton();
        let d = diag_quat(&[h.from_ints(1, 1, 0, 0), h.one()]);
        assert_eq!(reduced_det(&d).unwrap(), q(2));
        let m = diag_quat(&[a.zeta(), a.one()]);
        let e = mat_split_embed(&m).unwrap();
        assert_eq!(*e.get(0, 1), QuadElem::rational(-7, q(-3)));
        assert!(e.submatrix(2, 2, 2, 2).is_identity());
    }

    #[test]
    fn lambda_examples() {
        let a = alg();
        let one = Mat::identity(2, &a.zero());
        assert_eq!(lambda_pairing(&one, &one).unwrap(), q(2));
        let zero = Mat::zeros(2, 2, &a.zero());
        assert_eq!(lambda_pairing(&zero, &one).unwrap(), q(0));
        let t = Mat::identity(1, &a.zero());
        assert_eq!(lambda_pairing(&t, &diag_quat(&[a.zeta()])).unwrap(), q(0));
    }

    #[test]
    fn real_embed_relation_and_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = alg();
        for n in 1..=3 {
            let x = random_integral_mat(&mut rng, a, n, 3);
            let e = real_embed(&x);
            let j = j_prime_c(n);
            let lhs = e.map(|z| z.conj()) * &j;
            let rhs = &j * &e;
            assert!((lhs - rhs).norm() < 1e-12);
            let det = e.determinant().re;
            let exact = q_to_f64(&reduced_det(&x).unwrap());
            assert!((det - exact).abs() <= 1e-9 * exact.abs().max(1.0));
            let y = random_integral_mat(&mut rng, a, n, 3);
            let prod = real_embed(&x.try_mul(&y).unwrap());
            assert!((prod - &e * real_embed(&y)).norm() < 1e-9);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = alg();
        let x = random_integral_mat(&mut rng, a, 3, 4);
        let xi = x.inverse().unwrap();
        assert!(x.try_mul(&xi).unwrap().is_identity());
        assert!(xi.try_mul(&x).unwrap().is_identity());
    }

    #[test]
    fn fixture_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = alg();
        let x = random_integral_mat(&mut rng, a, 2, 5).map(|e| e.scale(&qf(1, 3)));
        let j = mat_to_json(&x);
        let s = serde_json::to_string(&j).unwrap();
        let back: MatQuatJson = serde_json::from_str(&s).unwrap();
        assert_eq!(mat_from_json(&back).unwrap(), x);
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_rational("-6/4").unwrap(), qf(-3, 2));
    }

    fn arb_quat() -> impl Strategy<Value = Quat> {
        prop::array::uniform4(-20i64..=20).prop_map(|c| alg().from_ints(c[0], c[1], c[2], c[3]))
    }

    proptest! {
        #[test]
        fn norm_multiplicative(x in arb_quat(), y in arb_quat()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert_eq!((&x * &y).trace(), (&y * &x).trace());
            prop_assert_eq!(x.conj(), x.one_like().scale(&x.trace()).sub(&x));
            prop_assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
        }

        #[test]
        fn definite(x in arb_quat()) {
            prop_assume!(!x.is_zero());
            prop_assert!(x.norm() > q(0));
        }

        #[test]
        fn associative(x in arb_quat(), y in arb_quat(), z in arb_quat()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn embedding_homomorphism(x in arb_quat(), y in arb_quat()) {
            let e = split_embed(&(&x * &y));
            prop_assert_eq!(e, split_embed(&x).try_mul(&split_embed(&y)).unwrap());
            let ex = split_embed(&x);
            prop_assert_eq!(ex.det_commutative().unwrap(), QuadElem::rational(-7, x.norm()));
            prop_assert_eq!(ex.trace(), QuadElem::rational(-7, x.trace()));
        }

        #[test]
        fn transport_identities_hold(seed in any::<u64>(), n in 1usize..=4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_integral_mat(&mut rng, alg(), n, 5);
            prop_assert_eq!(transport_identities(&x).unwrap(), (true, true));
        }
    }
}
