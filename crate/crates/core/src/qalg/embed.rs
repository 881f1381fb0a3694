use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::mat::Mat;
use super::quad::QuadElem;
use super::quat::{q, q_to_f64, Quat, QuatAlgebra, Q};
use super::ring::Ring;
use crate::error::{Error, Result};

pub type MatQuat = Mat<Quat>;
pub type MatQuad = Mat<QuadElem>;
pub type MatC = DMatrix<Complex64>;

fn quad(alg: QuatAlgebra, p: Q, qq: Q) -> QuadElem {
    QuadElem::new(alg.beta(), p, qq)
}

/// The splitting embedding into M_2(Q(sqrt(beta))):
/// a + b zeta + c xi + d zeta xi  |->  [[a + c xi, alpha (b - d xi)], [b + d xi, a - c xi]].
pub fn split_embed(x: &Quat) -> MatQuad {
    let alg = x.algebra();
    let [a, b, c, d] = x.coords();
    let al = q(alg.alpha());
    let z = quad(alg, Q::zero(), Q::zero());
    Mat::from_rows(
        vec![
            vec![quad(alg, a.clone(), c.clone()), quad(alg, &al * b, -(&al * d))],
            vec![quad(alg, b.clone(), d.clone()), quad(alg, a.clone(), -c)],
        ],
        &z,
    )
    .expect("2x2 shape")
}

/// Entrywise splitting embedding of a square quaternion matrix into 2n x 2n.
pub fn mat_split_embed(x: &MatQuat) -> Result<MatQuad> {
    if !x.is_square() {
        return Err(Error::Shape("splitting embedding needs a square matrix".into()));
    }
    let alg = x.zero_elem().algebra();
    let n = x.rows();
    let z = quad(alg, Q::zero(), Q::zero());
    let mut out = Mat::zeros(2 * n, 2 * n, &z);
    for i in 0..n {
        for j in 0..n {
            out.set_block(2 * i, 2 * j, &split_embed(x.get(i, j)));
        }
    }
    Ok(out)
}

/// I'_n = diag(I, ..., I) with I = diag(-alpha, 1).
pub fn i_prime(n: usize, alg: QuatAlgebra) -> MatQuad {
    let z = quad(alg, Q::zero(), Q::zero());
    let mut m = Mat::zeros(2 * n, 2 * n, &z);
    for i in 0..n {
        m.set(2 * i, 2 * i, quad(alg, q(-alg.alpha()), Q::zero()));
        m.set(2 * i + 1, 2 * i + 1, z.one_like());
    }
    m
}

/// J'_n = diag(J, ..., J) with J = [[0, -1], [1, 0]].
pub fn j_prime(n: usize, alg: QuatAlgebra) -> MatQuad {
    let z = quad(alg, Q::zero(), Q::zero());
    let mut m = Mat::zeros(2 * n, 2 * n, &z);
    for i in 0..n {
        m.set(2 * i, 2 * i + 1, z.one_like().neg());
        m.set(2 * i + 1, 2 * i, z.one_like());
    }
    m
}

/// Residuals of the two conjugation-transport identities
/// i(X)* = I'^{-1} i(X*) I'  and  transpose(i(X)) = J'^{-1} i(X*) J'.
/// Returns whether each holds exactly.
pub fn transport_identities(x: &MatQuat) -> Result<(bool, bool)> {
    let alg = x.zero_elem().algebra();
    let n = x.rows();
    let ix = mat_split_embed(x)?;
    let ixs = mat_split_embed(&x.star())?;
    let ip = i_prime(n, alg);
    let jp = j_prime(n, alg);
    let lhs1 = ix.star();
    let rhs1 = Mat::product(&[&ip.inverse()?, &ixs, &ip])?;
    let lhs2 = ix.transpose();
    let rhs2 = Mat::product(&[&jp.inverse()?, &ixs, &jp])?;
    Ok((lhs1 == rhs1, lhs2 == rhs2))
}

/// Reduced determinant and reduced trace, i.e. det and trace of the split image.
pub fn reduced_det_trace(x: &MatQuat) -> Result<(Q, Q)> {
    let e = mat_split_embed(x)?;
    let det = e.det_commutative()?;
    let tr = e.trace();
    if !det.is_rational() || !tr.is_rational() {
        return Err(Error::Irrational(format!("det = {det:?}, trace = {tr:?}")));
    }
    Ok((det.parts().0.clone(), tr.parts().0.clone()))
}

pub fn reduced_det(x: &MatQuat) -> Result<Q> {
    Ok(reduced_det_trace(x)?.0)
}

/// Sum of the reduced traces of the diagonal entries.
pub fn reduced_trace(x: &MatQuat) -> Result<Q> {
    if !x.is_square() {
        return Err(Error::Shape("trace of a non-square matrix".into()));
    }
    Ok((0..x.rows()).fold(Q::zero(), |acc, i| acc + x.get(i, i).trace()))
}

/// lambda(tau, sigma) = 1/2 reduced trace of tau sigma.
pub fn lambda_pairing(tau: &MatQuat, sigma: &MatQuat) -> Result<Q> {
    let prod = tau.try_mul(sigma)?;
    Ok(reduced_trace(&prod)? / q(2))
}

/// Hamilton-normalized coordinates: zeta -> sqrt|alpha| i, xi -> sqrt|beta| j.
pub fn hamilton_coords(x: &Quat) -> [f64; 4] {
    let alg = x.algebra();
    let sa = (-(alg.alpha() as f64)).sqrt();
    let sb = (-(alg.beta() as f64)).sqrt();
    let [a, b, c, d] = x.coords();
    [q_to_f64(a), q_to_f64(b) * sa, q_to_f64(c) * sb, q_to_f64(d) * sa * sb]
}

/// Image of a Hamilton quaternion A + B i + C j + D k in M_2(C).
pub fn hamilton_block(h: [f64; 4]) -> [[Complex64; 2]; 2] {
    let [a, b, c, d] = h;
    [[Complex64::new(a, c), -Complex64::new(b, -d)], [Complex64::new(b, d), Complex64::new(a, -c)]]
}

/// Numeric embedding of a quaternion matrix into M_{2n}(C); the image
/// satisfies conj(x) J'_n = J'_n x and det equals the reduced norm.
pub fn real_embed(x: &MatQuat) -> MatC {
    let (r, c) = (x.rows(), x.cols());
    let mut out = MatC::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let b = hamilton_block(hamilton_coords(x.get(i, j)));
            for (u, row) in b.iter().enumerate() {
                for (v, val) in row.iter().enumerate() {
                    out[(2 * i + u, 2 * j + v)] = *val;
                }
            }
        }
    }
    out
}

/// Numeric J'_n.
pub fn j_prime_c(n: usize) -> MatC {
    let mut m = MatC::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(2 * i, 2 * i + 1)] = Complex64::new(-1.0, 0.0);
        m[(2 * i + 1, 2 * i)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Convert an exact split-field matrix to complex numbers using sqrt(beta) = i sqrt|beta|.
pub fn quad_to_c(m: &MatQuad) -> MatC {
    MatC::from_fn(m.rows(), m.cols(), |i, j| {
        let e = m.get(i, j);
        let (p, qq) = e.parts();
        let sb = (-(e.beta() as f64)).sqrt();
        Complex64::new(q_to_f64(p), q_to_f64(qq) * sb)
    })
}
