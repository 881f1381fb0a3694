//! Small numeric helpers over complex matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qalg::MatC;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn eye(n: usize) -> MatC {
    MatC::identity(n, n)
}

pub fn zeros(r: usize, c: usize) -> MatC {
    MatC::zeros(r, c)
}

pub fn max_abs(m: &MatC) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn conj(m: &MatC) -> MatC {
    m.map(|z| z.conj())
}

pub fn block_diag(blocks: &[&MatC]) -> MatC {
    let r: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cc: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = MatC::zeros(r, cc);
    let (mut ro, mut co) = (0, 0);
    for b in blocks {
        out.view_mut((ro, co), (b.nrows(), b.ncols())).copy_from(*b);
        ro += b.nrows();
        co += b.ncols();
    }
    out
}

pub fn vstack(top: &MatC, bottom: &MatC) -> MatC {
    let mut out = MatC::zeros(top.nrows() + bottom.nrows(), top.ncols());
    out.view_mut((0, 0), top.shape()).copy_from(top);
    out.view_mut((top.nrows(), 0), bottom.shape()).copy_from(bottom);
    out
}

/// J'_m = diag(J, ..., J), J = [[0,-1],[1,0]].
pub fn j_prime(m: usize) -> MatC {
    crate::qalg::j_prime_c(m)
}

/// Smallest singular value over the largest; 0 for a singular matrix.
pub fn inverse_condition(m: &MatC) -> f64 {
    if m.nrows() == 0 {
        return 1.0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        0.0
    } else {
        min / max
    }
}

/// Inverse, rejecting matrices whose condition number exceeds `max_cond`.
pub fn checked_inverse(m: &MatC, max_cond: f64, what: &str) -> Result<MatC> {
    let rc = inverse_condition(m);
    if rc * max_cond < 1.0 {
        return Err(Error::Boundary(format!("{what} is singular or ill-conditioned (1/cond = {rc:e})")));
    }
    m.clone().try_inverse().ok_or_else(|| Error::Boundary(format!("{what} is singular")))
}

/// Eigenvalues of the hermitian part (M + M*)/2, ascending.
pub fn hermitian_eigenvalues(m: &MatC) -> Vec<f64> {
    let h = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().cloned().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    ev
}

/// Leading principal minors of a complex matrix.
pub fn leading_minors(m: &MatC) -> Vec<Complex64> {
    (1..=m.nrows()).map(|k| m.view((0, 0), (k, k)).into_owned().determinant()).collect()
}

/// Orthonormal basis (as columns) of the null space of a real matrix,
/// via the eigen-decomposition of its Gram matrix.
pub fn real_nullspace(a: &DMatrix<f64>, rel_tol: f64) -> Vec<Vec<f64>> {
    let g = a.transpose() * a;
    let eig = SymmetricEigen::new(g);
    let scale = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(1.0);
    (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i].abs() <= rel_tol * scale)
        .map(|i| eig.eigenvectors.column(i).iter().cloned().collect())
        .collect()
}
