//! Realizations of the type D symmetric space attached to G(R): the working
//! model Z_{m,r}, the unbounded model H_n and the bounded model B_n.
//!
//! A realization is fixed by hermitian H, symmetric K and a base block u0:
//! z lies in the domain when U(z) = [z; u0] satisfies -i U* H U > 0 and
//! U^T K U = 0, and g acts by g z = (a z + b u0)(c z + d u0)^{-1} u0.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, checked_inverse, eye, hermitian_eigenvalues, j_prime, max_abs, vstack, zeros, I};
use crate::qalg::MatC;
use crate::tol::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RealizationTag {
    Z,
    H,
    B,
    Custom,
}

#[derive(Clone, Debug)]
pub struct Realization {
    tag: RealizationTag,
    m: usize,
    r: usize,
    n: usize,
    h: MatC,
    k: MatC,
    u0: MatC,
    u0_inv: MatC,
    origin: MatC,
    lie: OnceLock<Vec<MatC>>,
    stabilizer: OnceLock<Vec<MatC>>,
}

/// lambda(g, z) and j(g, z) = det lambda.
#[derive(Clone, Debug)]
pub struct AutomorphyData {
    pub lambda: MatC,
    pub j: Complex64,
}

/// eta(z1, z2) and delta = det eta.
#[derive(Clone, Debug)]
pub struct PairingData {
    pub eta: MatC,
    pub delta: Complex64,
}

/// Residuals behind a membership decision.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    /// max |U^T K U|
    pub quadric_residual: f64,
    /// max |P - P*| for P = -i U* H U
    pub hermitian_residual: f64,
    /// smallest eigenvalue of P
    pub min_eigenvalue: f64,
    pub member: bool,
}

/// phi_inf in blocks (2m, r, r, 2m): [[0,0,0,-1],[0,0,-1,0],[0,1,0,0],[1,0,0,0]].
pub fn phi_inf(m: usize, r: usize) -> MatC {
    let n = 2 * m + r;
    let mut p = zeros(2 * n, 2 * n);
    let o = [0, 2 * m, 2 * m + r, 2 * m + 2 * r, 4 * m + 2 * r];
    for i in 0..2 * m {
        p[(o[0] + i, o[3] + i)] = c(-1.0);
        p[(o[3] + i, o[0] + i)] = c(1.0);
    }
    for i in 0..r {
        p[(o[1] + i, o[2] + i)] = c(-1.0);
        p[(o[2] + i, o[1] + i)] = c(1.0);
    }
    p
}

/// psi_inf in blocks (2m, r, r, 2m): [[0,0,0,J'],[0,1,0,0],[0,0,1,0],[-J',0,0,0]].
pub fn psi_inf(m: usize, r: usize) -> MatC {
    let n = 2 * m + r;
    let mut p = zeros(2 * n, 2 * n);
    let o = [0, 2 * m, 2 * m + r, 2 * m + 2 * r];
    let jp = j_prime(m);
    p.view_mut((o[0], o[3]), (2 * m, 2 * m)).copy_from(&jp);
    p.view_mut((o[3], o[0]), (2 * m, 2 * m)).copy_from(&(-&jp));
    for i in 0..r {
        p[(o[1] + i, o[1] + i)] = c(1.0);
        p[(o[2] + i, o[2] + i)] = c(1.0);
    }
    p
}

/// u0 = [[0, 1_r], [1_{2m}, 0]].
pub fn u0_z(m: usize, r: usize) -> MatC {
    let n = 2 * m + r;
    let mut u = zeros(n, n);
    for i in 0..r {
        u[(i, 2 * m + i)] = c(1.0);
    }
    for i in 0..2 * m {
        u[(r + i, i)] = c(1.0);
    }
    u
}

/// The Cayley matrix C = (1/sqrt 2) [[1, -i], [1, i]] (n-blocks), sending H_n to B_n.
pub fn cayley_matrix(n: usize) -> MatC {
    let s = 1.0 / 2f64.sqrt();
    let mut m = zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, i)] = c(s);
        m[(i, n + i)] = -I * s;
        m[(n + i, i)] = c(s);
        m[(n + i, n + i)] = I * s;
    }
    m
}

impl Realization {
    /// The working model Z_{m,r}, n = 2m + r, with origin i 1_n.
    pub fn z(m: usize, r: usize) -> Self {
        let n = 2 * m + r;
        let u0 = u0_z(m, r);
        let u0_inv = u0.transpose();
        Realization {
            tag: RealizationTag::Z,
            m,
            r,
            n,
            h: phi_inf(m, r),
            k: psi_inf(m, r),
            u0,
            u0_inv,
            origin: eye(n) * I,
            lie: OnceLock::new(),
            stabilizer: OnceLock::new(),
        }
    }

    /// The unbounded model H_n = { z : z^T z + 1 = 0, i(z* - z) > 0 } with origin i 1_n.
    pub fn h(n: usize) -> Self {
        let mut h = zeros(2 * n, 2 * n);
        for i in 0..n {
            h[(i, n + i)] = c(-1.0);
            h[(n + i, i)] = c(1.0);
        }
        Realization {
            tag: RealizationTag::H,
            m: 0,
            r: 0,
            n,
            h,
            k: eye(2 * n),
            u0: eye(n),
            u0_inv: eye(n),
            origin: eye(n) * I,
            lie: OnceLock::new(),
            stabilizer: OnceLock::new(),
        }
    }

    /// The bounded model B_n = { z : z^T = -z, z z* < 1 } with origin 0.
    pub fn b(n: usize) -> Self {
        let mut h = zeros(2 * n, 2 * n);
        let mut k = zeros(2 * n, 2 * n);
        for i in 0..n {
            h[(i, i)] = -I;
            h[(n + i, n + i)] = I;
            k[(i, n + i)] = c(1.0);
            k[(n + i, i)] = c(1.0);
        }
        Realization {
            tag: RealizationTag::B,
            m: 0,
            r: 0,
            n,
            h,
            k,
            u0: eye(n),
            u0_inv: eye(n),
            origin: zeros(n, n),
            lie: OnceLock::new(),
            stabilizer: OnceLock::new(),
        }
    }

    /// A realization from explicit (H, K, u0) data and a chosen origin.
    pub fn custom(h: MatC, k: MatC, u0: MatC, origin: MatC) -> Result<Self> {
        let n = u0.nrows();
        if h.shape() != (2 * n, 2 * n) || k.shape() != (2 * n, 2 * n) || origin.shape() != (n, n) {
            return Err(Error::Shape("H, K must be 2n x 2n and u0, origin n x n".into()));
        }
        let u0_inv = checked_inverse(&u0, 1e12, "u0")?;
        Ok(Realization {
            tag: RealizationTag::Custom,
            m: 0,
            r: 0,
            n,
            h,
            k,
            u0,
            u0_inv,
            origin,
            lie: OnceLock::new(),
            stabilizer: OnceLock::new(),
        })
    }

    pub fn tag(&self) -> RealizationTag {
        self.tag
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn h_form(&self) -> &MatC {
        &self.h
    }

    pub fn k_form(&self) -> &MatC {
        &self.k
    }

    pub fn u0(&self) -> &MatC {
        &self.u0
    }

    pub fn origin(&self) -> &MatC {
        &self.origin
    }

    /// U(z) = [z; u0].
    pub fn u(&self, z: &MatC) -> MatC {
        vstack(z, &self.u0)
    }

    fn check_shape(&self, z: &MatC) -> Result<()> {
        if z.shape() != (self.n, self.n) {
            return Err(Error::Shape(format!("point must be {0}x{0}", self.n)));
        }
        Ok(())
    }

    /// -i U(z1)* H U(z2), the positive form of the realization.
    pub fn omega_pairing(&self, z1: &MatC, z2: &MatC) -> MatC {
        (self.u(z1).adjoint() * &self.h * self.u(z2)) * (-I)
    }

    /// eta(z1, z2): i(z1* - z2) on Z and H, i(z1* z2 - 1) on B.
    pub fn eta(&self, z1: &MatC, z2: &MatC) -> MatC {
        let p = self.omega_pairing(z1, z2);
        match self.tag {
            RealizationTag::B => p * (-I),
            _ => p,
        }
    }

    pub fn eta_delta(&self, z1: &MatC, z2: &MatC) -> Result<PairingData> {
        self.check_shape(z1)?;
        self.check_shape(z2)?;
        let eta = self.eta(z1, z2);
        let delta = eta.determinant();
        Ok(PairingData { eta, delta })
    }

    pub fn membership_report(&self, z: &MatC, tol: &Tolerances) -> Result<MembershipReport> {
        self.check_shape(z)?;
        let u = self.u(z);
        let quadric_residual = max_abs(&(u.transpose() * &self.k * &u));
        let p = self.omega_pairing(z, z);
        let hermitian_residual = max_abs(&(&p - p.adjoint()));
        let min_eigenvalue = hermitian_eigenvalues(&p)[0];
        let member = quadric_residual <= tol.eq && hermitian_residual <= tol.eq && min_eigenvalue > tol.pos;
        Ok(MembershipReport { quadric_residual, hermitian_residual, min_eigenvalue, member })
    }

    pub fn contains(&self, z: &MatC, tol: &Tolerances) -> Result<bool> {
        Ok(self.membership_report(z, tol)?.member)
    }

    /// max(|g* H g - H|, |g^T K g - K|).
    pub fn group_residual(&self, g: &MatC) -> f64 {
        let a = max_abs(&(g.adjoint() * &self.h * g - &self.h));
        let b = max_abs(&(g.transpose() * &self.k * g - &self.k));
        a.max(b)
    }

    /// g z = (a z + b u0)(c z + d u0)^{-1} u0 and lambda(g, z) = u0^{-1}(c z + d u0).
    pub fn act(&self, g: &MatC, z: &MatC, tol: &Tolerances) -> Result<(MatC, AutomorphyData)> {
        self.check_shape(z)?;
        if g.shape() != (2 * self.n, 2 * self.n) {
            return Err(Error::Shape("group element must be 2n x 2n".into()));
        }
        let res = self.group_residual(g);
        let scale = 1.0 + max_abs(g).powi(2);
        if res > tol.eq * scale {
            return Err(Error::NotInGroup(format!("defining relations fail by {res:e}")));
        }
        Ok(self.act_unchecked(g, z, tol.max_cond)?)
    }

    pub(crate) fn act_unchecked(&self, g: &MatC, z: &MatC, max_cond: f64) -> Result<(MatC, AutomorphyData)> {
        let n = self.n;
        let a = g.view((0, 0), (n, n));
        let b = g.view((0, n), (n, n));
        let cc = g.view((n, 0), (n, n));
        let d = g.view((n, n), (n, n));
        let top = a * z + b * &self.u0;
        let bot = cc * z + d * &self.u0;
        let bot_inv = checked_inverse(&bot, max_cond, "c z + d u0")?;
        let gz = top * bot_inv * &self.u0;
        let lambda = &self.u0_inv * bot;
        let j = lambda.determinant();
        Ok((gz, AutomorphyData { lambda, j }))
    }

    /// Real basis of the Lie algebra { X : X* H + H X = 0, X^T K + K X = 0 }.
    pub fn lie_algebra_basis(&self) -> &[MatC] {
        self.lie.get_or_init(|| self.algebra_basis(false))
    }

    /// Real basis of the stabilizer subalgebra of the origin.
    pub fn stabilizer_algebra_basis(&self) -> &[MatC] {
        self.stabilizer.get_or_init(|| self.algebra_basis(true))
    }

    fn algebra_basis(&self, stabilizer: bool) -> Vec<MatC> {
        let d = 2 * self.n;
        let n = self.n;
        let unknowns = 2 * d * d;
        let unit = |k: usize| -> MatC {
            let mut x = zeros(d, d);
            let idx = k / 2;
            x[(idx / d, idx % d)] = if k % 2 == 0 { c(1.0) } else { I };
            x
        };
        let constraint = |x: &MatC| -> Vec<f64> {
            let a = x.adjoint() * &self.h + &self.h * x;
            let b = x.transpose() * &self.k + &self.k * x;
            let mut out: Vec<f64> = Vec::new();
            for m in [&a, &b] {
                out.extend(m.iter().map(|z| z.re));
                out.extend(m.iter().map(|z| z.im));
            }
            if stabilizer {
                let z0 = &self.origin;
                let xa = x.view((0, 0), (n, n));
                let xb = x.view((0, n), (n, n));
                let xc = x.view((n, 0), (n, n));
                let xd = x.view((n, n), (n, n));
                let t = xa * z0 + xb * &self.u0 - z0 * &self.u0_inv * (xc * z0 + xd * &self.u0);
                out.extend(t.iter().map(|z| z.re));
                out.extend(t.iter().map(|z| z.im));
            }
            out
        };
        let cols: Vec<Vec<f64>> = (0..unknowns).map(|k| constraint(&unit(k))).collect();
        let rows = cols[0].len();
        let a = DMatrix::from_fn(rows, unknowns, |i, j| cols[j][i]);
        crate::linalg::real_nullspace(&a, 1e-10)
            .into_iter()
            .map(|v| {
                let mut x = zeros(d, d);
                for (k, coef) in v.iter().enumerate() {
                    let idx = k / 2;
                    let e = if k % 2 == 0 { c(*coef) } else { I * *coef };
                    x[(idx / d, idx % d)] += e;
                }
                x
            })
            .collect()
    }

    /// exp of a Gaussian combination of a Lie algebra basis.
    pub fn random_from_basis<R: Rng + ?Sized>(basis: &[MatC], rng: &mut R, scale: f64) -> MatC {
        let d = basis[0].nrows();
        let mut x = zeros(d, d);
        for b in basis {
            let t: f64 = rng.sample(StandardNormal);
            x += b * c(t * scale);
        }
        x.exp()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, scale: f64) -> MatC {
        Self::random_from_basis(self.lie_algebra_basis(), rng, scale)
    }

    /// Random point g z0 for a random group element g.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R, scale: f64) -> Result<MatC> {
        let g = self.random_element(rng, scale);
        Ok(self.act_unchecked(&g, &self.origin, 1e12)?.0)
    }
}

/// Residuals of the explicit description of Z_{m,r}: with z = [[u, v], [x, w]],
/// x = w v^T J', w^T w + 1 = 0 and u J' + v v^T - J' u^T = 0.
pub fn z_block_residuals(m: usize, r: usize, z: &MatC) -> [f64; 3] {
    let u = z.view((0, 0), (2 * m, 2 * m)).into_owned();
    let v = z.view((0, 2 * m), (2 * m, r)).into_owned();
    let x = z.view((2 * m, 0), (r, 2 * m)).into_owned();
    let w = z.view((2 * m, 2 * m), (r, r)).into_owned();
    let jp = j_prime(m);
    let r1 = max_abs(&(&x - &w * v.transpose() * &jp));
    let r2 = max_abs(&(w.transpose() * &w + eye(r)));
    let r3 = max_abs(&(&u * &jp + &v * v.transpose() - &jp * u.transpose()));
    [r1, r2, r3]
}

/// Cayley transform H_n -> B_n, z |-> (z - i)(z + i)^{-1}.
pub fn cayley(z: &MatC) -> Result<MatC> {
    let n = z.nrows();
    let inv = checked_inverse(&(z + eye(n) * I), 1e12, "z + i")?;
    Ok((z - eye(n) * I) * inv)
}

/// Inverse Cayley transform B_n -> H_n, w |-> i (1 - w)^{-1} (1 + w).
pub fn cayley_inverse(w: &MatC) -> Result<MatC> {
    let n = w.nrows();
    let inv = checked_inverse(&(eye(n) - w), 1e12, "1 - w")?;
    Ok(inv * (eye(n) + w) * I)
}

/// The comparison map between two realizations: R [z; u01] = [rho(z); u02] mu(z).
/// Returns (rho(z), mu(z)). R must satisfy R* H2 R = H1 and R^T K2 R = K1.
pub fn realization_map(
    rmat: &MatC,
    from: &Realization,
    to: &Realization,
    z: &MatC,
    tol: &Tolerances,
) -> Result<(MatC, MatC)> {
    if from.n != to.n || rmat.shape() != (2 * from.n, 2 * from.n) {
        return Err(Error::Shape("realizations of different sizes".into()));
    }
    let hres = max_abs(&(rmat.adjoint() * &to.h * rmat - &from.h));
    let kres = max_abs(&(rmat.transpose() * &to.k * rmat - &from.k));
    if hres > tol.eq || kres > tol.eq {
        return Err(Error::Precondition(format!(
            "R does not intertwine the forms (H residual {hres:e}, K residual {kres:e})"
        )));
    }
    realization_map_unchecked(rmat, from, to, z, tol.max_cond)
}

pub(crate) fn realization_map_unchecked(
    rmat: &MatC,
    from: &Realization,
    to: &Realization,
    z: &MatC,
    max_cond: f64,
) -> Result<(MatC, MatC)> {
    let n = from.n;
    let img = rmat * from.u(z);
    let x = img.view((0, 0), (n, n)).into_owned();
    let y = img.view((n, 0), (n, n)).into_owned();
    let mu = &to.u0_inv * y;
    let mu_inv = checked_inverse(&mu, max_cond, "bottom block of R U(z)")?;
    Ok((x * mu_inv, mu))
}

/// Conjugate a group element across a comparison map: rho(g) = R g R^{-1}.
pub fn transport_group_element(rmat: &MatC, g: &MatC) -> Result<MatC> {
    let rinv = checked_inverse(rmat, 1e12, "R")?;
    Ok(rmat * g * rinv)
}

/// Density |delta(z)|^{-(n-1)} of the invariant measure on B_n.
pub fn measure_density(z: &MatC, tol: &Tolerances) -> Result<f64> {
    let n = z.nrows();
    let b = Realization::b(n);
    let rep = b.membership_report(z, tol)?;
    if !rep.member {
        return Err(Error::NotInDomain(format!("min eigenvalue {:e}", rep.min_eigenvalue)));
    }
    let delta = b.eta_delta(z, z)?.delta.norm();
    if delta <= tol.pos {
        return Err(Error::Boundary(format!("delta(z) = {delta:e}")));
    }
    Ok(delta.powi(-(n as i32 - 1)))
}

/// The density transported to H_n through the Cayley transform, evaluated at the image point.
pub fn measure_density_via_cayley(z: &MatC, tol: &Tolerances) -> Result<f64> {
    measure_density(&cayley(z)?, tol)
}

/// Complex Jacobian of z |-> g z on B_n in the coordinates z_{hk}, h < k, by central differences.
pub fn b_action_jacobian(g: &MatC, z: &MatC, step: f64) -> Result<DMatrix<Complex64>> {
    let n = z.nrows();
    let b = Realization::b(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|h| (h + 1..n).map(move |k| (h, k))).collect();
    let mut jac = DMatrix::zeros(pairs.len(), pairs.len());
    for (col, &(h, k)) in pairs.iter().enumerate() {
        let mut e = zeros(n, n);
        e[(h, k)] = c(step);
        e[(k, h)] = c(-step);
        let plus = b.act_unchecked(g, &(z + &e), 1e12)?.0;
        let minus = b.act_unchecked(g, &(z - &e), 1e12)?.0;
        let d = (plus - minus) / c(2.0 * step);
        for (row, &(p, q)) in pairs.iter().enumerate() {
            jac[(row, col)] = d[(p, q)];
        }
    }
    Ok(jac)
}

/// Serialized point: realization tag, (m, r) for Z, and a row-major complex matrix.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DomainPoint {
    pub realization: RealizationTag,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub r: usize,
    pub z: Vec<Vec<[f64; 2]>>,
}

pub fn matc_to_rows(m: &MatC) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

pub fn matc_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<MatC> {
    let r = rows.len();
    let cc = rows.first().map_or(0, |x| x.len());
    if rows.iter().any(|x| x.len() != cc) {
        return Err(Error::Shape("ragged rows".into()));
    }
    Ok(MatC::from_fn(r, cc, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

impl DomainPoint {
    pub fn new(real: &Realization, z: &MatC) -> Self {
        DomainPoint { realization: real.tag, m: real.m, r: real.r, z: matc_to_rows(z) }
    }

    pub fn matrix(&self) -> Result<MatC> {
        matc_from_rows(&self.z)
    }

    pub fn realization(&self) -> Result<Realization> {
        let n = self.z.len();
        match self.realization {
            RealizationTag::Z => {
                if 2 * self.m + self.r != n {
                    return Err(Error::Shape("2m + r must equal the point size".into()));
                }
                Ok(Realization::z(self.m, self.r))
            }
            RealizationTag::H => Ok(Realization::h(n)),
            RealizationTag::B => Ok(Realization::b(n)),
            RealizationTag::Custom => Err(Error::Precondition("custom realizations are not serializable".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn lie_dimensions() {
        for (m, r) in [(1, 0), (1, 1), (2, 0), (1, 2)] {
            let n = 2 * m + r;
            let z = Realization::z(m, r);
            assert_eq!(z.lie_algebra_basis().len(), n * (2 * n - 1), "(m,r)=({m},{r})");
            assert_eq!(z.stabilizer_algebra_basis().len(), n * n);
        }
        for n in 1..=3 {
            assert_eq!(Realization::h(n).lie_algebra_basis().len(), n * (2 * n - 1));
            assert_eq!(Realization::b(n).lie_algebra_basis().len(), n * (2 * n - 1));
        }
    }

    #[test]
    fn origins_and_examples() {
        for (m, r) in [(1, 0), (1, 1), (2, 1)] {
            let z = Realization::z(m, r);
            let n = z.n();
            assert!(z.contains(z.origin(), &tol()).unwrap());
            let eta = z.eta_delta(z.origin(), z.origin()).unwrap();
            assert!(max_abs(&(eta.eta - eye(n) * c(2.0))) < 1e-15);
            assert!((eta.delta - c(2f64.powi(n as i32))).norm() < 1e-12);
        }
        let b = Realization::b(2);
        assert!(b.contains(&zeros(2, 2), &tol()).unwrap());
        let e = b.eta_delta(&zeros(2, 2), &zeros(2, 2)).unwrap();
        assert!(max_abs(&(e.eta + eye(2) * I)) < 1e-15);
        let h = Realization::h(2);
        assert!(!h.contains(&(eye(2) * I * c(2.0)), &tol()).unwrap());
        let e = h.eta_delta(h.origin(), h.origin()).unwrap();
        assert!(max_abs(&(e.eta - eye(2) * c(2.0))) < 1e-15);
    }

    #[test]
    fn explicit_z_description_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, r) in [(1, 1), (1, 2), (2, 1)] {
            let real = Realization::z(m, r);
            for _ in 0..5 {
                let z = real.random_point(&mut rng, 0.5).unwrap();
                assert!(real.contains(&z, &tol()).unwrap());
                let res = z_block_residuals(m, r, &z);
                assert!(res.iter().all(|x| *x < 1e-9), "{res:?}");
            }
        }
    }

    #[test]
    fn action_identity_and_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for real in [Realization::z(1, 1), Realization::h(3), Realization::b(3)] {
            let n = real.n();
            let z = real.random_point(&mut rng, 0.5).unwrap();
            let (gz, aut) = real.act(&eye(2 * n), &z, &tol()).unwrap();
            assert!(max_abs(&(gz - &z)) < 1e-14);
            assert!((aut.j - c(1.0)).norm() < 1e-14);
            let g1 = real.random_element(&mut rng, 0.4);
            let g2 = real.random_element(&mut rng, 0.4);
            let (g2z, l2) = real.act(&g2, &z, &tol()).unwrap();
            let (_, l1) = real.act(&g1, &g2z, &tol()).unwrap();
            let (_, l12) = real.act(&(&g1 * &g2), &z, &tol()).unwrap();
            assert!(max_abs(&(l12.lambda - l1.lambda * l2.lambda)) < 1e-8);
        }
    }

    #[test]
    fn stabilizer_gives_unitary_lambda() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for real in [Realization::z(1, 1), Realization::h(2), Realization::b(3)] {
            let n = real.n();
            let basis = real.stabilizer_algebra_basis();
            let k = Realization::random_from_basis(basis, &mut rng, 0.7);
            let (kz, aut) = real.act(&k, real.origin(), &tol()).unwrap();
            assert!(max_abs(&(kz - real.origin())) < 1e-10);
            assert!(max_abs(&(aut.lambda.adjoint() * &aut.lambda - eye(n))) < 1e-8);
        }
    }

    #[test]
    fn cayley_matches_comparison_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let n = 3;
        let (h, b) = (Realization::h(n), Realization::b(n));
        let cm = cayley_matrix(n);
        for _ in 0..5 {
            let z = h.random_point(&mut rng, 0.5).unwrap();
            let w = cayley(&z).unwrap();
            assert!(b.contains(&w, &tol()).unwrap());
            assert!(max_abs(&(w.transpose() + &w)) < 1e-9);
            assert!(max_abs(&(cayley_inverse(&w).unwrap() - &z)) < 1e-10);
            let (w2, _) = realization_map(&cm, &h, &b, &z, &tol()).unwrap();
            assert!(max_abs(&(w2 - &w)) < 1e-10);
        }
        let (o, _) = realization_map(&cm, &h, &b, h.origin(), &tol()).unwrap();
        assert!(max_abs(&o) < 1e-15);
    }

    #[test]
    fn density_examples() {
        assert_eq!(measure_density(&zeros(2, 2), &tol()).unwrap(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b1 = Realization::b(1);
        let z = b1.random_point(&mut rng, 0.5).unwrap();
        assert_eq!(measure_density(&z, &tol()).unwrap(), 1.0);
    }
}
