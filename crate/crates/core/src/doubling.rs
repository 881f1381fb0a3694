//! The doubling embeddings rho: G_n x G_n -> G_N and iota: Z x Z -> Z_N, N = 2n.
//!
//! The exact R lives over B in the (m, r, m, m, r, m) partition; its numeric
//! counterpart acts on the complex realization in the (2m, r, r, 2m) partition.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{offsets, GroupElement, SkewHermitianForm};
use crate::linalg::{block_diag, c, checked_inverse, eye, j_prime, max_abs, zeros, I};
use crate::qalg::{qf, Mat, MatC, MatQuat, QuatAlgebra, Ring};
use crate::symspace::{phi_inf, psi_inf, u0_z, Realization};
use crate::tol::Tolerances;

#[derive(Clone, Debug)]
pub struct DoublingContext {
    m: usize,
    r: usize,
    alg: QuatAlgebra,
    r_exact: MatQuat,
    r_exact_inv: MatQuat,
    omega: MatQuat,
    r_raw: MatC,
    r_raw_inv: MatC,
    r_tilde: MatC,
    r_tilde_inv: MatC,
    frak_j: MatC,
    s: MatC,
    source: Realization,
    target: Realization,
    max_cond: f64,
}

/// A(z1, z2) and B(z1, z2) with det B.
#[derive(Clone, Debug)]
pub struct StackedImage {
    pub a: MatC,
    pub b: MatC,
    pub det_b: Complex64,
}

/// Residuals of the three compatibility identities at one sample.
#[derive(Clone, Copy, Debug, Default, serde::Serialize)]
pub struct DoublingResiduals {
    /// |iota(g1 z1, g2 z2) - rho(g1, g2) iota(z1, z2)|
    pub equivariance: f64,
    /// relative residual of j(rho, iota) det B(z1,z2) = j(g1,z1) conj j(g2,z2) det B(g1 z1, g2 z2)
    pub factor: f64,
    /// relative residual of delta(iota) = |det B|^{-2} delta(z1) delta(z2)
    pub determinant: f64,
}

impl DoublingResiduals {
    pub fn max(&self) -> f64 {
        self.equivariance.max(self.factor).max(self.determinant)
    }
}

fn r_exact_matrix(m: usize, r: usize, alg: QuatAlgebra) -> MatQuat {
    let n = 2 * m + r;
    let sizes = [m, r, m, m, r, m];
    let o = offsets(&sizes);
    let zinv = alg.zeta().inv().expect("zeta is invertible");
    let mut x = Mat::zeros(2 * n, 2 * n, &alg.zero());
    let mut put = |i: usize, j: usize, v: &crate::qalg::Quat| {
        for k in 0..sizes[i] {
            x.set(o[i] + k, o[j] + k, v.clone());
        }
    };
    let one = alg.one();
    let half = alg.scalar(qf(1, 2));
    put(0, 0, &one);
    put(1, 1, &half);
    put(4, 1, &half.neg());
    put(3, 2, &one.neg());
    put(2, 3, &one);
    put(1, 4, &zinv.neg());
    put(4, 4, &zinv.neg());
    put(5, 5, &one);
    x
}

/// The unnormalized numeric R in the (2m, r, r, 2m, 2m, r, r, 2m) partition.
pub fn r_inf(m: usize, r: usize) -> MatC {
    let n = 2 * m + r;
    let sizes = [2 * m, r, r, 2 * m, 2 * m, r, r, 2 * m];
    let o = offsets(&sizes);
    let mut x = zeros(2 * n * 2, 2 * n * 2);
    let mut put = |i: usize, j: usize, v: f64| {
        for k in 0..sizes[i] {
            x[(o[i] + k, o[j] + k)] = c(v);
        }
    };
    put(0, 0, 1.0);
    put(1, 1, 0.5);
    put(1, 6, -1.0);
    put(2, 2, 0.5);
    put(2, 5, 1.0);
    put(3, 4, 1.0);
    put(4, 3, -1.0);
    put(5, 1, -0.5);
    put(5, 6, -1.0);
    put(6, 2, -0.5);
    put(6, 5, 1.0);
    put(7, 7, 1.0);
    x
}

/// The constant matrix frak J = [[J', 0, 0, 0], [0, 0, -1_r, 0], [0, 1_r, 0, 0], [0, 0, 0, J']].
pub fn frak_j(m: usize, r: usize) -> MatC {
    let n = 2 * m + r;
    let mut x = zeros(2 * n, 2 * n);
    let jp = j_prime(m);
    x.view_mut((0, 0), (2 * m, 2 * m)).copy_from(&jp);
    x.view_mut((2 * m + 2 * r, 2 * m + 2 * r), (2 * m, 2 * m)).copy_from(&jp);
    for i in 0..r {
        x[(2 * m + i, 2 * m + r + i)] = c(-1.0);
        x[(2 * m + r + i, 2 * m + i)] = c(1.0);
    }
    x
}

/// S = diag[1_{2m}, 1/2 1_{2r}, 1_{2m}].
pub fn s_matrix(m: usize, r: usize) -> MatC {
    let n = 2 * m + r;
    MatC::from_fn(2 * n, 2 * n, |i, j| {
        if i != j {
            c(0.0)
        } else if i >= 2 * m && i < 2 * m + 2 * r {
            c(0.5)
        } else {
            c(1.0)
        }
    })
}

fn sqrt_diag(d: &MatC, inverse: bool) -> MatC {
    MatC::from_fn(d.nrows(), d.ncols(), |i, j| {
        if i == j {
            let s = d[(i, i)].re.sqrt();
            c(if inverse { 1.0 / s } else { s })
        } else {
            c(0.0)
        }
    })
}

impl DoublingContext {
    /// Builds R over B and verifies R* omega R = J_{N/2} exactly, together with the numeric data.
    pub fn new(m: usize, r: usize, alg: QuatAlgebra) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("m must be at least 1".into()));
        }
        let n = 2 * m + r;
        let phi = SkewHermitianForm::standard(m, r, alg);
        let omega = Mat::block_diag(&[phi.matrix(), &phi.matrix().neg()], &alg.zero());
        let r_exact = r_exact_matrix(m, r, alg);
        let split = SkewHermitianForm::split(n, alg);
        let check = Mat::product(&[&r_exact.star(), &omega, &r_exact])?;
        if check != *split.matrix() {
            return Err(Error::IdentityFailure("R* omega R != J".into()));
        }
        let r_exact_inv = r_exact.inverse().map_err(|_| Error::IdentityFailure("R is not invertible".into()))?;

        let r_raw = r_inf(m, r);
        let r_raw_inv = checked_inverse(&r_raw, 1e12, "R")?;
        let s = s_matrix(m, r);
        let norm = block_diag(&[&sqrt_diag(&s, false), &sqrt_diag(&s, true)]);
        let r_tilde = &r_raw * checked_inverse(&norm, 1e12, "normalization")?;
        let r_tilde_inv = checked_inverse(&r_tilde, 1e12, "normalized R")?;

        let source = Realization::z(m, r);
        let kk = psi_inf(m, r);
        let k_target = r_tilde.transpose() * block_diag(&[&kk, &(-&kk)]) * &r_tilde;
        let target = Realization::custom(phi_inf(n, 0), k_target, u0_z(n, 0), eye(2 * n) * I)?;
        Ok(DoublingContext {
            m,
            r,
            alg,
            r_exact,
            r_exact_inv,
            omega,
            r_raw,
            r_raw_inv,
            r_tilde,
            r_tilde_inv,
            frak_j: frak_j(m, r),
            s,
            source,
            target,
            max_cond: Tolerances::default().max_cond,
        })
    }

    pub fn with_max_cond(mut self, max_cond: f64) -> Self {
        self.max_cond = max_cond;
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        2 * self.m + self.r
    }

    pub fn big_n(&self) -> usize {
        2 * self.n()
    }

    pub fn algebra(&self) -> QuatAlgebra {
        self.alg
    }

    pub fn r_exact(&self) -> &MatQuat {
        &self.r_exact
    }

    pub fn omega(&self) -> &MatQuat {
        &self.omega
    }

    pub fn r_numeric(&self) -> &MatC {
        &self.r_raw
    }

    pub fn r_normalized(&self) -> &MatC {
        &self.r_tilde
    }

    pub fn s(&self) -> &MatC {
        &self.s
    }

    pub fn frak_j(&self) -> &MatC {
        &self.frak_j
    }

    /// The realization Z_{m,r} of the factors.
    pub fn source(&self) -> &Realization {
        &self.source
    }

    /// The realization of Z_N carried by the image: H = phi_inf(n, 0), K = R~^T diag(K, -K) R~, u0 = 1.
    pub fn target(&self) -> &Realization {
        &self.target
    }

    /// The standard realization Z_{n,0}.
    pub fn standard_target(&self) -> Realization {
        Realization::z(self.n(), 0)
    }

    /// rho(g1, g2) = R^{-1} diag(g1, g2) R in G_N(J_{N/2}), exactly.
    pub fn rho(&self, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
        let phi = SkewHermitianForm::standard(self.m, self.r, self.alg);
        if *g1.form() != phi || *g2.form() != phi {
            return Err(Error::Shape("group elements do not match the doubling context".into()));
        }
        let d = Mat::block_diag(&[g1.mat(), g2.mat()], &self.alg.zero());
        let x = Mat::product(&[&self.r_exact_inv, &d, &self.r_exact])?;
        Ok(GroupElement::new_unchecked(SkewHermitianForm::split(self.n(), self.alg), x))
    }

    /// Numeric rho(g1, g2) = R~^{-1} diag(g1, g2) R~ for g1, g2 in the group of Z_{m,r}.
    pub fn rho_numeric(&self, g1: &MatC, g2: &MatC) -> Result<MatC> {
        let d = 2 * self.n();
        if g1.shape() != (d, d) || g2.shape() != (d, d) {
            return Err(Error::Shape(format!("group elements must be {d}x{d}")));
        }
        Ok(&self.r_tilde_inv * block_diag(&[g1, g2]) * &self.r_tilde)
    }

    fn stacked(&self, rinv: &MatC, z1: &MatC, z2: &MatC) -> Result<(MatC, MatC)> {
        let n = self.n();
        if z1.shape() != (n, n) || z2.shape() != (n, n) {
            return Err(Error::Shape(format!("points must be {n}x{n}")));
        }
        let u1 = self.source.u(z1);
        let u2 = &self.frak_j * self.source.u(z2).map(|x| x.conj());
        let big = rinv * block_diag(&[&u1, &u2]);
        let nn = 2 * n;
        Ok((big.rows(0, nn).into_owned(), big.rows(nn, nn).into_owned()))
    }

    fn check_w0(&self, z1: &MatC, z2: &MatC) -> Result<()> {
        let (m, r) = (self.m, self.r);
        if r == 0 {
            return Ok(());
        }
        let w1 = z1.view((2 * m, 2 * m), (r, r));
        let w2 = z2.view((2 * m, 2 * m), (r, r)).map(|x| x.conj());
        checked_inverse(&(eye(r) + w1 * w2), self.max_cond, "1 + w1 conj(w2)")?;
        Ok(())
    }

    /// A(z1, z2), B(z1, z2) from R~^{-1} diag[U(z1), frak J conj U(z2)].
    pub fn b_matrix(&self, z1: &MatC, z2: &MatC) -> Result<StackedImage> {
        self.check_w0(z1, z2)?;
        let (a, b) = self.stacked(&self.r_tilde_inv, z1, z2)?;
        let det_b = b.determinant();
        Ok(StackedImage { a, b, det_b })
    }

    /// iota(z1, z2) = A B^{-1}, normalized so that iota(z0, z0) = i 1_N and
    /// iota(g1 z1, g2 z2) = rho(g1, g2) iota(z1, z2).
    pub fn iota(&self, z1: &MatC, z2: &MatC) -> Result<MatC> {
        let st = self.b_matrix(z1, z2)?;
        Ok(st.a * checked_inverse(&st.b, self.max_cond, "B(z1, z2)")?)
    }

    /// A B^{-1} with the unnormalized R.
    pub fn iota_raw(&self, z1: &MatC, z2: &MatC) -> Result<MatC> {
        self.check_w0(z1, z2)?;
        let (a, b) = self.stacked(&self.r_raw_inv, z1, z2)?;
        Ok(a * checked_inverse(&b, self.max_cond, "B(z1, z2)")?)
    }

    /// A B^{-1} S with the unnormalized R; agrees with [`Self::iota`] when r = 0.
    pub fn iota_display(&self, z1: &MatC, z2: &MatC) -> Result<MatC> {
        Ok(self.iota_raw(z1, z2)? * &self.s)
    }

    /// The explicit block formula in u_i, v_i, w_i and w0 = (1 + w1 conj w2)^{-1}.
    pub fn iota_closed_form(&self, z1: &MatC, z2: &MatC) -> Result<MatC> {
        self.check_w0(z1, z2)?;
        let (m, r) = (self.m, self.r);
        let parts = |z: &MatC| {
            (
                z.view((0, 0), (2 * m, 2 * m)).into_owned(),
                z.view((0, 2 * m), (2 * m, r)).into_owned(),
                z.view((2 * m, 2 * m), (r, r)).into_owned(),
            )
        };
        let (u1, v1, w1) = parts(z1);
        let (u2, v2, w2) = parts(z2);
        let jm = j_prime(m);
        let w2b = w2.map(|x| x.conj());
        let v2b = v2.map(|x| x.conj());
        let v2s = v2.adjoint();
        if r == 0 {
            return Ok(block_diag(&[&u1, &(-u2.adjoint())]));
        }
        let mc = self.max_cond;
        let w0 = checked_inverse(&(eye(r) + &w1 * &w2b), mc, "1 + w1 conj(w2)")?;
        let w0p = eye(r) - &w1 * &w2b;
        let w1i = checked_inverse(&w1, mc, "w1")?;
        let jinv = checked_inverse(&jm, mc, "J'")?;
        let v1tj = v1.transpose() * &jm;
        let two = c(2.0);
        let blocks: [[MatC; 4]; 4] = [
            [
                &u1 - &v1 * &w2b * &w0 * &w1 * &v1tj,
                &v1 * &w1i * &w0 * &w1,
                -(&v1 * &w2b * &w0),
                -(&v1 * &w1i * &w0 * &w1 * &w2b * &v2s),
            ],
            [&w0 * &w1 * &v1tj * two, &w0 * &w1 * two, &w0p * &w0, -(&w0 * &w1 * &w2b * &v2s * two)],
            [
                -(&w2b * &w0 * &w1 * &v1tj * two),
                &w1i * &w0p * &w0 * &w1,
                -(&w2b * &w0 * two),
                -(&w1i * &w0 * &w1 * &w2b * &v2s * two),
            ],
            [
                -(&jm * &v2b * &w0 * &w1 * &v1tj),
                -(&jm * &v2b * &w0 * &w1),
                -(&jm * &v2b * &w0),
                -(&jm * u2.map(|x| x.conj()) * &jinv) + &jm * &v2b * &w0 * &w1 * &w2b * &v2s,
            ],
        ];
        let sizes = [2 * m, r, r, 2 * m];
        let o = offsets(&sizes);
        let big = 2 * self.n();
        let mut out = zeros(big, big);
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                out.view_mut((o[i], o[j]), (sizes[i], sizes[j])).copy_from(b);
            }
        }
        Ok(out)
    }

    /// The r = 1 display, where w1 = w2 = i.
    pub fn iota_r1_display(&self, z1: &MatC, z2: &MatC) -> Result<MatC> {
        if self.r != 1 {
            return Err(Error::Precondition("the r = 1 formula needs r = 1".into()));
        }
        let m = self.m;
        let u1 = z1.view((0, 0), (2 * m, 2 * m)).into_owned();
        let v1 = z1.view((0, 2 * m), (2 * m, 1)).into_owned();
        let u2 = z2.view((0, 0), (2 * m, 2 * m)).into_owned();
        let v2 = z2.view((0, 2 * m), (2 * m, 1)).into_owned();
        let jm = j_prime(m);
        let v1tj = v1.transpose() * &jm;
        let jv2b = &jm * v2.map(|x| x.conj());
        let v2s = v2.adjoint();
        let h = c(0.5);
        let blocks: [[MatC; 4]; 4] = [
            [&u1 - &v1 * &v1tj * h, &v1 * h, &v1 * (I * 0.5), &v1 * &v2s * (I * 0.5)],
            [&v1tj * I, eye(1) * I, zeros(1, 1), -v2s.clone()],
            [-v1tj.clone(), zeros(1, 1), eye(1) * I, &v2s * I],
            [-(&jv2b * &v1tj * (I * 0.5)), -(&jv2b * (I * 0.5)), -(&jv2b * h), -u2.adjoint() - &jv2b * &v2s * h],
        ];
        let sizes = [2 * m, 1, 1, 2 * m];
        let o = offsets(&sizes);
        let big = 2 * self.n();
        let mut out = zeros(big, big);
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                out.view_mut((o[i], o[j]), (sizes[i], sizes[j])).copy_from(b);
            }
        }
        Ok(out)
    }

    /// Residuals of the three compatibility identities at (g1, g2, z1, z2).
    pub fn residuals(&self, g1: &MatC, g2: &MatC, z1: &MatC, z2: &MatC) -> Result<DoublingResiduals> {
        let mc = self.max_cond;
        let src = &self.source;
        let tgt = &self.target;
        let (g1z1, a1) = src.act_unchecked(g1, z1, mc)?;
        let (g2z2, a2) = src.act_unchecked(g2, z2, mc)?;
        let rho = self.rho_numeric(g1, g2)?;
        let iz = self.iota(z1, z2)?;
        let lhs = self.iota(&g1z1, &g2z2)?;
        let (rhs, ar) = tgt.act_unchecked(&rho, &iz, mc)?;
        let equivariance = max_abs(&(lhs - rhs));

        let b0 = self.b_matrix(z1, z2)?.det_b;
        let b1 = self.b_matrix(&g1z1, &g2z2)?.det_b;
        let fl = ar.j * b0;
        let fr = a1.j * a2.j.conj() * b1;
        let factor = (fl - fr).norm() / fr.norm();

        let d_iota = tgt.eta_delta(&iz, &iz)?.delta;
        let d1 = src.eta_delta(z1, z1)?.delta;
        let d2 = src.eta_delta(z2, z2)?.delta;
        let dr = d1 * d2 / (b0.norm_sqr());
        let determinant = (d_iota - dr).norm() / dr.norm();
        Ok(DoublingResiduals { equivariance, factor, determinant })
    }
}

/// R* omega R = J_{N/2}, recomputed exactly.
pub fn r_identity_holds(m: usize, r: usize, alg: QuatAlgebra) -> Result<bool> {
    let ctx = DoublingContext::new(m, r, alg)?;
    let lhs = Mat::product(&[&ctx.r_exact.star(), &ctx.omega, &ctx.r_exact])?;
    Ok(lhs == *SkewHermitianForm::split(ctx.n(), alg).matrix())
}
