//! Quaternionic unitary groups G(phi) = { g : g* phi g = phi, reduced det g = 1 },
//! their Klingen parabolics, congruence conditions and doubling coset representatives.

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::doubling::DoublingContext;
use crate::error::{Error, Result};
use crate::qalg::{
    mat_from_json, mat_to_json, q, qf, random_integral_quat, reduced_det, Mat, MatQuat, MatQuatJson, Quat, QuatAlgebra,
    Ring,
};

/// Row/column offsets of a block partition.
pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    o.push(0);
    for s in sizes {
        acc += s;
        o.push(acc);
    }
    o
}

pub(crate) fn block(x: &MatQuat, sizes: &[usize], i: usize, j: usize) -> MatQuat {
    let o = offsets(sizes);
    x.submatrix(o[i], o[j], sizes[i], sizes[j])
}

pub(crate) fn put_block(x: &mut MatQuat, sizes: &[usize], i: usize, j: usize, b: &MatQuat) {
    let o = offsets(sizes);
    x.set_block(o[i], o[j], b);
}

fn scalar_mat(n: usize, s: &Quat) -> MatQuat {
    Mat::scalar(n, s)
}

/// The skew-hermitian form [[0,0,-1_m],[0,zeta 1_r,0],[1_m,0,0]] on B^n, n = 2m + r.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewHermitianForm {
    m: usize,
    r: usize,
    alg: QuatAlgebra,
    matrix: MatQuat,
}

impl SkewHermitianForm {
    pub fn standard(m: usize, r: usize, alg: QuatAlgebra) -> Self {
        let sizes = [m, r, m];
        let n = 2 * m + r;
        let mut phi = Mat::zeros(n, n, &alg.zero());
        put_block(&mut phi, &sizes, 0, 2, &scalar_mat(m, &alg.one()).neg());
        put_block(&mut phi, &sizes, 1, 1, &scalar_mat(r, &alg.zeta()));
        put_block(&mut phi, &sizes, 2, 0, &scalar_mat(m, &alg.one()));
        SkewHermitianForm { m, r, alg, matrix: phi }
    }

    /// J_{n} = [[0, -1_n], [1_n, 0]], the split form of size 2n.
    pub fn split(n: usize, alg: QuatAlgebra) -> Self {
        Self::standard(n, 0, alg)
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

    pub fn algebra(&self) -> QuatAlgebra {
        self.alg
    }

    pub fn matrix(&self) -> &MatQuat {
        &self.matrix
    }

    pub fn block_sizes(&self) -> [usize; 3] {
        [self.m, self.r, self.m]
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.matrix.star() == self.matrix.neg()
    }
}

/// True iff g* phi g = phi and the reduced determinant of g is 1, both exactly.
pub fn is_group_element(g: &MatQuat, form: &SkewHermitianForm) -> Result<bool> {
    let n = form.n();
    if g.rows() != n || g.cols() != n {
        return Err(Error::Shape(format!("{}x{} matrix against a form of size {n}", g.rows(), g.cols())));
    }
    let lhs = Mat::product(&[&g.star(), form.matrix(), g])?;
    if lhs != *form.matrix() {
        return Ok(false);
    }
    Ok(reduced_det(g)? == q(1))
}

/// A verified member of G(phi).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    form: SkewHermitianForm,
    mat: MatQuat,
}

impl GroupElement {
    pub fn new(form: SkewHermitianForm, mat: MatQuat) -> Result<Self> {
        if !is_group_element(&mat, &form)? {
            return Err(Error::NotInGroup("g* phi g != phi or reduced det != 1".into()));
        }
        Ok(GroupElement { form, mat })
    }

    pub(crate) fn new_unchecked(form: SkewHermitianForm, mat: MatQuat) -> Self {
        GroupElement { form, mat }
    }

    pub fn identity(form: &SkewHermitianForm) -> Self {
        GroupElement { form: form.clone(), mat: Mat::identity(form.n(), &form.alg.zero()) }
    }

    pub fn form(&self) -> &SkewHermitianForm {
        &self.form
    }

    pub fn mat(&self) -> &MatQuat {
        &self.mat
    }

    pub fn mul(&self, o: &GroupElement) -> Result<GroupElement> {
        if self.form != o.form {
            return Err(Error::Shape("group elements of different forms".into()));
        }
        Ok(GroupElement { form: self.form.clone(), mat: self.mat.try_mul(&o.mat)? })
    }

    /// g^{-1} = phi^{-1} g* phi.
    pub fn inverse(&self) -> Result<GroupElement> {
        let phi = self.form.matrix();
        let mat = Mat::product(&[&phi.inverse()?, &self.mat.star(), phi])?;
        Ok(GroupElement { form: self.form.clone(), mat })
    }

    pub fn is_integral(&self) -> bool {
        self.mat.entries().all(|x| x.is_integral())
    }

    /// The (m, r, m) blocks [[a,b,c],[g,e,f],[h,l,d]].
    pub fn abc_blocks(&self) -> [[MatQuat; 3]; 3] {
        let s = self.form.block_sizes();
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| block(&self.mat, &s, i, j)))
    }
}

/// The Weyl-type element [[0,0,-1_m],[0,1_r,0],[1_m,0,0]]; for t = m this is kappa_m.
pub fn weyl_element(m: usize, r: usize, alg: QuatAlgebra) -> GroupElement {
    let form = SkewHermitianForm::standard(m, r, alg);
    let s = form.block_sizes();
    let mut w = Mat::zeros(form.n(), form.n(), &alg.zero());
    put_block(&mut w, &s, 0, 2, &scalar_mat(m, &alg.one()).neg());
    put_block(&mut w, &s, 1, 1, &scalar_mat(r, &alg.one()));
    put_block(&mut w, &s, 2, 0, &scalar_mat(m, &alg.one()));
    GroupElement::new_unchecked(form, w)
}

fn check_hermitian(s: &MatQuat) -> Result<()> {
    if !s.is_square() || s.star() != *s {
        return Err(Error::NotHermitian);
    }
    Ok(())
}

/// Siegel parabolic element [[q, sigma q^], [0, q^]] with q^ = (q*)^{-1}, for the split form.
pub fn siegel_element(qm: &MatQuat, sigma: &MatQuat) -> Result<GroupElement> {
    check_hermitian(sigma)?;
    if qm.rows() != sigma.rows() || !qm.is_square() {
        return Err(Error::Shape("q and sigma must be m x m".into()));
    }
    let alg = qm.zero_elem().algebra();
    let m = qm.rows();
    let qhat = qm.star().inverse().map_err(|_| Error::Singular("q is not invertible".into()))?;
    let form = SkewHermitianForm::split(m, alg);
    let mut g = Mat::zeros(2 * m, 2 * m, &alg.zero());
    g.set_block(0, 0, qm);
    g.set_block(0, m, &sigma.try_mul(&qhat)?);
    g.set_block(m, m, &qhat);
    GroupElement::new(form, g)
}

/// Levi element diag(q, 1_r, q^) of the standard form.
pub fn levi_element(qm: &MatQuat, r: usize) -> Result<GroupElement> {
    let alg = qm.zero_elem().algebra();
    let m = qm.rows();
    let form = SkewHermitianForm::standard(m, r, alg);
    let qhat = qm.star().inverse().map_err(|_| Error::Singular("q is not invertible".into()))?;
    let g = Mat::block_diag(&[qm, &Mat::identity(r, &alg.zero()), &qhat], &alg.zero());
    GroupElement::new(form, g)
}

/// Unipotent radical element [[1, -f* zeta, -f* zeta f / 2 + s], [0, 1_r, f], [0, 0, 1]]
/// with f an r x m matrix and s hermitian m x m.
pub fn unipotent_element(m: usize, f: &MatQuat, s: &MatQuat) -> Result<GroupElement> {
    check_hermitian(s)?;
    let alg = s.zero_elem().algebra();
    let r = f.rows();
    if s.rows() != m || (r > 0 && f.cols() != m) {
        return Err(Error::Shape("f must be r x m and s m x m".into()));
    }
    let form = SkewHermitianForm::standard(m, r, alg);
    let sizes = form.block_sizes();
    let zeta = alg.zeta();
    let fs = f.star();
    let b = fs.scale_right(&zeta).neg();
    let half = alg.scalar(qf(1, 2));
    let fzf = fs.scale_right(&zeta).try_mul(f)?;
    let c = fzf.scale_right(&half).neg().try_add(s)?;
    let mut g = Mat::identity(form.n(), &alg.zero());
    put_block(&mut g, &sizes, 0, 1, &b);
    put_block(&mut g, &sizes, 0, 2, &c);
    put_block(&mut g, &sizes, 1, 2, f);
    GroupElement::new(form, g)
}

/// Elementary matrix 1 + x E_ij (i != j); its inverse is 1 - x E_ij.
pub fn elementary(m: usize, i: usize, j: usize, x: &Quat) -> MatQuat {
    let mut e = Mat::identity(m, &x.zero_like());
    e.set(i, j, x.clone());
    e
}

/// Which kind of exact random word to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactWordKind {
    /// Integral words in Levi, unipotent and Weyl generators.
    Integral,
    /// Integral words staying inside the congruence subgroup of the given level.
    Congruence(u64),
}

fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, alg: QuatAlgebra, m: usize, bound: i64) -> MatQuat {
    let mut s = Mat::zeros(m, m, &alg.zero());
    for i in 0..m {
        s.set(i, i, alg.scalar(q(rng.random_range(-bound..=bound))));
        for j in i + 1..m {
            let x = random_integral_quat(rng, alg, bound);
            s.set(j, i, x.conj());
            s.set(i, j, x);
        }
    }
    s
}

fn random_levi<R: Rng + ?Sized>(rng: &mut R, alg: QuatAlgebra, m: usize, r: usize, scale: i64) -> Result<GroupElement> {
    if m < 2 {
        return Ok(GroupElement::identity(&SkewHermitianForm::standard(m, r, alg)));
    }
    let i = rng.random_range(0..m);
    let mut j = rng.random_range(0..m - 1);
    if j >= i {
        j += 1;
    }
    let x = random_integral_quat(rng, alg, 2).scale(&q(scale));
    levi_element(&elementary(m, i, j, &x), r)
}

fn random_unipotent<R: Rng + ?Sized>(
    rng: &mut R,
    alg: QuatAlgebra,
    m: usize,
    r: usize,
    scale: i64,
) -> Result<GroupElement> {
    // f in 2*scale*O
    let f = Mat::from_fn(r, m, &alg.zero(), |_, _| random_integral_quat(rng, alg, 1).scale(&q(2 * scale)));
    let s = random_hermitian(rng, alg, m, 2).map(|x| x.scale(&q(scale)));
    unipotent_element(m, &f, &s)
}

/// Random exact element of G_n(phi) as a word in integral generators:
/// Levi elements diag(q, 1, q^) with elementary q, unipotent radical elements
/// and their conjugates by the Weyl element. Every factor is verified.
pub fn random_exact_element<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    r: usize,
    alg: QuatAlgebra,
    len: usize,
    kind: ExactWordKind,
) -> Result<GroupElement> {
    let form = SkewHermitianForm::standard(m, r, alg);
    let w = weyl_element(m, r, alg);
    let winv = w.inverse()?;
    let mut g = GroupElement::identity(&form);
    for _ in 0..len {
        let choice = rng.random_range(0..3);
        let factor = match (kind, choice) {
            (ExactWordKind::Integral, 0) => random_levi(rng, alg, m, r, 1)?,
            (ExactWordKind::Integral, 1) => random_unipotent(rng, alg, m, r, 1)?,
            (ExactWordKind::Integral, _) => {
                if rng.random_bool(0.5) {
                    w.clone()
                } else {
                    random_unipotent(rng, alg, m, r, 1)?.mul(&winv).and_then(|x| w.mul(&x))?
                }
            }
            (ExactWordKind::Congruence(level), 0) => random_levi(rng, alg, m, r, level as i64)?,
            (ExactWordKind::Congruence(_), 1) => random_unipotent(rng, alg, m, r, 1)?,
            (ExactWordKind::Congruence(level), _) => {
                let u = random_unipotent(rng, alg, m, r, level as i64)?;
                w.mul(&u)?.mul(&winv)?
            }
        };
        g = g.mul(&factor)?;
    }
    debug_assert!(is_group_element(g.mat(), &form).unwrap_or(false));
    Ok(g)
}

/// Block sizes (t, m-t, r, t, m-t) of the Klingen decomposition.
pub fn klingen_sizes(m: usize, r: usize, t: usize) -> [usize; 5] {
    [t, m - t, r, t, m - t]
}

/// Membership in the t-Klingen parabolic: a2 = g2 = h2 = h3 = h4 = l2 = d3 = 0.
pub fn klingen_member(x: &MatQuat, m: usize, r: usize, t: usize) -> Result<bool> {
    if t > m {
        return Err(Error::Precondition(format!("t = {t} exceeds m = {m}")));
    }
    if x.rows() != 2 * m + r || x.cols() != 2 * m + r {
        return Err(Error::Shape("matrix size must be 2m + r".into()));
    }
    let s = klingen_sizes(m, r, t);
    let zero_blocks = [(0, 1), (2, 1), (3, 1), (4, 0), (4, 1), (4, 2), (4, 3)];
    Ok(zero_blocks.iter().all(|&(i, j)| block(x, &s, i, j).is_zero()))
}

/// pi_t: P^t_n -> G_{2t+r}, extracting blocks (0, 2, 3) of the Klingen decomposition.
pub fn klingen_project(x: &MatQuat, m: usize, r: usize, t: usize) -> Result<MatQuat> {
    if !klingen_member(x, m, r, t)? {
        return Err(Error::NotKlingen(t));
    }
    let s = klingen_sizes(m, r, t);
    let o = offsets(&s);
    let idx: Vec<usize> = [0usize, 2, 3].iter().flat_map(|&b| o[b]..o[b] + s[b]).collect();
    Ok(x.select(&idx, &idx))
}

/// The embedding xi |-> xi x 1_{2m-2t} of G_{2t+r} into G_{2m+r}, inverse to pi_t on its image.
pub fn klingen_embed(xi: &MatQuat, m: usize, r: usize, t: usize) -> Result<MatQuat> {
    if xi.rows() != 2 * t + r || !xi.is_square() || t > m {
        return Err(Error::Shape("xi must have size 2t + r".into()));
    }
    let alg = xi.zero_elem().algebra();
    let s = klingen_sizes(m, r, t);
    let o = offsets(&s);
    let idx: Vec<usize> = [0usize, 2, 3].iter().flat_map(|&b| o[b]..o[b] + s[b]).collect();
    let mut x = Mat::identity(2 * m + r, &alg.zero());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            x.set(i, j, xi.get(a, b).clone());
        }
    }
    Ok(x)
}

/// kappa_t = [[0,0,-1_t],[0,1_r,0],[1_t,0,0]] in G_{2t+r}.
pub fn kappa(t: usize, r: usize, alg: QuatAlgebra) -> GroupElement {
    weyl_element(t, r, alg)
}

/// The intertwining conditions defining V_t and its modified variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VtCondition {
    /// kappa_t pi_t(beta) = pi_t(gamma) kappa_t
    pub plain: bool,
    /// pi_t(beta) = pi_t(gamma)
    pub modified: bool,
}

pub fn vt_condition(beta: &GroupElement, gamma: &GroupElement, t: usize) -> Result<VtCondition> {
    let (m, r) = (beta.form().m(), beta.form().r());
    let pb = klingen_project(beta.mat(), m, r, t)?;
    let pg = klingen_project(gamma.mat(), m, r, t)?;
    let k = kappa(t, r, beta.form().algebra());
    let plain = k.mat().try_mul(&pb)? == pg.try_mul(k.mat())?;
    Ok(VtCondition { plain, modified: pb == pg })
}

/// A level N with its prime-power factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceLevel {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl CongruenceLevel {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Level("N must be positive".into()));
        }
        Ok(CongruenceLevel { n, factors: factorize(n) })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The exact power p^{n_v} dividing N, or `None` if p does not divide N.
    pub fn local_modulus(&self, p: u64) -> Option<u64> {
        self.factors.iter().find(|f| f.0 == p).map(|&(p, e)| p.pow(e))
    }

    /// gcd(N, 2|alpha|) = 1, the coprimality needed before congruence conclusions.
    pub fn coprime_to(&self, alg: QuatAlgebra) -> bool {
        num_integer::gcd(self.n, 2 * alg.alpha().unsigned_abs()) == 1
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn congruent(x: &MatQuat, target: &MatQuat, modulus: &BigInt) -> Result<bool> {
    let d = x.try_sub(target)?;
    let mut ok = true;
    for e in d.entries() {
        match e.divisible_by(modulus) {
            Some(b) => ok &= b,
            None => return Err(Error::NotIntegral),
        }
    }
    Ok(ok)
}

/// g ≡ [[1,*,*],[0,1,*],[0,0,1]] mod p^{n_v} in the coordinates of the standard order.
pub fn congruence_member(g: &GroupElement, level: &CongruenceLevel, p: u64) -> Result<bool> {
    if !g.is_integral() {
        return Err(Error::NotIntegral);
    }
    let modulus = level.local_modulus(p).ok_or_else(|| Error::Level(format!("{p} does not divide {}", level.n())))?;
    pattern_congruent(g, modulus)
}

/// Membership in K_1(N): the congruence pattern at every prime dividing N.
pub fn k1_member(g: &GroupElement, level: &CongruenceLevel) -> Result<bool> {
    for &(p, _) in level.factors() {
        if !congruence_member(g, level, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pattern_congruent(g: &GroupElement, modulus: u64) -> Result<bool> {
    let alg = g.form().algebra();
    let s = g.form().block_sizes();
    let md = BigInt::from(modulus);
    let one = |k: usize| Mat::identity(k, &alg.zero());
    let zero = |a: usize, b: usize| Mat::zeros(a, b, &alg.zero());
    let checks = [
        (0, 0, one(s[0])),
        (1, 0, zero(s[1], s[0])),
        (1, 1, one(s[1])),
        (2, 0, zero(s[2], s[0])),
        (2, 1, zero(s[2], s[1])),
        (2, 2, one(s[2])),
    ];
    for (i, j, target) in checks {
        if !congruent(&block(g.mat(), &s, i, j), &target, &md)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// e_t = [[1_t, 0], [0, 0]] of size m.
fn e_t(m: usize, t: usize, alg: QuatAlgebra) -> MatQuat {
    let mut e = Mat::zeros(m, m, &alg.zero());
    for i in 0..t {
        e.set(i, i, alg.one());
    }
    e
}

/// The coset representative tau_t in G_N(J_{N/2}), N = 2n: the identity with
/// e_t in block (4,3) and e_t* in block (6,1) of the (m,r,m,m,r,m) partition.
pub fn coset_rep(t: usize, m: usize, r: usize, alg: QuatAlgebra) -> Result<GroupElement> {
    if t > m {
        return Err(Error::Precondition(format!("t = {t} exceeds m = {m}")));
    }
    let n = 2 * m + r;
    let form = SkewHermitianForm::split(n, alg);
    let sizes = [m, r, m, m, r, m];
    let mut tau = Mat::identity(2 * n, &alg.zero());
    let e = e_t(m, t, alg);
    put_block(&mut tau, &sizes, 3, 2, &e);
    put_block(&mut tau, &sizes, 5, 0, &e.star());
    GroupElement::new(form, tau)
}

/// The modified representative tau~_t = tau_t rho(1_n, kappa_t x 1_{2m-2t}).
pub fn modified_coset_rep(t: usize, ctx: &DoublingContext) -> Result<GroupElement> {
    let (m, r) = (ctx.m(), ctx.r());
    let alg = ctx.algebra();
    let tau = coset_rep(t, m, r, alg)?;
    let k = klingen_embed(kappa(t, r, alg).mat(), m, r, t)?;
    let form = SkewHermitianForm::standard(m, r, alg);
    let k = GroupElement::new(form.clone(), k)?;
    let one = GroupElement::identity(&form);
    tau.mul(&ctx.rho(&one, &k)?)
}

/// tau~_m rho(xi, 1) tau~_m^{-1} together with its comparison against the
/// closed-form bottom block rows.
#[derive(Clone, Debug)]
pub struct TauConjugation {
    pub matrix: GroupElement,
    /// Bottom three block rows of `matrix` in the (m,r,m,m,r,m) partition.
    pub bottom_rows: MatQuat,
    /// The stated closed form, see [`tau_m_bottom_rows`].
    pub expected_bottom_rows: MatQuat,
    /// The closed form obtained by expanding the product, see [`tau_m_bottom_rows_derived`].
    pub derived_bottom_rows: MatQuat,
}

impl TauConjugation {
    pub fn matches(&self) -> bool {
        self.bottom_rows == self.expected_bottom_rows
    }

    pub fn matches_derived(&self) -> bool {
        self.bottom_rows == self.derived_bottom_rows
    }
}

fn assemble_bottom_rows(xi: &GroupElement, rows: [[MatQuat; 6]; 3]) -> MatQuat {
    let (m, r) = (xi.form().m(), xi.form().r());
    let alg = xi.form().algebra();
    let n = 2 * m + r;
    let ro = offsets(&[m, r, m]);
    let co = offsets(&[m, r, m, m, r, m]);
    let mut out = Mat::zeros(n, 2 * n, &alg.zero());
    for (i, row) in rows.iter().enumerate() {
        for (j, blk) in row.iter().enumerate() {
            out.set_block(ro[i], co[j], blk);
        }
    }
    out
}

/// Stated closed form of the bottom three block rows of tau~_m (xi x 1) tau~_m^{-1}:
/// [-h, -l, 1-d, d, l zeta/2, 0; -zeta^{-1} g, -zeta^{-1}(e-1), -zeta^{-1} f, zeta^{-1} f, (e+1)/2, 0;
///  a-1, b, c, -c, -b zeta/2, 1].
pub fn tau_m_bottom_rows(xi: &GroupElement) -> Result<MatQuat> {
    let (m, r) = (xi.form().m(), xi.form().r());
    let alg = xi.form().algebra();
    let [[a, b, c], [g, e, f], [h, l, d]] = xi.abc_blocks();
    let zeta = alg.zeta();
    let zinv = zeta.inv().expect("zeta is invertible");
    let half = alg.scalar(qf(1, 2));
    let id = |k: usize| Mat::identity(k, &alg.zero());
    let z = |a: usize, b: usize| Mat::zeros(a, b, &alg.zero());
    let row0 = [h.neg(), l.neg(), id(m).try_sub(&d)?, d.clone(), l.scale_right(&zeta).scale_right(&half), z(m, m)];
    let row1 = [
        g.scale_left(&zinv).neg(),
        e.try_sub(&id(r))?.scale_left(&zinv).neg(),
        f.scale_left(&zinv).neg(),
        f.scale_left(&zinv),
        e.try_add(&id(r))?.scale_right(&half),
        z(r, m),
    ];
    let row2 =
        [a.try_sub(&id(m))?, b.clone(), c.clone(), c.neg(), b.scale_right(&zeta).scale_right(&half).neg(), id(m)];
    Ok(assemble_bottom_rows(xi, [row0, row1, row2]))
}

/// Bottom three block rows of tau~_m (xi x 1) tau~_m^{-1} from expanding the product:
/// [h, l/2, 1-d, d, -l zeta^{-1}, 0; -zeta g/2, -zeta(e-1)/4, zeta f/2, -zeta f/2, (1 + zeta e zeta^{-1})/2, 0;
///  a-1, b/2, -c, c, -b zeta^{-1}, 1].
pub fn tau_m_bottom_rows_derived(xi: &GroupElement) -> Result<MatQuat> {
    let (m, r) = (xi.form().m(), xi.form().r());
    let alg = xi.form().algebra();
    let [[a, b, c], [g, e, f], [h, l, d]] = xi.abc_blocks();
    let zeta = alg.zeta();
    let zinv = zeta.inv().expect("zeta is invertible");
    let half = alg.scalar(qf(1, 2));
    let quarter = alg.scalar(qf(1, 4));
    let id = |k: usize| Mat::identity(k, &alg.zero());
    let z = |a: usize, b: usize| Mat::zeros(a, b, &alg.zero());
    let zf_half = f.scale_left(&zeta).scale_left(&half);
    let row0 = [h.clone(), l.scale_right(&half), id(m).try_sub(&d)?, d.clone(), l.scale_right(&zinv).neg(), z(m, m)];
    let row1 = [
        g.scale_left(&zeta).scale_left(&half).neg(),
        e.try_sub(&id(r))?.scale_left(&zeta).scale_left(&quarter).neg(),
        zf_half.clone(),
        zf_half.neg(),
        id(r).try_add(&e.scale_left(&zeta).scale_right(&zinv))?.scale_right(&half),
        z(r, m),
    ];
    let row2 = [a.try_sub(&id(m))?, b.scale_right(&half), c.neg(), c.clone(), b.scale_right(&zinv).neg(), id(m)];
    Ok(assemble_bottom_rows(xi, [row0, row1, row2]))
}

/// Computes tau~_m rho(xi, 1) tau~_m^{-1} exactly.
pub fn conjugate_by_tau_m(xi: &GroupElement, ctx: &DoublingContext) -> Result<TauConjugation> {
    if xi.form().m() != ctx.m() || xi.form().r() != ctx.r() {
        return Err(Error::Shape("xi does not match the doubling context".into()));
    }
    let tau = modified_coset_rep(ctx.m(), ctx)?;
    let one = GroupElement::identity(xi.form());
    let rho = ctx.rho(xi, &one)?;
    let conj = tau.mul(&rho)?.mul(&tau.inverse()?)?;
    let n = xi.form().n();
    let bottom = conj.mat().submatrix(n, 0, n, 2 * n);
    Ok(TauConjugation {
        matrix: conj,
        bottom_rows: bottom,
        expected_bottom_rows: tau_m_bottom_rows(xi)?,
        derived_bottom_rows: tau_m_bottom_rows_derived(xi)?,
    })
}

/// Like [`conjugate_by_tau_m`] but failing with `PatternMismatch` when the
/// bottom rows disagree with the closed form.
pub fn conjugate_by_tau_m_checked(xi: &GroupElement, ctx: &DoublingContext) -> Result<TauConjugation> {
    let c = conjugate_by_tau_m(xi, ctx)?;
    if !c.matches() {
        return Err(Error::PatternMismatch("bottom block rows differ from the closed form".into()));
    }
    Ok(c)
}

/// The congruences d-1, f, c, l, e-1, b ≡ 0 mod N on the blocks of xi,
/// each reported separately, after checking gcd(N, 2|alpha|) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauCongruences {
    pub d_minus_1: bool,
    pub f: bool,
    pub c: bool,
    pub l: bool,
    pub e_minus_1: bool,
    pub b: bool,
}

impl TauCongruences {
    pub fn all(&self) -> bool {
        self.d_minus_1 && self.f && self.c && self.l && self.e_minus_1 && self.b
    }
}

pub fn tau_congruences(xi: &GroupElement, level: &CongruenceLevel) -> Result<TauCongruences> {
    let alg = xi.form().algebra();
    if !level.coprime_to(alg) {
        return Err(Error::Level(format!("N = {} is not coprime to 2|alpha| = {}", level.n(), 2 * alg.alpha().abs())));
    }
    if !xi.is_integral() {
        return Err(Error::NotIntegral);
    }
    let md = BigInt::from(level.n());
    let [[_, b, c], [_, e, f], [_, l, d]] = xi.abc_blocks();
    let zero_mod = |x: &MatQuat| -> Result<bool> {
        let z = Mat::zeros(x.rows(), x.cols(), &alg.zero());
        congruent(x, &z, &md)
    };
    let id = |k: usize| Mat::identity(k, &alg.zero());
    Ok(TauCongruences {
        d_minus_1: zero_mod(&d.try_sub(&id(d.rows()))?)?,
        f: zero_mod(&f)?,
        c: zero_mod(&c)?,
        l: zero_mod(&l)?,
        e_minus_1: zero_mod(&e.try_sub(&id(e.rows()))?)?,
        b: zero_mod(&b)?,
    })
}

/// Group-element fixture: the qalg matrix format plus an {m, r, N} header.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFixture {
    pub m: usize,
    pub r: usize,
    #[serde(rename = "N", default = "default_level")]
    pub level: u64,
    #[serde(flatten)]
    pub element: MatQuatJson,
}

fn default_level() -> u64 {
    1
}

impl GroupFixture {
    pub fn from_element(g: &GroupElement, level: u64) -> Self {
        GroupFixture { m: g.form().m(), r: g.form().r(), level, element: mat_to_json(g.mat()) }
    }

    pub fn to_element(&self) -> Result<GroupElement> {
        let mat = mat_from_json(&self.element)?;
        let form = SkewHermitianForm::standard(self.m, self.r, mat.zero_elem().algebra());
        GroupElement::new(form, mat)
    }
}
