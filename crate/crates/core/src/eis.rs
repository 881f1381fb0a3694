//! Fourier coefficients of the Siegel-type Eisenstein series at the
//! holomorphic point s = l, the xi special value, the alpha_n ratio,
//! additive characters, hermitian positivity and partial Fourier sums
//! (tube case r = 0, n = 2m).

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lfun::{dirichlet_l_partial, gamma_m, prime_divisors, DirichletCharacter};
use crate::linalg::{hermitian_eigenvalues, max_abs};
use crate::qalg::{
    j_prime_c, lambda_pairing, mat_split_embed, q, q_to_f64, real_embed, reduced_det, MatC, MatQuat, QuadElem, Quat,
    Ring, Q,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EisensteinParams {
    pub m: usize,
    pub l: i64,
    pub chi: DirichletCharacter,
    pub level: u64,
}

impl EisensteinParams {
    pub fn n(&self) -> usize {
        2 * self.m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientFlags {
    pub modulo_a_n: bool,
    pub local_poly_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierCoefficient {
    pub value: Complex64,
    pub flags: CoefficientFlags,
}

/// Signature data of a hermitian quaternion matrix from an exact LDL* reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    /// Product of the nonzero pivots; for full rank this is the Moore determinant,
    /// whose square is the reduced determinant.
    pub pivot_det: Q,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn class(&self) -> Positivity {
        if self.negative > 0 {
            Positivity::Indefinite
        } else if self.zero > 0 {
            Positivity::PositiveSemidefinite
        } else {
            Positivity::PositiveDefinite
        }
    }
}

pub fn check_hermitian(h: &MatQuat) -> Result<()> {
    if !h.is_square() {
        return Err(Error::Shape("hermitian index must be square".into()));
    }
    if h.star() != *h {
        return Err(Error::NotHermitian);
    }
    Ok(())
}

/// Exact congruence reduction h = L diag(d) L* over the quaternion algebra.
pub fn inertia(h: &MatQuat) -> Result<Inertia> {
    check_hermitian(h)?;
    let mut a = h.clone();
    let alg = a.zero_elem().algebra();
    let mut active: Vec<usize> = (0..a.rows()).collect();
    let mut pivots: Vec<Q> = vec![];
    while !active.is_empty() {
        let i = match active.iter().cloned().find(|&i| !a.get(i, i).is_zero()) {
            Some(i) => i,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a.get(i, j).is_zero());
                let Some((i, j)) = pair else { break };
                let aij = a.get(i, j).clone();
                let t = [alg.one(), alg.zeta(), alg.xi(), alg.zeta_xi()]
                    .into_iter()
                    .find(|t| !(&aij * t).trace().is_zero())
                    .expect("trace form is nondegenerate");
                for &r in &active {
                    let v = a.get(r, i).add(&a.get(r, j).mul(&t));
                    a.set(r, i, v);
                }
                let tc = t.conj();
                for &c in &active {
                    let v = a.get(i, c).add(&tc.mul(a.get(j, c)));
                    a.set(i, c, v);
                }
                i
            }
        };
        let d = a.get(i, i).clone();
        if !d.is_scalar() {
            return Err(Error::NotHermitian);
        }
        let dinv = d.inv().expect("nonzero pivot");
        let rest: Vec<usize> = active.iter().cloned().filter(|&x| x != i).collect();
        let col: Vec<Quat> = rest.iter().map(|&r| a.get(r, i).mul(&dinv)).collect();
        for (ri, &r) in rest.iter().enumerate() {
            for &c in &rest {
                let v = a.get(r, c).sub(&col[ri].mul(a.get(i, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(d.coords()[0].clone());
        active = rest;
    }
    let positive = pivots.iter().filter(|d| d.is_positive()).count();
    let negative = pivots.len() - positive;
    let pivot_det = pivots.iter().fold(Q::one(), |acc, d| acc * d);
    Ok(Inertia { positive, negative, zero: h.rows() - pivots.len(), pivot_det })
}

/// I'^{-1} i(h): hermitian in the split field and congruent to the Hamilton image of h.
fn split_hermitian(h: &MatQuat) -> Result<crate::qalg::MatQuad> {
    let alg = h.zero_elem().algebra();
    let mut m = mat_split_embed(h)?;
    let s = QuadElem::rational(alg.beta(), q(1) / q(-alg.alpha()));
    for i in (0..m.rows()).step_by(2) {
        for j in 0..m.cols() {
            let v = m.get(i, j).mul(&s);
            m.set(i, j, v);
        }
    }
    Ok(m)
}

fn rational_minor(m: &crate::qalg::MatQuad, idx: &[usize]) -> Result<Q> {
    let d = m.select(idx, idx).det_commutative()?;
    if !d.is_rational() {
        return Err(Error::Irrational(format!("principal minor {d:?}")));
    }
    Ok(d.parts().0.clone())
}

/// Classification from exact principal minors of the split image.
pub fn positivity_by_minors(h: &MatQuat) -> Result<Positivity> {
    check_hermitian(h)?;
    let m = split_hermitian(h)?;
    let n = m.rows();
    let mut leading_positive = true;
    for k in 1..=n {
        let idx: Vec<usize> = (0..k).collect();
        if !rational_minor(&m, &idx)?.is_positive() {
            leading_positive = false;
            break;
        }
    }
    if leading_positive {
        return Ok(Positivity::PositiveDefinite);
    }
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if rational_minor(&m, &idx)?.is_negative() {
            return Ok(Positivity::Indefinite);
        }
    }
    Ok(Positivity::PositiveSemidefinite)
}

/// Classification from the eigenvalues of the Hamilton image.
pub fn positivity_by_eigenvalues(h: &MatQuat, tol: f64) -> Result<Positivity> {
    check_hermitian(h)?;
    let e = real_embed(h);
    let scale = max_abs(&e).max(1.0);
    let ev = hermitian_eigenvalues(&e);
    if ev.iter().any(|&x| x < -tol * scale) {
        Ok(Positivity::Indefinite)
    } else if ev.iter().any(|&x| x <= tol * scale) {
        Ok(Positivity::PositiveSemidefinite)
    } else {
        Ok(Positivity::PositiveDefinite)
    }
}

/// Positivity class of a hermitian index; the eigenvalue classification is
/// cross-checked against the exact minors.
pub fn positivity(h: &MatQuat, tol: f64) -> Result<Positivity> {
    let by_eig = positivity_by_eigenvalues(h, tol)?;
    let by_minors = positivity_by_minors(h)?;
    if by_eig != by_minors {
        return Err(Error::IdentityFailure(format!("eigenvalues give {by_eig:?}, exact minors give {by_minors:?}")));
    }
    Ok(by_minors)
}

/// e_inf(z) = exp(2 pi i z).
pub fn e_inf(z: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * z).exp()
}

fn e_inf_rational(x: &Q) -> Complex64 {
    let f = x - x.floor();
    if f.is_zero() {
        return Complex64::new(1.0, 0.0);
    }
    e_inf(Complex64::new(q_to_f64(&f), 0.0))
}

fn valuation(x: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while !x.is_zero() && (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

/// The p-principal part y of x: y = a / p^k with 0 <= a < p^k and x - y p-integral.
pub fn principal_part(x: &Q, p: u64) -> Q {
    let den = x.denom();
    let k = valuation(den, p);
    if k == 0 {
        return Q::zero();
    }
    let pk = BigInt::from(p).pow(k);
    let rest = den / &pk;
    let inv = rest.extended_gcd(&pk).x;
    let a = (x.numer() * inv).mod_floor(&pk);
    Q::new(a, pk)
}

/// e_p(x) = e_inf(-y) for the p-principal part y.
pub fn e_p(x: &Q, p: u64) -> Complex64 {
    e_inf_rational(&-principal_part(x, p))
}

fn denominator_primes(x: &Q) -> Vec<u64> {
    let d = x.denom().to_u64().expect("denominator fits in u64");
    prime_divisors(d)
}

/// Exact phase of prod_p e_p(x) modulo 1.
pub fn finite_char_phase(x: &Q) -> Q {
    let s = denominator_primes(x).into_iter().fold(Q::zero(), |acc, p| acc - principal_part(x, p));
    &s - s.floor()
}

/// prod_{p} e_p(x) over the finite places.
pub fn adelic_finite_char(x: &Q) -> Complex64 {
    e_inf_rational(&finite_char_phase(x))
}

/// Exact phase of e_A(x) = e_inf(x) prod_p e_p(x), modulo 1.
pub fn adelic_char_phase(x: &Q) -> Q {
    let s = x + finite_char_phase(x);
    &s - s.floor()
}

/// e_A of a rational number embedded diagonally.
pub fn adelic_char(x: &Q) -> Complex64 {
    e_inf_rational(&adelic_char_phase(x))
}

fn chi_rational(chi: &DirichletCharacter, x: &Q) -> Result<Complex64> {
    let modulus = BigInt::from(chi.modulus());
    if !x.numer().gcd(&modulus).is_one() || !x.denom().gcd(&modulus).is_one() {
        return Err(Error::Precondition(format!("{x} is not prime to the modulus {}", chi.modulus())));
    }
    let r = |b: &BigInt| b.mod_floor(&modulus).to_i64().expect("residue fits in i64");
    Ok(chi.eval(r(x.numer())) / chi.eval(r(x.denom())))
}

fn local_poly_trivial(det: &Q, m: usize, level: u64) -> bool {
    if det.is_zero() {
        return false;
    }
    let mut primes: Vec<u64> = vec![2];
    for b in [det.numer(), det.denom()] {
        primes.extend(prime_divisors(b.abs().to_u64().unwrap_or(u64::MAX)));
    }
    primes.sort();
    primes.dedup();
    primes.into_iter().filter(|p| level % p != 0).all(|p| {
        let v = valuation(det.numer(), p) as i64 - valuation(det.denom(), p) as i64;
        v == if p == 2 { m as i64 + 1 } else { 0 }
    })
}

/// alpha_n(h, s, chi) = prod_{i=1}^{m-rho} L_n(2s-4m+2rho+2i+1, chi^2) / prod_{i=0}^{m-1} L_n(2s-2i, chi^2)
/// with rho = rank(h) and every local polynomial P_{h,q,p} equal to 1.
/// Triviality is checked from det(h) (product of the nonzero LDL* pivots) unless
/// `assume_local_trivial` is set.
pub fn alpha_ratio(
    h: &MatQuat,
    s: Complex64,
    chi: &DirichletCharacter,
    level: u64,
    pmax: u64,
    assume_local_trivial: bool,
) -> Result<FourierCoefficient> {
    let inr = inertia(h)?;
    let m = h.rows();
    if !assume_local_trivial && !local_poly_trivial(&inr.pivot_det, m, level) {
        return Err(Error::UnsupportedLocalFactor(format!(
            "det(h) = {} is not in 2^{} Z_p^x at every p not dividing {level}",
            inr.pivot_det,
            m + 1
        )));
    }
    let rho = inr.rank();
    let chi2 = chi.square();
    let excluded = prime_divisors(level);
    let mut num = Complex64::new(1.0, 0.0);
    for i in 1..=(m - rho) {
        let arg = 2.0 * s - (4 * m) as f64 + (2 * rho + 2 * i + 1) as f64;
        num *= dirichlet_l_partial(arg, &chi2, &excluded, pmax)?.value;
    }
    let mut den = Complex64::new(1.0, 0.0);
    for i in 0..m {
        den *= dirichlet_l_partial(2.0 * s - (2 * i) as f64, &chi2, &excluded, pmax)?.value;
    }
    Ok(FourierCoefficient { value: num / den, flags: CoefficientFlags { modulo_a_n: false, local_poly_trivial: true } })
}

/// Checks that y is the Hamilton image of a positive definite quaternion hermitian matrix.
pub fn check_positive_numeric(y: &MatC, tol: f64) -> Result<()> {
    let n = y.nrows();
    if n % 2 != 0 || y.ncols() != n {
        return Err(Error::Shape("expected a 2m x 2m Hamilton image".into()));
    }
    let scale = max_abs(y).max(1.0);
    if max_abs(&(y - y.adjoint())) > tol * scale {
        return Err(Error::NotHermitian);
    }
    let j = j_prime_c(n / 2);
    if max_abs(&(y.map(|z| z.conj()) * &j - &j * y)) > tol * scale {
        return Err(Error::Precondition("matrix is not quaternionic".into()));
    }
    if hermitian_eigenvalues(y)[0] <= tol * scale {
        return Err(Error::NotInDomain("y is not positive definite".into()));
    }
    Ok(())
}

/// lambda(h y) = 1/2 reduced trace, computed on Hamilton images.
pub fn lambda_numeric(h: &MatQuat, y: &MatC) -> f64 {
    0.5 * (real_embed(h) * y).trace().re
}

/// xi(y, h, 2l, 0) = 2^{2-2m} (2 pi i)^{2ml} Gamma_m(2l)^{-1} det(h)^{l-(2m-1)/2} e(i lambda(h y)),
/// det the reduced determinant and y given by its Hamilton image.
pub fn xi_special(y: &MatC, h: &MatQuat, l: i64, tol: f64) -> Result<Complex64> {
    let m = h.rows();
    if y.nrows() != 2 * m {
        return Err(Error::Shape(format!("y has size {} for m = {m}", y.nrows())));
    }
    if positivity(h, tol)? != Positivity::PositiveDefinite {
        return Err(Error::NotInDomain("h is not positive definite".into()));
    }
    check_positive_numeric(y, tol)?;
    let gm = gamma_m(m, Complex64::new(2.0 * l as f64, 0.0))?;
    let det = q_to_f64(&reduced_det(h)?);
    let mf = m as f64;
    let pre = 2f64.powf(2.0 - 2.0 * mf) * Complex64::new(0.0, 2.0 * PI).powi((2 * m as i64 * l) as i32);
    let lam = lambda_numeric(h, y);
    Ok(pre / gm * det.powf(l as f64 - (2.0 * mf - 1.0) / 2.0) * e_inf(Complex64::new(0.0, lam)))
}

/// det(q_inf)^{-l} c(h, q, l) = C e_inf(i lambda(q* h q)) with
/// C = chi(det q_h)^{-1} |det q|_h^{2m-1-l}, up to an algebraic constant.
/// Exact zero unless h > 0.
pub fn coefficient_special_point(
    h: &MatQuat,
    q_mat: Option<&MatQuat>,
    params: &EisensteinParams,
    tol: f64,
) -> Result<FourierCoefficient> {
    let m = params.m;
    if h.rows() != m {
        return Err(Error::Shape(format!("h has size {} for m = {m}", h.rows())));
    }
    if params.l <= params.n() as i64 - 1 {
        return Err(Error::Precondition(format!("l = {} <= n - 1 = {}", params.l, params.n() - 1)));
    }
    if positivity(h, tol)? != Positivity::PositiveDefinite {
        return Ok(FourierCoefficient { value: Complex64::new(0.0, 0.0), flags: CoefficientFlags::default() });
    }
    let (c, hq) = match q_mat {
        None => (Complex64::new(1.0, 0.0), h.clone()),
        Some(qm) => {
            let d = reduced_det(qm)?;
            if d.is_zero() {
                return Err(Error::Singular("q has reduced determinant 0".into()));
            }
            let chi = chi_rational(&params.chi, &d)?;
            // |d|_h = prod_p |d|_p = 1 / |d|
            let abs_h = 1.0 / q_to_f64(&d.abs());
            let c = abs_h.powi((2 * m as i64 - 1 - params.l) as i32) / chi;
            (c, crate::qalg::Mat::product(&[&qm.star(), h, qm])?)
        }
    };
    let lam = q_to_f64(&lambda_pairing(&hq, &crate::qalg::Mat::identity(m, hq.zero_elem()))?);
    Ok(FourierCoefficient {
        value: c * e_inf(Complex64::new(0.0, lam)),
        flags: CoefficientFlags { modulo_a_n: true, local_poly_trivial: false },
    })
}

/// Positive definite h over the order Z + Z zeta + Z xi + Z zeta xi with
/// lambda(h) <= bound, in lexicographic order of coordinates. m <= 2.
pub fn enumerate_positive(alg: crate::qalg::QuatAlgebra, m: usize, bound: i64, cap: usize) -> Result<Vec<MatQuat>> {
    let zero = alg.zero();
    let mut out = vec![];
    match m {
        1 => {
            for a in 1..=bound {
                out.push(crate::qalg::Mat::scalar(1, &alg.scalar(q(a))));
            }
        }
        2 => {
            let (al, be) = (-alg.alpha() as f64, -alg.beta() as f64);
            for a in 1..bound {
                for b in 1..=(bound - a) {
                    let ab = (a * b) as f64;
                    let r = |c: f64| (ab / c).sqrt().floor() as i64;
                    let (r0, r1, r2, r3) = (r(1.0), r(al), r(be), r(al * be));
                    let count = ((2 * r0 + 1) * (2 * r1 + 1) * (2 * r2 + 1) * (2 * r3 + 1)) as usize;
                    if out.len() + count > cap {
                        return Err(Error::BoundTooLarge(format!("more than {cap} candidates at bound {bound}")));
                    }
                    for x0 in -r0..=r0 {
                        for x1 in -r1..=r1 {
                            for x2 in -r2..=r2 {
                                for x3 in -r3..=r3 {
                                    let x = alg.from_ints(x0, x1, x2, x3);
                                    if x.norm() >= q(a * b) {
                                        continue;
                                    }
                                    let mut h = crate::qalg::Mat::zeros(2, 2, &zero);
                                    h.set(0, 0, alg.scalar(q(a)));
                                    h.set(1, 1, alg.scalar(q(b)));
                                    h.set(0, 1, x.clone());
                                    h.set(1, 0, x.conj());
                                    out.push(h);
                                }
                            }
                        }
                    }
                }
            }
        }
        _ => return Err(Error::Precondition(format!("enumeration supports m <= 2, got {m}"))),
    }
    if out.len() > cap {
        return Err(Error::BoundTooLarge(format!("more than {cap} candidates at bound {bound}")));
    }
    Ok(out)
}

/// Sum over positive definite h with lambda(h) <= bound of
/// e_inf(i lambda(h y)) * prod_p e_p(lambda(h sigma)), the terms of the expansion at s = l
/// with q_h = 1 and q_inf q_inf* = y, up to the constant A(n).
pub fn partial_fourier_sum(
    sigma: &MatQuat,
    y: &MatC,
    params: &EisensteinParams,
    bound: i64,
    cap: usize,
    tol: f64,
) -> Result<FourierCoefficient> {
    let m = params.m;
    if m > 2 {
        return Err(Error::Precondition(format!("partial sums support m <= 2, got {m}")));
    }
    if params.l <= params.n() as i64 - 1 {
        return Err(Error::Precondition(format!("l = {} <= n - 1 = {}", params.l, params.n() - 1)));
    }
    check_hermitian(sigma)?;
    if sigma.rows() != m || y.nrows() != 2 * m {
        return Err(Error::Shape("sigma and y must match m".into()));
    }
    check_positive_numeric(y, tol)?;
    let alg = sigma.zero_elem().algebra();
    let mut total = Complex64::new(0.0, 0.0);
    for h in enumerate_positive(alg, m, bound, cap)? {
        let lam_y = lambda_numeric(&h, y);
        let lam_s = lambda_pairing(&h, sigma)?;
        total += e_inf(Complex64::new(0.0, lam_y)) * adelic_finite_char(&lam_s);
    }
    Ok(FourierCoefficient { value: total, flags: CoefficientFlags { modulo_a_n: true, local_poly_trivial: false } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::{diag_quat, qf, Mat, QuatAlgebra};

    fn alg() -> QuatAlgebra {
        QuatAlgebra::new(-3, -7).unwrap()
    }

    fn params(m: usize, l: i64) -> EisensteinParams {
        EisensteinParams { m, l, chi: DirichletCharacter::trivial(1), level: 1 }
    }

    #[test]
    fn positivity_examples() {
        let a = alg();
        let one = Mat::identity(2, &a.zero());
        assert_eq!(positivity(&one, 1e-9).unwrap(), Positivity::PositiveDefinite);
        assert_eq!(positivity(&Mat::zeros(2, 2, &a.zero()), 1e-9).unwrap(), Positivity::PositiveSemidefinite);
        assert_eq!(positivity(&diag_quat(&[a.scalar(q(-1))]), 1e-9).unwrap(), Positivity::Indefinite);
        let mut h = Mat::zeros(2, 2, &a.zero());
        h.set(0, 1, a.zeta());
        h.set(1, 0, a.zeta().conj());
        assert_eq!(positivity(&h, 1e-9).unwrap(), Positivity::Indefinite);
        let inr = inertia(&h).unwrap();
        assert_eq!((inr.positive, inr.negative), (1, 1));
        assert_eq!(inr.pivot_det.clone() * inr.pivot_det, reduced_det(&h).unwrap());
        h.set(0, 1, a.one());
        h.set(1, 0, a.one());
        h.set(0, 0, a.one());
        h.set(1, 1, a.one());
        assert_eq!(positivity(&h, 1e-9).unwrap(), Positivity::PositiveSemidefinite);
        assert_eq!(inertia(&h).unwrap().rank(), 1);
        h.set(0, 1, a.zeta());
        assert!(matches!(positivity(&h, 1e-9), Err(Error::NotHermitian)));
    }

    #[test]
    fn characters_at_places() {
        assert!((e_inf(Complex64::new(0.5, 0.0)) + 1.0).norm() < 1e-15);
        assert!((e_p(&qf(1, 2), 2) + 1.0).norm() < 1e-15);
        assert_eq!(principal_part(&qf(7, 12), 2), qf(1, 4));
        assert_eq!(principal_part(&qf(7, 12), 3), qf(1, 3));
        assert_eq!(principal_part(&qf(7, 12), 5), q(0));
        assert_eq!(adelic_char(&qf(1, 6)), Complex64::new(1.0, 0.0));
        assert_eq!(adelic_char_phase(&qf(-355, 113)), q(0));
    }

    #[test]
    fn alpha_ratio_examples() {
        let a = alg();
        let t = DirichletCharacter::trivial(1);
        let z = |s: f64| dirichlet_l_partial(Complex64::new(s, 0.0), &t, &[], 100_000).unwrap().value;
        let h = diag_quat(&[a.scalar(q(4))]);
        let full = alpha_ratio(&h, Complex64::new(3.0, 0.0), &t, 1, 100_000, false).unwrap();
        assert!(full.flags.local_poly_trivial);
        assert!((full.value - 1.0 / z(6.0)).norm() < 1e-12);
        assert!(matches!(
            alpha_ratio(&diag_quat(&[a.scalar(q(3))]), Complex64::new(3.0, 0.0), &t, 1, 1000, false),
            Err(Error::UnsupportedLocalFactor(_))
        ));
        assert!(alpha_ratio(&diag_quat(&[a.scalar(q(12))]), Complex64::new(3.0, 0.0), &t, 3, 1000, false).is_ok());
        let zero = Mat::zeros(1, 1, &a.zero());
        let r0 = alpha_ratio(&zero, Complex64::new(3.0, 0.0), &t, 1, 100_000, true).unwrap();
        assert!((r0.value - z(5.0) / z(6.0)).norm() < 1e-12);
        let h2 = diag_quat(&[a.scalar(q(2)), a.scalar(q(4))]);
        assert!(alpha_ratio(&h2, Complex64::new(4.0, 0.0), &t, 1, 1000, false).is_ok());
    }

    #[test]
    fn xi_special_scalar() {
        let a = alg();
        let h = diag_quat(&[a.one()]);
        let y = real_embed(&h);
        let v = xi_special(&y, &h, 2, 1e-9).unwrap();
        let expect = 16.0 * PI.powi(4) / 6.0 * (-2.0 * PI).exp();
        assert!((v - expect).norm() < 1e-12 * expect);
        let neg = diag_quat(&[a.scalar(q(-1))]);
        assert!(xi_special(&y, &neg, 2, 1e-9).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let a = alg();
        let p = params(1, 3);
        let neg = diag_quat(&[a.scalar(q(-2))]);
        let c = coefficient_special_point(&neg, None, &p, 1e-9).unwrap();
        assert_eq!(c.value, Complex64::new(0.0, 0.0));
        let h = diag_quat(&[a.scalar(q(2))]);
        let c = coefficient_special_point(&h, None, &p, 1e-9).unwrap();
        assert!(c.flags.modulo_a_n);
        assert!((c.value - (-4.0 * PI).exp()).norm() < 1e-15);
        assert!(coefficient_special_point(&h, None, &params(1, 1), 1e-9).is_err());
        let u = diag_quat(&[a.from_ints(0, 0, 1, 0).scale(&qf(1, 1))]);
        assert!(coefficient_special_point(&h, Some(&u), &p, 1e-9).is_ok());
    }

    #[test]
    fn partial_sum_m1() {
        let a = alg();
        let p = params(1, 3);
        let sigma = Mat::zeros(1, 1, &a.zero());
        let y = real_embed(&diag_quat(&[a.one()]));
        assert_eq!(partial_fourier_sum(&sigma, &y, &p, 0, 1000, 1e-9).unwrap().value, Complex64::new(0.0, 0.0));
        let v = partial_fourier_sum(&sigma, &y, &p, 5, 1000, 1e-9).unwrap().value;
        let expect: f64 = (1..=5).map(|k| (-2.0 * PI * k as f64).exp()).sum();
        assert!((v - expect).norm() < 1e-15);
        let half = diag_quat(&[a.scalar(qf(1, 2))]);
        let v = partial_fourier_sum(&half, &y, &p, 2, 1000, 1e-9).unwrap().value;
        let expect = -(-2.0 * PI).exp() + (-4.0 * PI).exp();
        assert!((v - expect).norm() < 1e-15);
    }

    #[test]
    fn enumeration_m2() {
        let a = alg();
        let hs = enumerate_positive(a, 2, 4, 100_000).unwrap();
        assert!(!hs.is_empty());
        for h in &hs {
            assert_eq!(positivity(h, 1e-9).unwrap(), Positivity::PositiveDefinite);
            assert!(lambda_pairing(h, &Mat::identity(2, &a.zero())).unwrap() <= q(4));
        }
        assert!(matches!(enumerate_positive(a, 2, 200, 1000), Err(Error::BoundTooLarge(_))));
    }
}
