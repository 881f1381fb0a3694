//! Dirichlet characters, partial Dirichlet L-values, the standard L-function
//! from Satake parameters, the normalizing factor Lambda_n, the Gamma factors
//! Gamma_m and c_k(s), Pfaffians and the pi-exponent bookkeeping.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qalg::MatC;

const ROOT_TOL: f64 = 1e-9;

/// A Dirichlet character given by its table of values on residues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<Complex64>,
    conductor: u64,
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        let modulus = modulus.max(1);
        let values = (0..modulus)
            .map(|x| if x.gcd(&modulus) == 1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
            .collect();
        DirichletCharacter { modulus, values, conductor: 1 }
    }

    /// Build from the table x -> chi(x) for x = 0..modulus-1. The table must vanish
    /// exactly off the units, take root-of-unity values and be multiplicative.
    pub fn from_table(modulus: u64, values: Vec<Complex64>) -> Result<Self> {
        if modulus == 0 || values.len() as u64 != modulus {
            return Err(Error::Precondition(format!(
                "character table has {} entries for modulus {modulus}",
                values.len()
            )));
        }
        let units: Vec<u64> = (0..modulus).filter(|x| x.gcd(&modulus) == 1).collect();
        let order = units.len() as i32;
        for x in 0..modulus {
            let v = values[x as usize];
            if x.gcd(&modulus) != 1 {
                if v != Complex64::new(0.0, 0.0) {
                    return Err(Error::Precondition(format!("chi({x}) must vanish off the units")));
                }
            } else if (v.norm() - 1.0).abs() > ROOT_TOL || (v.powi(order) - 1.0).norm() > ROOT_TOL {
                return Err(Error::Precondition(format!("chi({x}) = {v} is not a root of unity")));
            }
        }
        for &a in &units {
            for &b in &units {
                let ab = (a * b) % modulus;
                if (values[a as usize] * values[b as usize] - values[ab as usize]).norm() > ROOT_TOL {
                    return Err(Error::Precondition(format!("table is not multiplicative at ({a}, {b})")));
                }
            }
        }
        let conductor = divisors(modulus)
            .into_iter()
            .find(|&d| {
                units.iter().filter(|&&a| a % d == 1 % d).all(|&a| (values[a as usize] - 1.0).norm() <= ROOT_TOL)
            })
            .unwrap_or(modulus);
        Ok(DirichletCharacter { modulus, values, conductor })
    }

    /// Real character from an integer table with entries in {-1, 0, 1}.
    pub fn from_int_table(modulus: u64, values: &[i64]) -> Result<Self> {
        Self::from_table(modulus, values.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect())
    }

    /// Legendre symbol modulo an odd prime.
    pub fn legendre(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not an odd prime")));
        }
        let squares: Vec<bool> = {
            let mut s = vec![false; p as usize];
            for x in 1..p {
                s[((x * x) % p) as usize] = true;
            }
            s
        };
        let t = (0..p)
            .map(|x| {
                if x == 0 {
                    0
                } else if squares[x as usize] {
                    1
                } else {
                    -1
                }
            })
            .collect::<Vec<_>>();
        Self::from_int_table(p, &t)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn eval(&self, x: i64) -> Complex64 {
        let r = x.rem_euclid(self.modulus as i64) as usize;
        self.values[r]
    }

    /// chi^2 on the same modulus.
    pub fn square(&self) -> Self {
        let values: Vec<Complex64> = self.values.iter().map(|v| v * v).collect();
        Self::from_table(self.modulus, values).expect("square of a character is a character")
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return vec![];
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Distinct prime divisors.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A truncated Euler product with a tail estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LValueReport {
    pub s: Complex64,
    pub value: Complex64,
    pub pmax: u64,
    /// Heuristic bound for the omitted primes p > pmax.
    pub tail: f64,
}

/// Sum_{n > P} n^{-sigma} <= P^{1 - sigma} / (sigma - 1).
fn zeta_tail(p: u64, sigma: f64) -> f64 {
    let p = (p.max(1)) as f64;
    p.powf(1.0 - sigma) / (sigma - 1.0)
}

fn cpow(p: u64, e: Complex64) -> Complex64 {
    (e * (p as f64).ln()).exp()
}

/// L(s, chi) with the Euler factors at `excluded` removed, truncated at pmax.
pub fn dirichlet_l_partial(
    s: Complex64,
    chi: &DirichletCharacter,
    excluded: &[u64],
    pmax: u64,
) -> Result<LValueReport> {
    if s.re <= 1.0 {
        return Err(Error::Convergence(format!("Re(s) = {} <= 1", s.re)));
    }
    let mut value = Complex64::new(1.0, 0.0);
    for p in primes_up_to(pmax) {
        if excluded.contains(&p) {
            continue;
        }
        let x = chi.eval(p as i64) * cpow(p, -s);
        value /= Complex64::new(1.0, 0.0) - x;
    }
    Ok(LValueReport { s, value, pmax, tail: value.norm() * zeta_tail(pmax, s.re) })
}

/// Lambda_n(s, chi) = prod_{i=0}^{n-1} L_n(2s - 2i, chi^2), Euler factors at p | level removed.
pub fn lambda_norm(s: Complex64, chi: &DirichletCharacter, n: usize, level: u64, pmax: u64) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let lowest = 2.0 * s.re - 2.0 * (n as f64 - 1.0);
    if lowest <= 1.0 {
        return Err(Error::Convergence(format!("Re(2s - 2(n-1)) = {lowest} <= 1")));
    }
    let chi2 = chi.square();
    let excluded = prime_divisors(level);
    let mut out = Complex64::new(1.0, 0.0);
    for i in 0..n {
        let arg = 2.0 * s - 2.0 * i as f64;
        out *= dirichlet_l_partial(arg, &chi2, &excluded, pmax)?.value;
    }
    Ok(out)
}

/// Which form of the first local factor (1 - p^{2n-2} chi^2(p))^{-1} to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EulerFactorVariant {
    /// (1 - p^{2n-2} chi^2(p))^{-1}, independent of s.
    #[default]
    AsPrinted,
    /// (1 - p^{2n-2-2s} chi^2(p))^{-1}.
    SDependent,
}

/// Satake parameters alpha_{1,p}, ..., alpha_{n,p} for primes p not dividing the level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SatakeData {
    pub n: usize,
    pub k: i64,
    pub level: u64,
    pub params: BTreeMap<u64, Vec<[f64; 2]>>,
}

impl SatakeData {
    /// All parameters equal to 1 for every p <= pmax with p not dividing the level.
    pub fn trivial(n: usize, k: i64, level: u64, pmax: u64) -> Self {
        let params =
            primes_up_to(pmax).into_iter().filter(|p| level % p != 0).map(|p| (p, vec![[1.0, 0.0]; n])).collect();
        SatakeData { n, k, level, params }
    }

    pub fn alphas(&self, p: u64) -> Result<Vec<Complex64>> {
        let v = self.params.get(&p).ok_or(Error::MissingSatake(p))?;
        if v.len() != self.n {
            return Err(Error::Precondition(format!("{} Satake parameters at p = {p}, expected {}", v.len(), self.n)));
        }
        let out: Vec<Complex64> = v.iter().map(|a| Complex64::new(a[0], a[1])).collect();
        if out.iter().any(|a| a.norm() == 0.0) {
            return Err(Error::Precondition(format!("zero Satake parameter at p = {p}")));
        }
        Ok(out)
    }

    /// Largest log_p |alpha^{+-1}| over the supplied primes.
    pub fn log_growth(&self) -> f64 {
        let mut g: f64 = 0.0;
        for (&p, v) in &self.params {
            for a in v {
                let r = Complex64::new(a[0], a[1]).norm();
                if r > 0.0 {
                    g = g.max(r.ln().abs() / (p as f64).ln());
                }
            }
        }
        g
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The local factor L_p(s, f, chi).
pub fn euler_factor(
    p: u64,
    alphas: &[Complex64],
    chi: &DirichletCharacter,
    s: Complex64,
    variant: EulerFactorVariant,
) -> Result<Complex64> {
    let n = alphas.len() as f64;
    let one = Complex64::new(1.0, 0.0);
    let c = chi.eval(p as i64);
    let first_pow = match variant {
        EulerFactorVariant::AsPrinted => Complex64::new(2.0 * n - 2.0, 0.0),
        EulerFactorVariant::SDependent => Complex64::new(2.0 * n - 2.0, 0.0) - 2.0 * s,
    };
    let mut factors = vec![one - cpow(p, first_pow) * c * c];
    let x = c * cpow(p, Complex64::new(n - 1.0, 0.0) - s);
    for a in alphas {
        factors.push(one - a * x);
        factors.push(one - x / a);
    }
    let mut out = one;
    for (i, f) in factors.iter().enumerate() {
        if f.norm() == 0.0 {
            return Err(Error::Pole(format!("local factor {i} vanishes at p = {p}")));
        }
        out /= f;
    }
    Ok(out)
}

/// L(s, f, chi) truncated at pmax, with D = L / Lambda_n.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardLReport {
    pub l: LValueReport,
    pub lambda: Complex64,
    pub d_series: Complex64,
    pub variant: EulerFactorVariant,
}

pub fn l_function(
    s: Complex64,
    satake: &SatakeData,
    chi: &DirichletCharacter,
    pmax: u64,
    variant: EulerFactorVariant,
) -> Result<StandardLReport> {
    let n = satake.n as f64;
    let growth = satake.log_growth();
    let bound = 2.0 * n - 1.0 + growth;
    if s.re <= bound {
        return Err(Error::Convergence(format!("Re(s) = {} <= 2n - 1 + growth = {bound}", s.re)));
    }
    let mut value = Complex64::new(1.0, 0.0);
    for p in primes_up_to(pmax) {
        if satake.level % p == 0 {
            continue;
        }
        let alphas = satake.alphas(p)?;
        value *= euler_factor(p, &alphas, chi, s, variant)?;
    }
    // terms of size 2n p^{n-1+growth-sigma}
    let e = s.re - (n - 1.0) - growth;
    let tail = value.norm() * 2.0 * n * zeta_tail(pmax, e);
    let lambda = lambda_norm(s, chi, satake.n, satake.level, pmax)?;
    if lambda.norm() == 0.0 {
        return Err(Error::Pole("Lambda_n vanishes".into()));
    }
    Ok(StandardLReport { l: LValueReport { s, value, pmax, tail }, lambda, d_series: value / lambda, variant })
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Complex Gamma function (Lanczos approximation with reflection).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(format!("Gamma at {}", z.re)));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * z).sin() * gamma_unchecked(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// log Gamma on Re z >= 1/2, up to a multiple of 2 pi i.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(format!("Gamma at {}", z.re)));
    }
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return Ok(pi.ln() - (pi * z).sin().ln() - ln_gamma(1.0 - z)?);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln())
}

/// Gamma_m(s) = pi^{m(m-1)} prod_{i=0}^{m-1} Gamma(s - 2i).
pub fn gamma_m(m: usize, s: Complex64) -> Result<Complex64> {
    let mut out = Complex64::new(PI.powi((m * m.saturating_sub(1)) as i32), 0.0);
    for i in 0..m {
        out *= gamma(s - 2.0 * i as f64)?;
    }
    Ok(out)
}

/// A value known up to an algebraic factor that is set to 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub value: Complex64,
    pub modulo_algebraic_constant: bool,
}

/// c_k(s) = alpha(s) pi^{n(n-1)/2} Gamma(s+k-2n+3) Gamma(s+k-2n+5) ... Gamma(s+k-1)
///          / (Gamma(s+k-n+2) Gamma(s+k-n+3) ... Gamma(s+k)), with alpha(s) = 1.
pub fn reproducing_constant(n: usize, k: i64, s: Complex64) -> Result<ConstantReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("c_k(s) needs n >= 2, got {n}")));
    }
    let w = s + k as f64;
    if w.re <= 2.0 * n as f64 + 1.0 {
        return Err(Error::Precondition(format!("k + Re(s) = {} <= 2n + 1", w.re)));
    }
    let nf = n as f64;
    let mut log = Complex64::new(0.0, 0.0);
    for j in 0..n - 1 {
        log += ln_gamma(w - 2.0 * nf + 3.0 + 2.0 * j as f64)?;
        log -= ln_gamma(w - nf + 2.0 + j as f64)?;
    }
    let value = PI.powf(nf * (nf - 1.0) / 2.0) * log.exp();
    Ok(ConstantReport { value, modulo_algebraic_constant: true })
}

/// The same constant in the form produced by the Hua integral:
/// pi^{n(n-1)/2} Gamma(2l+1) Gamma(2l+3) ... Gamma(2l+2n-3) / (Gamma(2l+n) ... Gamma(2l+2n-2))
/// with l = (s+k)/2 - n + 1.
pub fn hua_constant(n: usize, lambda: Complex64) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::Precondition(format!("needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    for j in 0..n - 1 {
        num *= gamma(2.0 * lambda + 1.0 + 2.0 * j as f64)?;
        den *= gamma(2.0 * lambda + nf + j as f64)?;
    }
    Ok(PI.powf(nf * (nf - 1.0) / 2.0) * num / den)
}

/// n(k + mu) - (3/2) n (n - 1), under 2n - 1 < mu <= k.
pub fn algebraicity_exponent(n: i64, k: i64, mu: i64) -> Result<Rational64> {
    if n < 1 || !(2 * n - 1 < mu && mu <= k) {
        return Err(Error::Precondition(format!("need 2n - 1 < mu <= k, got n = {n}, k = {k}, mu = {mu}")));
    }
    Ok(Rational64::from_integer(n * (k + mu)) - Rational64::new(3, 2) * Rational64::from_integer(n * (n - 1)))
}

/// (alpha, beta) = (m(l - mu), m(l + mu) - m(m - 1)) for G_n with n = 2m, under n - 1 < mu <= l.
pub fn nearly_holo_exponent(m: i64, l: i64, mu: i64) -> Result<(i64, i64)> {
    let n = 2 * m;
    if m < 1 || !(n - 1 < mu && mu <= l) {
        return Err(Error::Precondition(format!("need n - 1 < mu <= l, got m = {m}, l = {l}, mu = {mu}")));
    }
    Ok((m * (l - mu), m * (l + mu) - m * (m - 1)))
}

fn check_skew(a: &MatC) -> Result<()> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Shape("Pfaffian of a non-square matrix".into()));
    }
    let scale = a.iter().map(|x| x.norm()).fold(1.0, f64::max);
    if (a + a.transpose()).iter().any(|x| x.norm() > 1e-12 * scale) {
        return Err(Error::NotSkewSymmetric);
    }
    if n % 2 == 1 {
        return Err(Error::Shape(format!("Pfaffian of odd dimension {n}")));
    }
    Ok(())
}

/// Pfaffian by skew-symmetric LTL^T reduction with row/column pivoting.
/// pf([[0, a], [-a, 0]]) = a.
pub fn pfaffian(a: &MatC) -> Result<Complex64> {
    check_skew(a)?;
    let n = a.nrows();
    let mut a = a.clone();
    let mut pf = Complex64::new(1.0, 0.0);
    let mut k = 0;
    while k + 1 < n {
        let kp = (k + 1..n)
            .max_by(|&i, &j| a[(i, k)].norm().partial_cmp(&a[(j, k)].norm()).expect("finite"))
            .expect("nonempty");
        if kp != k + 1 {
            a.swap_rows(k + 1, kp);
            a.swap_columns(k + 1, kp);
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        if piv.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        pf *= piv;
        if k + 2 < n {
            let tau: Vec<Complex64> = (k + 2..n).map(|j| a[(k, j)] / piv).collect();
            let col: Vec<Complex64> = (k + 2..n).map(|i| a[(i, k + 1)]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
        k += 2;
    }
    Ok(pf)
}

/// Pfaffian by expansion along the first row; exponential cost, meant for n <= 8.
pub fn pfaffian_expansion(a: &MatC) -> Result<Complex64> {
    check_skew(a)?;
    let idx: Vec<usize> = (0..a.nrows()).collect();
    Ok(pf_rec(a, &idx))
}

fn pf_rec(a: &MatC, idx: &[usize]) -> Complex64 {
    if idx.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let i = idx[0];
    let mut out = Complex64::new(0.0, 0.0);
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let rest: Vec<usize> = idx.iter().cloned().filter(|&x| x != i && x != j).collect();
        let sign = if pos % 2 == 1 { 1.0 } else { -1.0 };
        out += sign * a[(i, j)] * pf_rec(a, &rest);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn characters() {
        let t = DirichletCharacter::trivial(1);
        assert_eq!(t.eval(17), c(1.0));
        let chi4 = DirichletCharacter::from_int_table(4, &[0, 1, 0, -1]).unwrap();
        assert_eq!(chi4.eval(3), c(-1.0));
        assert_eq!(chi4.eval(2), c(0.0));
        assert_eq!(chi4.conductor(), 4);
        assert!(chi4.square().is_trivial());
        let chi8 = DirichletCharacter::from_int_table(8, &[0, 1, 0, -1, 0, -1, 0, 1]).unwrap();
        assert_eq!(chi8.conductor(), 8);
        let induced = DirichletCharacter::from_int_table(12, &[0, 1, 0, 0, 0, 1, 0, -1, 0, 0, 0, -1]).unwrap();
        assert_eq!(induced.conductor(), 4);
        assert!(DirichletCharacter::from_int_table(4, &[0, 1, 1, -1]).is_err());
        assert!(DirichletCharacter::from_int_table(5, &[0, 1, 1, -1, 1]).is_err());
        let leg = DirichletCharacter::legendre(7).unwrap();
        assert_eq!(leg.eval(3), c(-1.0));
        assert_eq!(leg.conductor(), 7);
    }

    #[test]
    fn partial_l_values() {
        let t = DirichletCharacter::trivial(1);
        assert!(dirichlet_l_partial(c(1.0), &t, &[], 100).is_err());
        let z = dirichlet_l_partial(c(2.0), &t, &[], 100_000).unwrap();
        assert!((z.value.re - PI * PI / 6.0).abs() < 1e-5);
        let z2 = dirichlet_l_partial(c(2.0), &t, &[2], 100_000).unwrap();
        assert!((z2.value.re - PI * PI / 6.0 * 0.75).abs() < 1e-5);
        let big = dirichlet_l_partial(c(60.0), &t, &[], 1000).unwrap();
        assert!((big.value - 1.0).norm() < 1e-15);
        let a = dirichlet_l_partial(c(3.0), &t, &[], 100).unwrap();
        let b = dirichlet_l_partial(c(3.0), &t, &[], 10_000).unwrap();
        assert!(b.tail < a.tail);
    }

    #[test]
    fn lambda_examples() {
        let t = DirichletCharacter::trivial(1);
        let z = |s: f64| dirichlet_l_partial(c(s), &t, &[], 100_000).unwrap().value;
        assert!((lambda_norm(c(1.0), &t, 1, 1, 100_000).unwrap() - z(2.0)).norm() < 1e-12);
        assert!((lambda_norm(c(3.0), &t, 2, 1, 100_000).unwrap() - z(6.0) * z(4.0)).norm() < 1e-12);
        let chi4 = DirichletCharacter::from_int_table(4, &[0, 1, 0, -1]).unwrap();
        let lam = lambda_norm(c(3.0), &chi4, 2, 1, 10_000).unwrap();
        let lam_t = lambda_norm(c(3.0), &DirichletCharacter::trivial(4), 2, 1, 10_000).unwrap();
        assert!((lam - lam_t).norm() < 1e-14);
        assert!(lambda_norm(c(1.5), &t, 2, 1, 100).is_err());
    }

    #[test]
    fn euler_factor_examples() {
        let t = DirichletCharacter::trivial(1);
        let v = euler_factor(2, &[c(1.0), c(1.0)], &t, c(5.0), EulerFactorVariant::AsPrinted).unwrap();
        let expect = (-1.0 / 3.0) * (16.0f64 / 15.0).powi(4);
        assert!((v - expect).norm() < 1e-14);
        let far =
            euler_factor(3, &[c(2.0), Complex64::new(0.5, 0.5)], &t, c(200.0), EulerFactorVariant::AsPrinted).unwrap();
        assert!((far - 1.0 / (1.0 - 9.0)).norm() < 1e-14);
        let a = [Complex64::new(1.3, 0.2), c(0.7)];
        let ainv = [1.0 / a[0], 1.0 / a[1]];
        let f1 = euler_factor(5, &a, &t, Complex64::new(6.0, 1.0), EulerFactorVariant::SDependent).unwrap();
        let f2 = euler_factor(5, &ainv, &t, Complex64::new(6.0, 1.0), EulerFactorVariant::SDependent).unwrap();
        assert!((f1 - f2).norm() < 1e-14 * f1.norm());
        assert!(matches!(euler_factor(2, &[c(1.0)], &t, c(3.0), EulerFactorVariant::AsPrinted), Err(Error::Pole(_))));
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(c(5.0)).unwrap() - 24.0).norm() < 1e-12);
        assert!((gamma(c(0.5)).unwrap() - PI.sqrt()).norm() < 1e-14);
        assert!((gamma(c(-0.5)).unwrap() + 2.0 * PI.sqrt()).norm() < 1e-13);
        assert!(gamma(c(-2.0)).is_err());
        let z = Complex64::new(2.5, 1.5);
        assert!((gamma(z + 1.0).unwrap() - z * gamma(z).unwrap()).norm() < 1e-13);
        assert!((ln_gamma(c(30.0)).unwrap().re - gamma(c(30.0)).unwrap().re.ln()).abs() < 1e-12);
        assert!((gamma_m(2, c(3.0)).unwrap() - 2.0 * PI * PI).norm() < 1e-12);
        assert!((gamma_m(1, z).unwrap() - gamma(z).unwrap()).norm() < 1e-15);
        let r = gamma_m(2, c(5.0)).unwrap() / gamma_m(2, c(3.0)).unwrap();
        assert!((r - 24.0).norm() < 1e-12);
        assert!(gamma_m(2, c(2.0)).is_err());
    }

    #[test]
    fn reproducing_constant_examples() {
        let v = reproducing_constant(2, 5, c(5.0)).unwrap();
        assert!((v.value - PI / 9.0).norm() < 1e-14);
        assert!(v.modulo_algebraic_constant);
        let s = Complex64::new(4.5, 0.7);
        let w = s + 7.0;
        let v3 = reproducing_constant(3, 7, s).unwrap().value;
        let expect = PI.powi(3) / ((w - 1.0) * (w - 2.0) * (w - 3.0));
        assert!((v3 - expect).norm() < 1e-13 * expect.norm());
        assert!(reproducing_constant(1, 7, s).is_err());
        assert!(reproducing_constant(3, 2, c(4.0)).is_err());
        for n in 2..6 {
            let s = Complex64::new(11.3, -0.4);
            let k = 9;
            let lam = (s + k as f64) / 2.0 - n as f64 + 1.0;
            let a = reproducing_constant(n, k, s).unwrap().value;
            let b = hua_constant(n, lam).unwrap();
            assert!((a - b).norm() < 1e-11 * b.norm(), "n = {n}");
            let shifted = reproducing_constant(n, k + 3, s - 3.0).unwrap().value;
            assert!((a - shifted).norm() < 1e-12 * a.norm());
            let real = reproducing_constant(n, k, c(11.3)).unwrap().value;
            assert!(real.re > 0.0 && real.im.abs() < 1e-12 * real.re);
        }
    }

    #[test]
    fn exponents() {
        assert_eq!(algebraicity_exponent(2, 5, 4).unwrap(), Rational64::from_integer(15));
        assert!(algebraicity_exponent(2, 5, 3).is_err());
        assert!(algebraicity_exponent(2, 5, 6).is_err());
        assert_eq!(nearly_holo_exponent(2, 6, 6).unwrap().0, 0);
        assert_eq!(nearly_holo_exponent(2, 6, 4).unwrap(), (4, 18));
        assert!(nearly_holo_exponent(2, 6, 3).is_err());
    }

    #[test]
    fn pfaffian_examples() {
        let a = Complex64::new(2.0, -1.0);
        let m = MatC::from_row_slice(2, 2, &[c(0.0), a, -a, c(0.0)]);
        assert_eq!(pfaffian(&m).unwrap(), a);
        assert_eq!(pfaffian_expansion(&m).unwrap(), a);
        let mut j = MatC::zeros(6, 6);
        for i in 0..3 {
            j[(2 * i, 2 * i + 1)] = c(1.0);
            j[(2 * i + 1, 2 * i)] = c(-1.0);
        }
        assert!((pfaffian(&j).unwrap() - 1.0).norm() < 1e-15);
        assert!((pfaffian_expansion(&j).unwrap() - 1.0).norm() < 1e-15);
        assert!(matches!(pfaffian(&MatC::identity(2, 2)), Err(Error::NotSkewSymmetric)));
        assert!(matches!(pfaffian(&MatC::zeros(3, 3)), Err(Error::Shape(_))));
        assert_eq!(pfaffian(&MatC::zeros(0, 0)).unwrap(), c(1.0));
    }
}
