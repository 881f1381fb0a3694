use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ring::Ring;
use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn is_squarefree(n: i64) -> bool {
    let mut k = n.unsigned_abs();
    if k == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Definite quaternion algebra (alpha, beta / Q) with basis 1, zeta, xi, zeta*xi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuatAlgebra {
    alpha: i64,
    beta: i64,
}

impl QuatAlgebra {
    pub fn new(alpha: i64, beta: i64) -> Result<Self> {
        if alpha >= 0 || beta >= 0 {
            return Err(Error::InvalidAlgebra(format!("alpha = {alpha}, beta = {beta}: both must be negative")));
        }
        if !is_squarefree(alpha) || !is_squarefree(beta) {
            return Err(Error::InvalidAlgebra(format!("alpha = {alpha}, beta = {beta}: both must be squarefree")));
        }
        Ok(QuatAlgebra { alpha, beta })
    }

    /// The Hamilton quaternions over Q, (-1,-1).
    pub fn hamilton() -> Self {
        QuatAlgebra { alpha: -1, beta: -1 }
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn elem(&self, c: [Q; 4]) -> Quat {
        Quat { alg: *self, c }
    }

    pub fn from_ints(&self, a: i64, b: i64, c: i64, d: i64) -> Quat {
        self.elem([q(a), q(b), q(c), q(d)])
    }

    pub fn scalar(&self, x: Q) -> Quat {
        self.elem([x, Q::zero(), Q::zero(), Q::zero()])
    }

    pub fn zero(&self) -> Quat {
        self.from_ints(0, 0, 0, 0)
    }

    pub fn one(&self) -> Quat {
        self.from_ints(1, 0, 0, 0)
    }

    pub fn zeta(&self) -> Quat {
        self.from_ints(0, 1, 0, 0)
    }

    pub fn xi(&self) -> Quat {
        self.from_ints(0, 0, 1, 0)
    }

    pub fn zeta_xi(&self) -> Quat {
        self.from_ints(0, 0, 0, 1)
    }
}

/// Element a + b zeta + c xi + d zeta xi with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quat {
    alg: QuatAlgebra,
    c: [Q; 4],
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}z + {}x + {}zx)", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

impl Quat {
    pub fn algebra(&self) -> QuatAlgebra {
        self.alg
    }

    pub fn coords(&self) -> &[Q; 4] {
        &self.c
    }

    pub fn is_scalar(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }

    pub fn scale(&self, s: &Q) -> Quat {
        let c = [&self.c[0] * s, &self.c[1] * s, &self.c[2] * s, &self.c[3] * s];
        Quat { alg: self.alg, c }
    }

    pub fn checked_mul(&self, o: &Quat) -> Result<Quat> {
        if self.alg != o.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.mul_unchecked(o))
    }

    pub fn checked_add(&self, o: &Quat) -> Result<Quat> {
        if self.alg != o.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.add(o))
    }

    fn mul_unchecked(&self, o: &Quat) -> Quat {
        let al = q(self.alg.alpha);
        let be = q(self.alg.beta);
        let ab = &al * &be;
        let [a1, b1, c1, d1] = &self.c;
        let [a2, b2, c2, d2] = &o.c;
        let r0 = a1 * a2 + &al * (b1 * b2) + &be * (c1 * c2) - &ab * (d1 * d2);
        let r1 = a1 * b2 + b1 * a2 - &be * (c1 * d2) + &be * (d1 * c2);
        let r2 = a1 * c2 + c1 * a2 + &al * (b1 * d2) - &al * (d1 * b2);
        let r3 = a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2;
        Quat { alg: self.alg, c: [r0, r1, r2, r3] }
    }

    /// Reduced trace x + conj(x) = 2a.
    pub fn trace(&self) -> Q {
        &self.c[0] * q(2)
    }

    /// Reduced norm x conj(x) = a^2 - alpha b^2 - beta c^2 + alpha beta d^2.
    pub fn norm(&self) -> Q {
        let al = q(self.alg.alpha);
        let be = q(self.alg.beta);
        let [a, b, c, d] = &self.c;
        a * a - &al * (b * b) - &be * (c * c) + al * be * (d * d)
    }

    pub fn trace_norm(&self) -> (Q, Q) {
        (self.trace(), self.norm())
    }

    /// Reduce every coordinate modulo a positive integer; `None` if not integral.
    pub fn coords_mod(&self, modulus: &BigInt) -> Option<[BigInt; 4]> {
        if !self.is_integral() {
            return None;
        }
        Some([0, 1, 2, 3].map(|i| self.c[i].to_integer().mod_floor(modulus)))
    }

    /// True when every coordinate is an integer divisible by `modulus`.
    pub fn divisible_by(&self, modulus: &BigInt) -> Option<bool> {
        self.coords_mod(modulus).map(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn max_abs_coord(&self) -> Q {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
    }
}

impl Ring for Quat {
    fn add(&self, o: &Self) -> Self {
        assert_eq!(self.alg, o.alg, "quaternion algebra mismatch");
        let c = [0, 1, 2, 3].map(|i| &self.c[i] + &o.c[i]);
        Quat { alg: self.alg, c }
    }
    fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.alg, o.alg, "quaternion algebra mismatch");
        let c = [0, 1, 2, 3].map(|i| &self.c[i] - &o.c[i]);
        Quat { alg: self.alg, c }
    }
    fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.alg, o.alg, "quaternion algebra mismatch");
        self.mul_unchecked(o)
    }
    fn neg(&self) -> Self {
        let c = [0, 1, 2, 3].map(|i| -&self.c[i]);
        Quat { alg: self.alg, c }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn zero_like(&self) -> Self {
        self.alg.zero()
    }
    fn one_like(&self) -> Self {
        self.alg.one()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }
    fn conj(&self) -> Self {
        let [a, b, c, d] = &self.c;
        Quat { alg: self.alg, c: [a.clone(), -b, -c, -d] }
    }
}

impl std::ops::Add for &Quat {
    type Output = Quat;
    fn add(self, o: &Quat) -> Quat {
        Ring::add(self, o)
    }
}

impl std::ops::Sub for &Quat {
    type Output = Quat;
    fn sub(self, o: &Quat) -> Quat {
        Ring::sub(self, o)
    }
}

impl std::ops::Mul for &Quat {
    type Output = Quat;
    fn mul(self, o: &Quat) -> Quat {
        Ring::mul(self, o)
    }
}

impl std::ops::Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Ring::neg(self)
    }
}
