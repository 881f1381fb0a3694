use std::fmt;

use num_traits::Zero;

use super::quat::{q, Q};
use super::ring::Ring;

/// Element p + q sqrt(beta) of the splitting field Q(sqrt(beta)).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    beta: i64,
    p: Q,
    q: Q,
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))", self.p, self.q, self.beta)
    }
}

impl QuadElem {
    pub fn new(beta: i64, p: Q, q: Q) -> Self {
        QuadElem { beta, p, q }
    }

    pub fn rational(beta: i64, p: Q) -> Self {
        QuadElem { beta, p, q: Q::zero() }
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn parts(&self) -> (&Q, &Q) {
        (&self.p, &self.q)
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Field norm p^2 - beta q^2.
    pub fn norm(&self) -> Q {
        &self.p * &self.p - q(self.beta) * (&self.q * &self.q)
    }
}

impl Ring for QuadElem {
    fn add(&self, o: &Self) -> Self {
        QuadElem { beta: self.beta, p: &self.p + &o.p, q: &self.q + &o.q }
    }
    fn sub(&self, o: &Self) -> Self {
        QuadElem { beta: self.beta, p: &self.p - &o.p, q: &self.q - &o.q }
    }
    fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.beta, o.beta, "quadratic field mismatch");
        QuadElem {
            beta: self.beta,
            p: &self.p * &o.p + q(self.beta) * (&self.q * &o.q),
            q: &self.p * &o.q + &self.q * &o.p,
        }
    }
    fn neg(&self) -> Self {
        QuadElem { beta: self.beta, p: -&self.p, q: -&self.q }
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
    fn zero_like(&self) -> Self {
        QuadElem::rational(self.beta, Q::zero())
    }
    fn one_like(&self) -> Self {
        QuadElem::rational(self.beta, q(1))
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadElem { beta: self.beta, p: &self.p / &n, q: -&self.q / &n })
    }
    fn conj(&self) -> Self {
        QuadElem { beta: self.beta, p: self.p.clone(), q: -&self.q }
    }
}
