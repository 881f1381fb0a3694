use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::embed::MatQuat;
use super::mat::Mat;
use super::quat::{Quat, QuatAlgebra, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    pub alpha: i64,
    pub beta: i64,
}

/// A quaternion as four "num/den" coordinate strings.
pub type QuatJson = [String; 4];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatQuatJson {
    pub algebra: AlgebraJson,
    pub matrix: Vec<Vec<QuatJson>>,
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl From<QuatAlgebra> for AlgebraJson {
    fn from(a: QuatAlgebra) -> Self {
        AlgebraJson { alpha: a.alpha(), beta: a.beta() }
    }
}

impl AlgebraJson {
    pub fn to_algebra(&self) -> Result<QuatAlgebra> {
        QuatAlgebra::new(self.alpha, self.beta)
    }
}

pub fn quat_to_json(x: &Quat) -> QuatJson {
    x.coords().clone().map(|c| rational_to_string(&c))
}

pub fn quat_from_json(alg: QuatAlgebra, j: &QuatJson) -> Result<Quat> {
    Ok(alg.elem([parse_rational(&j[0])?, parse_rational(&j[1])?, parse_rational(&j[2])?, parse_rational(&j[3])?]))
}

pub fn mat_to_json(m: &MatQuat) -> MatQuatJson {
    MatQuatJson {
        algebra: m.zero_elem().algebra().into(),
        matrix: m.row_vecs().iter().map(|r| r.iter().map(quat_to_json).collect()).collect(),
    }
}

pub fn mat_from_json(j: &MatQuatJson) -> Result<MatQuat> {
    let alg = j.algebra.to_algebra()?;
    let rows = j
        .matrix
        .iter()
        .map(|r| r.iter().map(|e| quat_from_json(alg, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows, &alg.zero())
}
