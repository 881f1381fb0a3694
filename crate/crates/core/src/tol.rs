use serde::{Deserialize, Serialize};

/// Numeric tolerances used by membership, closure and positivity checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute tolerance for matrix equalities.
    pub eq: f64,
    /// Tolerance for closure, cocycle and transformation laws.
    pub closure: f64,
    /// Margin on the smallest eigenvalue for positivity.
    pub pos: f64,
    /// Largest accepted condition number before an inverse is refused.
    pub max_cond: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eq: 1e-9, closure: 1e-8, pos: 1e-9, max_cond: 1e12 }
    }
}
