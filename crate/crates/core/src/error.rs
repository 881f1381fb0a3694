use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("operands belong to different quaternion algebras")]
    AlgebraMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not invertible: {0}")]
    Singular(String),
    #[error("result has a nonzero irrational part: {0}")]
    Irrational(String),
    #[error("not hermitian")]
    NotHermitian,
    #[error("not skew-symmetric")]
    NotSkewSymmetric,
    #[error("not a group element: {0}")]
    NotInGroup(String),
    #[error("not a Klingen parabolic member for t = {0}")]
    NotKlingen(usize),
    #[error("coordinates are not integral")]
    NotIntegral,
    #[error("level condition violated: {0}")]
    Level(String),
    #[error("point is not in the domain: {0}")]
    NotInDomain(String),
    #[error("boundary degeneracy: {0}")]
    Boundary(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("outside the region of convergence: {0}")]
    Convergence(String),
    #[error("missing Satake parameters at p = {0}")]
    MissingSatake(u64),
    #[error("local polynomial triviality cannot be asserted: {0}")]
    UnsupportedLocalFactor(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("enumeration bound too large: {0}")]
    BoundTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
