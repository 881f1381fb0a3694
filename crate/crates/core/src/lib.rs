//! Exact and numeric machinery for quaternionic unitary groups of a definite
//! quaternion algebra: the groups themselves, their type D symmetric spaces,
//! the doubling embeddings, and the Eisenstein series and L-function formulas
//! attached to them.

pub mod doubling;
pub mod eis;
pub mod error;
pub mod groups;
pub mod lfun;
pub mod linalg;
pub mod qalg;
pub mod symspace;
pub mod tol;

pub use error::{Error, Result};
