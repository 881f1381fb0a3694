use std::fmt::Debug;

/// Minimal ring interface shared by the exact scalar types.
///
/// Zero and one are produced from an existing element because the scalars
/// carry their structure constants (the algebra or the quadratic field).
pub trait Ring: Clone + PartialEq + Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Two-sided inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// The involution: main involution on quaternions, Galois conjugation on the quadratic field.
    fn conj(&self) -> Self;
}
