use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficient ring of a truncated series.
///
/// Only exact operations are required; division is limited to unit inversion
/// and exact division by a machine integer (used by the half-sum form of even
/// extraction).
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Inverse if the element is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
    /// `self / d` when the division is exact.
    fn div_exact(&self, d: i64) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn div_exact(&self, d: i64) -> Option<Self> {
        let d = BigInt::from(d);
        if Zero::is_zero(&d) {
            return None;
        }
        let (quot, rem) = self.div_rem(&d);
        Zero::is_zero(&rem).then_some(quot)
    }
}
