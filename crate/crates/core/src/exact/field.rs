use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use crate::exact::{K5Elem, Rat};

/// Minimal field interface shared by [`Rat`] and [`K5Elem`] so the matrix code is written once.
pub trait FieldElem: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl FieldElem for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        crate::exact::rat(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl FieldElem for K5Elem {
    fn zero() -> Self {
        K5Elem::zero()
    }
    fn one() -> Self {
        K5Elem::one()
    }
    fn from_i64(n: i64) -> Self {
        K5Elem::from_int(n)
    }
    fn is_zero(&self) -> bool {
        K5Elem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        K5Elem::inv(self)
    }
}
