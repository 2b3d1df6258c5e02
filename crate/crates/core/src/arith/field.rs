use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rational::{int, to_pq, Rational};
use crate::error::{Error, Result};

/// Coefficient field contract shared by q-series, matrices and eigenvector
/// solves.
///
/// Values carry their own field (a number-field element knows its modulus),
/// so constants are produced "like" an existing value.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Result<Self>;
    fn scale(&self, r: &Rational) -> Self;

    /// Whether two values live in the same field.
    fn same_field(&self, other: &Self) -> bool;

    /// `zeta_order^exponent` embedded in this field, when the field contains
    /// the needed roots of unity.
    fn root_of_unity_like(&self, order: u64, exponent: u64) -> Result<Self>;

    /// Exact rendering; rationals as `p/q`.
    fn to_exact_string(&self) -> String;
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn same_field(&self, _other: &Self) -> bool {
        true
    }
    fn root_of_unity_like(&self, order: u64, exponent: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("root of unity of order 0".into()));
        }
        let e = exponent % order;
        if e == 0 {
            Ok(int(1))
        } else if 2 * e == order {
            Ok(int(-1))
        } else {
            Err(Error::Unsupported(format!(
                "zeta_{order}^{exponent} is not rational"
            )))
        }
    }
    fn to_exact_string(&self) -> String {
        to_pq(self)
    }
}
