//! The coefficient ring shared by every other module.
//!
//! Two instances exist: [`Rational`] (arbitrary-precision, always reduced)
//! and [`Poly`](crate::Poly), dense univariate polynomials over
//! [`Rational`] in a parameter written `u`.

use std::fmt::{Debug, Display};
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; reduced, with positive denominator.
pub type Rational = BigRational;

/// An exact commutative ring with identity in which units can be detected
/// and exact quotients computed.
pub trait Coeff:
    Clone + PartialEq + Debug + Display + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Send + Sync + 'static
{
    /// Embeds a rational scalar.
    fn from_rational(r: &Rational) -> Self;

    /// Multiplicative inverse, if `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;

    /// The quotient `self / d` when `d` divides `self` exactly.
    fn exact_div(&self, d: &Self) -> Result<Self>;

    /// Absolute value, where the ring has a canonical one.
    fn try_abs(&self) -> Option<Self> {
        None
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn is_unit(&self) -> bool {
        self.try_inverse().is_some()
    }

    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r)
    }
}

impl Coeff for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / d)
    }

    fn try_abs(&self) -> Option<Self> {
        Some(self.abs())
    }
}

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `n / d`; panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient as a big integer; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
