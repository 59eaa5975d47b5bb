//! Coefficient abstraction for the polynomial kernel.
//!
//! The kernel only relies on exact field arithmetic, so it is written
//! against a small trait. The crate-level aliases instantiate everything
//! at arbitrary-precision rationals, which is the only coefficient field
//! the rest of the crate uses.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact coefficient field.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Zero + One + Signed + Neg<Output = Self>
{
    /// Embeds a machine integer.
    fn from_int(n: i64) -> Self;

    /// Parses an unsigned decimal integer literal.
    fn from_int_str(digits: &str) -> Option<Self>;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Exact division; panics on a zero divisor.
    fn div_exact(&self, other: &Self) -> Self {
        self.clone() * other.inverse().expect("division by zero coefficient")
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_int_str(digits: &str) -> Option<Self> {
        digits.parse::<BigInt>().ok().map(BigRational::from_integer)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Binomial coefficient as a scalar; the arguments stay tiny here.
pub fn binomial<S: Scalar>(n: u32, k: u32) -> S {
    if k > n {
        return S::zero();
    }
    let mut num: u64 = 1;
    let mut den: u64 = 1;
    for i in 0..k.min(n - k) as u64 {
        num *= n as u64 - i;
        den *= i + 1;
    }
    S::from_int((num / den) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial::<BigRational>(4, 2), Scalar::from_int(6));
        assert_eq!(binomial::<BigRational>(5, 0), Scalar::from_int(1));
        assert_eq!(binomial::<BigRational>(3, 5), Scalar::from_int(0));
    }
}
