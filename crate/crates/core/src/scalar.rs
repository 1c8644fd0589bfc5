//! Scalar abstraction shared by every computation in the crate.
//!
//! All paper-level results are stated for [`Rational`](crate::Rational), where
//! every comparison is exact. The same code runs on `f64`/`f32` for quick
//! exploratory numbers, but tie-breaking between equally profitable prices is
//! then subject to rounding and should not be relied upon.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// Number type usable for distributions, mechanisms and closed forms.
pub trait Scalar:
    'static + Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync
{
    /// Whether a computed total mass should be accepted as exactly one.
    fn is_unit_total(&self) -> bool;

    fn from_u64_lossy(n: u64) -> Self {
        Self::from_u64(n).expect("u64 is representable in every scalar")
    }

    /// `num / den` for small integer arguments.
    fn ratio(num: u64, den: u64) -> Self {
        Self::from_u64_lossy(num) / Self::from_u64_lossy(den)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for BigRational {
    fn is_unit_total(&self) -> bool {
        *self.numer() == *self.denom() && *self.denom() == BigInt::from(1)
    }
}

impl Scalar for f64 {
    fn is_unit_total(&self) -> bool {
        (self - 1.0).abs() <= 1e-9
    }
}

impl Scalar for f32 {
    fn is_unit_total(&self) -> bool {
        (self - 1.0).abs() <= 1e-5
    }
}
