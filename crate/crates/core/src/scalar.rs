use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the library is generic over.
///
/// Implemented for `f32` and `f64` through the blanket impl; all numeric code
/// in the crate is written against this bound.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + Sum<Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts a sequence index; panics only if the index is not
    /// representable, which cannot happen for the horizons this crate targets.
    fn from_index(n: usize) -> Self {
        Self::from_usize(n).expect("sequence index representable in scalar type")
    }

    /// Converts an `f64` configuration value such as a tolerance.
    fn from_config(x: f64) -> Self {
        Self::from_f64(x).expect("configuration value representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + AddAssign
        + Sum<T>
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
