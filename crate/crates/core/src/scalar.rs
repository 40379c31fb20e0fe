use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::float::TotalOrder;
use num_traits::{Float, FromPrimitive, NumCast};
use rand::distributions::uniform::SampleUniform;

/// Floating point scalar used throughout the crate: `f32` or `f64`.
pub trait Scalar:
    Float
    + TotalOrder
    + FromPrimitive
    + NumCast
    + SampleUniform
    + Default
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant into this scalar (rounding for `f32`).
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite constant")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Smallest value allowed for a parameter whose nominal lower bound is zero.
/// Keeps logarithms of pheromone levels finite.
pub const EPSILON: f64 = 0.000000001;
