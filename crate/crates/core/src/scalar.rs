//! Real scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the state algebra can be instantiated with (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal; exact for `f64`, rounded for `f32`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Converts back to `f64` for reporting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// cos(kπ) for integer k, evaluated exactly as ±1.
pub(crate) fn cos_k_pi<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}
