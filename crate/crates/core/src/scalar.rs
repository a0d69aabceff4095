//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};
use serde::Serialize;

/// Floating-point type the model is evaluated in.
///
/// Implemented for `f32` and `f64`. The row-stochastic tolerance is tied to the
/// precision of the type: `1e-12` is only meaningful in double precision.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Serialize + Send + Sync + 'static
{
    /// Maximum row-sum deviation accepted for a row-stochastic matrix.
    const STOCHASTIC_TOL: f64;

    /// Converts an `f64` literal. Panics only for values that overflow the type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Scalar for f64 {
    const STOCHASTIC_TOL: f64 = 1e-12;
}

impl Scalar for f32 {
    const STOCHASTIC_TOL: f64 = 1e-5;
}
