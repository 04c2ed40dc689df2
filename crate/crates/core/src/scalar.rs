use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Real scalar used for soft information (LLRs), channel symbols and noise.
///
/// Implemented for `f32` and `f64`. Code construction and the analytic
/// error-rate predictions are design-time computations and always run in
/// `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumCast + Default + Send + Sync + Debug + Display + 'static
{
    /// Lossy conversion from `f64`.
    #[inline]
    fn of(x: f64) -> Self {
        <Self as NumCast>::from(x).unwrap_or_else(Self::nan)
    }

    /// Lossy conversion to `f64`.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
