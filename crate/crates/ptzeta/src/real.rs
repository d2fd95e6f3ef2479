use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Scalar type the numerical core is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssignOps + Debug + Display + Default + Send + Sync + 'static
{
    fn euler_gamma() -> Self;

    /// Nearest representable value of an exact rational.
    fn from_rational(r: &BigRational) -> Self {
        Self::from_f64(r.to_f64().unwrap_or(f64::NAN)).unwrap()
    }

    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap()
    }

    fn int(n: i64) -> Self {
        Self::from_i64(n).unwrap()
    }

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl Real for f64 {
    fn euler_gamma() -> Self {
        0.577_215_664_901_532_9
    }
}

impl Real for f32 {
    fn euler_gamma() -> Self {
        0.577_215_7
    }
}
