//! Scalar abstraction for the exact calculators.

use core::fmt::{Debug, Display};
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type usable by the exact calculators: `f32` or `f64`.
///
/// Tolerances scale with the precision of the type.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance on the total mass of a pmf.
    const SUM_TOL: Self;
    /// Absolute tolerance for equality of two probabilities.
    const PROB_EQ_TOL: Self;
    /// Absolute tolerance for equality of two cross-entropies, in bits.
    const BITS_EQ_TOL: Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f64 {
    const SUM_TOL: Self = 1e-9;
    const PROB_EQ_TOL: Self = 1e-12;
    const BITS_EQ_TOL: Self = 1e-9;
}

impl Scalar for f32 {
    const SUM_TOL: Self = 1e-5;
    const PROB_EQ_TOL: Self = 1e-6;
    const BITS_EQ_TOL: Self = 1e-4;
}

/// Neumaier-compensated sum, accumulated in iteration order.
pub fn compensated_sum<T: Scalar, I: IntoIterator<Item = T>>(terms: I) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp = comp + ((sum - t) + x);
        } else {
            comp = comp + ((x - t) + sum);
        }
        sum = t;
    }
    sum + comp
}
