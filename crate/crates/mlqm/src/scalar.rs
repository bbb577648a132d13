//! Scalar abstraction for the numeric core.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar every routine in this crate is generic over.
///
/// `f32` and `f64` implement it. The helper constructors panic only when a
/// compile-time constant is not representable, which cannot happen for the
/// two provided impls.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + 'static
{
    /// Lift an `f64` constant into the scalar type (rounding for `f32`).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite constant must be representable")
    }

    /// Lift an index or count into the scalar type.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("index must be representable")
    }

    /// `1/2`, used pervasively by the closed forms.
    fn half() -> Self {
        Self::of(0.5)
    }

    /// `2`.
    fn two() -> Self {
        Self::of(2.0)
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of_halves<T: Real>(n: usize) -> T {
        (0..n).map(|_| T::half()).sum()
    }

    #[test]
    fn lifts_are_exact_for_small_integers() {
        assert_eq!(f64::of_usize(41), 41.0);
        assert_eq!(f32::of_usize(41), 41.0f32);
        assert_eq!(f64::two() * f64::half(), 1.0);
    }

    #[test]
    fn generic_code_compiles_for_both_widths() {
        assert_eq!(sum_of_halves::<f64>(8), 4.0);
        assert_eq!(sum_of_halves::<f32>(8), 4.0f32);
    }
}
