//! Floating-point scalar abstraction.
//!
//! All filter math is generic over [`Scalar`], which is satisfied by `f32`
//! and `f64`. Concrete type aliases for both live at the crate root.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// Real scalar type used for weights, samples and costs: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into `T`. Panics only if `T` cannot represent
/// any finite approximation of `x`, which cannot happen for float types.
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Plain dot product; callers are responsible for checking lengths.
pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b.iter())
        .fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}
