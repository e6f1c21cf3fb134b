//! Scalar abstraction: every quantity in this crate is generic over a
//! floating-point type implementing [`Real`].
//!
//! The crate root exports `f64` aliases for the common types; `f32` works
//! too but the documented tolerances assume double precision.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable throughout the crate.
///
/// A blanket impl covers any type with the listed bounds, so `f32` and `f64`
/// are both `Real` out of the box.
pub trait Real:
    Float
    + FloatConst
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

impl<T> Real for T where
    T: Float
        + FloatConst
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

/// Converts an `f64` constant into the working scalar type.
///
/// Panics if the conversion is not representable, which cannot happen for
/// the finite literals used internally.
#[inline]
pub fn r64<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("finite f64 constant must convert")
}

/// Converts a small non-negative integer exactly.
#[inline]
pub fn rint<R: Real>(n: usize) -> R {
    R::from_usize(n).expect("small integer must convert")
}
