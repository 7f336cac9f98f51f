//! Scalar abstraction for the numeric kernels.
//!
//! The low-level kernels (activations, DFT, power iteration) are generic over
//! [`Scalar`] so they can be instantiated at `f32` or `f64`. The rest of the
//! crate works at the concrete alias [`crate::Real`].

use num_traits::{Float, FromPrimitive};

pub trait Scalar: Float + FromPrimitive + std::fmt::Debug + Send + Sync + 'static {
    /// Shorthand for lossless-enough conversion of literals and counts.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
