//! Scalar-generic linear algebra and probability utilities.
//!
//! Everything here is parameterized over [`Real`] so the same kernels run
//! at `f32` or `f64`; the crate root pins `f64` aliases for the pipeline.

mod dense;
mod prob;
mod rng;
mod solve;
mod sparse;

pub use dense::DenseMatrix;
pub use prob::{entropy, js_similarity, softmax, ProbabilityVector};
pub use rng::SeedStream;
pub use solve::{least_squares_weights, solve_spd, solve_spd_default, CgSolution};
pub use sparse::CsrMatrix;

/// Floating-point scalar usable by the numeric kernels: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + Default
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn of(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("scalar conversion")
    }
}

impl<T> Real for T where
    T: num_traits::Float
        + num_traits::FromPrimitive
        + std::iter::Sum
        + std::fmt::Debug
        + std::fmt::Display
        + Default
        + 'static
{
}

/// Dot product of two equal-length slices.
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

/// Euclidean norm of a slice.
pub fn norm2<T: Real>(v: &[T]) -> T {
    dot(v, v).sqrt()
}
