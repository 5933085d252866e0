//! Real scalar abstraction.
//!
//! Everything numeric in the crate is generic over [`Real`], implemented for
//! `f32` and `f64`. Matrices are dense complex matrices over that real type.
//! Rank and membership thresholds are tied to the scalar's precision.

use nalgebra::{Complex, DMatrix, DVector, RealField};
use num_traits::{FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub type Cplx<T> = Complex<T>;
pub type CMat<T> = DMatrix<Complex<T>>;
pub type CVec<T> = DVector<Complex<T>>;

/// Real field usable as the base scalar of all matrices.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Serialize + DeserializeOwned + Send + Sync {
    /// Relative singular-value cutoff below which a direction counts as zero.
    fn rank_rtol() -> Self;
    /// Default absolute Frobenius tolerance on the surface relator.
    fn relator_tol() -> Self;
    /// Tolerance for membership checks (determinant, centrality, unitarity).
    fn check_tol() -> Self;
}

impl Real for f64 {
    fn rank_rtol() -> Self {
        1e-8
    }
    fn relator_tol() -> Self {
        1e-9
    }
    fn check_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn rank_rtol() -> Self {
        1e-4
    }
    fn relator_tol() -> Self {
        1e-4
    }
    fn check_tol() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// A fixed absolute tolerance, raised to [`Real::check_tol`] for scalar
/// types too coarse to meet it.
#[inline]
pub fn tol<T: Real>(x: f64) -> T {
    lit::<T>(x).max(T::check_tol())
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `e^{iθ}`.
pub fn unit_phase<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Principal n-th roots of unity `e^{2πik/n}`, `k = 0..n`.
pub fn roots_of_unity<T: Real>(n: usize) -> Vec<Complex<T>> {
    (0..n).map(|k| unit_phase(T::two_pi() * lit::<T>(k as f64) / lit::<T>(n as f64))).collect()
}
