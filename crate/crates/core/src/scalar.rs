use std::fmt::{Debug, Display};
use std::str::FromStr;

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar usable by the graph, operator and spectral layers.
///
/// Everything numeric in those layers goes through `RealField`, so `f32` and
/// `f64` both work. Tolerances quoted for double precision are widened with
/// [`Scalar::tol`] when a narrower type is used.
pub trait Scalar:
    RealField + Copy + FromPrimitive + ToPrimitive + FromStr + Display + Debug + Send + Sync + 'static
{
    /// Lossy conversion from `f64`.
    fn of(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 is representable")
    }

    fn of_usize(v: usize) -> Self {
        Self::of(v as f64)
    }

    fn f64(self) -> f64 {
        ToPrimitive::to_f64(&self).expect("scalar converts to f64")
    }

    /// Machine epsilon of the type.
    fn machine_eps() -> f64;

    /// Scale a double-precision tolerance to this type's precision.
    fn tol(base: f64) -> Self {
        let ratio = (Self::machine_eps() / f64::EPSILON).sqrt();
        Self::of(base * ratio)
    }
}

impl Scalar for f64 {
    fn machine_eps() -> f64 {
        f64::EPSILON
    }
}

impl Scalar for f32 {
    fn machine_eps() -> f64 {
        f32::EPSILON as f64
    }
}

/// Tolerance for spectral containment and eigen-residual checks.
pub const SPECTRAL_TOL: f64 = 1e-9;
/// Tolerance for quadratic-form identities.
pub const FORM_TOL: f64 = 1e-10;
/// Relative width used to merge nearby eigenvalues into one atom.
pub const ATOM_MERGE_TOL: f64 = 1e-8;
/// Round-off below this magnitude in a measure mass is clamped to zero.
pub const MASS_CLAMP: f64 = 1e-12;
