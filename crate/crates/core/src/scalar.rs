//! Scalar abstraction shared by every numerical module.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar backing states, tensors, and norms.
///
/// Implemented for `f32` and `f64`. The associated tolerances are what each
/// precision can actually deliver on the exact-arithmetic checks this crate
/// performs (generator algebra, trace/hermiticity validation, residues).
pub trait Scalar: RealField + FromPrimitive + ToPrimitive + Copy {
    /// Absolute tolerance for density-matrix validity checks: unit trace,
    /// hermiticity, and eigenvalue positivity.
    fn state_tol() -> Self;

    /// Residue threshold separating rounding noise from caller bugs, e.g.
    /// the imaginary part of an expectation value that should be real, or
    /// the norm deviation of a vector that should be normalized.
    fn residue_tol() -> Self;

    /// Tolerance for exact generator algebra (orthogonality, tracelessness).
    /// Generators are rationals times square roots, so there is plenty of
    /// headroom below this.
    fn algebra_tol() -> Self;

    /// Slack added to theoretical bounds when checking sampled norms, so a
    /// last-ulp rounding of a saturating state cannot fail a sound scan.
    fn bound_slack() -> Self;

    fn finite(self) -> bool;

    fn from_usize_c(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar")
    }

    fn from_f64_c(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    fn to_f64_c(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn state_tol() -> Self {
        1e-10
    }
    fn residue_tol() -> Self {
        1e-8
    }
    fn algebra_tol() -> Self {
        1e-12
    }
    fn bound_slack() -> Self {
        1e-9
    }
    fn finite(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn state_tol() -> Self {
        1e-4
    }
    fn residue_tol() -> Self {
        1e-3
    }
    fn algebra_tol() -> Self {
        1e-5
    }
    fn bound_slack() -> Self {
        1e-4
    }
    fn finite(self) -> bool {
        self.is_finite()
    }
}
