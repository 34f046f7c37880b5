//! Scalar abstraction for the real-valued carriers.
//!
//! All magnitude and angle arithmetic in the library is generic over a
//! floating-point scalar. Tropical numbers are stored directly as scalars
//! with `neg_infinity()` playing the role of the additive neutral element,
//! and angles are kept canonicalized to `[0, 2π)`.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar underlying the tropical, phase and complex carriers.
///
/// Implemented by `f32` and `f64`; the crate-root aliases fix `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// Full turn, `2π`.
pub fn tau<R: Real>() -> R {
    R::PI() + R::PI()
}

/// Default tolerance used by the toleranced equality policy: `1e-9`.
pub fn default_tolerance<R: Real>() -> R {
    R::from_f64(1e-9).expect("tolerance representable")
}

/// Reduces an angle to the canonical range `[0, 2π)`.
pub fn wrap_angle<R: Real>(theta: R) -> R {
    let t = tau::<R>();
    let mut a = theta % t;
    if a < R::zero() {
        a = a + t;
    }
    // `theta % tau` of a tiny negative angle can round back up to tau itself.
    if a >= t {
        a = a - t;
    }
    if a == R::zero() {
        // normalize -0.0
        a = R::zero();
    }
    a
}

/// Circular distance between two angles, in `[0, π]`.
pub fn circ_dist<R: Real>(a: R, b: R) -> R {
    let t = tau::<R>();
    let d = wrap_angle(a - b);
    d.min(t - d)
}

/// Toleranced comparisons for log-magnitudes and angles.
///
/// Two log-magnitudes are equal iff `|Δ| ≤ tol`; two angles are equal iff
/// their circular distance is `≤ tol`. `-∞` is equal only to itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<R> {
    pub eps: R,
}

impl<R: Real> Tolerance<R> {
    pub fn new(eps: R) -> Self {
        Tolerance { eps }
    }

    pub fn default_policy() -> Self {
        Tolerance { eps: default_tolerance() }
    }

    /// Magnitude equality. Handles the `-∞` bottom element explicitly.
    pub fn mag_eq(&self, a: R, b: R) -> bool {
        match (a.is_infinite() && a < R::zero(), b.is_infinite() && b < R::zero()) {
            (true, true) => true,
            (false, false) => (a - b).abs() <= self.eps,
            _ => false,
        }
    }

    /// Strict magnitude dominance: `a > b` and not toleranced-equal.
    pub fn mag_gt(&self, a: R, b: R) -> bool {
        !self.mag_eq(a, b) && a > b
    }

    /// `a ≤ b` up to tolerance.
    pub fn mag_le(&self, a: R, b: R) -> bool {
        a <= b || self.mag_eq(a, b)
    }

    /// Angle equality as circular distance.
    pub fn angle_eq(&self, a: R, b: R) -> bool {
        circ_dist(a, b) <= self.eps
    }

    /// True when two angles are antipodal (separated by π) up to tolerance.
    pub fn angle_antipodal(&self, a: R, b: R) -> bool {
        (circ_dist(a, b) - R::PI()).abs() <= self.eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_angle_canonical_range() {
        let t = tau::<f64>();
        assert_eq!(wrap_angle(0.0_f64), 0.0);
        assert!((wrap_angle(t + 0.5) - 0.5).abs() < 1e-15);
        assert!((wrap_angle(-0.5) - (t - 0.5)).abs() < 1e-15);
        let w = wrap_angle(-1e-20_f64);
        assert!((0.0..t).contains(&w));
    }

    #[test]
    fn circ_dist_symmetric_and_wrapping() {
        assert!((circ_dist(0.1_f64, tau::<f64>() - 0.1) - 0.2).abs() < 1e-12);
        assert_eq!(circ_dist(1.0_f64, 1.0), 0.0);
    }

    #[test]
    fn tolerance_handles_bottom() {
        let tol = Tolerance::new(1e-9_f64);
        assert!(tol.mag_eq(f64::NEG_INFINITY, f64::NEG_INFINITY));
        assert!(!tol.mag_eq(f64::NEG_INFINITY, -1e18));
        assert!(tol.mag_gt(0.0, f64::NEG_INFINITY));
        assert!(tol.mag_eq(1.0, 1.0 + 5e-10));
    }
}
