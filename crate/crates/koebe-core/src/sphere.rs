//! Points of the extended complex plane.

use core::fmt;

use num_complex::Complex64;

use crate::math;

/// A point of the Riemann sphere: a finite complex number or infinity.
///
/// Arithmetic with the point at infinity is handled by explicit case
/// analysis, never through IEEE infinities; finite values are never NaN.
#[derive(Clone, Copy, Debug)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn infinity() -> Self {
        SpherePoint::Infinity
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    /// The finite value, if any.
    pub fn value(&self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    /// Chordal distance on the sphere of diameter 2.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            (SpherePoint::Finite(z), SpherePoint::Infinity)
            | (SpherePoint::Infinity, SpherePoint::Finite(z)) => {
                2.0 / math::sqrt(1.0 + z.norm_sqr())
            }
            (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
                2.0 * (z - w).norm()
                    / math::sqrt((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr()))
            }
        }
    }

    pub fn approx_eq(&self, other: &SpherePoint, tol: f64) -> bool {
        self.chordal_distance(other) <= tol
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Infinity => write!(f, "inf"),
            SpherePoint::Finite(z) => {
                if z.im >= 0.0 {
                    write!(f, "{}+{}i", z.re, z.im)
                } else {
                    write!(f, "{}{}i", z.re, z.im)
                }
            }
        }
    }
}

/// True if the points are pairwise distinct beyond the chordal tolerance.
pub(crate) fn pairwise_distinct(points: &[SpherePoint], tol: f64) -> bool {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].approx_eq(&points[j], tol) {
                return false;
            }
        }
    }
    true
}
