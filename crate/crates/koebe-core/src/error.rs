//! Error type shared by all modules.

use alloc::boxed::Box;
use core::fmt;

/// Errors raised by construction and classification operations.
///
/// Numerical near-misses inside tolerances never error; these variants
/// signal genuinely invalid inputs or internal contract violations.
#[derive(Clone, Debug, PartialEq)]
pub enum KoebeError {
    /// Two of the supplied points coincide (within the chordal tolerance),
    /// or a matrix is singular.
    DegenerateConfiguration,
    /// The operation is undefined for the identity element.
    IdentityElement,
    /// The element does not have the type the operation requires.
    WrongElementType,
    /// No probe point produced a decisive right/left orientation.
    AmbiguousOrientation,
    /// The signature is outside the parametrized classes (e.g. first
    /// ramification value not greater than 2).
    UnsupportedSignature,
    /// A point expected on the geodesic L (on the closed Delta side) is not.
    NotOnGeodesic,
    /// The (class, class, weight) combination has no table row.
    UnsupportedSignatureRow,
    /// A combination factor has elliptic signature (nu,2,2), which admits
    /// no coordinate.
    EllipticDihedralFactor,
    /// A closed-form construction failed its own verification.
    InternalInconsistency(&'static str),
    /// A gluing step references a part of the group that is not built yet,
    /// or no admissible re-presentation of the host pants exists.
    GluingOrderInvalid,
    /// A coordinate lies outside the outer domain V_j of Theorem-1 type
    /// (upper half plane for infinite weight, unit disc for finite).
    CoordinateOutsideOuterDomain,
    /// The orbifold data violates a structural invariant.
    InvalidSpec(&'static str),
    /// A gluing step failed; carries the curve id and the cause.
    AtCurve(usize, Box<KoebeError>),
}

impl KoebeError {
    /// Unwraps curve-context wrappers down to the underlying error.
    pub fn root_cause(&self) -> &KoebeError {
        match self {
            KoebeError::AtCurve(_, inner) => inner.root_cause(),
            other => other,
        }
    }
}

impl fmt::Display for KoebeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KoebeError::DegenerateConfiguration => write!(f, "degenerate point configuration"),
            KoebeError::IdentityElement => write!(f, "operation undefined for the identity"),
            KoebeError::WrongElementType => write!(f, "element has the wrong type"),
            KoebeError::AmbiguousOrientation => write!(f, "right/left orientation is ambiguous"),
            KoebeError::UnsupportedSignature => write!(f, "signature outside supported classes"),
            KoebeError::NotOnGeodesic => write!(f, "point not on the geodesic L"),
            KoebeError::UnsupportedSignatureRow => write!(f, "no table row for this combination"),
            KoebeError::EllipticDihedralFactor => {
                write!(f, "elliptic (nu,2,2) factors admit no coordinate")
            }
            KoebeError::InternalInconsistency(what) => {
                write!(f, "internal inconsistency: {what}")
            }
            KoebeError::GluingOrderInvalid => write!(f, "gluing step references unbuilt data"),
            KoebeError::CoordinateOutsideOuterDomain => {
                write!(f, "coordinate outside the outer domain V_j")
            }
            KoebeError::InvalidSpec(what) => write!(f, "invalid orbifold spec: {what}"),
            KoebeError::AtCurve(id, inner) => write!(f, "curve {id}: {inner}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for KoebeError {}
