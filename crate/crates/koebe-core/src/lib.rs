//! Explicit matrix generators for constructible Koebe groups.
//!
//! A Koebe group here is a Kleinian group assembled from elementary and
//! hyperbolic triangle groups by the Klein–Maskit combination theorems.
//! This crate computes canonical generator pairs for triangle groups from
//! a signature and three parameter points, glues them by amalgamated free
//! products (type (0,4) steps) and HNN extensions (type (1,1) steps),
//! recovers the one-complex-coordinate-per-curve Teichmüller data from an
//! assembled group, and converts coordinates to plumbing parameters.
//!
//! The crate is `no_std`-compatible (with `alloc`); real-valued special
//! functions route through `libm` when the `std` feature is disabled.
//! All operations are pure functions over immutable values.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod combine;
pub mod error;
pub mod koebe;
mod math;
pub mod moebius;
pub mod sphere;
pub mod triangle;
pub mod verify;
pub mod words;

pub use combine::{
    afp_coordinate, build_afp, build_hnn, conjugating_involution, hnn_coordinate, AfpRow,
    AfpSpec, AssemblyKind, ContainmentDomain, GroupAssembly, HnnRow, HnnSpec,
};
pub use error::KoebeError;
pub use koebe::{
    build_koebe, koebe_coordinates, modular_subgroups, plumbing_parameters, AssemblyNode,
    CoordinateVector, CurveStep, KoebeGroup, ModularSubgroup, OrbifoldSpec, PantsData,
    PlumbingVector, SlotRef, StepKind,
};
pub use moebius::{cross_ratio, moebius_from_triples, ElementType, EllipticOrder, MoebiusTransform};
pub use sphere::SpherePoint;
pub use verify::{
    check_relations, jorgensen_screen, jorgensen_value, sample_limit_set, sample_limit_set_of,
    separation_check, CheckEntry, CheckStatus, OrbitSample, VerificationReport,
};
pub use triangle::{
    canonical_generators, hyperbolic_revisited_check, preferred_coordinate, protective_radii,
    well_ordered, CanonicalPair, FactorRole, PointGuard, PreferredCoordinate, ProtectiveRadii,
    RamificationValue, SignatureClass, TriangleGroupSpec,
};

/// Default absolute tolerance for equality assertions (chordal metric for
/// sphere points, entrywise after sign canonicalization for matrices).
pub const TOL: f64 = 1e-9;
