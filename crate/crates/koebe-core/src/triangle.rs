//! Canonical generators for triangle groups, well-ordering, preferred
//! local coordinates, and protective disc radii.
//!
//! A triangle group is determined by a (0,3) signature and three distinct
//! parameter points. The canonical pair (A, B) is computed from closed
//! forms at standard parameters and conjugated to the requested ones, so
//! the construction is equivariant: the pair for (T(a),T(b),T(c)) is the
//! T-conjugate of the pair for (a,b,c).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::KoebeError;
use crate::math;
use crate::moebius::{
    cross_ratio, map_to_standard, moebius_from_triples, ElementType, MoebiusTransform,
};
use crate::sphere::{pairwise_distinct, SpherePoint};
use crate::words::for_each_reduced_word;

/// A ramification value: an integer >= 2 or infinity (a puncture).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RamificationValue {
    Finite(u32),
    Infinity,
}

impl RamificationValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, RamificationValue::Infinity)
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            RamificationValue::Finite(n) => Some(*n),
            RamificationValue::Infinity => None,
        }
    }

    /// cos(pi/nu); 1 for infinite values.
    pub fn q(&self) -> f64 {
        match self {
            RamificationValue::Finite(n) => math::cos(core::f64::consts::PI / *n as f64),
            RamificationValue::Infinity => 1.0,
        }
    }

    /// sin(pi/nu); 0 for infinite values.
    pub fn p(&self) -> f64 {
        match self {
            RamificationValue::Finite(n) => math::sin(core::f64::consts::PI / *n as f64),
            RamificationValue::Infinity => 0.0,
        }
    }
}

impl core::fmt::Display for RamificationValue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RamificationValue::Finite(n) => write!(f, "{n}"),
            RamificationValue::Infinity => write!(f, "inf"),
        }
    }
}

/// Sign of 1 - (1/nu1 + 1/nu2 + 1/nu3), computed exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

pub fn signature_class(nu: &[RamificationValue; 3]) -> SignatureClass {
    // Compare sum 1/nu_i with 1 in exact arithmetic over u128.
    let mut num: u128 = 0;
    let mut den: u128 = 1;
    for v in nu {
        if let RamificationValue::Finite(n) = v {
            num = num * (*n as u128) + den;
            den *= *n as u128;
        }
    }
    match num.cmp(&den) {
        core::cmp::Ordering::Less => SignatureClass::Hyperbolic,
        core::cmp::Ordering::Equal => SignatureClass::Parabolic,
        core::cmp::Ordering::Greater => SignatureClass::Elliptic,
    }
}

/// A (0,3) signature with three distinct parameter points.
#[derive(Clone, Copy, Debug)]
pub struct TriangleGroupSpec {
    pub nu: [RamificationValue; 3],
    pub params: [SpherePoint; 3],
}

impl TriangleGroupSpec {
    pub fn new(
        nu: [RamificationValue; 3],
        params: [SpherePoint; 3],
    ) -> Result<Self, KoebeError> {
        for v in &nu {
            if let RamificationValue::Finite(n) = v {
                if *n < 2 {
                    return Err(KoebeError::UnsupportedSignature);
                }
            }
        }
        if let RamificationValue::Finite(n) = nu[0] {
            if n <= 2 {
                return Err(KoebeError::UnsupportedSignature);
            }
        }
        if !pairwise_distinct(&params, 1e-12) {
            return Err(KoebeError::DegenerateConfiguration);
        }
        Ok(TriangleGroupSpec { nu, params })
    }

    pub fn standard(nu: [RamificationValue; 3]) -> Result<Self, KoebeError> {
        TriangleGroupSpec::new(nu, standard_params())
    }

    pub fn class(&self) -> SignatureClass {
        signature_class(&self.nu)
    }
}

pub fn standard_params() -> [SpherePoint; 3] {
    [
        SpherePoint::Infinity,
        SpherePoint::finite(0.0, 0.0),
        SpherePoint::finite(1.0, 0.0),
    ]
}

/// Derived trigonometric scalars of a signature; l, k, h only exist for
/// hyperbolic signatures with finite first value (k, h additionally need
/// a finite second value for h's generic form).
#[derive(Clone, Copy, Debug)]
pub struct TriangleScalars {
    pub q: [f64; 3],
    pub p: [f64; 3],
    pub l: Option<f64>,
    pub k: Option<f64>,
    pub h: Option<f64>,
}

impl TriangleScalars {
    fn from_signature(nu: &[RamificationValue; 3]) -> Self {
        let q = [nu[0].q(), nu[1].q(), nu[2].q()];
        let p = [nu[0].p(), nu[1].p(), nu[2].p()];
        let mut s = TriangleScalars {
            q,
            p,
            l: None,
            k: None,
            h: None,
        };
        if signature_class(nu) == SignatureClass::Hyperbolic && !nu[0].is_infinite() {
            let l2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + 2.0 * q[0] * q[1] * q[2] - 1.0;
            let l = math::sqrt(l2);
            let k = (q[1] + q[0] * q[2] + q[0] * l) / (p[0] * l);
            s.l = Some(l);
            s.k = Some(k);
            if !nu[1].is_infinite() {
                s.h = Some(k * p[0] * p[1] / (q[0] * q[1] + q[2] + l));
            }
        }
        s
    }
}

/// The canonical generator pair of a triangle group.
#[derive(Clone, Copy, Debug)]
pub struct CanonicalPair {
    pub a: MoebiusTransform,
    pub b: MoebiusTransform,
    pub scalars: TriangleScalars,
    /// For signatures (nu,2,2): the unique fourth point d with
    /// parameters (a,b,c) and (a,b,d) giving the same group.
    pub fourth_point: Option<SpherePoint>,
    /// Set for (nu,2,2): the parameters do not determine the generators
    /// uniquely, so no coordinate can be based on this group.
    pub non_unique: bool,
}

impl CanonicalPair {
    pub fn ab(&self) -> MoebiusTransform {
        self.a.compose(&self.b)
    }
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// True if the trace matches the geometric order nu (|tr| = 2 for
/// parabolic, |tr^2 - 4cos^2(pi/n)| small otherwise).
pub(crate) fn trace_matches_order(m: &MoebiusTransform, nu: RamificationValue, tol: f64) -> bool {
    let t2 = m.trace() * m.trace();
    let q = nu.q();
    (t2 - 4.0 * q * q).norm() < tol
}

fn std_pair_raw(
    nu: &[RamificationValue; 3],
) -> Result<(MoebiusTransform, MoebiusTransform, Option<SpherePoint>, bool), KoebeError> {
    use RamificationValue::*;
    let s = TriangleScalars::from_signature(nu);
    let [q1, q2, q3] = s.q;
    let [p1, p2, _] = s.p;
    match signature_class(nu) {
        SignatureClass::Hyperbolic => {
            if nu[0].is_infinite() {
                // A = [-1,-2;0,-1], B = [-q2, b; q2+q3, -q2] with
                // b = (q2^2-1)/(q2+q3).
                let a = MoebiusTransform::new(c64(-1.0, 0.0), c64(-2.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0))?;
                let bb = (q2 * q2 - 1.0) / (q2 + q3);
                let b = MoebiusTransform::new(c64(-q2, 0.0), c64(bb, 0.0), c64(q2 + q3, 0.0), c64(-q2, 0.0))?;
                Ok((a, b, None, false))
            } else {
                let l = s.l.expect("hyperbolic finite has l");
                let k = s.k.expect("hyperbolic finite has k");
                let a = MoebiusTransform::new(
                    c64(-q1, 0.0),
                    c64(-k * p1, 0.0),
                    c64(p1 / k, 0.0),
                    c64(-q1, 0.0),
                )?;
                let b = if let Some(h) = s.h {
                    MoebiusTransform::new(
                        c64(-q2, 0.0),
                        c64(-h * p2, 0.0),
                        c64(p2 / h, 0.0),
                        c64(-q2, 0.0),
                    )?
                } else {
                    // nu2 infinite: the p2 -> 0 limit of the generic form,
                    // parabolic fixing 0.
                    let c = (q1 + q3 + l) / (k * p1);
                    MoebiusTransform::new(c64(-1.0, 0.0), c64(0.0, 0.0), c64(c, 0.0), c64(-1.0, 0.0))?
                };
                Ok((a, b, None, false))
            }
        }
        SignatureClass::Parabolic => {
            if *nu == [Infinity, Finite(2), Finite(2)] {
                // A(z) = z+2, B(z) = -z.
                let a = MoebiusTransform::new(c64(1.0, 0.0), c64(2.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0))?;
                let b = MoebiusTransform::new(c64(-1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0))?;
                return Ok((a, b, None, false));
            }
            // All finite: A(z) = e^{2 pi i/nu1} z; B fixes infinity and 1
            // with multiplier exp(+-2 pi i/nu2), the sign fixed by the
            // order of AB.
            let n1 = nu[0].finite().ok_or(KoebeError::UnsupportedSignature)?;
            let n2 = nu[1].finite().ok_or(KoebeError::UnsupportedSignature)?;
            let lambda = unit(2.0 * core::f64::consts::PI / n1 as f64);
            let a = MoebiusTransform::new(lambda, c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0))?;
            let mut found: Option<MoebiusTransform> = None;
            for sign in [1.0, -1.0] {
                let mu = unit(sign * 2.0 * core::f64::consts::PI / n2 as f64);
                let b = MoebiusTransform::new(mu, 1.0 - mu, c64(0.0, 0.0), c64(1.0, 0.0))?;
                let ab = a.compose(&b);
                if ab.classify().finite_order() == nu[2].finite()
                    && trace_matches_order(&ab, nu[2], 1e-9)
                {
                    match found {
                        None => found = Some(b),
                        Some(prev) if prev.approx_eq(&b, 1e-12) => {}
                        Some(_) => {
                            return Err(KoebeError::InternalInconsistency(
                                "both multiplier signs give the required product order",
                            ))
                        }
                    }
                }
            }
            let b = found.ok_or(KoebeError::InternalInconsistency(
                "no multiplier sign gives the required product order",
            ))?;
            Ok((a, b, None, false))
        }
        SignatureClass::Elliptic => {
            let n1 = nu[0].finite().ok_or(KoebeError::UnsupportedSignature)?;
            if nu[1] == Finite(2) && nu[2] == Finite(2) {
                // A(z) = e^{2 pi i/nu} z, B(z) = 1/z; B also fixes -1.
                let lambda = unit(2.0 * core::f64::consts::PI / n1 as f64);
                let a = MoebiusTransform::new(lambda, c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0))?;
                let b = MoebiusTransform::new(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0))?;
                return Ok((a, b, Some(SpherePoint::finite(-1.0, 0.0)), true));
            }
            if nu[2] != Finite(2) || nu[1] == Finite(2) {
                // The construction orders the single value 2 last.
                return Err(KoebeError::UnsupportedSignature);
            }
            // Exactly one ramification value 2: B has negative trace,
            // entries pinned by B(1)=1 being the right fixed point,
            // det 1, tr B = -2 q2 and tr AB = 0.
            let lam = unit(core::f64::consts::PI / n1 as f64);
            let a = MoebiusTransform::new(lam * lam, c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0))?;
            let i = c64(0.0, 1.0);
            let b1 = -i * q2 * lam.conj() / p1;
            let b4 = -lam * lam * b1;
            let b2 = -q2 - b1 - i * p2;
            let b3 = q2 + b1 - i * p2;
            let b = MoebiusTransform::new(b1, b2, b3, b4)?;
            Ok((a, b, None, false))
        }
    }
}

fn params_are_standard(params: &[SpherePoint; 3]) -> bool {
    matches!(params[0], SpherePoint::Infinity)
        && matches!(params[1], SpherePoint::Finite(z) if z == c64(0.0, 0.0))
        && matches!(params[2], SpherePoint::Finite(z) if z == c64(1.0, 0.0))
}

/// Canonical generators A, B of the triangle group for the given
/// signature and parameters, with |A| = nu1, |B| = nu2, |AB| = nu3,
/// A and B primitive and geometric where elliptic.
pub fn canonical_generators(spec: &TriangleGroupSpec) -> Result<CanonicalPair, KoebeError> {
    let (a0, b0, d0, non_unique) = std_pair_raw(&spec.nu)?;
    let (a, b, fourth) = if params_are_standard(&spec.params) {
        (a0, b0, d0)
    } else {
        let t = moebius_from_triples(standard_params(), spec.params)?;
        let fourth = d0.map(|d| t.apply(d));
        (a0.conjugate_by(&t), b0.conjugate_by(&t), fourth)
    };
    let ab = a.compose(&b);
    for (m, nu) in [(&a, spec.nu[0]), (&b, spec.nu[1]), (&ab, spec.nu[2])] {
        if !trace_matches_order(m, nu, 1e-8) {
            return Err(KoebeError::InternalInconsistency(
                "constructed generator has the wrong trace",
            ));
        }
    }
    Ok(CanonicalPair {
        a,
        b,
        scalars: TriangleScalars::from_signature(&spec.nu),
        fourth_point: fourth,
        non_unique,
    })
}

/// Membership in the disc Delta to the left of the circle through
/// (a,b,c): the image under the map sending (a,b,c) to (inf,0,1) has
/// positive imaginary part.
pub(crate) fn is_in_delta(
    z: SpherePoint,
    params: &[SpherePoint; 3],
) -> Result<bool, KoebeError> {
    let s = map_to_standard(params[0], params[1], params[2])?;
    match s.apply(z) {
        SpherePoint::Finite(w) => Ok(w.im > 0.0),
        SpherePoint::Infinity => Ok(false),
    }
}

/// Well-ordering of two points of the closed geodesic L through {a,b}
/// (orthogonal to the circle through a,b,c) on the Delta side:
/// z1 = a, or z2 = b, or cr(a,z1,z2,b) > 1.
pub fn well_ordered(
    z1: SpherePoint,
    z2: SpherePoint,
    a: SpherePoint,
    b: SpherePoint,
    c: SpherePoint,
) -> Result<bool, KoebeError> {
    let params = [a, b, c];
    let s = map_to_standard(a, b, c)?;
    // In the standard frame L is the imaginary axis and Delta the upper
    // half plane.
    for z in [z1, z2] {
        match s.apply(z) {
            SpherePoint::Infinity => {}
            SpherePoint::Finite(w) => {
                if math::fabs(w.re) > 1e-8 * (1.0 + w.norm_sqr()) || w.im < -1e-8 {
                    return Err(KoebeError::NotOnGeodesic);
                }
            }
        }
    }
    let _ = params;
    if z1.approx_eq(&a, 1e-9) {
        return Ok(true);
    }
    if z2.approx_eq(&b, 1e-9) {
        return Ok(true);
    }
    let v = cross_ratio(a, z1, z2, b)?;
    Ok(v.re > 1.0)
}

/// Consistency of the two canonical-generator characterizations for
/// hyperbolic signatures with all values finite: the fixed-point/well-
/// ordering conditions and the "left fixed point of A lies in Delta"
/// condition must agree.
pub fn hyperbolic_revisited_check(
    pair: &CanonicalPair,
    spec: &TriangleGroupSpec,
) -> Result<bool, KoebeError> {
    if spec.class() != SignatureClass::Hyperbolic
        || spec.nu.iter().any(RamificationValue::is_infinite)
    {
        return Err(KoebeError::UnsupportedSignature);
    }
    let s = map_to_standard(spec.params[0], spec.params[1], spec.params[2])?;
    let on_line = |m: &MoebiusTransform, re: f64| -> Result<bool, KoebeError> {
        let (f1, f2) = m.fixed_points()?;
        for f in [Some(f1), f2].into_iter().flatten() {
            match s.apply(f) {
                SpherePoint::Infinity => {}
                SpherePoint::Finite(w) => {
                    if math::fabs(w.re - re) > 1e-8 * (1.0 + w.norm_sqr()) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    };
    // The fixed point of M on the closed Delta side of L.
    let delta_side = |m: &MoebiusTransform| -> Result<SpherePoint, KoebeError> {
        let (f1, f2) = m.fixed_points()?;
        let f2 = f2.ok_or(KoebeError::WrongElementType)?;
        let im = |f: SpherePoint| match s.apply(f) {
            SpherePoint::Finite(w) => w.im,
            SpherePoint::Infinity => 0.0,
        };
        Ok(if im(f1) >= im(f2) { f1 } else { f2 })
    };
    let def2 = {
        let lines_ok = on_line(&pair.a, 0.0)? && on_line(&pair.b, 0.0)? && on_line(&pair.ab(), 1.0)?;
        if !lines_ok {
            false
        } else {
            let za = delta_side(&pair.a)?;
            let zb = delta_side(&pair.b)?;
            well_ordered(za, zb, spec.params[0], spec.params[1], spec.params[2])
                .unwrap_or(false)
        }
    };
    let prop6 = {
        let lines_ok = on_line(&pair.a, 0.0)? && on_line(&pair.b, 0.0)? && on_line(&pair.ab(), 1.0)?;
        if !lines_ok {
            false
        } else {
            let (_, left) = pair.a.right_left_fixed_points()?;
            is_in_delta(left, &spec.params)?
        }
    };
    Ok(def2 == prop6 && def2)
}

/// Local chart kinds at a marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    /// z(xi) = exp(pi i xi) at a puncture.
    Cusp,
    /// z(xi) = xi^mu, the point at the origin.
    FiniteAtZero,
    /// z(xi) = (1/xi)^mu, the point sent to infinity.
    FiniteAtInfinity,
}

/// Which factor of a gluing the chart serves; elementary groups use the
/// origin chart on the first side and the infinity chart on the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorRole {
    First,
    Second,
}

/// A preferred-coordinate descriptor at P_at relative to P_relative.
#[derive(Clone, Copy, Debug)]
pub struct PreferredCoordinate {
    pub kind: ChartKind,
    /// The ramification value of the marked point (chart exponent);
    /// absent at cusps.
    pub exponent: Option<u32>,
    /// The distinguished lift of the marked point.
    pub base: SpherePoint,
}

/// The distinguished lift of marked point `index` (1..=3): the left fixed
/// point for elliptic generators of order > 2, the unique fixed point for
/// parabolic ones, and the Delta-closure-side fixed point for order 2.
pub(crate) fn distinguished_lift(
    pair: &CanonicalPair,
    spec: &TriangleGroupSpec,
    index: usize,
) -> Result<SpherePoint, KoebeError> {
    let m = match index {
        1 => pair.a,
        2 => pair.b,
        3 => pair.ab(),
        _ => return Err(KoebeError::InvalidSpec("marked point index must be 1..=3")),
    };
    match m.classify() {
        ElementType::Parabolic => Ok(m.fixed_points()?.0),
        ElementType::Elliptic(_) => {
            if let Ok((right, left)) = m.right_left_fixed_points() {
                // Prefer the left fixed point; for elementary groups the
                // fixed point at infinity is a limit point, not a lift,
                // so fall back to the finite one.
                return Ok(if left.is_infinity() { right } else { left });
            }
            // Order 2: prefer the finite fixed point closest to the
            // others' barycenter side; take the first deterministically.
            let (f1, f2) = m.fixed_points()?;
            let f2 = f2.ok_or(KoebeError::WrongElementType)?;
            let s = map_to_standard(spec.params[0], spec.params[1], spec.params[2])?;
            let im = |f: SpherePoint| match s.apply(f) {
                SpherePoint::Finite(w) => w.im,
                SpherePoint::Infinity => 0.0,
            };
            Ok(if im(f1) >= im(f2) { f1 } else { f2 })
        }
        _ => Err(KoebeError::WrongElementType),
    }
}

/// Preferred coordinate at marked point `at` relative to `relative_to`.
pub fn preferred_coordinate(
    spec: &TriangleGroupSpec,
    at: usize,
    relative_to: usize,
    role: FactorRole,
) -> Result<PreferredCoordinate, KoebeError> {
    if at == relative_to || !(1..=3).contains(&at) || !(1..=3).contains(&relative_to) {
        return Err(KoebeError::InvalidSpec("chart indices must be distinct and in 1..=3"));
    }
    let pair = canonical_generators(spec)?;
    let base = distinguished_lift(&pair, spec, at)?;
    let nu = spec.nu[at - 1];
    match nu {
        RamificationValue::Infinity => Ok(PreferredCoordinate {
            kind: ChartKind::Cusp,
            exponent: None,
            base,
        }),
        RamificationValue::Finite(mu) => {
            let kind = match (spec.class(), role) {
                (SignatureClass::Hyperbolic, _) => ChartKind::FiniteAtZero,
                (_, FactorRole::First) => ChartKind::FiniteAtZero,
                (_, FactorRole::Second) => ChartKind::FiniteAtInfinity,
            };
            Ok(PreferredCoordinate {
                kind,
                exponent: Some(mu),
                base,
            })
        }
    }
}

/// Guard region around a distinguished lift: a Euclidean disc at finite
/// cone points, a horodisc descriptor at cusps.
#[derive(Clone, Copy, Debug)]
pub enum PointGuard {
    Disc { lift: SpherePoint, radius: f64 },
    /// Horodisc at the cusp lift; `size` is the invariant height in a
    /// frame sending the lift to infinity (the largest isometric-circle
    /// radius over non-stabilizing words).
    Horodisc { lift: SpherePoint, size: f64 },
}

impl PointGuard {
    pub fn radius(&self) -> f64 {
        match self {
            PointGuard::Disc { radius, .. } => *radius,
            PointGuard::Horodisc { size, .. } => *size,
        }
    }

    pub fn lift(&self) -> SpherePoint {
        match self {
            PointGuard::Disc { lift, .. } | PointGuard::Horodisc { lift, .. } => *lift,
        }
    }
}

/// Protective regions around the three marked-point lifts.
#[derive(Clone, Debug)]
pub struct ProtectiveRadii {
    pub guards: [PointGuard; 3],
}

const PROTECTIVE_WORD_LENGTH: usize = 8;

/// Protective radii from the orbit-distance rule: half the minimal
/// distance from the lift to its orbit under reduced words of length
/// <= 8, stabilizer elements excluded. Cusps get a horodisc descriptor.
pub fn protective_radii(spec: &TriangleGroupSpec) -> Result<ProtectiveRadii, KoebeError> {
    let pair = canonical_generators(spec)?;
    let gens = [pair.a, pair.b];
    let mut guards: Vec<PointGuard> = Vec::with_capacity(3);
    for index in 1..=3 {
        let lift = distinguished_lift(&pair, spec, index)?;
        if spec.nu[index - 1].is_infinite() {
            // Horodisc size measured in a frame placing the cusp at
            // infinity: largest isometric-circle radius over words that
            // move the cusp.
            let to_inf = if lift.is_infinity() {
                MoebiusTransform::identity()
            } else {
                moebius_from_triples(
                    [lift, pick_other(lift, 0.0), pick_other(lift, 1.0)],
                    standard_params(),
                )?
            };
            let mut size: f64 = 0.0;
            for_each_reduced_word(&gens, PROTECTIVE_WORD_LENGTH, |m| {
                if m.apply(lift).approx_eq(&lift, 1e-9) {
                    return true;
                }
                let mm = m.conjugate_by(&to_inf);
                let c = mm.entries()[2];
                if c.norm() > 1e-12 {
                    size = size.max(1.0 / c.norm());
                }
                true
            });
            guards.push(PointGuard::Horodisc { lift, size });
        } else {
            let z = lift
                .value()
                .ok_or(KoebeError::InternalInconsistency("finite cone lift at infinity"))?;
            let mut min_dist = f64::INFINITY;
            for_each_reduced_word(&gens, PROTECTIVE_WORD_LENGTH, |m| {
                let w = m.apply(lift);
                if w.approx_eq(&lift, 1e-9) {
                    return true;
                }
                if let Some(wz) = w.value() {
                    min_dist = min_dist.min((wz - z).norm());
                }
                true
            });
            if !min_dist.is_finite() {
                return Err(KoebeError::InternalInconsistency(
                    "orbit of a cone-point lift never left the stabilizer",
                ));
            }
            guards.push(PointGuard::Disc {
                lift,
                radius: min_dist / 2.0,
            });
        }
    }
    let guards: [PointGuard; 3] = [guards[0], guards[1], guards[2]];
    Ok(ProtectiveRadii { guards })
}

fn pick_other(avoid: SpherePoint, seed: f64) -> SpherePoint {
    let candidates = [
        SpherePoint::finite(seed, 0.0),
        SpherePoint::finite(seed + 0.5, 0.25),
        SpherePoint::finite(seed - 1.5, 2.0),
    ];
    for c in candidates {
        if !c.approx_eq(&avoid, 1e-6) {
            return c;
        }
    }
    SpherePoint::finite(3.7, -1.2)
}
