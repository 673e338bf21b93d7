//! Type (0,4) groups by amalgamated free products and type (1,1) groups
//! by HNN extensions, with the per-row parameter tables, invariant
//! coordinate expressions, and containment-domain bounds.
//!
//! Every finite-weight row positions the first factor so its canonical
//! generator A is z -> e^{2 pi i/mu} z and the second factor so its
//! canonical generator is A^{-1}; the coordinate is carried by the third
//! parameter of the second factor. Infinite-weight rows use A = z + 2 and
//! A^{-1} = z - 2 with the second factor at (inf, alpha, alpha-1).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::KoebeError;
use crate::math;
use crate::moebius::{cross_ratio, MoebiusTransform};
use crate::sphere::SpherePoint;
use crate::triangle::{
    canonical_generators, protective_radii, signature_class, CanonicalPair, RamificationValue,
    SignatureClass, TriangleGroupSpec,
};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Rows of the type-(0,4) table, keyed by the factor classes and the
/// finiteness of the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AfpRow {
    HypHypInf,
    HypHypFinite,
    HypParInf,
    HypParFinite,
    HypEllFinite,
    ParParInf,
    ParParFinite,
    ParEllFinite,
    EllEllFinite,
}

impl AfpRow {
    pub fn name(&self) -> &'static str {
        match self {
            AfpRow::HypHypInf => "hyp/hyp, infinite weight",
            AfpRow::HypHypFinite => "hyp/hyp, finite weight",
            AfpRow::HypParInf => "hyp/par, infinite weight",
            AfpRow::HypParFinite => "hyp/par, finite weight",
            AfpRow::HypEllFinite => "hyp/ell, finite weight",
            AfpRow::ParParInf => "par/par, infinite weight",
            AfpRow::ParParFinite => "par/par, finite weight",
            AfpRow::ParEllFinite => "par/ell, finite weight",
            AfpRow::EllEllFinite => "ell/ell, finite weight",
        }
    }
}

/// Rows of the type-(1,1) table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnnRow {
    /// Base (inf,inf,nu); the coordinate is tau itself.
    InfInf,
    /// Hyperbolic base (mu,mu,nu) with finite mu; coordinate tau^2.
    GeneralFinite,
    /// Base (4,4,2); coordinate tau^2.
    Par442,
    /// Base (3,3,3); coordinate tau^2.
    Par333,
    /// Base (3,3,2); coordinate tau^2.
    Ell332,
}

impl HnnRow {
    pub fn name(&self) -> &'static str {
        match self {
            HnnRow::InfInf => "(inf,inf,nu), infinite weight",
            HnnRow::GeneralFinite => "(mu,mu,nu) hyperbolic, finite weight",
            HnnRow::Par442 => "(4,4,2), weight 4",
            HnnRow::Par333 => "(3,3,3), weight 3",
            HnnRow::Ell332 => "(3,3,2), weight 3",
        }
    }

    /// True when the deformation coordinate is tau^2 rather than tau.
    pub fn coordinate_is_tau_squared(&self) -> bool {
        !matches!(self, HnnRow::InfInf)
    }
}

/// Proven-containment region for a one-dimensional coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ContainmentDomain {
    /// { z : Im z > min_imag }, used for infinite weights.
    HalfPlane { min_imag: f64 },
    /// { z : 0 < |z| < radius }, used for finite weights.
    PuncturedDisc { radius: f64 },
}

impl ContainmentDomain {
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            ContainmentDomain::HalfPlane { min_imag } => z.im > *min_imag,
            ContainmentDomain::PuncturedDisc { radius } => {
                let r = z.norm();
                r > 0.0 && r < *radius
            }
        }
    }

    /// The outer bound V_j: the upper half plane for infinite weight,
    /// the unit disc for finite weight.
    pub fn outer_contains(&self, z: Complex64) -> bool {
        match self {
            ContainmentDomain::HalfPlane { .. } => z.im > 0.0,
            ContainmentDomain::PuncturedDisc { .. } => z.norm() < 1.0,
        }
    }
}

/// Specification of an amalgamated free product of two triangle groups
/// over the cyclic group of the shared weight-mu element.
#[derive(Clone, Copy, Debug)]
pub struct AfpSpec {
    pub sig1: [RamificationValue; 3],
    pub sig2: [RamificationValue; 3],
    pub alpha: Complex64,
}

/// Specification of an HNN extension over a base of signature (mu,mu,nu).
#[derive(Clone, Copy, Debug)]
pub struct HnnSpec {
    pub sig: [RamificationValue; 3],
    /// tau for the (inf,inf,nu) row, tau^2 for all other rows.
    pub coordinate: Complex64,
}

/// An assembled one-curve group with its recovery data.
#[derive(Clone, Debug)]
pub struct GroupAssembly {
    pub kind: AssemblyKind,
    /// The coordinate the assembly was built with.
    pub coordinate: Complex64,
    pub domain: ContainmentDomain,
    /// False marks an "unverified discreteness" build: the coordinate is
    /// outside the proven containment domain.
    pub inside_domain: bool,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum AssemblyKind {
    Afp {
        row: AfpRow,
        sig1: [RamificationValue; 3],
        sig2: [RamificationValue; 3],
        params1: [SpherePoint; 3],
        params2: [SpherePoint; 3],
        pair1: CanonicalPair,
        pair2: CanonicalPair,
        /// The curve element recorded by the orientation convention
        /// (A itself, or A^{-1} when the flag is flipped).
        shared: MoebiusTransform,
    },
    Hnn {
        row: HnnRow,
        sig: [RamificationValue; 3],
        params: [SpherePoint; 3],
        pair: CanonicalPair,
        conj: MoebiusTransform,
    },
}

impl GroupAssembly {
    /// All group generators: the factor pairs, plus the conjugating
    /// element for HNN assemblies.
    pub fn generators(&self) -> Vec<MoebiusTransform> {
        match &self.kind {
            AssemblyKind::Afp { pair1, pair2, .. } => {
                alloc::vec![pair1.a, pair1.b, pair2.a, pair2.b]
            }
            AssemblyKind::Hnn { pair, conj, .. } => alloc::vec![pair.a, pair.b, *conj],
        }
    }

    /// The assembly moved by a global Moebius transformation.
    pub fn conjugated(&self, t: &MoebiusTransform) -> GroupAssembly {
        let map_params = |p: &[SpherePoint; 3]| [t.apply(p[0]), t.apply(p[1]), t.apply(p[2])];
        let map_pair = |p: &CanonicalPair| CanonicalPair {
            a: p.a.conjugate_by(t),
            b: p.b.conjugate_by(t),
            scalars: p.scalars,
            fourth_point: p.fourth_point.map(|d| t.apply(d)),
            non_unique: p.non_unique,
        };
        let kind = match &self.kind {
            AssemblyKind::Afp {
                row,
                sig1,
                sig2,
                params1,
                params2,
                pair1,
                pair2,
                shared,
            } => AssemblyKind::Afp {
                row: *row,
                sig1: *sig1,
                sig2: *sig2,
                params1: map_params(params1),
                params2: map_params(params2),
                pair1: map_pair(pair1),
                pair2: map_pair(pair2),
                shared: shared.conjugate_by(t),
            },
            AssemblyKind::Hnn {
                row,
                sig,
                params,
                pair,
                conj,
            } => AssemblyKind::Hnn {
                row: *row,
                sig: *sig,
                params: map_params(params),
                pair: map_pair(pair),
                conj: conj.conjugate_by(t),
            },
        };
        GroupAssembly {
            kind,
            coordinate: self.coordinate,
            domain: self.domain,
            inside_domain: self.inside_domain,
        }
    }
}

/// Constant k of a hyperbolic signature with finite first value.
fn k_const(sig: &[RamificationValue; 3]) -> Result<f64, KoebeError> {
    let spec = TriangleGroupSpec::standard(*sig)?;
    canonical_generators(&spec)?
        .scalars
        .k
        .ok_or(KoebeError::UnsupportedSignatureRow)
}

/// Constant x of an elliptic signature (mu,nu,2): the left fixed point
/// of B in the standard position, cos(pi/mu + pi/nu)/cos(pi/mu - pi/nu).
fn x_const(sig: &[RamificationValue; 3]) -> Result<f64, KoebeError> {
    let mu = sig[0].finite().ok_or(KoebeError::UnsupportedSignatureRow)?;
    let nu = sig[1].finite().ok_or(KoebeError::UnsupportedSignatureRow)?;
    let t1 = core::f64::consts::PI / mu as f64;
    let t2 = core::f64::consts::PI / nu as f64;
    Ok(math::cos(t1 + t2) / math::cos(t1 - t2))
}

/// The first-factor base parameters (-1, 1, (-1+ki)/(1+ki)).
pub(crate) fn hyperbolic_base_params(k: f64) -> [SpherePoint; 3] {
    let ki = c64(0.0, k);
    let third = (c64(-1.0, 0.0) + ki) / (c64(1.0, 0.0) + ki);
    [
        SpherePoint::finite(-1.0, 0.0),
        SpherePoint::finite(1.0, 0.0),
        SpherePoint::Finite(third),
    ]
}

fn std_params() -> [SpherePoint; 3] {
    [
        SpherePoint::Infinity,
        SpherePoint::finite(0.0, 0.0),
        SpherePoint::finite(1.0, 0.0),
    ]
}

fn classify_afp_row(
    class1: SignatureClass,
    class2: SignatureClass,
    weight: RamificationValue,
) -> Result<AfpRow, KoebeError> {
    use SignatureClass::*;
    let inf = weight.is_infinite();
    match (class1, class2, inf) {
        (Hyperbolic, Hyperbolic, true) => Ok(AfpRow::HypHypInf),
        (Hyperbolic, Hyperbolic, false) => Ok(AfpRow::HypHypFinite),
        (Hyperbolic, Parabolic, true) => Ok(AfpRow::HypParInf),
        (Hyperbolic, Parabolic, false) => Ok(AfpRow::HypParFinite),
        (Hyperbolic, Elliptic, false) => Ok(AfpRow::HypEllFinite),
        (Parabolic, Parabolic, true) => Ok(AfpRow::ParParInf),
        (Parabolic, Parabolic, false) => Ok(AfpRow::ParParFinite),
        (Parabolic, Elliptic, false) => Ok(AfpRow::ParEllFinite),
        (Elliptic, Elliptic, false) => Ok(AfpRow::EllEllFinite),
        _ => Err(KoebeError::UnsupportedSignatureRow),
    }
}

fn validate_weight(w: RamificationValue) -> Result<(), KoebeError> {
    match w {
        RamificationValue::Infinity => Ok(()),
        RamificationValue::Finite(n) if n >= 3 => Ok(()),
        _ => Err(KoebeError::UnsupportedSignatureRow),
    }
}

fn reject_dihedral(sig: &[RamificationValue; 3]) -> Result<(), KoebeError> {
    if signature_class(sig) == SignatureClass::Elliptic
        && sig[1] == RamificationValue::Finite(2)
        && sig[2] == RamificationValue::Finite(2)
    {
        return Err(KoebeError::EllipticDihedralFactor);
    }
    Ok(())
}

impl AfpSpec {
    pub fn row(&self) -> Result<AfpRow, KoebeError> {
        if self.sig1[0] != self.sig2[0] {
            return Err(KoebeError::UnsupportedSignatureRow);
        }
        validate_weight(self.sig1[0])?;
        reject_dihedral(&self.sig1)?;
        reject_dihedral(&self.sig2)?;
        classify_afp_row(
            signature_class(&self.sig1),
            signature_class(&self.sig2),
            self.sig1[0],
        )
    }

    /// Table parameters of the first factor.
    pub fn params1(&self) -> Result<[SpherePoint; 3], KoebeError> {
        Ok(match self.row()? {
            AfpRow::HypHypFinite | AfpRow::HypParFinite | AfpRow::HypEllFinite => {
                hyperbolic_base_params(k_const(&self.sig1)?)
            }
            _ => std_params(),
        })
    }

    /// Table parameters of the second factor as a function of alpha.
    pub fn params2(&self) -> Result<[SpherePoint; 3], KoebeError> {
        let alpha = self.alpha;
        Ok(match self.row()? {
            AfpRow::HypHypInf | AfpRow::HypParInf | AfpRow::ParParInf => [
                SpherePoint::Infinity,
                SpherePoint::Finite(alpha),
                SpherePoint::Finite(alpha - 1.0),
            ],
            AfpRow::HypHypFinite => {
                let k2 = k_const(&self.sig2)?;
                let ki = c64(0.0, k2);
                let third = alpha * (c64(1.0, 0.0) + ki) / (c64(-1.0, 0.0) + ki);
                [
                    SpherePoint::Finite(-alpha),
                    SpherePoint::Finite(alpha),
                    SpherePoint::Finite(third),
                ]
            }
            AfpRow::HypParFinite | AfpRow::ParParFinite => [
                SpherePoint::finite(0.0, 0.0),
                SpherePoint::Infinity,
                SpherePoint::Finite(alpha),
            ],
            AfpRow::HypEllFinite | AfpRow::ParEllFinite | AfpRow::EllEllFinite => {
                let x = x_const(&self.sig2)?;
                [
                    SpherePoint::finite(0.0, 0.0),
                    SpherePoint::Infinity,
                    SpherePoint::Finite(alpha / x),
                ]
            }
        })
    }

    /// Proven containment domain for alpha: Im(alpha) > 1 for infinite
    /// weight, the punctured disc of radius d/D otherwise, where d is
    /// the protective radius of the first factor at the weight lift and
    /// D bounds the second factor's island.
    pub fn coordinate_domain(&self) -> Result<ContainmentDomain, KoebeError> {
        let row = self.row()?;
        match row {
            AfpRow::HypHypInf | AfpRow::HypParInf | AfpRow::ParParInf => {
                Ok(ContainmentDomain::HalfPlane { min_imag: 1.0 })
            }
            _ => {
                let params1 = self.params1()?;
                let spec1 = TriangleGroupSpec::new(self.sig1, params1)?;
                let d = protective_radii(&spec1)?.guards[0].radius();
                let dd = second_factor_island_bound(&self.sig2)?;
                Ok(ContainmentDomain::PuncturedDisc { radius: d / dd })
            }
        }
    }
}

/// Divisor D for the finite-weight domain radius d/D: 1 for hyperbolic
/// second factors; for elementary ones, the island of the positioned
/// factor reaches modulus |alpha| * max(1/|w|) over the finite fixed
/// points w of the standard factor's non-weight elements.
fn second_factor_island_bound(sig2: &[RamificationValue; 3]) -> Result<f64, KoebeError> {
    if signature_class(sig2) == SignatureClass::Hyperbolic {
        return Ok(1.0);
    }
    let spec = TriangleGroupSpec::standard(*sig2)?;
    let pair = canonical_generators(&spec)?;
    let mut min_mod = f64::INFINITY;
    let words = [
        pair.b,
        pair.ab(),
        pair.b.compose(&pair.a),
        pair.a.compose(&pair.b).compose(&pair.a),
    ];
    for m in words {
        if let Ok((f1, f2)) = m.fixed_points() {
            for f in [Some(f1), f2].into_iter().flatten() {
                if let Some(z) = f.value() {
                    let r = z.norm();
                    if r > 1e-12 {
                        min_mod = min_mod.min(r);
                    }
                }
            }
        }
    }
    if !min_mod.is_finite() {
        return Err(KoebeError::InternalInconsistency(
            "no finite fixed points bound the second factor island",
        ));
    }
    Ok((1.0 / min_mod).max(1.0))
}

/// Builds the amalgamated free product: both factors at the table
/// parameters, shared-element identity verified. A coordinate outside
/// the containment domain is allowed but flags the assembly unverified.
pub fn build_afp(spec: &AfpSpec) -> Result<GroupAssembly, KoebeError> {
    let row = spec.row()?;
    let params1 = spec.params1()?;
    let params2 = spec.params2()?;
    let pair1 = canonical_generators(&TriangleGroupSpec::new(spec.sig1, params1)?)?;
    let pair2 = canonical_generators(&TriangleGroupSpec::new(spec.sig2, params2)?)?;
    if !pair2.a.approx_eq(&pair1.a.inverse(), 1e-8) {
        return Err(KoebeError::InternalInconsistency(
            "second factor does not share the inverse weight element",
        ));
    }
    let domain = spec.coordinate_domain()?;
    Ok(GroupAssembly {
        kind: AssemblyKind::Afp {
            row,
            sig1: spec.sig1,
            sig2: spec.sig2,
            params1,
            params2,
            pair1,
            pair2,
            shared: pair1.a,
        },
        coordinate: spec.alpha,
        domain,
        inside_domain: domain.contains(spec.alpha),
    })
}

/// Recovers the coordinate of an AFP assembly from beta = cr(a,b,c,f)
/// and the row's invariant expression; invariant under conjugation.
pub fn afp_coordinate(assembly: &GroupAssembly) -> Result<Complex64, KoebeError> {
    let (row, sig1, sig2, params1, params2) = match &assembly.kind {
        AssemblyKind::Afp {
            row,
            sig1,
            sig2,
            params1,
            params2,
            ..
        } => (*row, sig1, sig2, params1, params2),
        AssemblyKind::Hnn { .. } => return Err(KoebeError::UnsupportedSignatureRow),
    };
    let beta = cross_ratio(params1[0], params1[1], params1[2], params2[2])?;
    Ok(match row {
        AfpRow::HypHypInf | AfpRow::HypParInf | AfpRow::ParParInf => beta + 1.0,
        AfpRow::HypHypFinite => {
            let ki = c64(0.0, k_const(sig1)?);
            let ki2 = c64(0.0, k_const(sig2)?);
            (ki - beta) / (ki + beta) * (c64(-1.0, 0.0) + ki2) / (c64(1.0, 0.0) + ki2)
        }
        AfpRow::HypParFinite => {
            let ki = c64(0.0, k_const(sig1)?);
            (ki - beta) / (ki + beta)
        }
        AfpRow::HypEllFinite => {
            let ki = c64(0.0, k_const(sig1)?);
            x_const(sig2)? * (ki - beta) / (ki + beta)
        }
        AfpRow::ParParFinite => beta,
        AfpRow::ParEllFinite | AfpRow::EllEllFinite => x_const(sig2)? * beta,
    })
}

impl HnnSpec {
    pub fn row(&self) -> Result<HnnRow, KoebeError> {
        use RamificationValue::*;
        if self.sig[0] != self.sig[1] {
            return Err(KoebeError::UnsupportedSignatureRow);
        }
        validate_weight(self.sig[0])?;
        match self.sig {
            [Infinity, Infinity, _] => Ok(HnnRow::InfInf),
            [Finite(4), Finite(4), Finite(2)] => Ok(HnnRow::Par442),
            [Finite(3), Finite(3), Finite(3)] => Ok(HnnRow::Par333),
            [Finite(3), Finite(3), Finite(2)] => Ok(HnnRow::Ell332),
            _ if signature_class(&self.sig) == SignatureClass::Hyperbolic => {
                Ok(HnnRow::GeneralFinite)
            }
            _ => Err(KoebeError::UnsupportedSignatureRow),
        }
    }

    pub fn base_params(&self) -> Result<[SpherePoint; 3], KoebeError> {
        Ok(match self.row()? {
            HnnRow::GeneralFinite => hyperbolic_base_params(k_const(&self.sig)?),
            _ => std_params(),
        })
    }

    /// m, n, R of the finite-weight conjugator, from the base constants
    /// k and h; m^2 - n^2 = 1.
    pub fn mnr(&self) -> Result<(f64, f64, f64), KoebeError> {
        let spec = TriangleGroupSpec::standard(self.sig)?;
        let s = canonical_generators(&spec)?.scalars;
        let (k, h) = match (s.k, s.h) {
            (Some(k), Some(h)) => (k, h),
            _ => return Err(KoebeError::UnsupportedSignatureRow),
        };
        let m = k / (2.0 * h) + h / (2.0 * k);
        let n = k / (2.0 * h) - h / (2.0 * k);
        Ok((m, n, math::sqrt((m + 1.0) / 2.0)))
    }

    pub fn coordinate_domain(&self) -> Result<ContainmentDomain, KoebeError> {
        Ok(match self.row()? {
            HnnRow::InfInf => ContainmentDomain::HalfPlane { min_imag: 1.0 },
            HnnRow::GeneralFinite => {
                let (m, _, _) = self.mnr()?;
                ContainmentDomain::PuncturedDisc {
                    radius: (m - 1.0) / 2.0,
                }
            }
            // No explicit bound is stated for these rows; a fixed small
            // radius, validated by the discreteness screens.
            HnnRow::Par442 | HnnRow::Par333 | HnnRow::Ell332 => {
                ContainmentDomain::PuncturedDisc { radius: 0.25 }
            }
        })
    }

    fn tau(&self) -> Result<Complex64, KoebeError> {
        let row = self.row()?;
        if row.coordinate_is_tau_squared() {
            if self.coordinate.norm() < 1e-300 {
                return Err(KoebeError::DegenerateConfiguration);
            }
            Ok(self.coordinate.sqrt())
        } else {
            Ok(self.coordinate)
        }
    }

    /// The conjugating element C with C B^{-1} C^{-1} = A.
    pub fn conjugator(&self) -> Result<MoebiusTransform, KoebeError> {
        let tau = self.tau()?;
        match self.row()? {
            HnnRow::InfInf => {
                let q = self.sig[2].q();
                let s = math::sqrt((1.0 + q) / 2.0);
                MoebiusTransform::new(tau, c64(1.0 / s, 0.0), c64(s, 0.0), c64(0.0, 0.0))
            }
            HnnRow::GeneralFinite => {
                let (m, n, r) = self.mnr()?;
                MoebiusTransform::new(
                    tau * n / (2.0 * r),
                    -tau * (m + 1.0) / (2.0 * r),
                    c64(r, 0.0) / tau,
                    c64((1.0 - m) * r / n, 0.0) / tau,
                )
            }
            HnnRow::Par442 | HnnRow::Par333 => {
                MoebiusTransform::new(c64(0.0, 0.0), tau, -1.0 / tau, 1.0 / tau)
            }
            HnnRow::Ell332 => MoebiusTransform::new(
                tau,
                -tau,
                c64(-2.0 / 3.0, 0.0) / tau,
                c64(-1.0 / 3.0, 0.0) / tau,
            ),
        }
    }
}

/// Builds the HNN extension: the base group at the table parameters and
/// the conjugating element C, verifying C B^{-1} C^{-1} = A.
pub fn build_hnn(spec: &HnnSpec) -> Result<GroupAssembly, KoebeError> {
    let row = spec.row()?;
    let params = spec.base_params()?;
    let pair = canonical_generators(&TriangleGroupSpec::new(spec.sig, params)?)?;
    let conj = spec.conjugator()?;
    let lhs = conj.compose(&pair.b.inverse()).compose(&conj.inverse());
    if !lhs.approx_eq(&pair.a, 1e-8) {
        return Err(KoebeError::InternalInconsistency(
            "conjugator does not carry B^{-1} to A",
        ));
    }
    let domain = spec.coordinate_domain()?;
    Ok(GroupAssembly {
        kind: AssemblyKind::Hnn {
            row,
            sig: spec.sig,
            params,
            pair,
            conj,
        },
        coordinate: spec.coordinate,
        domain,
        inside_domain: domain.contains(spec.coordinate),
    })
}

/// Recovers tau (first row) or tau^2 (other rows) from the invariant
/// expression in beta = cr(a,b,c,C(probe)); invariant under conjugation.
pub fn hnn_coordinate(assembly: &GroupAssembly) -> Result<Complex64, KoebeError> {
    let (row, sig, params, conj) = match &assembly.kind {
        AssemblyKind::Hnn {
            row,
            sig,
            params,
            conj,
            ..
        } => (*row, sig, params, conj),
        AssemblyKind::Afp { .. } => return Err(KoebeError::UnsupportedSignatureRow),
    };
    let beta_at = |probe: SpherePoint| -> Result<Complex64, KoebeError> {
        cross_ratio(params[0], params[1], params[2], conj.apply(probe))
    };
    match row {
        HnnRow::InfInf => {
            let q = sig[2].q();
            let beta = beta_at(params[0])?;
            Ok(math::sqrt((1.0 + q) / 2.0) * beta)
        }
        HnnRow::GeneralFinite => {
            let k = k_const(sig)?;
            let ki = c64(0.0, k);
            let beta = beta_at(params[0])?;
            Ok((ki - beta) / (ki + beta))
        }
        HnnRow::Par442 | HnnRow::Par333 => beta_at(params[1]),
        HnnRow::Ell332 => {
            let beta = beta_at(params[0])?;
            Ok(-2.0 / 3.0 * beta)
        }
    }
}

/// The involution T with T B T^{-1} = A and T^2 = +-I for a base
/// signature (mu,mu,nu).
pub fn conjugating_involution(
    sig: &[RamificationValue; 3],
) -> Result<MoebiusTransform, KoebeError> {
    let spec = HnnSpec {
        sig: *sig,
        coordinate: c64(0.0, 0.5),
    };
    match spec.row()? {
        HnnRow::InfInf => {
            let q = sig[2].q();
            MoebiusTransform::new(
                c64(0.0, 0.0),
                c64(-2.0, 0.0),
                c64(1.0 + q, 0.0),
                c64(0.0, 0.0),
            )
        }
        HnnRow::GeneralFinite => {
            let (m, n, r) = spec.mnr()?;
            MoebiusTransform::new(
                c64(r, 0.0),
                c64((1.0 - m) * r / n, 0.0),
                c64(n / (2.0 * r), 0.0),
                c64(-(1.0 + m) / (2.0 * r), 0.0),
            )
        }
        HnnRow::Par442 | HnnRow::Par333 => {
            MoebiusTransform::new(c64(-1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0))
        }
        HnnRow::Ell332 => {
            MoebiusTransform::new(c64(2.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0), c64(-2.0, 0.0))
        }
    }
}
