//! Assembly of full constructible Koebe groups from orbifold data and a
//! coordinate per partition curve, recovery of the coordinates from an
//! assembled group, and plumbing parameters.
//!
//! The build iterates the gluing order. A disconnecting curve attaches a
//! new triangle group to an already-built pants sharing the weight
//! element (an amalgamated free product); a non-disconnecting curve in a
//! type (0,4) modular part bridges two existing pants with a conjugator
//! C A2 C^{-1} = A1; a curve in a type (1,1) part adjoins C with
//! C B^{-1} C^{-1} = A inside one pants. Each step places the table
//! configuration of the matching row in the frame of the host pants, so
//! all per-curve table data stays available for coordinate recovery.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::combine::{
    afp_coordinate, hnn_coordinate, AfpSpec, AssemblyKind, ContainmentDomain, GroupAssembly,
    HnnRow, HnnSpec,
};
use crate::error::KoebeError;
use crate::math;
use crate::moebius::{moebius_from_triples, ElementType, MoebiusTransform};
use crate::sphere::SpherePoint;
use crate::triangle::{
    canonical_generators, CanonicalPair, RamificationValue, TriangleGroupSpec, TriangleScalars,
};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A boundary slot of a built pants: 0, 1, 2 name the canonical
/// generators A, B, AB.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotRef {
    pub pants: usize,
    pub slot: usize,
}

/// One partition curve in gluing order.
#[derive(Clone, Debug)]
pub struct CurveStep {
    pub curve_id: usize,
    pub weight: RamificationValue,
    /// Orientation of the curve; flipping it swaps which of A, A^{-1} is
    /// recorded as the curve element in the shared-element contract.
    pub orientation: bool,
    pub kind: StepKind,
}

#[derive(Clone, Debug)]
pub enum StepKind {
    /// The curve disconnects: attach a fresh second factor to the host
    /// pants (`None` bootstraps the first factor at table parameters).
    AfpAttach {
        host: Option<SlotRef>,
        sig1: [RamificationValue; 3],
        sig2: [RamificationValue; 3],
    },
    /// The curve does not disconnect and its modular part has type
    /// (0,4): both sides already exist; adjoin a bridging conjugator.
    AfpBridge {
        host1: SlotRef,
        sig1: [RamificationValue; 3],
        host2: SlotRef,
        sig2: [RamificationValue; 3],
    },
    /// The curve does not disconnect and its modular part has type
    /// (1,1): adjoin C with C B^{-1} C^{-1} = A inside the host pants.
    HnnLoop {
        host: Option<usize>,
        sig: [RamificationValue; 3],
    },
}

/// Orbifold signature, maximal partition with weights, and gluing order.
#[derive(Clone, Debug)]
pub struct OrbifoldSpec {
    pub genus: u32,
    pub marked: Vec<RamificationValue>,
    pub steps: Vec<CurveStep>,
}

impl OrbifoldSpec {
    /// 3p - 3 + n, the number of partition curves and coordinates.
    pub fn curve_count(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.marked.len() as i64
    }

    pub fn validate(&self) -> Result<(), KoebeError> {
        let p = self.genus as i64;
        let n = self.marked.len() as i64;
        if 2 * p - 2 + n <= 0 {
            return Err(KoebeError::InvalidSpec("2p-2+n must be positive"));
        }
        // Hyperbolic-area condition 2p-2+n - sum(1/nu_j) > 0, exactly,
        // plus a positive curve count 3p-3+n.
        let mut num: u128 = 0;
        let mut den: u128 = 1;
        for v in &self.marked {
            match v {
                RamificationValue::Finite(k) => {
                    if *k < 2 {
                        return Err(KoebeError::InvalidSpec("ramification values must be >= 2"));
                    }
                    num = num * (*k as u128) + den;
                    den *= *k as u128;
                }
                RamificationValue::Infinity => {}
            }
        }
        let area = 2 * p - 2 + n;
        if area <= 0 || num >= (area as u128) * den {
            return Err(KoebeError::InvalidSpec("2p-2+n - sum(1/nu) must be positive"));
        }
        if self.curve_count() <= 0 {
            return Err(KoebeError::InvalidSpec("3p-3+n must be positive"));
        }
        if self.steps.len() as i64 != self.curve_count() {
            return Err(KoebeError::InvalidSpec(
                "partition must have exactly 3p-3+n curves",
            ));
        }
        for s in &self.steps {
            match s.weight {
                RamificationValue::Infinity => {}
                RamificationValue::Finite(m) if m >= 3 => {}
                _ => return Err(KoebeError::InvalidSpec("weights must be >= 3")),
            }
        }
        Ok(())
    }
}

/// A built triangle subgroup with its position data.
#[derive(Clone, Debug)]
pub struct PantsData {
    pub sig: [RamificationValue; 3],
    pub params: [SpherePoint; 3],
    pub pair: CanonicalPair,
}

impl PantsData {
    fn slot_element(&self, slot: usize) -> Result<MoebiusTransform, KoebeError> {
        match slot {
            0 => Ok(self.pair.a),
            1 => Ok(self.pair.b),
            2 => Ok(self.pair.ab()),
            _ => Err(KoebeError::InvalidSpec("slot index must be 0, 1 or 2")),
        }
    }
}

/// One assembled partition curve.
#[derive(Clone, Debug)]
pub struct AssemblyNode {
    pub curve_id: usize,
    pub weight: RamificationValue,
    pub orientation: bool,
    /// The one-dimensional table configuration in the global frame; all
    /// coordinate recovery reads from here.
    pub assembly: GroupAssembly,
    /// Indices of the pants this curve's modular subgroup touches.
    pub pants_refs: Vec<usize>,
    /// The bridging conjugator of a Case-2 step.
    pub bridge: Option<MoebiusTransform>,
}

impl AssemblyNode {
    /// The element recorded as uniformizing the curve, respecting the
    /// orientation convention.
    pub fn curve_element(&self) -> MoebiusTransform {
        let shared = match &self.assembly.kind {
            AssemblyKind::Afp { shared, .. } => *shared,
            AssemblyKind::Hnn { pair, .. } => pair.a,
        };
        if self.orientation {
            shared
        } else {
            shared.inverse()
        }
    }
}

/// A constructible Koebe group: generators plus the assembly tree.
#[derive(Clone, Debug)]
pub struct KoebeGroup {
    pub pants: Vec<PantsData>,
    pub nodes: Vec<AssemblyNode>,
    pub generators: Vec<MoebiusTransform>,
}

impl KoebeGroup {
    /// The group moved by a global Moebius transformation.
    pub fn conjugated(&self, t: &MoebiusTransform) -> KoebeGroup {
        let pants = self
            .pants
            .iter()
            .map(|p| PantsData {
                sig: p.sig,
                params: [
                    t.apply(p.params[0]),
                    t.apply(p.params[1]),
                    t.apply(p.params[2]),
                ],
                pair: CanonicalPair {
                    a: p.pair.a.conjugate_by(t),
                    b: p.pair.b.conjugate_by(t),
                    scalars: p.pair.scalars,
                    fourth_point: p.pair.fourth_point.map(|d| t.apply(d)),
                    non_unique: p.pair.non_unique,
                },
            })
            .collect();
        let nodes = self
            .nodes
            .iter()
            .map(|n| AssemblyNode {
                curve_id: n.curve_id,
                weight: n.weight,
                orientation: n.orientation,
                assembly: n.assembly.conjugated(t),
                pants_refs: n.pants_refs.clone(),
                bridge: n.bridge.map(|b| b.conjugate_by(t)),
            })
            .collect();
        let generators = self
            .generators
            .iter()
            .map(|g| g.conjugate_by(t))
            .collect();
        KoebeGroup {
            pants,
            nodes,
            generators,
        }
    }
}

/// Recovered coordinates, one per partition curve, with their proven
/// containment domains.
#[derive(Clone, Debug)]
pub struct CoordinateVector {
    pub values: Vec<Complex64>,
    pub domains: Vec<ContainmentDomain>,
}

/// Plumbing parameters, one per partition curve.
#[derive(Clone, Debug)]
pub struct PlumbingVector {
    pub values: Vec<Complex64>,
}

/// Descriptor of the one-dimensional modular subgroup at a curve.
#[derive(Clone, Debug)]
pub struct ModularSubgroup {
    pub curve_id: usize,
    pub generators: Vec<MoebiusTransform>,
    /// Pants index of the shared triangle group F_j with the next
    /// subgroup in gluing order.
    pub shared_with_next: Option<usize>,
}

/// Equivariant labelled points of a generator pair, used to transport
/// one marked pair onto another. Produced in a fixed order so that the
/// i-th point of one pair corresponds to the i-th point of a conjugate
/// pair (right/left labels are conjugation-equivariant).
fn equivariant_points(p: &MoebiusTransform, q: &MoebiusTransform) -> Vec<SpherePoint> {
    let mut pts = Vec::new();
    let mut push_for = |m: &MoebiusTransform| {
        match m.classify() {
            ElementType::Parabolic => {
                if let Ok((f, _)) = m.fixed_points() {
                    pts.push(f);
                }
            }
            ElementType::Elliptic(_) => {
                if let Ok((r, l)) = m.right_left_fixed_points() {
                    pts.push(r);
                    pts.push(l);
                }
                // Order 2: the unlabelled pair carries no usable order.
            }
            _ => {}
        }
    };
    push_for(p);
    push_for(q);
    push_for(&p.compose(q));
    // Extra equivariant points for degenerate streams.
    let snapshot: Vec<SpherePoint> = pts.clone();
    for f in snapshot {
        pts.push(p.apply(f));
        pts.push(q.apply(f));
    }
    pts
}

/// The Moebius transformation V with V p V^{-1} = x and V q V^{-1} = y,
/// for marked pairs that are conjugate.
fn pair_conjugator(
    p: &MoebiusTransform,
    q: &MoebiusTransform,
    x: &MoebiusTransform,
    y: &MoebiusTransform,
) -> Result<MoebiusTransform, KoebeError> {
    let src = equivariant_points(p, q);
    let dst = equivariant_points(x, y);
    if src.len() != dst.len() {
        return Err(KoebeError::GluingOrderInvalid);
    }
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..src.len() {
        let ok = chosen.iter().all(|&j| {
            !src[i].approx_eq(&src[j], 1e-8) && !dst[i].approx_eq(&dst[j], 1e-8)
        });
        if ok {
            chosen.push(i);
            if chosen.len() == 3 {
                break;
            }
        }
    }
    if chosen.len() < 3 {
        return Err(KoebeError::GluingOrderInvalid);
    }
    let v = moebius_from_triples(
        [src[chosen[0]], src[chosen[1]], src[chosen[2]]],
        [dst[chosen[0]], dst[chosen[1]], dst[chosen[2]]],
    )?;
    if p.conjugate_by(&v).approx_eq(x, 1e-7) && q.conjugate_by(&v).approx_eq(y, 1e-7) {
        Ok(v)
    } else {
        Err(KoebeError::GluingOrderInvalid)
    }
}

/// The six marked generator pairs obtained by rotating and inverting the
/// triangle relation, with their signature orderings and the slot the
/// first element belongs to.
fn rotations(
    pants: &PantsData,
) -> [(MoebiusTransform, MoebiusTransform, [RamificationValue; 3], usize); 6] {
    let a = pants.pair.a;
    let b = pants.pair.b;
    let ab = pants.pair.ab();
    let [s0, s1, s2] = pants.sig;
    [
        (a, b, [s0, s1, s2], 0),
        (b, ab.inverse(), [s1, s2, s0], 1),
        (ab.inverse(), a, [s2, s0, s1], 2),
        (a.inverse(), ab, [s0, s2, s1], 0),
        (b.inverse(), a.inverse(), [s1, s0, s2], 1),
        (ab, b.inverse(), [s2, s1, s0], 2),
    ]
}

/// Finds the frame V placing the canonical pair of `want_sig` at
/// `target_params` onto a re-presentation of the host pants whose first
/// generator is the slot element (or its inverse).
fn align_host(
    pants: &PantsData,
    slot: usize,
    want_sig: &[RamificationValue; 3],
    target_params: &[SpherePoint; 3],
) -> Result<MoebiusTransform, KoebeError> {
    let target =
        canonical_generators(&TriangleGroupSpec::new(*want_sig, *target_params)?)?;
    for (x, y, sig_rot, cand_slot) in rotations(pants) {
        if cand_slot != slot || sig_rot != *want_sig {
            continue;
        }
        if let Ok(v) = pair_conjugator(&target.a, &target.b, &x, &y) {
            return Ok(v);
        }
    }
    Err(KoebeError::GluingOrderInvalid)
}

fn map_params(t: &MoebiusTransform, p: &[SpherePoint; 3]) -> [SpherePoint; 3] {
    [t.apply(p[0]), t.apply(p[1]), t.apply(p[2])]
}

fn push_generator(gens: &mut Vec<MoebiusTransform>, g: MoebiusTransform) {
    let redundant = gens
        .iter()
        .any(|e| e.approx_eq(&g, 1e-9) || e.approx_eq(&g.inverse(), 1e-9));
    if !redundant {
        gens.push(g);
    }
}

fn outer_domain_check(domain: &ContainmentDomain, coord: Complex64) -> Result<(), KoebeError> {
    if domain.outer_contains(coord) {
        Ok(())
    } else {
        Err(KoebeError::CoordinateOutsideOuterDomain)
    }
}

/// Builds the Koebe group for the orbifold data at the given coordinate
/// vector (one complex coordinate per partition curve, in gluing order).
pub fn build_koebe(spec: &OrbifoldSpec, coords: &[Complex64]) -> Result<KoebeGroup, KoebeError> {
    spec.validate()?;
    if coords.len() != spec.steps.len() {
        return Err(KoebeError::InvalidSpec(
            "coordinate vector length must equal the curve count",
        ));
    }
    let mut pants: Vec<PantsData> = Vec::new();
    let mut nodes: Vec<AssemblyNode> = Vec::new();
    let mut generators: Vec<MoebiusTransform> = Vec::new();

    for (step, &coord) in spec.steps.iter().zip(coords) {
        let step_result = (|| -> Result<(), KoebeError> {
        match &step.kind {
            StepKind::AfpAttach { host, sig1, sig2 } => {
                let afp = AfpSpec {
                    sig1: *sig1,
                    sig2: *sig2,
                    alpha: coord,
                };
                let row = afp.row()?;
                if step.weight != sig1[0] {
                    return Err(KoebeError::InvalidSpec(
                        "step weight must match the first signature value",
                    ));
                }
                let domain = afp.coordinate_domain()?;
                outer_domain_check(&domain, coord)?;
                let p1_std = afp.params1()?;
                let p2_std = afp.params2()?;
                let (frame, pants1_idx) = match host {
                    None => (MoebiusTransform::identity(), None),
                    Some(slot_ref) => {
                        let hp = pants
                            .get(slot_ref.pants)
                            .ok_or(KoebeError::GluingOrderInvalid)?;
                        let v = align_host(hp, slot_ref.slot, sig1, &p1_std)?;
                        (v, Some(slot_ref.pants))
                    }
                };
                let params1 = map_params(&frame, &p1_std);
                let params2 = map_params(&frame, &p2_std);
                let pair1 = canonical_generators(&TriangleGroupSpec::new(*sig1, params1)?)?;
                let pair2 = canonical_generators(&TriangleGroupSpec::new(*sig2, params2)?)?;
                if !pair2.a.approx_eq(&pair1.a.inverse(), 1e-7) {
                    return Err(KoebeError::InternalInconsistency(
                        "attached factor does not share the inverse weight element",
                    ));
                }
                let pants1_idx = match pants1_idx {
                    Some(i) => i,
                    None => {
                        pants.push(PantsData {
                            sig: *sig1,
                            params: params1,
                            pair: pair1,
                        });
                        push_generator(&mut generators, pair1.a);
                        push_generator(&mut generators, pair1.b);
                        pants.len() - 1
                    }
                };
                pants.push(PantsData {
                    sig: *sig2,
                    params: params2,
                    pair: pair2,
                });
                let pants2_idx = pants.len() - 1;
                push_generator(&mut generators, pair2.a);
                push_generator(&mut generators, pair2.b);
                let assembly = GroupAssembly {
                    kind: AssemblyKind::Afp {
                        row,
                        sig1: *sig1,
                        sig2: *sig2,
                        params1,
                        params2,
                        pair1,
                        pair2,
                        shared: pair1.a,
                    },
                    coordinate: coord,
                    domain,
                    inside_domain: domain.contains(coord),
                };
                verify_node_coordinate(&assembly, coord)?;
                nodes.push(AssemblyNode {
                    curve_id: step.curve_id,
                    weight: step.weight,
                    orientation: step.orientation,
                    assembly,
                    pants_refs: alloc::vec![pants1_idx, pants2_idx],
                    bridge: None,
                });
            }
            StepKind::AfpBridge {
                host1,
                sig1,
                host2,
                sig2,
            } => {
                let afp = AfpSpec {
                    sig1: *sig1,
                    sig2: *sig2,
                    alpha: coord,
                };
                let row = afp.row()?;
                if step.weight != sig1[0] {
                    return Err(KoebeError::InvalidSpec(
                        "step weight must match the first signature value",
                    ));
                }
                let domain = afp.coordinate_domain()?;
                outer_domain_check(&domain, coord)?;
                let p1_std = afp.params1()?;
                let p2_std = afp.params2()?;
                let hp1 = pants
                    .get(host1.pants)
                    .ok_or(KoebeError::GluingOrderInvalid)?;
                let v1 = align_host(hp1, host1.slot, sig1, &p1_std)?;
                let hp2 = pants
                    .get(host2.pants)
                    .ok_or(KoebeError::GluingOrderInvalid)?;
                // Present the second host canonically for sig2 in its own
                // frame, then carry it onto the table position.
                let std3 = crate::triangle::standard_params();
                let phi2 = align_host(hp2, host2.slot, sig2, &std3)?;
                let params1 = map_params(&v1, &p1_std);
                let params2 = map_params(&v1, &p2_std);
                let pair1 = canonical_generators(&TriangleGroupSpec::new(*sig1, params1)?)?;
                let pair2 = canonical_generators(&TriangleGroupSpec::new(*sig2, params2)?)?;
                let u = moebius_from_triples(std3, params2)?;
                let bridge = u.compose(&phi2.inverse());
                // The bridged copy of the second host must be the table
                // second factor: C X2 C^{-1} = A1^{-1}.
                let x2 = hp2.slot_element(host2.slot)?;
                let carried = x2.conjugate_by(&bridge);
                let ok = carried.approx_eq(&pair1.a.inverse(), 1e-7)
                    || carried.approx_eq(&pair1.a, 1e-7);
                if !ok {
                    return Err(KoebeError::InternalInconsistency(
                        "bridge does not carry the second host onto the shared element",
                    ));
                }
                push_generator(&mut generators, bridge);
                let assembly = GroupAssembly {
                    kind: AssemblyKind::Afp {
                        row,
                        sig1: *sig1,
                        sig2: *sig2,
                        params1,
                        params2,
                        pair1,
                        pair2,
                        shared: pair1.a,
                    },
                    coordinate: coord,
                    domain,
                    inside_domain: domain.contains(coord),
                };
                verify_node_coordinate(&assembly, coord)?;
                nodes.push(AssemblyNode {
                    curve_id: step.curve_id,
                    weight: step.weight,
                    orientation: step.orientation,
                    assembly,
                    pants_refs: alloc::vec![host1.pants, host2.pants],
                    bridge: Some(bridge),
                });
            }
            StepKind::HnnLoop { host, sig } => {
                let hnn = HnnSpec {
                    sig: *sig,
                    coordinate: coord,
                };
                let row = hnn.row()?;
                if step.weight != sig[0] {
                    return Err(KoebeError::InvalidSpec(
                        "step weight must match the doubled signature value",
                    ));
                }
                let domain = hnn.coordinate_domain()?;
                outer_domain_check(&domain, coord)?;
                let base_std = hnn.base_params()?;
                let (frame, pants_idx) = match host {
                    None => (MoebiusTransform::identity(), None),
                    Some(idx) => {
                        let hp = pants.get(*idx).ok_or(KoebeError::GluingOrderInvalid)?;
                        // The weight-order pair (A, B) of the base: slot 0
                        // or 1 both carry order mu; use the re-presentation
                        // with the first generator in slot 1 (B-side) so
                        // the loop conjugates within the host.
                        let v = align_host(hp, 1, sig, &base_std)
                            .or_else(|_| align_host(hp, 0, sig, &base_std))
                            .or_else(|_| align_host(hp, 2, sig, &base_std))?;
                        (v, Some(*idx))
                    }
                };
                let params = map_params(&frame, &base_std);
                let pair = canonical_generators(&TriangleGroupSpec::new(*sig, params)?)?;
                let conj = hnn.conjugator()?.conjugate_by(&frame);
                let rel = conj.compose(&pair.b.inverse()).compose(&conj.inverse());
                if !rel.approx_eq(&pair.a, 1e-7) {
                    return Err(KoebeError::InternalInconsistency(
                        "loop conjugator does not carry B^{-1} to A",
                    ));
                }
                let pants_idx = match pants_idx {
                    Some(i) => i,
                    None => {
                        pants.push(PantsData {
                            sig: *sig,
                            params,
                            pair,
                        });
                        push_generator(&mut generators, pair.a);
                        push_generator(&mut generators, pair.b);
                        pants.len() - 1
                    }
                };
                push_generator(&mut generators, conj);
                let assembly = GroupAssembly {
                    kind: AssemblyKind::Hnn {
                        row,
                        sig: *sig,
                        params,
                        pair,
                        conj,
                    },
                    coordinate: coord,
                    domain,
                    inside_domain: domain.contains(coord),
                };
                verify_node_coordinate(&assembly, coord)?;
                nodes.push(AssemblyNode {
                    curve_id: step.curve_id,
                    weight: step.weight,
                    orientation: step.orientation,
                    assembly,
                    pants_refs: alloc::vec![pants_idx],
                    bridge: None,
                });
            }
        }
        Ok(())
        })();
        step_result.map_err(|e| KoebeError::AtCurve(step.curve_id, alloc::boxed::Box::new(e)))?;
    }
    Ok(KoebeGroup {
        pants,
        nodes,
        generators,
    })
}

fn verify_node_coordinate(assembly: &GroupAssembly, coord: Complex64) -> Result<(), KoebeError> {
    let recovered = match &assembly.kind {
        AssemblyKind::Afp { .. } => afp_coordinate(assembly)?,
        AssemblyKind::Hnn { .. } => hnn_coordinate(assembly)?,
    };
    if (recovered - coord).norm() > 1e-7 {
        return Err(KoebeError::InternalInconsistency(
            "node coordinate does not reproduce the input",
        ));
    }
    Ok(())
}

/// Recovers the coordinate vector from the assembly tree; independent of
/// which conjugate of each modular subgroup is used.
pub fn koebe_coordinates(group: &KoebeGroup) -> Result<CoordinateVector, KoebeError> {
    let mut values = Vec::with_capacity(group.nodes.len());
    let mut domains = Vec::with_capacity(group.nodes.len());
    for node in &group.nodes {
        let v = match &node.assembly.kind {
            AssemblyKind::Afp { .. } => afp_coordinate(&node.assembly)?,
            AssemblyKind::Hnn { .. } => hnn_coordinate(&node.assembly)?,
        };
        values.push(v);
        domains.push(node.assembly.domain);
    }
    Ok(CoordinateVector { values, domains })
}

/// Plumbing parameters per curve: exp(pi i alpha) at infinite weight,
/// alpha^mu at finite (0,4) weights, and the torus-row closed forms.
pub fn plumbing_parameters(
    spec: &OrbifoldSpec,
    coords: &[Complex64],
) -> Result<PlumbingVector, KoebeError> {
    spec.validate()?;
    if coords.len() != spec.steps.len() {
        return Err(KoebeError::InvalidSpec(
            "coordinate vector length must equal the curve count",
        ));
    }
    let i_pi = c64(0.0, core::f64::consts::PI);
    let mut values = Vec::with_capacity(coords.len());
    for (step, &coord) in spec.steps.iter().zip(coords) {
        let t = match &step.kind {
            StepKind::AfpAttach { .. } | StepKind::AfpBridge { .. } => match step.weight {
                RamificationValue::Infinity => (i_pi * coord).exp(),
                RamificationValue::Finite(mu) => {
                    if coord.norm() < 1e-300 {
                        return Err(KoebeError::DegenerateConfiguration);
                    }
                    coord.powu(mu)
                }
            },
            StepKind::HnnLoop { sig, .. } => {
                let hnn = HnnSpec {
                    sig: *sig,
                    coordinate: coord,
                };
                match hnn.row()? {
                    HnnRow::InfInf => {
                        let q = sig[2].q();
                        (i_pi * coord * math::sqrt(2.0 / (1.0 + q))).exp()
                    }
                    HnnRow::Ell332 => {
                        let scaled = coord * c64(-1.5, 0.0);
                        scaled.powu(3)
                    }
                    _ => {
                        let mu = sig[0]
                            .finite()
                            .ok_or(KoebeError::UnsupportedSignatureRow)?;
                        if coord.norm() < 1e-300 {
                            return Err(KoebeError::DegenerateConfiguration);
                        }
                        coord.powu(mu)
                    }
                }
            }
        };
        if t.norm() < 1e-300 {
            return Err(KoebeError::DegenerateConfiguration);
        }
        values.push(t);
    }
    Ok(PlumbingVector { values })
}

/// Per-curve modular subgroup descriptors and the shared triangle groups
/// along the gluing order.
pub fn modular_subgroups(group: &KoebeGroup) -> Vec<ModularSubgroup> {
    let mut out = Vec::with_capacity(group.nodes.len());
    for (j, node) in group.nodes.iter().enumerate() {
        let mut gens = Vec::new();
        match &node.assembly.kind {
            AssemblyKind::Afp { pair1, pair2, .. } => {
                gens.push(pair1.a);
                gens.push(pair1.b);
                gens.push(pair2.a);
                gens.push(pair2.b);
            }
            AssemblyKind::Hnn { pair, conj, .. } => {
                gens.push(pair.a);
                gens.push(pair.b);
                gens.push(*conj);
            }
        }
        let shared_with_next = group.nodes.get(j + 1).and_then(|next| {
            node.pants_refs
                .iter()
                .find(|i| next.pants_refs.contains(i))
                .copied()
        });
        out.push(ModularSubgroup {
            curve_id: node.curve_id,
            generators: gens,
            shared_with_next,
        });
    }
    out
}

/// Scalar data of a signature, re-exported for chart computations.
pub fn signature_scalars(sig: &[RamificationValue; 3]) -> Result<TriangleScalars, KoebeError> {
    Ok(canonical_generators(&TriangleGroupSpec::standard(*sig)?)?.scalars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use RamificationValue::{Finite, Infinity};

    fn ram(n: u32) -> RamificationValue {
        Finite(n)
    }

    fn attach(
        curve_id: usize,
        weight: RamificationValue,
        host: Option<SlotRef>,
        sig1: [RamificationValue; 3],
        sig2: [RamificationValue; 3],
    ) -> CurveStep {
        CurveStep {
            curve_id,
            weight,
            orientation: true,
            kind: StepKind::AfpAttach { host, sig1, sig2 },
        }
    }

    #[test]
    fn single_curve_04_reduces_to_afp() {
        let spec = OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![Infinity, ram(3), ram(4), Infinity],
            steps: alloc::vec![attach(
                0,
                Infinity,
                None,
                [Infinity, ram(3), ram(4)],
                [Infinity, ram(2), ram(2)],
            )],
        };
        let coords = [c64(0.0, 2.0)];
        let group = build_koebe(&spec, &coords).unwrap();
        assert_eq!(group.nodes.len(), 1);
        assert_eq!(group.pants.len(), 2);
        let rec = koebe_coordinates(&group).unwrap();
        assert!((rec.values[0] - coords[0]).norm() < 1e-9);
        let direct = afp_coordinate(&group.nodes[0].assembly).unwrap();
        assert!((direct - coords[0]).norm() < 1e-12);
    }

    #[test]
    fn single_curve_11_matches_table_conjugator() {
        let spec = OrbifoldSpec {
            genus: 1,
            marked: alloc::vec![ram(2)],
            steps: alloc::vec![CurveStep {
                curve_id: 0,
                weight: ram(4),
                orientation: true,
                kind: StepKind::HnnLoop {
                    host: None,
                    sig: [ram(4), ram(4), ram(2)],
                },
            }],
        };
        let tau2 = c64(0.01, 0.0);
        let group = build_koebe(&spec, &[tau2]).unwrap();
        let rec = koebe_coordinates(&group).unwrap();
        assert!((rec.values[0] - tau2).norm() < 1e-9);
        // Generators: A, B of the base at standard parameters plus the
        // conjugator tau^2/(1-z), i.e. [0, 0.1; -10, 10] normalized.
        let c_expect = MoebiusTransform::new(
            c64(0.0, 0.0),
            c64(0.1, 0.0),
            c64(-10.0, 0.0),
            c64(10.0, 0.0),
        )
        .unwrap();
        assert!(group
            .generators
            .iter()
            .any(|g| g.approx_eq(&c_expect, 1e-9)));
    }

    #[test]
    fn two_curve_chain_round_trip() {
        // Type (0,5): pants (4,3,4)+(4,5,3), then (3,4,5)+(3,6,7) glued
        // along the order-3 slot of the second pants.
        let spec = OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![ram(3), ram(4), ram(5), ram(6), ram(7)],
            steps: alloc::vec![
                attach(0, ram(4), None, [ram(4), ram(3), ram(4)], [ram(4), ram(5), ram(3)]),
                attach(
                    1,
                    ram(3),
                    Some(SlotRef { pants: 1, slot: 2 }),
                    [ram(3), ram(4), ram(5)],
                    [ram(3), ram(6), ram(7)],
                ),
            ],
        };
        let coords = [c64(0.02, 0.01), c64(-0.01, 0.025)];
        let group = build_koebe(&spec, &coords).unwrap();
        assert_eq!(group.pants.len(), 3);
        let rec = koebe_coordinates(&group).unwrap();
        for (got, want) in rec.values.iter().zip(&coords) {
            assert!((got - want).norm() < 1e-9);
        }
        // Two modular subgroups sharing one triangle group.
        let subs = modular_subgroups(&group);
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0].shared_with_next, Some(1));
        assert!(subs[1].shared_with_next.is_none());
    }

    #[test]
    fn genus_one_with_two_points_round_trip() {
        // Type (1,2): attach (3,5,6)+(3,4,4), then an HNN loop on the
        // (4,4,3) re-presentation of the second pants.
        let spec = OrbifoldSpec {
            genus: 1,
            marked: alloc::vec![ram(5), ram(6)],
            steps: alloc::vec![
                attach(0, ram(3), None, [ram(3), ram(5), ram(6)], [ram(3), ram(4), ram(4)]),
                CurveStep {
                    curve_id: 1,
                    weight: ram(4),
                    orientation: true,
                    kind: StepKind::HnnLoop {
                        host: Some(1),
                        sig: [ram(4), ram(4), ram(3)],
                    },
                },
            ],
        };
        let coords = [c64(0.015, -0.01), c64(0.01, 0.005)];
        let group = build_koebe(&spec, &coords).unwrap();
        let rec = koebe_coordinates(&group).unwrap();
        for (got, want) in rec.values.iter().zip(&coords) {
            assert!((got - want).norm() < 1e-9);
        }
    }

    #[test]
    fn genus_two_bridges_round_trip() {
        // Type (2,0): two pants (3,4,5), bridged along the order-4 and
        // order-5 slots.
        let spec = OrbifoldSpec {
            genus: 2,
            marked: alloc::vec![],
            steps: alloc::vec![
                attach(0, ram(3), None, [ram(3), ram(4), ram(5)], [ram(3), ram(4), ram(5)]),
                CurveStep {
                    curve_id: 1,
                    weight: ram(4),
                    orientation: true,
                    kind: StepKind::AfpBridge {
                        host1: SlotRef { pants: 0, slot: 1 },
                        sig1: [ram(4), ram(5), ram(3)],
                        host2: SlotRef { pants: 1, slot: 1 },
                        sig2: [ram(4), ram(5), ram(3)],
                    },
                },
                CurveStep {
                    curve_id: 2,
                    weight: ram(5),
                    orientation: true,
                    kind: StepKind::AfpBridge {
                        host1: SlotRef { pants: 0, slot: 2 },
                        sig1: [ram(5), ram(3), ram(4)],
                        host2: SlotRef { pants: 1, slot: 2 },
                        sig2: [ram(5), ram(3), ram(4)],
                    },
                },
            ],
        };
        let coords = [c64(0.01, 0.005), c64(0.012, -0.008), c64(-0.006, 0.01)];
        let group = build_koebe(&spec, &coords).unwrap();
        assert_eq!(group.pants.len(), 2);
        assert_eq!(group.nodes.len(), 3);
        assert!(group.nodes[1].bridge.is_some());
        let rec = koebe_coordinates(&group).unwrap();
        for (got, want) in rec.values.iter().zip(&coords) {
            assert!((got - want).norm() < 1e-9, "got {got}, want {want}");
        }
    }

    #[test]
    fn coordinates_invariant_under_global_conjugation() {
        let spec = OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![ram(3), ram(4), ram(5), ram(6), ram(7)],
            steps: alloc::vec![
                attach(0, ram(4), None, [ram(4), ram(3), ram(4)], [ram(4), ram(5), ram(3)]),
                attach(
                    1,
                    ram(3),
                    Some(SlotRef { pants: 1, slot: 2 }),
                    [ram(3), ram(4), ram(5)],
                    [ram(3), ram(6), ram(7)],
                ),
            ],
        };
        let coords = [c64(0.02, 0.01), c64(-0.01, 0.025)];
        let group = build_koebe(&spec, &coords).unwrap();
        let t = MoebiusTransform::new(
            c64(0.9, 0.3),
            c64(-0.2, 1.1),
            c64(0.4, -0.7),
            c64(1.3, 0.2),
        )
        .unwrap();
        let moved = group.conjugated(&t);
        let rec = koebe_coordinates(&moved).unwrap();
        for (got, want) in rec.values.iter().zip(&coords) {
            assert!((got - want).norm() < 1e-9);
        }
    }

    #[test]
    fn dimension_and_validation_errors() {
        // Wrong curve count.
        let bad = OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![Infinity, ram(3), ram(4), Infinity],
            steps: alloc::vec![],
        };
        assert!(matches!(bad.validate(), Err(KoebeError::InvalidSpec(_))));
        // Gluing reference to an unbuilt pants.
        let spec = OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![ram(3), ram(4), ram(5), ram(6), ram(7)],
            steps: alloc::vec![
                attach(0, ram(4), None, [ram(4), ram(3), ram(4)], [ram(4), ram(5), ram(3)]),
                attach(
                    1,
                    ram(3),
                    Some(SlotRef { pants: 7, slot: 2 }),
                    [ram(3), ram(4), ram(5)],
                    [ram(3), ram(6), ram(7)],
                ),
            ],
        };
        let err = build_koebe(&spec, &[c64(0.02, 0.0), c64(0.02, 0.0)]).unwrap_err();
        assert_eq!(err.root_cause(), &KoebeError::GluingOrderInvalid);
        assert!(matches!(err, KoebeError::AtCurve(1, _)));
        // Coordinate outside the outer domain.
        let spec04 = OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![Infinity, ram(3), ram(4), Infinity],
            steps: alloc::vec![attach(
                0,
                Infinity,
                None,
                [Infinity, ram(3), ram(4)],
                [Infinity, ram(2), ram(2)],
            )],
        };
        assert_eq!(
            build_koebe(&spec04, &[c64(0.0, -1.0)])
                .unwrap_err()
                .root_cause(),
            &KoebeError::CoordinateOutsideOuterDomain
        );
    }

    #[test]
    fn orientation_flag_flips_curve_element() {
        let mk = |orientation: bool| OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![Infinity, ram(3), ram(4), Infinity],
            steps: alloc::vec![CurveStep {
                curve_id: 0,
                weight: Infinity,
                orientation,
                kind: StepKind::AfpAttach {
                    host: None,
                    sig1: [Infinity, ram(3), ram(4)],
                    sig2: [Infinity, ram(2), ram(2)],
                },
            }],
        };
        let coords = [c64(0.0, 2.0)];
        let plus = build_koebe(&mk(true), &coords).unwrap();
        let minus = build_koebe(&mk(false), &coords).unwrap();
        let e1 = plus.nodes[0].curve_element();
        let e2 = minus.nodes[0].curve_element();
        assert!(e2.approx_eq(&e1.inverse(), 1e-12));
        // The coordinate is unaffected by the orientation convention.
        let r1 = koebe_coordinates(&plus).unwrap();
        let r2 = koebe_coordinates(&minus).unwrap();
        assert!((r1.values[0] - r2.values[0]).norm() < 1e-12);
    }

    #[test]
    fn plumbing_closed_forms() {
        let alpha = c64(0.3, 1.4);
        let spec_inf = OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![Infinity, ram(3), ram(4), Infinity],
            steps: alloc::vec![attach(
                0,
                Infinity,
                None,
                [Infinity, ram(3), ram(4)],
                [Infinity, ram(2), ram(2)],
            )],
        };
        let t = plumbing_parameters(&spec_inf, &[alpha]).unwrap();
        let want = (c64(0.0, core::f64::consts::PI) * alpha).exp();
        assert!((t.values[0] - want).norm() < 1e-12);

        let spec_fin = OrbifoldSpec {
            genus: 0,
            marked: alloc::vec![ram(5), ram(6), ram(4), ram(4)],
            steps: alloc::vec![attach(
                0,
                ram(4),
                None,
                [ram(4), ram(5), ram(6)],
                [ram(4), ram(4), ram(2)],
            )],
        };
        let a = c64(0.1, 0.02);
        let t = plumbing_parameters(&spec_fin, &[a]).unwrap();
        assert!((t.values[0] - a.powu(4)).norm() < 1e-12);

        let spec_332 = OrbifoldSpec {
            genus: 1,
            marked: alloc::vec![ram(2)],
            steps: alloc::vec![CurveStep {
                curve_id: 0,
                weight: ram(3),
                orientation: true,
                kind: StepKind::HnnLoop {
                    host: None,
                    sig: [ram(3), ram(3), ram(2)],
                },
            }],
        };
        let tau2 = c64(0.05, -0.03);
        let t = plumbing_parameters(&spec_332, &[tau2]).unwrap();
        let tau6 = tau2.powu(3);
        let want = -tau6 * 27.0 / 8.0;
        assert!((t.values[0] - want).norm() < 1e-12);
    }
}
