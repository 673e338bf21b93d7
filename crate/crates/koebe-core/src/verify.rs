//! Numerical sanity layer: element-order reports, Jorgensen-inequality
//! screening, combination-hypothesis separation checks, and limit-set
//! orbit sampling.
//!
//! A Jorgensen pass is never reported as "discrete", only as no
//! obstruction found; discreteness itself rests on the combination
//! theorems. All outputs are deterministic for identical inputs.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::combine::{AssemblyKind, ContainmentDomain, GroupAssembly, HnnSpec};
use crate::error::KoebeError;
use crate::koebe::KoebeGroup;
use crate::moebius::{ElementType, MoebiusTransform};
use crate::sphere::SpherePoint;
use crate::triangle::trace_matches_order;
use crate::words::{for_each_reduced_word, reduced_word_elements};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Warn,
    Fail,
}

/// One named check with its measured quantity and tolerance.
#[derive(Clone, Debug)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
    pub measured: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != CheckStatus::Fail)
    }

    pub fn has_warnings(&self) -> bool {
        self.entries.iter().any(|e| e.status == CheckStatus::Warn)
    }

    fn push(&mut self, name: String, status: CheckStatus, measured: f64, tolerance: f64) {
        self.entries.push(CheckEntry {
            name,
            status,
            measured,
            tolerance,
        });
    }

    fn check(&mut self, name: String, measured: f64, tolerance: f64) {
        let status = if measured <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.push(name, status, measured, tolerance);
    }
}

const ORDER_TOL: f64 = 1e-8;
const RELATION_TOL: f64 = 1e-8;

/// Verifies the orders of all designated elements and the structural
/// relations of every assembly node. Failures are report entries, never
/// errors.
pub fn check_relations(group: &KoebeGroup) -> VerificationReport {
    let mut report = VerificationReport::default();
    for (i, pants) in group.pants.iter().enumerate() {
        let ab = pants.pair.ab();
        for (label, m, nu) in [
            ("A", &pants.pair.a, pants.sig[0]),
            ("B", &pants.pair.b, pants.sig[1]),
            ("AB", &ab, pants.sig[2]),
        ] {
            let t2 = m.trace() * m.trace();
            let q = nu.q();
            let residual = (t2 - 4.0 * q * q).norm();
            let status = if trace_matches_order(m, nu, ORDER_TOL) {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            report.push(
                format!("pants {i}: order of {label} is {nu}"),
                status,
                residual,
                ORDER_TOL,
            );
        }
    }
    for node in &group.nodes {
        match &node.assembly.kind {
            AssemblyKind::Afp { pair1, pair2, .. } => {
                let d = pair2.a.psl_distance(&pair1.a.inverse());
                report.check(
                    format!("curve {}: shared element identity", node.curve_id),
                    d,
                    RELATION_TOL,
                );
                if let Some(bridge) = &node.bridge {
                    // The bridge must carry the second factor's weight
                    // element into the shared cyclic group.
                    let carried = pair2.a.conjugate_by(&bridge.inverse());
                    let d = carried
                        .psl_distance(&pair1.a)
                        .min(carried.psl_distance(&pair1.a.inverse()));
                    let status = if d <= 1e-6 {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Warn
                    };
                    report.push(
                        format!("curve {}: bridge conjugation", node.curve_id),
                        status,
                        d,
                        1e-6,
                    );
                }
            }
            AssemblyKind::Hnn { pair, conj, .. } => {
                let rel = conj.compose(&pair.b.inverse()).compose(&conj.inverse());
                report.check(
                    format!("curve {}: HNN relation C B^-1 C^-1 = A", node.curve_id),
                    rel.psl_distance(&pair.a),
                    RELATION_TOL,
                );
            }
        }
        if !node.assembly.inside_domain {
            report.push(
                format!("curve {}: coordinate outside containment domain", node.curve_id),
                CheckStatus::Warn,
                0.0,
                0.0,
            );
        }
    }
    report
}

/// True when the two elements generate an elementary group: they share
/// fixed points (commutator trace 2), or they generate a finite group.
fn is_elementary_pair(x: &MoebiusTransform, y: &MoebiusTransform) -> bool {
    if x.is_identity(1e-9) || y.is_identity(1e-9) {
        return true;
    }
    let comm = x
        .compose(y)
        .compose(&x.inverse())
        .compose(&y.inverse());
    if (comm.trace() * comm.trace() - 4.0).norm() < 1e-9 && comm.is_identity(1e-7) {
        return true;
    }
    // Common fixed-point set.
    if let (Ok((f1, f2)), Ok(_)) = (x.fixed_points(), y.fixed_points()) {
        let fixes = |m: &MoebiusTransform, p: &SpherePoint| m.apply(*p).approx_eq(p, 1e-8);
        let shared1 = fixes(y, &f1);
        let shared2 = f2.map(|f| fixes(y, &f)).unwrap_or(true);
        if shared1 && shared2 {
            return true;
        }
    }
    // Finite spherical pairs: the word closure stalls.
    let both_elliptic = matches!(x.classify(), ElementType::Elliptic(_))
        && matches!(y.classify(), ElementType::Elliptic(_));
    if both_elliptic {
        // The largest finite spherical group in PSL(2,C) has order 60;
        // a stalled word closure marks the pair elementary.
        let elems = reduced_word_elements(&[*x, *y], 5, 1e-7);
        if elems.len() <= 60 {
            let longer = reduced_word_elements(&[*x, *y], 6, 1e-7);
            return longer.len() == elems.len();
        }
    }
    false
}

/// Evaluates |tr^2 X - 4| + |tr XYX^-1Y^-1 - 2| >= 1 over deduplicated
/// word pairs up to word length 4, elementary pairs exempted. At most
/// `budget` pairs are examined, in deterministic order.
pub fn jorgensen_screen(group: &KoebeGroup, budget: usize) -> VerificationReport {
    let mut report = VerificationReport::default();
    let words = reduced_word_elements(&group.generators, 4, 1e-9);
    let mut checked = 0usize;
    let mut violations = 0usize;
    'outer: for (i, x) in words.iter().enumerate() {
        for y in words.iter().skip(i + 1) {
            if checked >= budget {
                break 'outer;
            }
            checked += 1;
            let tx = x.trace();
            let comm = x
                .compose(y)
                .compose(&x.inverse())
                .compose(&y.inverse());
            let j = (tx * tx - 4.0).norm() + (comm.trace() - 2.0).norm();
            if j < 1.0 - 1e-9 && !is_elementary_pair(x, y) {
                violations += 1;
                report.push(
                    format!("jorgensen violation: pair ({i}), J = {j:.6}"),
                    CheckStatus::Fail,
                    j,
                    1.0,
                );
            }
        }
    }
    let status = if violations == 0 {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    report.push(
        format!("jorgensen screen: {checked} pairs, {violations} violations"),
        status,
        violations as f64,
        0.0,
    );
    report
}

/// Verifies the separation required by the combination theorems, as the
/// margin of the coordinate against its containment bound: the invariant
/// line at half height for infinite weight, the island/disc bound for
/// finite weight, and additionally the circle-expansion floor (m-1)/2
/// for the general HNN row.
pub fn separation_check(assembly: &GroupAssembly) -> VerificationReport {
    let mut report = VerificationReport::default();
    let coord = assembly.coordinate;
    match assembly.domain {
        ContainmentDomain::HalfPlane { min_imag } => {
            // The invariant line sits at half the coordinate height; it
            // clears both factor bodies when Im(alpha) exceeds the bound.
            let margin = coord.im / 2.0;
            let status = if coord.im > min_imag {
                CheckStatus::Pass
            } else {
                CheckStatus::Warn
            };
            report.push(
                format!("invariant line at height {}", margin),
                status,
                margin,
                min_imag / 2.0,
            );
        }
        ContainmentDomain::PuncturedDisc { radius } => {
            let margin = radius - coord.norm();
            let status = if assembly.domain.contains(coord) {
                CheckStatus::Pass
            } else {
                CheckStatus::Warn
            };
            report.push(
                format!("invariant circle separation margin {margin}"),
                status,
                margin,
                0.0,
            );
        }
    }
    if let AssemblyKind::Hnn { row, sig, .. } = &assembly.kind {
        if *row == crate::combine::HnnRow::GeneralFinite {
            let spec = HnnSpec {
                sig: *sig,
                coordinate: coord,
            };
            if let Ok((m, _, _)) = spec.mnr() {
                let floor = (m - 1.0) / 2.0;
                let status = if coord.norm() < floor {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Warn
                };
                report.push(
                    format!("circle expansion floor (m-1)/2 = {floor}"),
                    status,
                    coord.norm(),
                    floor,
                );
            }
        }
    }
    report
}

/// A deduplicated sample of the limit set.
#[derive(Clone, Debug)]
pub struct OrbitSample {
    pub points: Vec<SpherePoint>,
    pub word_length: usize,
    pub seeds: Vec<SpherePoint>,
    /// Set when the point cap stopped the enumeration early.
    pub truncated: bool,
}

const DEDUP_TOL: f64 = 1e-7;
const MAX_WORD_LENGTH: usize = 12;

/// Orbits of the fixed points of the given generators under reduced
/// words of length <= max_len, deduplicated within 1e-7 chordal
/// distance, in deterministic order.
pub fn sample_limit_set_of(
    generators: &[MoebiusTransform],
    max_len: usize,
    cap: usize,
) -> Result<OrbitSample, KoebeError> {
    if max_len > MAX_WORD_LENGTH {
        return Err(KoebeError::InvalidSpec("word length capped at 12"));
    }
    let mut seeds: Vec<SpherePoint> = Vec::new();
    for g in generators {
        if let Ok((f1, f2)) = g.fixed_points() {
            for f in [Some(f1), f2].into_iter().flatten() {
                if !seeds.iter().any(|s| s.approx_eq(&f, DEDUP_TOL)) {
                    seeds.push(f);
                }
            }
        }
    }
    let mut points: Vec<SpherePoint> = Vec::new();
    let mut truncated = false;
    let absorb = |p: SpherePoint, points: &mut Vec<SpherePoint>| -> bool {
        if points.iter().any(|q| q.approx_eq(&p, DEDUP_TOL)) {
            return true;
        }
        if points.len() >= cap {
            return false;
        }
        points.push(p);
        true
    };
    for s in &seeds {
        if !absorb(*s, &mut points) {
            truncated = true;
            break;
        }
    }
    if !truncated {
        let complete = for_each_reduced_word(generators, max_len, |m| {
            for s in &seeds {
                if !absorb(m.apply(*s), &mut points) {
                    return false;
                }
            }
            true
        });
        truncated = !complete;
    }
    Ok(OrbitSample {
        points,
        word_length: max_len,
        seeds,
        truncated,
    })
}

/// Limit-set sample of an assembled Koebe group.
pub fn sample_limit_set(
    group: &KoebeGroup,
    max_len: usize,
    cap: usize,
) -> Result<OrbitSample, KoebeError> {
    sample_limit_set_of(&group.generators, max_len, cap)
}

/// Convenience wrapper: the Jorgensen quantity of a single pair.
pub fn jorgensen_value(x: &MoebiusTransform, y: &MoebiusTransform) -> f64 {
    let tx = x.trace();
    let comm = x
        .compose(y)
        .compose(&x.inverse())
        .compose(&y.inverse());
    (tx * tx - 4.0).norm() + (comm.trace() - 2.0).norm()
}
