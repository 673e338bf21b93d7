//! Batch front-end: parse orbifold documents, run builds and
//! verifications, and emit generators, coordinates, plumbing parameters,
//! and limit-set point clouds. All outputs are deterministic.

pub mod doc;
pub mod render;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use koebe_core::{
    afp_coordinate, build_afp, build_hnn, build_koebe, canonical_generators, check_relations,
    hnn_coordinate, jorgensen_screen, plumbing_parameters, sample_limit_set, separation_check,
    AfpSpec, AssemblyKind, CheckStatus, ContainmentDomain, GroupAssembly, HnnSpec, KoebeGroup,
    OrbifoldSpec, RamificationValue, SpherePoint, TriangleGroupSpec, VerificationReport,
};

use doc::{ComplexDoc, MatrixDoc, NuDoc, OrbifoldDoc, PointDoc};

/// Outcome of a command: the rendered primary output plus a warning flag
/// (unverified discreteness, truncated samples, report warnings).
pub struct CommandOutput {
    pub text: String,
    pub warnings: bool,
}

pub fn parse_signature(text: &str) -> Result<[RamificationValue; 3]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        bail!("signature must have three comma-separated values, got {text:?}");
    }
    let mut out = [RamificationValue::Infinity; 3];
    for (i, p) in parts.iter().enumerate() {
        out[i] = if *p == "inf" {
            RamificationValue::Infinity
        } else {
            let n: u32 = p
                .parse()
                .with_context(|| format!("ramification value {p:?}"))?;
            RamificationValue::Finite(n)
        };
    }
    Ok(out)
}

/// Parses a complex number like "2", "-1.5+2i", "0.3i", "i", "-i", "inf".
pub fn parse_point(text: &str) -> Result<SpherePoint> {
    let t = text.trim();
    if t == "inf" {
        return Ok(SpherePoint::Infinity);
    }
    Ok(SpherePoint::Finite(parse_complex(t)?))
}

pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim().replace(' ', "");
    if t.is_empty() {
        bail!("empty complex number");
    }
    if !t.ends_with('i') {
        let re: f64 = t.parse().with_context(|| format!("real number {t:?}"))?;
        return Ok(Complex64::new(re, 0.0));
    }
    let body = &t[..t.len() - 1];
    // Split at the last sign that is not an exponent sign or leading.
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && bytes[i - 1] as char != 'e' && bytes[i - 1] as char != 'E' {
            split = Some(i);
            break;
        }
    }
    match split {
        None => {
            let im: f64 = if body.is_empty() || body == "+" {
                1.0
            } else if body == "-" {
                -1.0
            } else {
                body.parse().with_context(|| format!("imaginary part {body:?}"))?
            };
            Ok(Complex64::new(0.0, im))
        }
        Some(i) => {
            let re: f64 = body[..i]
                .parse()
                .with_context(|| format!("real part {:?}", &body[..i]))?;
            let imtxt = &body[i..];
            let im: f64 = if imtxt == "+" {
                1.0
            } else if imtxt == "-" {
                -1.0
            } else {
                imtxt
                    .parse()
                    .with_context(|| format!("imaginary part {imtxt:?}"))?
            };
            Ok(Complex64::new(re, im))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TriangleOut {
    format_version: u32,
    signature: [NuDoc; 3],
    params: [PointDoc; 3],
    class: String,
    a: MatrixDoc,
    b: MatrixDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    fourth_point: Option<PointDoc>,
    non_unique: bool,
}

/// `triangle`: canonical generators for a signature and parameter triple.
pub fn cmd_triangle(signature: &str, params: &str) -> Result<CommandOutput> {
    let sig = parse_signature(signature)?;
    let parts: Vec<&str> = params.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        bail!("params must have three comma-separated points");
    }
    let pts = [
        parse_point(parts[0])?,
        parse_point(parts[1])?,
        parse_point(parts[2])?,
    ];
    let spec = TriangleGroupSpec::new(sig, pts).map_err(|e| anyhow!("{e}"))?;
    let pair = canonical_generators(&spec).map_err(|e| anyhow!("{e}"))?;
    let out = TriangleOut {
        format_version: 1,
        signature: sig.map(NuDoc::from_ram),
        params: pts.map(PointDoc::from_point),
        class: format!("{:?}", spec.class()).to_lowercase(),
        a: MatrixDoc::from_transform(&pair.a),
        b: MatrixDoc::from_transform(&pair.b),
        fourth_point: pair.fourth_point.map(PointDoc::from_point),
        non_unique: pair.non_unique,
    };
    Ok(CommandOutput {
        text: serde_json::to_string_pretty(&out)? + "\n",
        warnings: pair.non_unique,
    })
}

#[derive(Serialize, Deserialize)]
pub struct DomainDoc {
    pub kind: String,
    pub bound: f64,
}

impl DomainDoc {
    fn from_domain(d: &ContainmentDomain) -> Self {
        match d {
            ContainmentDomain::HalfPlane { min_imag } => DomainDoc {
                kind: "half-plane".to_string(),
                bound: *min_imag,
            },
            ContainmentDomain::PuncturedDisc { radius } => DomainDoc {
                kind: "punctured-disc".to_string(),
                bound: *radius,
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct NodeDoc {
    pub curve_id: usize,
    pub weight: NuDoc,
    pub orientation: bool,
    pub kind: String,
    pub row: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sig1: Option<[NuDoc; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sig2: Option<[NuDoc; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params1: Option<[PointDoc; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params2: Option<[PointDoc; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sig: Option<[NuDoc; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<[PointDoc; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conj: Option<MatrixDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge: Option<MatrixDoc>,
    pub coordinate: ComplexDoc,
    pub domain: DomainDoc,
    pub inside_domain: bool,
}

#[derive(Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub label: String,
    #[serde(flatten)]
    pub matrix: MatrixDoc,
}

#[derive(Serialize, Deserialize)]
pub struct PantsDoc {
    pub signature: [NuDoc; 3],
    pub params: [PointDoc; 3],
    pub a: MatrixDoc,
    pub b: MatrixDoc,
}

#[derive(Serialize, Deserialize)]
pub struct GroupDoc {
    pub format_version: u32,
    pub generators: Vec<LabeledMatrix>,
    pub pants: Vec<PantsDoc>,
    pub assembly: Vec<NodeDoc>,
}

fn node_doc(node: &koebe_core::AssemblyNode) -> NodeDoc {
    let a = &node.assembly;
    let mut out = NodeDoc {
        curve_id: node.curve_id,
        weight: NuDoc::from_ram(node.weight),
        orientation: node.orientation,
        kind: String::new(),
        row: String::new(),
        sig1: None,
        sig2: None,
        params1: None,
        params2: None,
        sig: None,
        params: None,
        conj: None,
        bridge: node.bridge.as_ref().map(MatrixDoc::from_transform),
        coordinate: ComplexDoc::from_complex(a.coordinate),
        domain: DomainDoc::from_domain(&a.domain),
        inside_domain: a.inside_domain,
    };
    match &a.kind {
        AssemblyKind::Afp {
            row,
            sig1,
            sig2,
            params1,
            params2,
            ..
        } => {
            out.kind = "afp".to_string();
            out.row = row.name().to_string();
            out.sig1 = Some(sig1.map(NuDoc::from_ram));
            out.sig2 = Some(sig2.map(NuDoc::from_ram));
            out.params1 = Some(params1.map(PointDoc::from_point));
            out.params2 = Some(params2.map(PointDoc::from_point));
        }
        AssemblyKind::Hnn {
            row,
            sig,
            params,
            conj,
            ..
        } => {
            out.kind = "hnn".to_string();
            out.row = row.name().to_string();
            out.sig = Some(sig.map(NuDoc::from_ram));
            out.params = Some(params.map(PointDoc::from_point));
            out.conj = Some(MatrixDoc::from_transform(conj));
        }
    }
    out
}

pub fn group_to_doc(group: &KoebeGroup) -> GroupDoc {
    let generators = group
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| LabeledMatrix {
            label: format!("g{i}"),
            matrix: MatrixDoc::from_transform(g),
        })
        .collect();
    let pants = group
        .pants
        .iter()
        .map(|p| PantsDoc {
            signature: p.sig.map(NuDoc::from_ram),
            params: p.params.map(PointDoc::from_point),
            a: MatrixDoc::from_transform(&p.pair.a),
            b: MatrixDoc::from_transform(&p.pair.b),
        })
        .collect();
    let assembly = group.nodes.iter().map(node_doc).collect();
    GroupDoc {
        format_version: 1,
        generators,
        pants,
        assembly,
    }
}

/// Rebuilds the per-curve assembly data of a group document, enough to
/// recover coordinates.
pub fn assemblies_from_doc(doc: &GroupDoc) -> Result<Vec<GroupAssembly>> {
    if doc.format_version != 1 {
        bail!("unsupported format_version {}", doc.format_version);
    }
    let mut out = Vec::with_capacity(doc.assembly.len());
    for node in &doc.assembly {
        let asm = match node.kind.as_str() {
            "afp" => {
                let sig1 = node
                    .sig1
                    .ok_or_else(|| anyhow!("curve {}: missing sig1", node.curve_id))?
                    .map(NuDoc::to_ram);
                let sig2 = node
                    .sig2
                    .ok_or_else(|| anyhow!("curve {}: missing sig2", node.curve_id))?
                    .map(NuDoc::to_ram);
                let params1 = node
                    .params1
                    .ok_or_else(|| anyhow!("curve {}: missing params1", node.curve_id))?
                    .map(PointDoc::to_point);
                let params2 = node
                    .params2
                    .ok_or_else(|| anyhow!("curve {}: missing params2", node.curve_id))?
                    .map(PointDoc::to_point);
                let spec = AfpSpec {
                    sig1,
                    sig2,
                    alpha: node.coordinate.to_complex(),
                };
                let row = spec.row().map_err(|e| anyhow!("curve {}: {e}", node.curve_id))?;
                let pair1 = canonical_generators(
                    &TriangleGroupSpec::new(sig1, params1).map_err(|e| anyhow!("{e}"))?,
                )
                .map_err(|e| anyhow!("{e}"))?;
                let pair2 = canonical_generators(
                    &TriangleGroupSpec::new(sig2, params2).map_err(|e| anyhow!("{e}"))?,
                )
                .map_err(|e| anyhow!("{e}"))?;
                let domain = spec.coordinate_domain().map_err(|e| anyhow!("{e}"))?;
                GroupAssembly {
                    kind: AssemblyKind::Afp {
                        row,
                        sig1,
                        sig2,
                        params1,
                        params2,
                        pair1,
                        pair2,
                        shared: pair1.a,
                    },
                    coordinate: node.coordinate.to_complex(),
                    domain,
                    inside_domain: node.inside_domain,
                }
            }
            "hnn" => {
                let sig = node
                    .sig
                    .ok_or_else(|| anyhow!("curve {}: missing sig", node.curve_id))?
                    .map(NuDoc::to_ram);
                let params = node
                    .params
                    .ok_or_else(|| anyhow!("curve {}: missing params", node.curve_id))?
                    .map(PointDoc::to_point);
                let conj = node
                    .conj
                    .as_ref()
                    .ok_or_else(|| anyhow!("curve {}: missing conj", node.curve_id))?
                    .to_transform()?;
                let spec = HnnSpec {
                    sig,
                    coordinate: node.coordinate.to_complex(),
                };
                let row = spec.row().map_err(|e| anyhow!("curve {}: {e}", node.curve_id))?;
                let pair = canonical_generators(
                    &TriangleGroupSpec::new(sig, params).map_err(|e| anyhow!("{e}"))?,
                )
                .map_err(|e| anyhow!("{e}"))?;
                let domain = spec.coordinate_domain().map_err(|e| anyhow!("{e}"))?;
                GroupAssembly {
                    kind: AssemblyKind::Hnn {
                        row,
                        sig,
                        params,
                        pair,
                        conj,
                    },
                    coordinate: node.coordinate.to_complex(),
                    domain,
                    inside_domain: node.inside_domain,
                }
            }
            other => bail!("curve {}: unknown node kind {other:?}", node.curve_id),
        };
        out.push(asm);
    }
    Ok(out)
}

/// `combine`: build a single AFP or HNN assembly from flags.
pub fn cmd_combine(
    kind: &str,
    sig1: Option<&str>,
    sig2: Option<&str>,
    sig: Option<&str>,
    coordinate: &str,
) -> Result<CommandOutput> {
    let coord = parse_complex(coordinate)?;
    let (asm, node) = match kind {
        "afp" => {
            let sig1 = parse_signature(sig1.ok_or_else(|| anyhow!("--sig1 required for afp"))?)?;
            let sig2 = parse_signature(sig2.ok_or_else(|| anyhow!("--sig2 required for afp"))?)?;
            let spec = AfpSpec {
                sig1,
                sig2,
                alpha: coord,
            };
            let asm = build_afp(&spec).map_err(|e| anyhow!("{e}"))?;
            let recovered = afp_coordinate(&asm).map_err(|e| anyhow!("{e}"))?;
            (asm, recovered)
        }
        "hnn" => {
            let sig = parse_signature(sig.ok_or_else(|| anyhow!("--sig required for hnn"))?)?;
            let spec = HnnSpec {
                sig,
                coordinate: coord,
            };
            let asm = build_hnn(&spec).map_err(|e| anyhow!("{e}"))?;
            let recovered = hnn_coordinate(&asm).map_err(|e| anyhow!("{e}"))?;
            (asm, recovered)
        }
        other => bail!("--kind must be afp or hnn, got {other:?}"),
    };
    #[derive(Serialize)]
    struct CombineOut {
        format_version: u32,
        generators: Vec<LabeledMatrix>,
        node: NodeDoc,
        recovered_coordinate: ComplexDoc,
    }
    let shim = koebe_core::AssemblyNode {
        curve_id: 0,
        weight: match &asm.kind {
            AssemblyKind::Afp { sig1, .. } => sig1[0],
            AssemblyKind::Hnn { sig, .. } => sig[0],
        },
        orientation: true,
        assembly: asm.clone(),
        pants_refs: vec![],
        bridge: None,
    };
    let warnings = !asm.inside_domain;
    let out = CombineOut {
        format_version: 1,
        generators: asm
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| LabeledMatrix {
                label: format!("g{i}"),
                matrix: MatrixDoc::from_transform(g),
            })
            .collect(),
        node: node_doc(&shim),
        recovered_coordinate: ComplexDoc::from_complex(node),
    };
    Ok(CommandOutput {
        text: serde_json::to_string_pretty(&out)? + "\n",
        warnings,
    })
}

fn lower_doc(text: &str) -> Result<(OrbifoldSpec, Vec<Complex64>)> {
    let doc = OrbifoldDoc::parse(text)?;
    doc.lower()
}

/// `build`: orbifold document to group document.
pub fn cmd_build(doc_text: &str) -> Result<CommandOutput> {
    let (spec, coords) = lower_doc(doc_text)?;
    let group = build_koebe(&spec, &coords).map_err(|e| anyhow!("{e}"))?;
    let warnings = group.nodes.iter().any(|n| !n.assembly.inside_domain);
    let out = group_to_doc(&group);
    Ok(CommandOutput {
        text: serde_json::to_string_pretty(&out)? + "\n",
        warnings,
    })
}

#[derive(Serialize, Deserialize)]
pub struct CoordsOut {
    pub format_version: u32,
    pub coordinates: Vec<ComplexDoc>,
    pub domains: Vec<DomainDoc>,
}

/// `coords`: recover the coordinate vector from a group document.
pub fn cmd_coords(group_text: &str) -> Result<CommandOutput> {
    let doc: GroupDoc = serde_json::from_str(group_text).context("parsing group document")?;
    let assemblies = assemblies_from_doc(&doc)?;
    let mut coordinates = Vec::new();
    let mut domains = Vec::new();
    for (node, asm) in doc.assembly.iter().zip(&assemblies) {
        let v = match &asm.kind {
            AssemblyKind::Afp { .. } => afp_coordinate(asm),
            AssemblyKind::Hnn { .. } => hnn_coordinate(asm),
        }
        .map_err(|e| anyhow!("curve {}: {e}", node.curve_id))?;
        coordinates.push(ComplexDoc::from_complex(v));
        domains.push(DomainDoc::from_domain(&asm.domain));
    }
    let out = CoordsOut {
        format_version: 1,
        coordinates,
        domains,
    };
    Ok(CommandOutput {
        text: serde_json::to_string_pretty(&out)? + "\n",
        warnings: false,
    })
}

/// `plumb`: orbifold document to plumbing parameters.
pub fn cmd_plumb(doc_text: &str) -> Result<CommandOutput> {
    let (spec, coords) = lower_doc(doc_text)?;
    let plumbing = plumbing_parameters(&spec, &coords).map_err(|e| anyhow!("{e}"))?;
    #[derive(Serialize)]
    struct PlumbOut {
        format_version: u32,
        plumbing: Vec<ComplexDoc>,
    }
    let out = PlumbOut {
        format_version: 1,
        plumbing: plumbing
            .values
            .iter()
            .map(|z| ComplexDoc::from_complex(*z))
            .collect(),
    };
    Ok(CommandOutput {
        text: serde_json::to_string_pretty(&out)? + "\n",
        warnings: false,
    })
}

/// `limitset`: orbifold document to CSV point cloud (and optional SVG).
pub fn cmd_limitset(
    doc_text: &str,
    word_length: usize,
    cap: usize,
) -> Result<(CommandOutput, String)> {
    let (spec, coords) = lower_doc(doc_text)?;
    let group = build_koebe(&spec, &coords).map_err(|e| anyhow!("{e}"))?;
    let sample = sample_limit_set(&group, word_length, cap).map_err(|e| anyhow!("{e}"))?;
    let csv = render::sample_to_csv(&sample);
    let svg = render::sample_to_svg(&sample);
    Ok((
        CommandOutput {
            text: csv,
            warnings: sample.truncated,
        },
        svg,
    ))
}

#[derive(Serialize, Deserialize)]
pub struct ReportEntryDoc {
    pub name: String,
    pub status: String,
    pub measured: f64,
    pub tolerance: f64,
}

#[derive(Serialize, Deserialize)]
pub struct ReportDoc {
    pub format_version: u32,
    pub passed: bool,
    pub warnings: bool,
    pub entries: Vec<ReportEntryDoc>,
}

fn report_entries(report: &VerificationReport, tol_override: Option<f64>) -> Vec<ReportEntryDoc> {
    report
        .entries
        .iter()
        .map(|e| {
            let status = match tol_override {
                Some(t) if e.status != CheckStatus::Warn => {
                    if e.measured <= t {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Fail
                    }
                }
                _ => e.status,
            };
            ReportEntryDoc {
                name: e.name.clone(),
                status: match status {
                    CheckStatus::Pass => "pass".to_string(),
                    CheckStatus::Warn => "warn".to_string(),
                    CheckStatus::Fail => "fail".to_string(),
                },
                measured: e.measured,
                tolerance: tol_override.unwrap_or(e.tolerance),
            }
        })
        .collect()
}

/// `verify`: relation, Jorgensen and separation reports for a built
/// group. `tolerance` overrides the per-check tolerances (KOEBE_TOL).
pub fn cmd_verify(
    doc_text: &str,
    pairs_budget: usize,
    tolerance: Option<f64>,
) -> Result<CommandOutput> {
    let (spec, coords) = lower_doc(doc_text)?;
    let group = build_koebe(&spec, &coords).map_err(|e| anyhow!("{e}"))?;
    let mut entries = Vec::new();
    entries.extend(report_entries(&check_relations(&group), tolerance));
    entries.extend(report_entries(&jorgensen_screen(&group, pairs_budget), None));
    for node in &group.nodes {
        entries.extend(report_entries(&separation_check(&node.assembly), None));
    }
    let passed = entries.iter().all(|e| e.status != "fail");
    let warnings = entries.iter().any(|e| e.status == "warn");
    let out = ReportDoc {
        format_version: 1,
        passed,
        warnings,
        entries,
    };
    Ok(CommandOutput {
        text: serde_json::to_string_pretty(&out)? + "\n",
        warnings: warnings || !passed,
    })
}
