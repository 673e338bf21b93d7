//! JSON document model for orbifold inputs and group outputs.
//!
//! Infinity is encoded as the string "inf" wherever a ramification value
//! or a sphere point can be infinite. The partition is listed in gluing
//! order; each curve names the pants it attaches to via `glue_after`
//! (the id of an earlier curve) and `glue_side` ("first" or "second",
//! default "second"), with `host_slot` disambiguating when more than one
//! boundary of the host pants carries the weight. A type (0,4) curve
//! with `host2_after` present is a bridge between two existing pants
//! (Case 2); a type (1,1) curve loops one pants (Case 3).

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use koebe_core::{
    CurveStep, MoebiusTransform, OrbifoldSpec, RamificationValue, SlotRef, SpherePoint, StepKind,
};

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum NuDoc {
    Finite(u32),
    Infinite(InfTag),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub enum InfTag {
    #[serde(rename = "inf")]
    Inf,
}

impl NuDoc {
    pub fn to_ram(self) -> RamificationValue {
        match self {
            NuDoc::Finite(n) => RamificationValue::Finite(n),
            NuDoc::Infinite(_) => RamificationValue::Infinity,
        }
    }

    pub fn from_ram(v: RamificationValue) -> Self {
        match v {
            RamificationValue::Finite(n) => NuDoc::Finite(n),
            RamificationValue::Infinity => NuDoc::Infinite(InfTag::Inf),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl ComplexDoc {
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_complex(z: Complex64) -> Self {
        ComplexDoc { re: z.re, im: z.im }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointDoc {
    Infinite(InfTag),
    Finite(ComplexDoc),
}

impl PointDoc {
    pub fn to_point(self) -> SpherePoint {
        match self {
            PointDoc::Finite(z) => SpherePoint::Finite(z.to_complex()),
            PointDoc::Infinite(_) => SpherePoint::Infinity,
        }
    }

    pub fn from_point(p: SpherePoint) -> Self {
        match p {
            SpherePoint::Finite(z) => PointDoc::Finite(ComplexDoc::from_complex(z)),
            SpherePoint::Infinity => PointDoc::Infinite(InfTag::Inf),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignatureDoc {
    pub p: u32,
    pub n: usize,
    pub nu: Vec<NuDoc>,
}

fn default_orientation() -> bool {
    true
}

fn default_side() -> String {
    "second".to_string()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveDoc {
    pub curve_id: usize,
    /// "0,4" for a four-holed-sphere modular part, "1,1" for a torus one.
    #[serde(rename = "type")]
    pub part_type: String,
    pub weight: NuDoc,
    /// (0,4): the four boundary values [nu1, nu2, nu3, nu4] giving
    /// factor signatures (mu,nu1,nu2) and (mu,nu3,nu4); (1,1): one value nu.
    pub boundary_nu: Vec<NuDoc>,
    #[serde(default = "default_orientation")]
    pub orientation: bool,
    /// Id of the earlier curve whose pants hosts this one; absent for
    /// the bootstrap curve.
    #[serde(default)]
    pub glue_after: Option<usize>,
    /// "first" or "second": which factor pants of `glue_after` hosts.
    #[serde(default = "default_side")]
    pub glue_side: String,
    /// Boundary slot (0 = A, 1 = B, 2 = AB) of the host pants carrying
    /// this curve; inferred from the weight when unique.
    #[serde(default)]
    pub host_slot: Option<usize>,
    /// Present on Case-2 bridges: the second host curve.
    #[serde(default)]
    pub host2_after: Option<usize>,
    #[serde(default = "default_side")]
    pub host2_side: String,
    #[serde(default)]
    pub host2_slot: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbifoldDoc {
    pub format_version: u32,
    pub signature: SignatureDoc,
    pub partition: Vec<CurveDoc>,
    pub coordinates: Vec<ComplexDoc>,
}

impl OrbifoldDoc {
    pub fn parse(text: &str) -> Result<OrbifoldDoc> {
        let doc: OrbifoldDoc =
            serde_json::from_str(text).context("parsing orbifold document")?;
        if doc.format_version != 1 {
            bail!("unsupported format_version {}", doc.format_version);
        }
        if doc.signature.nu.len() != doc.signature.n {
            bail!(
                "signature.n = {} but {} ramification values given",
                doc.signature.n,
                doc.signature.nu.len()
            );
        }
        Ok(doc)
    }

    /// Lowers the document to the builder spec and coordinate vector,
    /// resolving pants references by simulating the index assignment.
    pub fn lower(&self) -> Result<(OrbifoldSpec, Vec<Complex64>)> {
        let marked: Vec<RamificationValue> =
            self.signature.nu.iter().map(|v| v.to_ram()).collect();
        let mut steps = Vec::new();
        // Simulated pants registry: (sig per pants), plus per curve the
        // (first, second) pants indices it created or used.
        let mut pants_sigs: Vec<[RamificationValue; 3]> = Vec::new();
        let mut curve_pants: Vec<(usize, usize)> = Vec::new();
        for curve in &self.partition {
            let weight = curve.weight.to_ram();
            let b: Vec<RamificationValue> =
                curve.boundary_nu.iter().map(|v| v.to_ram()).collect();
            match curve.part_type.as_str() {
                "0,4" => {
                    if b.len() != 4 {
                        bail!(
                            "curve {}: type (0,4) needs 4 boundary values, got {}",
                            curve.curve_id,
                            b.len()
                        );
                    }
                    let sig1 = [weight, b[0], b[1]];
                    let sig2 = [weight, b[2], b[3]];
                    if let Some(h2) = curve.host2_after {
                        let host1 = resolve_host(
                            curve,
                            curve.glue_after.ok_or_else(|| {
                                anyhow!("curve {}: bridge needs glue_after", curve.curve_id)
                            })?,
                            &curve.glue_side,
                            curve.host_slot,
                            weight,
                            &pants_sigs,
                            &curve_pants,
                            &self.partition,
                        )?;
                        let host2 = resolve_host(
                            curve,
                            h2,
                            &curve.host2_side,
                            curve.host2_slot,
                            weight,
                            &pants_sigs,
                            &curve_pants,
                            &self.partition,
                        )?;
                        steps.push(CurveStep {
                            curve_id: curve.curve_id,
                            weight,
                            orientation: curve.orientation,
                            kind: StepKind::AfpBridge {
                                host1,
                                sig1,
                                host2,
                                sig2,
                            },
                        });
                        curve_pants.push((host1.pants, host2.pants));
                    } else if let Some(after) = curve.glue_after {
                        let host = resolve_host(
                            curve,
                            after,
                            &curve.glue_side,
                            curve.host_slot,
                            weight,
                            &pants_sigs,
                            &curve_pants,
                            &self.partition,
                        )?;
                        pants_sigs.push(sig2);
                        curve_pants.push((host.pants, pants_sigs.len() - 1));
                        steps.push(CurveStep {
                            curve_id: curve.curve_id,
                            weight,
                            orientation: curve.orientation,
                            kind: StepKind::AfpAttach {
                                host: Some(host),
                                sig1,
                                sig2,
                            },
                        });
                    } else {
                        pants_sigs.push(sig1);
                        pants_sigs.push(sig2);
                        curve_pants.push((pants_sigs.len() - 2, pants_sigs.len() - 1));
                        steps.push(CurveStep {
                            curve_id: curve.curve_id,
                            weight,
                            orientation: curve.orientation,
                            kind: StepKind::AfpAttach {
                                host: None,
                                sig1,
                                sig2,
                            },
                        });
                    }
                }
                "1,1" => {
                    if b.len() != 1 {
                        bail!(
                            "curve {}: type (1,1) needs 1 boundary value, got {}",
                            curve.curve_id,
                            b.len()
                        );
                    }
                    let sig = [weight, weight, b[0]];
                    if let Some(after) = curve.glue_after {
                        let host = resolve_host(
                            curve,
                            after,
                            &curve.glue_side,
                            curve.host_slot,
                            weight,
                            &pants_sigs,
                            &curve_pants,
                            &self.partition,
                        )?;
                        curve_pants.push((host.pants, host.pants));
                        steps.push(CurveStep {
                            curve_id: curve.curve_id,
                            weight,
                            orientation: curve.orientation,
                            kind: StepKind::HnnLoop {
                                host: Some(host.pants),
                                sig,
                            },
                        });
                    } else {
                        pants_sigs.push(sig);
                        curve_pants.push((pants_sigs.len() - 1, pants_sigs.len() - 1));
                        steps.push(CurveStep {
                            curve_id: curve.curve_id,
                            weight,
                            orientation: curve.orientation,
                            kind: StepKind::HnnLoop { host: None, sig },
                        });
                    }
                }
                other => bail!(
                    "curve {}: unknown modular part type {other:?} (expected \"0,4\" or \"1,1\")",
                    curve.curve_id
                ),
            }
        }
        let spec = OrbifoldSpec {
            genus: self.signature.p,
            marked,
            steps,
        };
        let coords: Vec<Complex64> = self
            .coordinates
            .iter()
            .map(|c| c.to_complex())
            .collect();
        Ok((spec, coords))
    }
}

#[allow(clippy::too_many_arguments)]
fn resolve_host(
    curve: &CurveDoc,
    after: usize,
    side: &str,
    slot: Option<usize>,
    weight: RamificationValue,
    pants_sigs: &[[RamificationValue; 3]],
    curve_pants: &[(usize, usize)],
    partition: &[CurveDoc],
) -> Result<SlotRef> {
    let pos = partition
        .iter()
        .position(|c| c.curve_id == after)
        .ok_or_else(|| anyhow!("curve {}: glue_after {} not found", curve.curve_id, after))?;
    let entry = curve_pants.get(pos).ok_or_else(|| {
        anyhow!(
            "curve {}: glue_after {} has not been built yet",
            curve.curve_id,
            after
        )
    })?;
    let pants = match side {
        "first" => entry.0,
        "second" => entry.1,
        other => bail!(
            "curve {}: glue_side must be \"first\" or \"second\", got {other:?}",
            curve.curve_id
        ),
    };
    let sig = pants_sigs[pants];
    let slot = match slot {
        Some(s) if s <= 2 => s,
        Some(s) => bail!("curve {}: host_slot {s} out of range 0..=2", curve.curve_id),
        None => {
            let matching: Vec<usize> =
                (0..3).filter(|&i| sig[i] == weight).collect();
            match matching.as_slice() {
                [s] => *s,
                [] => bail!(
                    "curve {}: host pants has no boundary of order {weight:?}",
                    curve.curve_id
                ),
                _ => bail!(
                    "curve {}: host pants has several boundaries of order {weight:?}; set host_slot",
                    curve.curve_id
                ),
            }
        }
    };
    Ok(SlotRef { pants, slot })
}

/// A 2x2 complex matrix with its human-readable Moebius map string.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub a: ComplexDoc,
    pub b: ComplexDoc,
    pub c: ComplexDoc,
    pub d: ComplexDoc,
    #[serde(default)]
    pub map: Option<String>,
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

impl MatrixDoc {
    pub fn from_transform(m: &MoebiusTransform) -> Self {
        let [a, b, c, d] = m.entries();
        let map = format!(
            "z -> (({})z + ({}))/(({})z + ({}))",
            fmt_complex(a),
            fmt_complex(b),
            fmt_complex(c),
            fmt_complex(d)
        );
        MatrixDoc {
            a: ComplexDoc::from_complex(a),
            b: ComplexDoc::from_complex(b),
            c: ComplexDoc::from_complex(c),
            d: ComplexDoc::from_complex(d),
            map: Some(map),
        }
    }

    pub fn to_transform(&self) -> Result<MoebiusTransform> {
        MoebiusTransform::new(
            self.a.to_complex(),
            self.b.to_complex(),
            self.c.to_complex(),
            self.d.to_complex(),
        )
        .map_err(|e| anyhow!("invalid matrix: {e}"))
    }
}
