//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `-- --nocapture`). Run with
//! `cargo test -p koebe-cli --test acceptance`.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use koebe_cli::render::sample_to_csv;
use koebe_core::{
    afp_coordinate, build_afp, build_hnn, build_koebe, canonical_generators,
    conjugating_involution, hnn_coordinate, jorgensen_screen, koebe_coordinates,
    plumbing_parameters, sample_limit_set_of, AfpSpec, ContainmentDomain, CurveStep, ElementType,
    EllipticOrder, HnnSpec, KoebeGroup, MoebiusTransform, OrbifoldSpec, RamificationValue,
    SlotRef, SpherePoint, StepKind, TriangleGroupSpec,
};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ram(n: u32) -> RamificationValue {
    RamificationValue::Finite(n)
}

const INF: RamificationValue = RamificationValue::Infinity;

fn verdict(criterion: u32, ok: bool, detail: &str) {
    let line = format!(
        "criterion {criterion}: {} - {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    println!("{line}");
    assert!(ok, "{line}");
}

fn std_spec(nu: [RamificationValue; 3]) -> TriangleGroupSpec {
    TriangleGroupSpec::standard(nu).unwrap()
}

fn mt(entries: [(f64, f64); 4]) -> MoebiusTransform {
    MoebiusTransform::new(
        c64(entries[0].0, entries[0].1),
        c64(entries[1].0, entries[1].1),
        c64(entries[2].0, entries[2].1),
        c64(entries[3].0, entries[3].1),
    )
    .unwrap()
}

fn gen_moebius(rng: &mut ChaCha8Rng) -> MoebiusTransform {
    loop {
        let e: [f64; 8] = core::array::from_fn(|_| rng.gen_range(-1.2..1.2));
        if let Ok(m) = MoebiusTransform::new(
            c64(e[0], e[1]),
            c64(e[2], e[3]),
            c64(e[4], e[5]),
            c64(e[6], e[7]),
        ) {
            if m.entries().iter().all(|z| z.norm() < 8.0) {
                return m;
            }
        }
    }
}

fn inside_coordinate(rng: &mut ChaCha8Rng, domain: &ContainmentDomain) -> Complex64 {
    match domain {
        ContainmentDomain::HalfPlane { min_imag } => {
            c64(rng.gen_range(-2.0..2.0), rng.gen_range(min_imag + 0.05..min_imag + 3.0))
        }
        ContainmentDomain::PuncturedDisc { radius } => {
            let r = rng.gen_range(0.05 * radius..0.95 * radius);
            let th = rng.gen_range(0.0..core::f64::consts::TAU);
            Complex64::from_polar(r, th)
        }
    }
}

#[test]
fn criterion_1_exact_closed_forms() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;

    // Signature (inf,2,2): A(z) = z+2, B(z) = -z.
    let pair = canonical_generators(&std_spec([INF, ram(2), ram(2)])).unwrap();
    worst = worst.max(pair.a.psl_distance(&mt([(1.0, 0.0), (2.0, 0.0), (0.0, 0.0), (1.0, 0.0)])));
    worst = worst.max(pair.b.psl_distance(&mt([(-1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)])));

    // Signature (nu,2,2): A(z) = e^{2 pi i/nu} z, B(z) = 1/z, d = -1.
    let nu = 5u32;
    let pair = canonical_generators(&std_spec([ram(nu), ram(2), ram(2)])).unwrap();
    let lam = Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI / nu as f64);
    let a_want = MoebiusTransform::new(lam, c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)).unwrap();
    worst = worst.max(pair.a.psl_distance(&a_want));
    worst = worst.max(pair.b.psl_distance(&mt([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)])));
    let d = pair.fourth_point.unwrap();
    worst = worst.max(d.chordal_distance(&SpherePoint::finite(-1.0, 0.0)));

    // Hyperbolic case (1): A = [-1,-2;0,-1].
    let pair = canonical_generators(&std_spec([INF, ram(3), ram(4)])).unwrap();
    worst = worst.max(pair.a.psl_distance(&mt([(-1.0, 0.0), (-2.0, 0.0), (0.0, 0.0), (-1.0, 0.0)])));

    let elapsed = start.elapsed();
    verdict(
        1,
        worst <= 1e-12 && elapsed.as_secs_f64() < 1.0,
        &format!("closed forms within {worst:.2e} (tol 1e-12), {:.3}s (< 1s)", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_2_order_contract_grid() {
    let start = Instant::now();
    let values = [ram(3), ram(4), ram(5), ram(6), ram(7), INF];
    let mut tested = 0usize;
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for &n1 in &values {
        for &n2 in &values {
            for &n3 in &values {
                let spec = match TriangleGroupSpec::standard([n1, n2, n3]) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let pair = match canonical_generators(&spec) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                tested += 1;
                let ab = pair.ab();
                for (m, nu) in [(&pair.a, n1), (&pair.b, n2), (&ab, n3)] {
                    let class_ok = match nu {
                        RamificationValue::Infinity => m.classify() == ElementType::Parabolic,
                        RamificationValue::Finite(n) => {
                            m.classify() == ElementType::Elliptic(EllipticOrder::Finite(n))
                        }
                    };
                    let t = m.trace();
                    let q = nu.q();
                    let resid = (t - 2.0 * q).norm().min((t + 2.0 * q).norm());
                    worst = worst.max(resid);
                    ok &= class_ok && resid <= 1e-9;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        2,
        ok && tested == 216 && elapsed.as_secs_f64() < 10.0,
        &format!(
            "{tested} signatures, worst trace residual {worst:.2e} (tol 1e-9), {:.3}s (< 10s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_3_equivariance_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let classes: [[RamificationValue; 3]; 6] = [
        [INF, ram(3), ram(4)],
        [ram(3), ram(4), ram(5)],
        [INF, ram(2), ram(2)],
        [ram(4), ram(4), ram(2)],
        [ram(5), ram(2), ram(2)],
        [ram(4), ram(3), ram(2)],
    ];
    let mut worst: f64 = 0.0;
    for nu in classes {
        let base = std_spec(nu);
        let pair = canonical_generators(&base).unwrap();
        let mut done = 0;
        while done < 50 {
            let t = gen_moebius(&mut rng);
            let params = [
                t.apply(base.params[0]),
                t.apply(base.params[1]),
                t.apply(base.params[2]),
            ];
            let sep = params[0]
                .chordal_distance(&params[1])
                .min(params[1].chordal_distance(&params[2]))
                .min(params[0].chordal_distance(&params[2]));
            if sep < 1e-3 {
                continue;
            }
            done += 1;
            let moved = TriangleGroupSpec::new(nu, params).unwrap();
            let direct = canonical_generators(&moved).unwrap();
            worst = worst.max(direct.a.psl_distance(&pair.a.conjugate_by(&t)));
            worst = worst.max(direct.b.psl_distance(&pair.b.conjugate_by(&t)));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        3,
        worst <= 1e-8 && elapsed.as_secs_f64() < 10.0,
        &format!(
            "6 classes x 50 conjugations, worst deviation {worst:.2e} (tol 1e-8), {:.3}s (< 10s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_4_limit_case_continuity() {
    let mut worst: f64 = 0.0;
    for (n2, n3) in [(ram(3), ram(4)), (ram(5), ram(7)), (INF, ram(6))] {
        let far = canonical_generators(&std_spec([ram(1_000_000), n2, n3])).unwrap();
        let lim = canonical_generators(&std_spec([INF, n2, n3])).unwrap();
        worst = worst.max(far.a.psl_distance(&lim.a));
        worst = worst.max(far.b.psl_distance(&lim.b));
    }
    verdict(
        4,
        worst <= 1e-3,
        &format!("case (2) at nu1 = 1e6 vs case (1): worst entry gap {worst:.2e} (tol 1e-3)"),
    );
}

#[test]
fn criterion_5_hnn_structural_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut sigs = Vec::new();
    while sigs.len() < 20 {
        let mu = rng.gen_range(3u32..11);
        let nu = rng.gen_range(2u32..11);
        // Hyperbolic (mu,mu,nu): 2/mu + 1/nu < 1.
        if 2.0 / mu as f64 + 1.0 / nu as f64 >= 1.0 {
            continue;
        }
        sigs.push([ram(mu), ram(mu), ram(nu)]);
    }
    let mut worst_mn: f64 = 0.0;
    let mut worst_t: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    for sig in &sigs {
        let spec = HnnSpec {
            sig: *sig,
            coordinate: c64(1.0, 0.0),
        };
        let (m, n, _r) = spec.mnr().unwrap();
        worst_mn = worst_mn.max((m * m - n * n - 1.0).abs());

        let t = conjugating_involution(sig).unwrap();
        let t2 = t.compose(&t);
        worst_t = worst_t.max(t2.psl_distance(&MoebiusTransform::identity()));
        let base = spec.base_params().unwrap();
        let pair = canonical_generators(&TriangleGroupSpec::new(*sig, base).unwrap()).unwrap();
        worst_t = worst_t.max(pair.b.conjugate_by(&t).psl_distance(&pair.a));

        // Expansion-ratio floor of the unit-coordinate conjugator D:
        // min over the probe range (0, dist(x+,x-)) of |D(x-s)|/s equals
        // (m-1)/2, approached as s -> 0 (1000 log-spaced samples).
        let d = spec.conjugator().unwrap();
        let x_plus = (m + 1.0) / n;
        let span = 2.0 / n;
        let mut min_ratio = f64::INFINITY;
        for k in 0..1000 {
            let s = span * 3e-8f64.powf(1.0 - k as f64 / 999.0) * 0.999_999_999;
            let probe = x_plus - s;
            // Effective probe distance after rounding, to keep the ratio
            // stable at small s.
            let s_eff = x_plus - probe;
            if s_eff <= 0.0 {
                continue;
            }
            let p = d.apply(SpherePoint::finite(probe, 0.0));
            if let Some(w) = p.value() {
                min_ratio = min_ratio.min(w.norm() / s_eff);
            }
        }
        worst_ratio = worst_ratio.max((min_ratio - (m - 1.0) / 2.0).abs());
    }
    verdict(
        5,
        worst_mn <= 1e-10 && worst_t <= 1e-8 && worst_ratio <= 1e-6,
        &format!(
            "20 signatures: |m^2-n^2-1| <= {worst_mn:.2e} (1e-10), involution residual {worst_t:.2e} (1e-8), ratio floor gap {worst_ratio:.2e} (1e-6)"
        ),
    );
}

#[test]
fn criterion_6_round_trip_coordinates() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let afp_rows: [( [RamificationValue; 3], [RamificationValue; 3]); 9] = [
        ([INF, ram(3), ram(7)], [INF, ram(4), ram(5)]),
        ([ram(5), ram(3), ram(4)], [ram(5), ram(4), ram(7)]),
        ([INF, ram(3), ram(4)], [INF, ram(2), ram(2)]),
        ([ram(4), ram(5), ram(6)], [ram(4), ram(4), ram(2)]),
        ([ram(3), ram(7), ram(7)], [ram(3), ram(5), ram(2)]),
        ([INF, ram(2), ram(2)], [INF, ram(2), ram(2)]),
        ([ram(6), ram(3), ram(2)], [ram(6), ram(2), ram(3)]),
        ([ram(3), ram(3), ram(3)], [ram(3), ram(3), ram(2)]),
        ([ram(4), ram(3), ram(2)], [ram(4), ram(3), ram(2)]),
    ];
    let hnn_rows: [[RamificationValue; 3]; 5] = [
        [INF, INF, ram(4)],
        [ram(4), ram(4), ram(5)],
        [ram(4), ram(4), ram(2)],
        [ram(3), ram(3), ram(3)],
        [ram(3), ram(3), ram(2)],
    ];
    let mut worst: f64 = 0.0;
    for (sig1, sig2) in afp_rows {
        let domain = AfpSpec {
            sig1,
            sig2,
            alpha: c64(0.1, 0.1),
        }
        .coordinate_domain()
        .unwrap();
        for _ in 0..100 {
            let alpha = inside_coordinate(&mut rng, &domain);
            let spec = AfpSpec { sig1, sig2, alpha };
            let asm = build_afp(&spec).unwrap();
            assert!(asm.inside_domain);
            let got = afp_coordinate(&asm).unwrap();
            worst = worst.max((got - alpha).norm());
        }
    }
    for sig in hnn_rows {
        let domain = HnnSpec {
            sig,
            coordinate: c64(0.1, 0.1),
        }
        .coordinate_domain()
        .unwrap();
        for _ in 0..100 {
            let coord = inside_coordinate(&mut rng, &domain);
            let spec = HnnSpec { sig, coordinate: coord };
            let asm = build_hnn(&spec).unwrap();
            assert!(asm.inside_domain);
            let got = hnn_coordinate(&asm).unwrap();
            worst = worst.max((got - coord).norm());
        }
    }
    let elapsed = start.elapsed();
    verdict(
        6,
        worst <= 1e-9 && elapsed.as_secs_f64() < 30.0,
        &format!(
            "1400 round trips over 14 rows, worst error {worst:.2e} (tol 1e-9), {:.3}s (< 30s)",
            elapsed.as_secs_f64()
        ),
    );
}

fn random_desk_spec(rng: &mut ChaCha8Rng, shape: usize) -> (OrbifoldSpec, Vec<ContainmentDomain>) {
    let pick = |rng: &mut ChaCha8Rng, opts: &[u32]| ram(opts[rng.gen_range(0..opts.len())]);
    match shape {
        // Type (0,4).
        0 => {
            let variants: [( [RamificationValue; 3], [RamificationValue; 3]); 3] = [
                ([INF, pick(rng, &[3, 4, 5]), pick(rng, &[3, 4, 5])], [INF, ram(2), ram(2)]),
                ([ram(4), pick(rng, &[5, 6]), pick(rng, &[5, 6])], [ram(4), ram(4), ram(2)]),
                ([ram(3), pick(rng, &[5, 6, 7]), pick(rng, &[5, 6, 7])], [ram(3), pick(rng, &[5, 6, 7]), pick(rng, &[5, 6, 7])]),
            ];
            let (sig1, sig2) = variants[rng.gen_range(0..3)];
            let weight = sig1[0];
            let n: Vec<RamificationValue> = vec![sig1[1], sig1[2], sig2[1], sig2[2]];
            let domain = AfpSpec { sig1, sig2, alpha: c64(0.1, 0.1) }
                .coordinate_domain()
                .unwrap();
            (
                OrbifoldSpec {
                    genus: 0,
                    marked: n,
                    steps: vec![CurveStep {
                        curve_id: 0,
                        weight,
                        orientation: true,
                        kind: StepKind::AfpAttach { host: None, sig1, sig2 },
                    }],
                },
                vec![domain],
            )
        }
        // Type (1,1).
        1 => {
            let sigs: [[RamificationValue; 3]; 5] = [
                [ram(4), ram(4), pick(rng, &[3, 5, 6])],
                [ram(5), ram(5), pick(rng, &[2, 3, 4])],
                [INF, INF, pick(rng, &[3, 4, 5])],
                [ram(4), ram(4), ram(2)],
                [ram(3), ram(3), ram(3)],
            ];
            let sig = sigs[rng.gen_range(0..5)];
            let domain = HnnSpec { sig, coordinate: c64(0.1, 0.1) }
                .coordinate_domain()
                .unwrap();
            (
                OrbifoldSpec {
                    genus: 1,
                    marked: vec![sig[2]],
                    steps: vec![CurveStep {
                        curve_id: 0,
                        weight: sig[0],
                        orientation: true,
                        kind: StepKind::HnnLoop { host: None, sig },
                    }],
                },
                vec![domain],
            )
        }
        // Type (0,5): chain of two attachments.
        2 => {
            let mu1 = pick(rng, &[3, 4]);
            let mu2 = pick(rng, &[3, 4]);
            let pts: Vec<RamificationValue> =
                (0..5).map(|_| pick(rng, &[5, 6, 7, 8])).collect();
            let sig1 = [mu1, pts[0], pts[1]];
            let sig2 = [mu1, pts[2], mu2];
            let sig1b = [mu2, mu1, pts[2]];
            let sig2b = [mu2, pts[3], pts[4]];
            let d1 = AfpSpec { sig1, sig2, alpha: c64(0.1, 0.1) }
                .coordinate_domain()
                .unwrap();
            let d2 = AfpSpec { sig1: sig1b, sig2: sig2b, alpha: c64(0.1, 0.1) }
                .coordinate_domain()
                .unwrap();
            (
                OrbifoldSpec {
                    genus: 0,
                    marked: pts,
                    steps: vec![
                        CurveStep {
                            curve_id: 0,
                            weight: mu1,
                            orientation: true,
                            kind: StepKind::AfpAttach { host: None, sig1, sig2 },
                        },
                        CurveStep {
                            curve_id: 1,
                            weight: mu2,
                            orientation: true,
                            kind: StepKind::AfpAttach {
                                host: Some(SlotRef { pants: 1, slot: 2 }),
                                sig1: sig1b,
                                sig2: sig2b,
                            },
                        },
                    ],
                },
                vec![d1, d2],
            )
        }
        // Type (1,2): attachment plus loop.
        _ => {
            let mu1 = ram(3);
            let mu2 = pick(rng, &[4, 5]);
            let n1 = pick(rng, &[5, 6, 7]);
            let n2 = pick(rng, &[5, 6, 7]);
            let sig1 = [mu1, n1, n2];
            let sig2 = [mu1, mu2, mu2];
            let sig_loop = [mu2, mu2, mu1];
            let d1 = AfpSpec { sig1, sig2, alpha: c64(0.1, 0.1) }
                .coordinate_domain()
                .unwrap();
            let d2 = HnnSpec { sig: sig_loop, coordinate: c64(0.1, 0.1) }
                .coordinate_domain()
                .unwrap();
            (
                OrbifoldSpec {
                    genus: 1,
                    marked: vec![n1, n2],
                    steps: vec![
                        CurveStep {
                            curve_id: 0,
                            weight: mu1,
                            orientation: true,
                            kind: StepKind::AfpAttach { host: None, sig1, sig2 },
                        },
                        CurveStep {
                            curve_id: 1,
                            weight: mu2,
                            orientation: true,
                            kind: StepKind::HnnLoop { host: Some(1), sig: sig_loop },
                        },
                    ],
                },
                vec![d1, d2],
            )
        }
    }
}

#[test]
fn criterion_7_full_koebe_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    let mut worst_rt: f64 = 0.0;
    let mut worst_conj: f64 = 0.0;
    for i in 0..50 {
        let (spec, domains) = random_desk_spec(&mut rng, i % 4);
        let coords: Vec<Complex64> = domains
            .iter()
            .map(|d| inside_coordinate(&mut rng, d))
            .collect();
        let group = build_koebe(&spec, &coords).unwrap();
        let rec = koebe_coordinates(&group).unwrap();
        for (got, want) in rec.values.iter().zip(&coords) {
            worst_rt = worst_rt.max((got - want).norm());
        }
        let t = gen_moebius(&mut rng);
        let moved = group.conjugated(&t);
        let rec2 = koebe_coordinates(&moved).unwrap();
        for (got, want) in rec2.values.iter().zip(&rec.values) {
            worst_conj = worst_conj.max((got - want).norm());
        }
    }
    verdict(
        7,
        worst_rt <= 1e-9 && worst_conj <= 1e-9,
        &format!(
            "50 specs over types (0,4),(1,1),(0,5),(1,2): round trip {worst_rt:.2e}, conjugation invariance {worst_conj:.2e} (tol 1e-9)"
        ),
    );
}

#[test]
fn criterion_8_plumbing_chart_products() {
    let i_pi = c64(0.0, core::f64::consts::PI);
    let xs: Vec<Complex64> = (0..10)
        .map(|k| c64(0.17 + 0.061 * k as f64, 0.23 + 0.037 * (k % 3) as f64))
        .collect();
    let mut worst: f64 = 0.0;

    // (0,4), infinite weight: t = exp(pi i alpha) vs exp(pi i xi) * exp(pi i (alpha - xi)).
    {
        let alpha = c64(0.3, 1.7);
        let spec = OrbifoldSpec {
            genus: 0,
            marked: vec![INF, ram(3), ram(4), INF],
            steps: vec![CurveStep {
                curve_id: 0,
                weight: INF,
                orientation: true,
                kind: StepKind::AfpAttach {
                    host: None,
                    sig1: [INF, ram(3), ram(4)],
                    sig2: [INF, ram(2), ram(2)],
                },
            }],
        };
        let t = plumbing_parameters(&spec, &[alpha]).unwrap().values[0];
        for xi in &xs {
            let hi = xi + c64(0.0, 1.5);
            let prod = (i_pi * hi).exp() * (i_pi * (alpha - hi)).exp();
            worst = worst.max((t - prod).norm());
        }
    }

    // (0,4), weight 4: t = alpha^4 vs xi^4 * (alpha/xi)^4.
    {
        let alpha = c64(0.11, 0.05);
        let spec = OrbifoldSpec {
            genus: 0,
            marked: vec![ram(5), ram(6), ram(4), ram(4)],
            steps: vec![CurveStep {
                curve_id: 0,
                weight: ram(4),
                orientation: true,
                kind: StepKind::AfpAttach {
                    host: None,
                    sig1: [ram(4), ram(5), ram(6)],
                    sig2: [ram(4), ram(4), ram(2)],
                },
            }],
        };
        let t = plumbing_parameters(&spec, &[alpha]).unwrap().values[0];
        for xi in &xs {
            let prod = xi.powu(4) * (alpha / xi).powu(4);
            worst = worst.max((t - prod).norm());
        }
    }

    // Torus rows: t vs z(C(xi)) * z(T(xi)).
    let torus_cases: [( [RamificationValue; 3], Complex64); 5] = [
        ([ram(4), ram(4), ram(2)], c64(0.02, 0.01)),
        ([ram(3), ram(3), ram(3)], c64(-0.03, 0.02)),
        ([ram(3), ram(3), ram(2)], c64(0.025, -0.015)),
        ([ram(4), ram(4), ram(5)], c64(0.03, 0.01)),
        ([INF, INF, ram(5)], c64(0.4, 1.9)),
    ];
    for (sig, coord) in torus_cases {
        let spec = OrbifoldSpec {
            genus: 1,
            marked: vec![sig[2]],
            steps: vec![CurveStep {
                curve_id: 0,
                weight: sig[0],
                orientation: true,
                kind: StepKind::HnnLoop { host: None, sig },
            }],
        };
        let t = plumbing_parameters(&spec, &[coord]).unwrap().values[0];
        let hn = HnnSpec {
            sig,
            coordinate: coord,
        };
        let c = hn.conjugator().unwrap();
        let tt = conjugating_involution(&sig).unwrap();
        for xi in &xs {
            let cxi = c.apply(SpherePoint::Finite(*xi)).value().unwrap();
            let txi = tt.apply(SpherePoint::Finite(*xi)).value().unwrap();
            let prod = match sig[0] {
                RamificationValue::Infinity => ((cxi + txi) * i_pi).exp(),
                RamificationValue::Finite(mu) => cxi.powu(mu) * txi.powu(mu),
            };
            worst = worst.max((t - prod).norm());
        }
    }
    verdict(
        8,
        worst <= 1e-7,
        &format!("7 configurations x 10 sample points: worst chart-product gap {worst:.2e} (tol 1e-7)"),
    );
}

fn dihedral_group(alpha: Complex64) -> KoebeGroup {
    let spec = OrbifoldSpec {
        genus: 0,
        marked: vec![INF, ram(3), ram(4), INF],
        steps: vec![CurveStep {
            curve_id: 0,
            weight: INF,
            orientation: true,
            kind: StepKind::AfpAttach {
                host: None,
                sig1: [INF, ram(3), ram(4)],
                sig2: [INF, ram(2), ram(2)],
            },
        }],
    };
    build_koebe(&spec, &[alpha]).unwrap()
}

#[test]
fn criterion_9_jorgensen_screen() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD15C);
    let mut groups: Vec<KoebeGroup> = Vec::new();
    for k in 0..5 {
        groups.push(dihedral_group(c64(-1.0 + 0.5 * k as f64, 2.0 + 0.3 * k as f64)));
    }
    for _ in 0..5 {
        let sig1 = [ram(4), ram(5), ram(6)];
        let sig2 = [ram(4), ram(4), ram(2)];
        let domain = AfpSpec { sig1, sig2, alpha: c64(0.1, 0.0) }
            .coordinate_domain()
            .unwrap();
        let alpha = inside_coordinate(&mut rng, &domain);
        let spec = OrbifoldSpec {
            genus: 0,
            marked: vec![ram(5), ram(6), ram(4), ram(4)],
            steps: vec![CurveStep {
                curve_id: 0,
                weight: ram(4),
                orientation: true,
                kind: StepKind::AfpAttach { host: None, sig1, sig2 },
            }],
        };
        groups.push(build_koebe(&spec, &[alpha]).unwrap());
    }
    for sig in [[ram(4), ram(4), ram(5)], [ram(5), ram(5), ram(3)]] {
        for _ in 0..3 {
            let domain = HnnSpec { sig, coordinate: c64(0.1, 0.0) }
                .coordinate_domain()
                .unwrap();
            let coord = inside_coordinate(&mut rng, &domain);
            let spec = OrbifoldSpec {
                genus: 1,
                marked: vec![sig[2]],
                steps: vec![CurveStep {
                    curve_id: 0,
                    weight: sig[0],
                    orientation: true,
                    kind: StepKind::HnnLoop { host: None, sig },
                }],
            };
            groups.push(build_koebe(&spec, &[coord]).unwrap());
        }
    }
    for k in 0..4 {
        let sig = [ram(4), ram(4), ram(2)];
        let coord = Complex64::from_polar(0.02 + 0.01 * k as f64, 0.7 * k as f64);
        let spec = OrbifoldSpec {
            genus: 1,
            marked: vec![ram(2)],
            steps: vec![CurveStep {
                curve_id: 0,
                weight: ram(4),
                orientation: true,
                kind: StepKind::HnnLoop { host: None, sig },
            }],
        };
        groups.push(build_koebe(&spec, &[coord]).unwrap());
    }
    assert_eq!(groups.len(), 20);
    let mut all_clean = true;
    for (i, g) in groups.iter().enumerate() {
        let report = jorgensen_screen(g, 4000);
        if !report.passed() {
            all_clean = false;
            eprintln!("group {i} reported violations");
        }
    }
    // Deliberately far outside the domain: at least one violation.
    let bad = dihedral_group(c64(0.0, 0.001));
    let bad_report = jorgensen_screen(&bad, 4000);
    verdict(
        9,
        all_clean && !bad_report.passed(),
        &format!(
            "20 in-domain groups clean: {all_clean}; out-of-domain violation detected: {}",
            !bad_report.passed()
        ),
    );
}

#[test]
fn criterion_10_limit_set_reality_and_determinism() {
    let spec = std_spec([INF, INF, INF]);
    let pair = canonical_generators(&spec).unwrap();
    let gens = [pair.a, pair.b];
    let s1 = sample_limit_set_of(&gens, 8, 200_000).unwrap();
    let s2 = sample_limit_set_of(&gens, 8, 200_000).unwrap();
    let mut max_im: f64 = 0.0;
    for p in &s1.points {
        if let Some(z) = p.value() {
            max_im = max_im.max(z.im.abs());
        }
    }
    let csv1 = sample_to_csv(&s1);
    let csv2 = sample_to_csv(&s2);
    verdict(
        10,
        !s1.truncated && max_im < 1e-9 && csv1 == csv2 && s1.points.len() > 100,
        &format!(
            "{} points, max |Im| = {max_im:.2e} (tol 1e-9), byte-identical CSV: {}",
            s1.points.len(),
            csv1 == csv2
        ),
    );
}
