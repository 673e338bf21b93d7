//! CSV and SVG rendering for limit-set samples.

use koebe_core::{OrbitSample, SpherePoint};

/// CSV with an "re,im" header; the point at infinity is written as
/// "inf,inf". Output is byte-deterministic for identical samples.
pub fn sample_to_csv(sample: &OrbitSample) -> String {
    let mut out = String::with_capacity(16 * sample.points.len() + 8);
    out.push_str("re,im\n");
    for p in &sample.points {
        match p {
            SpherePoint::Finite(z) => {
                out.push_str(&format!("{},{}\n", z.re, z.im));
            }
            SpherePoint::Infinity => out.push_str("inf,inf\n"),
        }
    }
    out
}

/// Chordal-style projection into the unit disc: w = z / sqrt(1 + |z|^2).
fn project(z: num_complex::Complex64) -> (f64, f64) {
    let w = z / f64::sqrt(1.0 + z.norm_sqr());
    (w.re, w.im)
}

/// Scatter plot in a fixed 1024x1024 viewport. Finite points are placed
/// by the chordal projection; the point at infinity (a single point with
/// no direction) is omitted.
pub fn sample_to_svg(sample: &OrbitSample) -> String {
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1024\" height=\"1024\" \
         viewBox=\"0 0 1024 1024\">\n",
    );
    out.push_str("<rect width=\"1024\" height=\"1024\" fill=\"white\"/>\n");
    out.push_str("<circle cx=\"512\" cy=\"512\" r=\"480\" fill=\"none\" stroke=\"#cccccc\"/>\n");
    for p in &sample.points {
        if let Some(z) = p.value() {
            let (x, y) = project(z);
            let px = 512.0 + 480.0 * x;
            let py = 512.0 - 480.0 * y;
            out.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"1.5\" fill=\"black\"/>\n"
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
