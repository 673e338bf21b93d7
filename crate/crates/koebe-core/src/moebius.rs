//! PSL(2,C) elements as normalized 2x2 complex matrices.

use num_complex::Complex64;

use crate::error::KoebeError;
use crate::math;
use crate::sphere::{pairwise_distinct, SpherePoint};

const DISTINCT_TOL: f64 = 1e-12;
const CLASSIFY_TOL: f64 = 1e-9;

/// Classification of a PSL(2,C) element by its trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementType {
    Identity,
    Parabolic,
    Elliptic(EllipticOrder),
    Loxodromic,
}

/// Order of an elliptic element: the rotation angle is 2*pi*k/n with
/// gcd(k,n)=1, or no rational angle was recognized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticOrder {
    Finite(u32),
    Irrational,
}

impl ElementType {
    /// The order as an optional integer; parabolic counts as infinite
    /// (None), identity as 1.
    pub fn finite_order(&self) -> Option<u32> {
        match self {
            ElementType::Identity => Some(1),
            ElementType::Elliptic(EllipticOrder::Finite(n)) => Some(*n),
            _ => None,
        }
    }
}

/// A Moebius transformation z -> (az+b)/(cz+d), stored with det = 1 and a
/// canonical sign: the first entry of (a,b,c,d) with modulus > 1e-9 has
/// argument in (-pi/2, pi/2].
#[derive(Clone, Copy, Debug)]
pub struct MoebiusTransform {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MoebiusTransform {
    /// Normalizes an arbitrary nonsingular matrix to the canonical form.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, KoebeError> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if scale == 0.0 || det.norm() < 1e-24 * scale * scale {
            return Err(KoebeError::DegenerateConfiguration);
        }
        let s = det.sqrt();
        let mut m = MoebiusTransform {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        };
        m.canonicalize_sign();
        Ok(m)
    }

    pub fn identity() -> Self {
        MoebiusTransform {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    fn canonicalize_sign(&mut self) {
        for e in [self.a, self.b, self.c, self.d] {
            if e.norm() > 1e-9 {
                // arg in (-pi/2, pi/2]: keep when re > 0, or on the
                // boundary re == 0 when im > 0.
                let keep = e.re > 0.0 || (e.re == 0.0 && e.im > 0.0);
                if !keep {
                    self.a = -self.a;
                    self.b = -self.b;
                    self.c = -self.c;
                    self.d = -self.d;
                }
                return;
            }
        }
    }

    pub fn inverse(&self) -> Self {
        let mut m = MoebiusTransform {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        };
        m.canonicalize_sign();
        m
    }

    pub fn compose(&self, rhs: &MoebiusTransform) -> Self {
        let mut m = MoebiusTransform {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        };
        m.canonicalize_sign();
        m
    }

    /// T self T^{-1}.
    pub fn conjugate_by(&self, t: &MoebiusTransform) -> Self {
        t.compose(self).compose(&t.inverse())
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Entrywise distance as PSL elements: min over the sign ambiguity.
    pub fn psl_distance(&self, other: &MoebiusTransform) -> f64 {
        let mut plus: f64 = 0.0;
        let mut minus: f64 = 0.0;
        let se = self.entries();
        let oe = other.entries();
        for i in 0..4 {
            plus = plus.max((se[i] - oe[i]).norm());
            minus = minus.max((se[i] + oe[i]).norm());
        }
        plus.min(minus)
    }

    pub fn approx_eq(&self, other: &MoebiusTransform, tol: f64) -> bool {
        self.psl_distance(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.psl_distance(&MoebiusTransform::identity()) <= tol
    }

    /// Applies the transformation with the standard infinity conventions.
    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c.norm() <= 1e-14 * (1.0 + self.a.norm()) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let num = self.a * z + self.b;
                let den = self.c * z + self.d;
                if den.norm() <= 1e-14 * (1.0 + num.norm()) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(num / den)
                }
            }
        }
    }

    /// Applies the n-th power (n may be negative).
    pub fn apply_power(&self, n: i32, z: SpherePoint) -> SpherePoint {
        let m = if n >= 0 { *self } else { self.inverse() };
        let mut w = z;
        for _ in 0..n.unsigned_abs() {
            w = m.apply(w);
        }
        w
    }

    /// Trace classification with rational rotation-angle recognition for
    /// elliptic elements (denominators up to 1000).
    pub fn classify(&self) -> ElementType {
        if self.is_identity(CLASSIFY_TOL) {
            return ElementType::Identity;
        }
        let t2 = self.trace() * self.trace();
        if (t2 - 4.0).norm() < CLASSIFY_TOL {
            return ElementType::Parabolic;
        }
        if math::fabs(t2.im) < CLASSIFY_TOL && t2.re >= -CLASSIFY_TOL && t2.re < 4.0 {
            return ElementType::Elliptic(self.elliptic_order());
        }
        ElementType::Loxodromic
    }

    /// Rotation angle of an elliptic element in (0, 2*pi): the multiplier
    /// argument of the conjugate rotation z -> e^{i theta} z.
    fn rotation_angle(&self) -> f64 {
        let t = self.trace();
        let disc = (t * t - 4.0).sqrt();
        let lambda = (t + disc) / 2.0;
        let k = lambda * lambda;
        let mut theta = k.arg();
        if theta < 0.0 {
            theta += 2.0 * core::f64::consts::PI;
        }
        theta
    }

    fn elliptic_order(&self) -> EllipticOrder {
        let theta = self.rotation_angle();
        let x = theta / (2.0 * core::f64::consts::PI);
        if let Some((num, den)) = rational_approx(x, 1000, 1e-9) {
            if num != 0 {
                // Confirm against the trace identity for order den.
                let t2 = (self.trace() * self.trace()).re;
                let expect = 4.0
                    * math::cos(core::f64::consts::PI * num as f64 / den as f64)
                    * math::cos(core::f64::consts::PI * num as f64 / den as f64);
                if math::fabs(t2 - expect) < 1e-8 {
                    return EllipticOrder::Finite(den);
                }
            }
        }
        EllipticOrder::Irrational
    }

    /// The one (parabolic) or two solutions of M(z) = z.
    pub fn fixed_points(&self) -> Result<(SpherePoint, Option<SpherePoint>), KoebeError> {
        if self.is_identity(CLASSIFY_TOL) {
            return Err(KoebeError::IdentityElement);
        }
        let parabolic = matches!(self.classify(), ElementType::Parabolic);
        if self.c.norm() < 1e-12 {
            // Affine: fixes infinity.
            if parabolic {
                return Ok((SpherePoint::Infinity, None));
            }
            let other = self.b / (self.d - self.a);
            return Ok((SpherePoint::Infinity, Some(SpherePoint::Finite(other))));
        }
        if parabolic {
            let z = (self.a - self.d) / (2.0 * self.c);
            return Ok((SpherePoint::Finite(z), None));
        }
        let disc = (self.trace() * self.trace() - 4.0).sqrt();
        let z1 = (self.a - self.d + disc) / (2.0 * self.c);
        let z2 = (self.a - self.d - disc) / (2.0 * self.c);
        Ok((SpherePoint::Finite(z1), Some(SpherePoint::Finite(z2))))
    }

    /// Labels the fixed points of an elliptic element of order > 2: x is
    /// the right fixed point when cr(x, z, Mz, M^2 z) has positive
    /// imaginary part (the label does not depend on the probe z and is
    /// equivariant under conjugation).
    pub fn right_left_fixed_points(&self) -> Result<(SpherePoint, SpherePoint), KoebeError> {
        match self.classify() {
            ElementType::Elliptic(EllipticOrder::Finite(n)) if n > 2 => {}
            ElementType::Elliptic(EllipticOrder::Irrational) => {}
            _ => return Err(KoebeError::WrongElementType),
        }
        let (x1, x2) = self.fixed_points()?;
        let x2 = x2.ok_or(KoebeError::WrongElementType)?;
        let probes = [
            SpherePoint::finite(0.37, 1.71),
            SpherePoint::finite(2.0, 0.5),
            SpherePoint::finite(-1.3, 0.93),
            SpherePoint::finite(0.0, 0.0),
            SpherePoint::finite(1.0, 0.0),
            SpherePoint::finite(-0.25, -2.1),
            SpherePoint::Infinity,
        ];
        for z in probes {
            if z.approx_eq(&x1, 1e-6) || z.approx_eq(&x2, 1e-6) {
                continue;
            }
            let mz = self.apply(z);
            let m2z = self.apply(mz);
            if m2z.approx_eq(&z, 1e-9) || m2z.approx_eq(&mz, 1e-9) {
                continue;
            }
            let cr = match cross_ratio(x1, z, mz, m2z) {
                Ok(v) => v,
                Err(_) => continue,
            };
            if cr.im > 1e-9 {
                return Ok((x1, x2));
            }
            if cr.im < -1e-9 {
                return Ok((x2, x1));
            }
        }
        Err(KoebeError::AmbiguousOrientation)
    }

    /// True iff the element is conjugate to z -> e^{+-2 pi i/n} z, i.e. the
    /// primitive geometric rotation of order n.
    pub fn is_geometric_primitive(&self, n: u32) -> Result<bool, KoebeError> {
        match self.classify() {
            ElementType::Elliptic(_) => {}
            _ => return Err(KoebeError::WrongElementType),
        }
        let t2 = (self.trace() * self.trace()).re;
        let q = math::cos(core::f64::consts::PI / n as f64);
        Ok(math::fabs(t2 - 4.0 * q * q) < 1e-9)
    }
}

impl core::ops::Mul for MoebiusTransform {
    type Output = MoebiusTransform;
    fn mul(self, rhs: MoebiusTransform) -> MoebiusTransform {
        self.compose(&rhs)
    }
}

/// Best rational approximation p/q of x with q <= max_den, by continued
/// fractions; returns the reduced fraction when within tol.
fn rational_approx(x: f64, max_den: u32, tol: f64) -> Option<(u32, u32)> {
    let mut h0: i64 = 0;
    let mut h1: i64 = 1;
    let mut k0: i64 = 1;
    let mut k1: i64 = 0;
    let mut v = x;
    for _ in 0..64 {
        let a = math::floor(v) as i64;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i64 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a as f64;
        if math::fabs(x - h1 as f64 / k1 as f64) < tol {
            break;
        }
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 > 0 && math::fabs(x - h1 as f64 / k1 as f64) < tol {
        let p = h1.rem_euclid(k1);
        Some((p as u32, k1 as u32))
    } else {
        None
    }
}

/// The Moebius transformation sending (a,b,c) to (inf,0,1).
pub(crate) fn map_to_standard(
    a: SpherePoint,
    b: SpherePoint,
    c: SpherePoint,
) -> Result<MoebiusTransform, KoebeError> {
    if !pairwise_distinct(&[a, b, c], DISTINCT_TOL) {
        return Err(KoebeError::DegenerateConfiguration);
    }
    let one = Complex64::new(1.0, 0.0);
    match (a, b, c) {
        (SpherePoint::Infinity, SpherePoint::Finite(b), SpherePoint::Finite(c)) => {
            // z -> (z-b)/(c-b)
            MoebiusTransform::new(one, -b, Complex64::new(0.0, 0.0), c - b)
        }
        (SpherePoint::Finite(a), SpherePoint::Infinity, SpherePoint::Finite(c)) => {
            // z -> (c-a)/(z-a)
            MoebiusTransform::new(Complex64::new(0.0, 0.0), c - a, one, -a)
        }
        (SpherePoint::Finite(a), SpherePoint::Finite(b), SpherePoint::Infinity) => {
            // z -> (z-b)/(z-a)
            MoebiusTransform::new(one, -b, one, -a)
        }
        (SpherePoint::Finite(a), SpherePoint::Finite(b), SpherePoint::Finite(c)) => {
            // z -> ((z-b)(c-a)) / ((z-a)(c-b))
            MoebiusTransform::new(c - a, -b * (c - a), c - b, -a * (c - b))
        }
        _ => unreachable!("two infinite points are not distinct"),
    }
}

/// Cross ratio normalized by cr(inf,0,1,z) = z.
pub fn cross_ratio(
    z1: SpherePoint,
    z2: SpherePoint,
    z3: SpherePoint,
    z4: SpherePoint,
) -> Result<Complex64, KoebeError> {
    if !pairwise_distinct(&[z1, z2, z3, z4], DISTINCT_TOL) {
        return Err(KoebeError::DegenerateConfiguration);
    }
    let m = map_to_standard(z1, z2, z3)?;
    match m.apply(z4) {
        SpherePoint::Finite(v) => Ok(v),
        SpherePoint::Infinity => Err(KoebeError::InternalInconsistency(
            "cross ratio of distinct points cannot be infinite",
        )),
    }
}

/// The unique Moebius transformation with M(src_i) = dst_i.
pub fn moebius_from_triples(
    src: [SpherePoint; 3],
    dst: [SpherePoint; 3],
) -> Result<MoebiusTransform, KoebeError> {
    let ms = map_to_standard(src[0], src[1], src[2])?;
    let md = map_to_standard(dst[0], dst[1], dst[2])?;
    Ok(md.inverse().compose(&ms))
}
