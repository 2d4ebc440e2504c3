//! Round objects as blades: point pairs (grade 2), circles and lines (grade 3),
//! spheres and planes (grade 4).
//!
//! The object a blade `A` represents is the set of null `X` with `A∧X = 0`.
//! Flat objects contain the point at infinity, so `A∧n = 0`.

use crate::conformal::{n, normalize_point, vdot, ConformalPoint, Euclidean3, CONFORMAL_TOL};
use crate::error::{Error, Result};
use crate::ga::Multivector;

/// Relative size below which a constructed blade counts as zero.
pub const ZERO_TOL: f64 = 1e-12;
/// Relative size of `A∧n` below which `A` counts as flat.
pub const FLAT_TOL: f64 = 1e-9;

/// Common behaviour of circles and spheres.
pub trait RoundObject {
    fn blade(&self) -> &Multivector;
}

/// Grade-2 blade encoding zero, one or two points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointPair(Multivector);

/// Grade-3 blade: a circle, or a line when it passes through infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle(Multivector);

/// Grade-4 blade: a sphere, or a plane when it passes through infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sphere(Multivector);

macro_rules! graded_wrapper {
    ($ty:ident, $grade:expr) => {
        impl $ty {
            /// Wraps a multivector, projecting onto the object's grade.
            ///
            /// Fails when other grades carry significant weight.
            pub fn from_multivector(m: Multivector) -> Result<Self> {
                if !m.is_finite() {
                    return Err(Error::NonFinite);
                }
                if m.max_abs() == 0.0 {
                    return Err(Error::ZeroObject);
                }
                match m.homogeneous_grade() {
                    Some(g) if g == $grade => Ok($ty(m.grade($grade))),
                    _ => Err(Error::NotHomogeneous),
                }
            }

            pub(crate) fn raw(m: Multivector) -> Self {
                $ty(m.grade($grade))
            }

            pub fn as_multivector(&self) -> &Multivector {
                &self.0
            }

            /// Unit-magnitude copy, `A / √|⟨A Ã⟩₀|`.
            pub fn normalized(&self) -> Result<Self> {
                let m = self.0.magnitude()?;
                if m.mag <= ZERO_TOL * self.0.max_abs() * self.0.max_abs().max(1.0) || m.mag == 0.0 {
                    return Err(Error::ZeroObject);
                }
                Ok($ty(self.0 / m.mag))
            }

            /// Sign of `⟨A Ã⟩₀`.
            pub fn magnitude_sign(&self) -> i8 {
                self.0.magnitude().map(|m| m.sign).unwrap_or(0)
            }

            /// Square of the blade (a scalar for blades).
            pub fn square(&self) -> f64 {
                self.0.scalar_product(&self.0)
            }

            pub fn scaled(&self, s: f64) -> Self {
                $ty(self.0 * s)
            }
        }

        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(-self.0)
            }
        }
    };
}

graded_wrapper!(PointPair, 2);
graded_wrapper!(Circle, 3);
graded_wrapper!(Sphere, 4);

impl RoundObject for Circle {
    fn blade(&self) -> &Multivector {
        &self.0
    }
}

impl RoundObject for Sphere {
    fn blade(&self) -> &Multivector {
        &self.0
    }
}

/// One of the two points recovered from a point pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairPoint {
    Finite(ConformalPoint),
    Infinity,
}

impl PairPoint {
    pub fn finite(&self) -> Option<&ConformalPoint> {
        match self {
            PairPoint::Finite(p) => Some(p),
            PairPoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PairPoint::Infinity)
    }

    /// Homogeneous vector, `n` for the point at infinity.
    pub fn vector(&self) -> Multivector {
        match self {
            PairPoint::Finite(p) => *p.vector(),
            PairPoint::Infinity => n(),
        }
    }
}

/// How many real points a point pair holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Two,
    Tangent,
    Empty,
}

impl PointPair {
    /// Classification by the sign of `B²`.
    pub fn kind(&self) -> PairKind {
        let sq = self.square();
        let scale = self.0.coeff_norm().powi(2);
        if sq.abs() <= FLAT_TOL * scale {
            PairKind::Tangent
        } else if sq > 0.0 {
            PairKind::Two
        } else {
            PairKind::Empty
        }
    }
}

fn wedge_all(points: &[&Multivector]) -> (Multivector, f64) {
    let mut acc = *points[0];
    let mut scale = points[0].max_abs();
    for p in &points[1..] {
        acc = acc ^ **p;
        scale *= p.max_abs();
    }
    (acc, scale)
}

fn is_negligible(m: &Multivector, scale: f64) -> bool {
    m.max_abs() <= ZERO_TOL * scale
}

/// `L = X₁∧X₂∧X₃`, the oriented circle traversing `X₁ → X₂ → X₃`.
pub fn circle_through(x1: &ConformalPoint, x2: &ConformalPoint, x3: &ConformalPoint) -> Result<Circle> {
    let (c, scale) = wedge_all(&[x1.vector(), x2.vector(), x3.vector()]);
    if is_negligible(&c, scale) {
        return Err(Error::DegenerateCircle);
    }
    Ok(Circle(c))
}

/// `L = X₁∧X₂∧n`.
pub fn line_through(x1: &ConformalPoint, x2: &ConformalPoint) -> Result<Circle> {
    let nv = n();
    let (c, scale) = wedge_all(&[x1.vector(), x2.vector(), &nv]);
    if is_negligible(&c, scale) {
        return Err(Error::CoincidentPoints);
    }
    Ok(Circle(c))
}

/// `S = X₁∧X₂∧X₃∧X₄`.
pub fn sphere_through(
    x1: &ConformalPoint,
    x2: &ConformalPoint,
    x3: &ConformalPoint,
    x4: &ConformalPoint,
) -> Result<Sphere> {
    let (s, scale) = wedge_all(&[x1.vector(), x2.vector(), x3.vector(), x4.vector()]);
    if is_negligible(&s, scale) {
        return Err(Error::DegenerateSphere);
    }
    Ok(Sphere(s))
}

/// `P = X₁∧X₂∧X₃∧n`.
pub fn plane_through(x1: &ConformalPoint, x2: &ConformalPoint, x3: &ConformalPoint) -> Result<Sphere> {
    let nv = n();
    let (s, scale) = wedge_all(&[x1.vector(), x2.vector(), x3.vector(), &nv]);
    if is_negligible(&s, scale) {
        return Err(Error::DegenerateSphere);
    }
    Ok(Sphere(s))
}

/// `|A∧n| / |A| < FLAT_TOL`.
pub fn is_flat<R: RoundObject + ?Sized>(a: &R) -> Result<bool> {
    let b = a.blade();
    let norm = b.coeff_norm();
    if norm == 0.0 {
        return Err(Error::ZeroObject);
    }
    Ok((*b ^ n()).coeff_norm() / norm < FLAT_TOL)
}

/// `ρ² = −L² / (L∧n)²`.
pub fn circle_radius(l: &Circle) -> Result<f64> {
    if is_flat(l)? {
        return Err(Error::InfiniteRadius);
    }
    let ln = l.0 ^ n();
    let rho2 = -l.square() / ln.scalar_product(&ln);
    if rho2 < 0.0 {
        return Err(Error::ImaginaryRadius);
    }
    Ok(rho2.sqrt())
}

/// `ρ² = S² / (S∧n)²` (the grade-5 factor `S∧n` squares with the opposite sign
/// to the circle case).
pub fn sphere_radius(s: &Sphere) -> Result<f64> {
    if is_flat(s)? {
        return Err(Error::InfiniteRadius);
    }
    let sn = s.0 ^ n();
    let rho2 = s.square() / sn.scalar_product(&sn);
    if rho2 < 0.0 {
        return Err(Error::ImaginaryRadius);
    }
    Ok(rho2.sqrt())
}

/// Centre as the reflection of infinity in the object, `A n A`.
pub fn center_of<R: RoundObject + ?Sized>(a: &R) -> Result<ConformalPoint> {
    if is_flat(a)? {
        return Err(Error::InfiniteRadius);
    }
    let b = a.blade();
    let c = (*b * n() * *b).grade(1);
    normalize_point(&c)
}

/// Angle between two circles, `cos θ = L₁·L₂ / (|L₁||L₂|)`, in `[0, π]`.
pub fn angle_between(l1: &Circle, l2: &Circle) -> Result<f64> {
    let m1 = l1.0.magnitude()?;
    let m2 = l2.0.magnitude()?;
    if m1.mag == 0.0 || m2.mag == 0.0 {
        return Err(Error::DegenerateCircle);
    }
    let cos = l1.0.scalar_product(&l2.0) / (m1.mag * m2.mag);
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Intersection of two spheres, `L = (I S₁)·S₂`.
pub fn meet_spheres(s1: &Sphere, s2: &Sphere) -> Circle {
    Circle::raw(s1.0.dual().inner_product(&s2.0))
}

/// Intersection of a circle with a sphere, `B = (I C)·S`.
pub fn meet_circle_sphere(c: &Circle, s: &Sphere) -> PointPair {
    PointPair::raw(c.0.dual().inner_product(&s.0))
}

/// Oriented intersection of a circle with a plane, `B = I(CΠ + ΠC)`.
///
/// When real, the pair splits as `(X_f, X_i)` with `X_f` the point where the
/// circle crosses from the negative to the positive side of `Π`.
pub fn oriented_meet_circle_plane(c: &Circle, plane: &Sphere) -> Result<PointPair> {
    if c.0.max_abs() == 0.0 || plane.0.max_abs() == 0.0 {
        return Err(Error::ZeroObject);
    }
    if !is_flat(plane)? {
        return Err(Error::NotFlat);
    }
    let sym = c.0 * plane.0 + plane.0 * c.0;
    Ok(PointPair::raw(sym.dual()))
}

/// Plane of points equidistant from `X₁` and `X₂`, `Π = I((X₁∧X₂)·n)`, with
/// its positive side containing `X₂`.
pub fn bisector_plane(x1: &ConformalPoint, x2: &ConformalPoint) -> Result<Sphere> {
    let pair = *x1.vector() ^ *x2.vector();
    if is_negligible(&pair, x1.vector().max_abs() * x2.vector().max_abs()) {
        return Err(Error::CoincidentPoints);
    }
    Ok(Sphere::raw(pair.inner_product(&n()).dual()))
}

/// Splits a point pair `B` with `B² > 0` into `(X_f, X_i)`, `B ∝ X_f∧X_i` with
/// positive factor.
///
/// `v ↦ B·v` has eigenvalue `X_f·X_i = −β` on `X_f` and `+β` on `X_i`, where
/// `β = √(B²)`. Both projections are taken from a probe vector.
pub fn split_point_pair(b: &PointPair) -> Result<(PairPoint, PairPoint)> {
    match b.kind() {
        PairKind::Empty => return Err(Error::NoRealPoints),
        PairKind::Tangent => return Err(Error::TangentPoint),
        PairKind::Two => {}
    }
    let biv = b.0 / b.0.coeff_norm();
    let beta = biv.scalar_product(&biv).sqrt();
    let apply = |v: &Multivector| biv.inner_product(v).grade(1);

    let probes = [
        Multivector::basis(0),
        Multivector::basis(1),
        Multivector::basis(2),
        Multivector::basis(3),
        Multivector::basis(4),
        crate::conformal::nbar(),
    ];
    let (first, second) = probes
        .iter()
        .map(|a| {
            let fa = apply(a);
            let ffa = apply(&fa);
            (ffa - fa * beta, ffa + fa * beta)
        })
        .max_by(|(a1, b1), (a2, b2)| {
            let s1 = a1.max_abs().min(b1.max_abs());
            let s2 = a2.max_abs().min(b2.max_abs());
            s1.total_cmp(&s2)
        })
        .expect("probe list is non-empty");

    Ok((classify_null(&first)?, classify_null(&second)?))
}

fn classify_null(v: &Multivector) -> Result<PairPoint> {
    let scale = v.max_abs();
    if scale == 0.0 {
        return Err(Error::TangentPoint);
    }
    let xn = vdot(v, &n());
    if xn.abs() <= CONFORMAL_TOL * scale {
        return Ok(PairPoint::Infinity);
    }
    Ok(PairPoint::Finite(ConformalPoint::from_vector(v)?))
}

/// Tangent line to `C` at the incident point `X`, `T = −(C·X)∧n`.
pub fn tangent_line(c: &Circle, x: &ConformalPoint) -> Circle {
    Circle::raw(-(c.0.inner_product(x.vector()) ^ n()))
}

/// Direction of a flat line, read from its `e0 e_i e4` components.
///
/// For `X₁∧X₂∧n` with standard-form points the result is a positive multiple
/// of `x₂ − x₁`.
pub fn line_direction(l: &Circle) -> Result<Euclidean3> {
    if !is_flat(l)? {
        return Err(Error::NotFlat);
    }
    let m = &l.0;
    let d = Euclidean3::new(m[0b10011], m[0b10101], m[0b11001]);
    if d.norm() == 0.0 {
        return Err(Error::ZeroObject);
    }
    Ok(d * (1.0 / d.norm()))
}

/// `|A∧X| / (|A||X|)` as a scale-free incidence residual.
pub fn incidence_residual(a: &Multivector, x: &Multivector) -> f64 {
    let denom = a.coeff_norm() * x.coeff_norm();
    if denom == 0.0 {
        return 0.0;
    }
    (*a ^ *x).coeff_norm() / denom
}
