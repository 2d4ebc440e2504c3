//! Euclidean points as null vectors of G(4,1).
//!
//! A point `x` maps to `X = 2x + x²n − n̄` with `n = e4 + e0` (the point at
//! infinity) and `n̄ = e4 − e0`. Any positive multiple of `X` represents the
//! same point. Points are kept unnormalised internally and only brought to the
//! standard form `X·n = −2` where a caller asks for it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{Multivector, Rotor};

/// Relative tolerance for the null and at-infinity checks.
pub const CONFORMAL_TOL: f64 = 1e-9;

/// The point at infinity, `n = e4 + e0`.
pub fn n() -> Multivector {
    Multivector::vector([1.0, 0.0, 0.0, 0.0, 1.0])
}

/// `n̄ = e4 − e0`; the origin is `−n̄`.
pub fn nbar() -> Multivector {
    Multivector::vector([-1.0, 0.0, 0.0, 0.0, 1.0])
}

/// Inner product of two vectors (scalar).
#[inline]
pub(crate) fn vdot(a: &Multivector, b: &Multivector) -> f64 {
    -a[1] * b[1] + a[2] * b[2] + a[4] * b[4] + a[8] * b[8] + a[16] * b[16]
}

/// A point of Euclidean three-space.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Euclidean3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Euclidean3 {
    pub const ORIGIN: Euclidean3 = Euclidean3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Euclidean3 { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Euclidean3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Euclidean3) -> Euclidean3 {
        Euclidean3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(self, o: Euclidean3) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn lerp(self, o: Euclidean3, t: f64) -> Euclidean3 {
        self + (o - self) * t
    }

    /// The pure vector `x e1 + y e2 + z e3`.
    pub fn to_multivector(self) -> Multivector {
        Multivector::vector([0.0, self.x, self.y, self.z, 0.0])
    }
}

impl From<[f64; 3]> for Euclidean3 {
    fn from(a: [f64; 3]) -> Self {
        Euclidean3::new(a[0], a[1], a[2])
    }
}

impl Add for Euclidean3 {
    type Output = Euclidean3;
    fn add(self, o: Euclidean3) -> Euclidean3 {
        Euclidean3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Euclidean3 {
    type Output = Euclidean3;
    fn sub(self, o: Euclidean3) -> Euclidean3 {
        Euclidean3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Euclidean3 {
    type Output = Euclidean3;
    fn mul(self, s: f64) -> Euclidean3 {
        Euclidean3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Euclidean3 {
    type Output = Euclidean3;
    fn neg(self) -> Euclidean3 {
        Euclidean3::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Euclidean3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A finite Euclidean point as a null vector with positive `e0` component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConformalPoint(Multivector);

impl ConformalPoint {
    /// Accepts any null vector representing a finite point. A negative overall
    /// factor is removed so the `e0` component is positive.
    pub fn from_vector(v: &Multivector) -> Result<Self> {
        let v = v.grade(1);
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let scale = v.max_abs();
        if scale == 0.0 {
            return Err(Error::PointAtInfinity);
        }
        let xn = vdot(&v, &n());
        if xn.abs() <= CONFORMAL_TOL * scale {
            return Err(Error::PointAtInfinity);
        }
        if vdot(&v, &v).abs() > CONFORMAL_TOL * scale * scale {
            return Err(Error::NotNull);
        }
        // X·n = −λ·2 < 0 exactly when the homogeneous factor λ is positive.
        Ok(ConformalPoint(if xn > 0.0 { -v } else { v }))
    }

    pub fn vector(&self) -> &Multivector {
        &self.0
    }

    pub fn into_vector(self) -> Multivector {
        self.0
    }

    pub fn e0(&self) -> f64 {
        self.0.vector_coeff(0)
    }

    /// Euclidean coordinates, `x_i = −X·e_i / X·n`.
    pub fn to_euclidean(&self) -> Euclidean3 {
        extract_point(&self.0).expect("conformal point is finite by construction")
    }

    /// Standard form with `X·n = −2`.
    pub fn normalized(&self) -> ConformalPoint {
        let xn = vdot(&self.0, &n());
        ConformalPoint(self.0 * (-2.0 / xn))
    }

    pub fn dot(&self, other: &ConformalPoint) -> f64 {
        vdot(&self.0, &other.0)
    }
}

impl From<Euclidean3> for ConformalPoint {
    fn from(p: Euclidean3) -> Self {
        embed_point(p)
    }
}

/// `X = 2x + x²n − n̄`.
pub fn embed_point(p: Euclidean3) -> ConformalPoint {
    let x2 = p.norm_sq();
    let v = p.to_multivector() * 2.0 + n() * x2 - nbar();
    ConformalPoint(v)
}

/// Recovers Euclidean coordinates from any finite homogeneous point vector.
pub fn extract_point(x: &Multivector) -> Result<Euclidean3> {
    let v = x.grade(1);
    let xn = vdot(&v, &n());
    if !xn.is_finite() {
        return Err(Error::NonFinite);
    }
    if xn.abs() <= CONFORMAL_TOL * v.max_abs() || v.max_abs() == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    Ok(Euclidean3::new(
        -v.vector_coeff(1) / xn,
        -v.vector_coeff(2) / xn,
        -v.vector_coeff(3) / xn,
    ))
}

/// Places a null vector in the standard form via `A ↦ −2A/(A·n)`.
pub fn normalize_point(a: &Multivector) -> Result<ConformalPoint> {
    ConformalPoint::from_vector(a).map(|p| p.normalized())
}

/// `|x − y|² = −2 X·Y / (X·n Y·n)`.
pub fn point_distance(x: &ConformalPoint, y: &ConformalPoint) -> f64 {
    let xn = vdot(x.vector(), &n());
    let yn = vdot(y.vector(), &n());
    let d2 = -2.0 * x.dot(y) / (xn * yn);
    d2.max(0.0).sqrt()
}

/// Rotor of the Euclidean translation taking `x` to `y`:
/// `T = (n·Y) nX + (n·X) Yn`.
pub fn translation_rotor(x: &ConformalPoint, y: &ConformalPoint) -> Result<Rotor> {
    let nv = n();
    let a = vdot(&nv, y.vector());
    let b = vdot(&nv, x.vector());
    let t = (nv * *x.vector()) * a + (*y.vector() * nv) * b;
    Rotor::new(t)
}

/// Translation rotor for a Euclidean displacement.
pub fn translator(d: Euclidean3) -> Rotor {
    translation_rotor(&embed_point(Euclidean3::ORIGIN), &embed_point(d))
        .expect("translation between finite points is a valid rotor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close3(a: Euclidean3, b: Euclidean3, tol: f64) {
        assert!(a.distance(b) <= tol, "{a} vs {b}");
    }

    #[test]
    fn origin_embeds_to_minus_nbar() {
        let o = embed_point(Euclidean3::ORIGIN);
        assert_eq!(*o.vector(), -nbar());
        assert_eq!(*o.vector(), Multivector::basis(0) - Multivector::basis(4));
    }

    #[test]
    fn unit_x_embedding() {
        let p = embed_point(Euclidean3::new(1.0, 0.0, 0.0));
        let expected = Multivector::basis(1) * 2.0 + Multivector::basis(0) * 2.0;
        assert!((*p.vector() - expected).max_abs() < 1e-15);
    }

    #[test]
    fn embedded_points_are_null_and_positive() {
        let p = embed_point(Euclidean3::new(-3.5, 2.0, 7.25));
        assert!(vdot(p.vector(), p.vector()).abs() < 1e-12);
        assert!(p.e0() > 0.0);
    }

    #[test]
    fn extract_is_homogeneous() {
        let p = Euclidean3::new(0.3, -1.2, 4.0);
        let x = embed_point(p);
        assert_close3(extract_point(x.vector()).unwrap(), p, 1e-14);
        assert_close3(extract_point(&(*x.vector() * 7.0)).unwrap(), p, 1e-14);
        assert_eq!(extract_point(&n()), Err(Error::PointAtInfinity));
    }

    #[test]
    fn normalization() {
        let p = Euclidean3::new(1.0, 2.0, -0.5);
        let x = embed_point(p);
        let back = normalize_point(&(*x.vector() * -3.0)).unwrap();
        assert!((*back.vector() - *x.vector()).max_abs() < 1e-14);
        assert!(back.e0() > 0.0);
        let same = normalize_point(x.vector()).unwrap();
        assert!((*same.vector() - *x.vector()).max_abs() < 1e-14);
        assert_eq!(normalize_point(&n()), Err(Error::PointAtInfinity));
        assert_eq!(
            normalize_point(&Multivector::basis(1)),
            Err(Error::PointAtInfinity)
        );
        assert_eq!(
            normalize_point(&(Multivector::basis(0) * 2.0 + Multivector::basis(1))),
            Err(Error::NotNull)
        );
    }

    #[test]
    fn distances() {
        let x = embed_point(Euclidean3::new(1.0, 0.0, 0.0));
        let o = embed_point(Euclidean3::ORIGIN);
        assert_eq!(point_distance(&x, &x), 0.0);
        assert!((point_distance(&x, &o) - 1.0).abs() < 1e-15);
        let xs = ConformalPoint::from_vector(&(*x.vector() * 3.5)).unwrap();
        let os = ConformalPoint::from_vector(&(*o.vector() * 0.25)).unwrap();
        assert!((point_distance(&xs, &os) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn translation_to_target() {
        let o = embed_point(Euclidean3::ORIGIN);
        let t = embed_point(Euclidean3::new(1.0, 2.0, 3.0));
        let r = translation_rotor(&o, &t).unwrap();
        let moved = extract_point(&r.apply(o.vector())).unwrap();
        assert_close3(moved, Euclidean3::new(1.0, 2.0, 3.0), 1e-13);

        let image_of_infinity = r.apply(&n());
        let k = image_of_infinity.vector_coeff(4);
        assert!((image_of_infinity - n() * k).max_abs() < 1e-12 * k.abs());

        let same = translation_rotor(&t, &t).unwrap();
        let back = extract_point(&same.apply(t.vector())).unwrap();
        assert_close3(back, Euclidean3::new(1.0, 2.0, 3.0), 1e-13);
    }
}
