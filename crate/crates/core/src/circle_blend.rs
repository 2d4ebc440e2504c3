//! Circle-blended splines.
//!
//! Between control points `X₁` and `X₂` the curve is the image of the straight
//! chord under the rotor taking the line `X₁∧X₂∧n` to a circle that is blended,
//! by angle, from the through-circle at `X₁` to the through-circle at `X₂`.
//! Rotor and chord are both rebuilt for every parameter value.

use std::f64::consts::{PI, TAU};

use crate::conformal::{embed_point, n, vdot, ConformalPoint, Euclidean3};
use crate::error::{Error, Result};
use crate::ga::{exp_bivector, Multivector, Rotor};
use crate::primitives::{
    bisector_plane, circle_through, incidence_residual, is_flat, line_through,
    oriented_meet_circle_plane, split_point_pair, Circle, PairPoint, Sphere,
};

/// Below this blend angle the trigonometric blend is replaced by a linear one.
pub const SMALL_ANGLE: f64 = 1e-5;
/// Relative size of `Ĉ₁ + Ĉ₂` below which the circles are taken as opposite.
pub const OPPOSITE_TOL: f64 = 1e-9;
/// Relative size of `R R̃` below which a blend rotor is rejected.
pub const ROTOR_NORM_TOL: f64 = 1e-12;
/// Incidence residual tolerated for segment endpoints on their circles.
pub const INCIDENCE_TOL: f64 = 1e-9;

/// Reparameterisation of the blend, `λ ↦ p(λ)`.
///
/// Order `k` is the smoothstep polynomial of degree `2k − 1`: identity for
/// `k = 1`, `3λ² − 2λ³` for `k = 2`, `10λ³ − 15λ⁴ + 6λ⁵` for `k = 3`. Its first
/// `k − 1` derivatives vanish at both ends, which makes the rotor stationary at
/// the control points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlendProfile {
    order: u32,
}

impl BlendProfile {
    pub const G1: BlendProfile = BlendProfile { order: 1 };
    pub const G2: BlendProfile = BlendProfile { order: 2 };
    pub const G3: BlendProfile = BlendProfile { order: 3 };

    pub fn new(order: u32) -> Result<Self> {
        if order == 0 || order > 16 {
            return Err(Error::OutOfRange("continuity order must be in 1..=16"));
        }
        Ok(BlendProfile { order })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn evaluate(&self, lambda: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange("blend parameter must lie in [0, 1]"));
        }
        Ok(self.eval_unchecked(lambda))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        // x^k Σ_{j<k} C(k−1+j, j) (1−x)^j
        let k = self.order as i32;
        let mut sum = 0.0;
        let mut binom = 1.0;
        let mut pow = 1.0;
        for j in 0..k {
            if j > 0 {
                binom *= f64::from(k - 1 + j) / f64::from(j);
                pow *= 1.0 - x;
            }
            sum += binom * pow;
        }
        x.powi(k) * sum
    }
}

impl Default for BlendProfile {
    fn default() -> Self {
        BlendProfile::G2
    }
}

pub fn blend_profile_eval(profile: &BlendProfile, lambda: f64) -> Result<f64> {
    profile.evaluate(lambda)
}

/// Normalises two circles, requiring equal magnitude signs.
fn normalize_pair(c1: &Circle, c2: &Circle) -> Result<(Circle, Circle)> {
    let s1 = c1.magnitude_sign();
    let s2 = c2.magnitude_sign();
    if s1 == 0 || s2 == 0 {
        return Err(Error::DegenerateCircle);
    }
    if s1 != s2 {
        return Err(Error::SignMismatch);
    }
    Ok((c1.normalized()?, c2.normalized()?))
}

/// Midpoint of the arc of `C` running from `X₁` to `X₂` in the circle's
/// orientation, as a homogeneous vector (`n` if that arc passes through
/// infinity).
fn arc_midpoint_vector(c: &Circle, x1: &ConformalPoint, x2: &ConformalPoint) -> Result<Multivector> {
    let plane = bisector_plane(x1, x2)?;
    let pair = oriented_meet_circle_plane(c, &plane)?;
    let (first, _) = split_point_pair(&pair)?;
    Ok(match first {
        PairPoint::Finite(p) => *p.normalized().vector(),
        PairPoint::Infinity => n(),
    })
}

/// Midpoint of the arc of `C` traversed from `X₁` to `X₂` in the circle's
/// orientation; the Euclidean midpoint when `C` is the line through them.
pub fn arc_midpoint(c: &Circle, x1: &ConformalPoint, x2: &ConformalPoint) -> Result<ConformalPoint> {
    for x in [x1, x2] {
        if incidence_residual(c.as_multivector(), x.vector()) > INCIDENCE_TOL {
            return Err(Error::InvalidInput("arc endpoints must lie on the circle".into()));
        }
    }
    ConformalPoint::from_vector(&arc_midpoint_vector(c, x1, x2)?)
}

/// Which of the two candidate mid-circles `±(Ĉ₁ + Ĉ₂)` a blend passes through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MidSign {
    /// `Ĉ₁ + Ĉ₂`, blend angle below π.
    Plus,
    /// `−(Ĉ₁ + Ĉ₂)`, blend angle above π.
    Minus,
}

/// Orientation test: sign of
/// `α = ((M₁·n M₂ + M₂·n M₁)∧n)·B` where `M₁, M₂` are the arc midpoints and
/// `B` meets `Ĉ₁ + Ĉ₂` with the bisector plane of `X₁X₂`.
fn mid_sign(c1: &Circle, c2: &Circle, x1: &ConformalPoint, x2: &ConformalPoint) -> Result<MidSign> {
    let sum = *c1.as_multivector() + *c2.as_multivector();
    if sum.coeff_norm() <= OPPOSITE_TOL * c1.as_multivector().coeff_norm() {
        return Err(Error::Pathological("circles are equal and opposite (blend angle π)"));
    }
    let m1 = arc_midpoint_vector(c1, x1, x2)?;
    let m2 = arc_midpoint_vector(c2, x1, x2)?;
    let plane = bisector_plane(x1, x2)?;
    let b = oriented_meet_circle_plane(&Circle::raw(sum), &plane)?;
    let nv = n();
    let flat_mid = (m2 * vdot(&m1, &nv) + m1 * vdot(&m2, &nv)) ^ nv;
    let alpha = flat_mid.scalar_product(b.as_multivector());
    // Both midpoints are in standard form; divide out the remaining scales.
    let scale = flat_mid.coeff_norm() * b.as_multivector().coeff_norm();
    if !(alpha.abs() > 1e-12 * scale) {
        return Err(Error::Pathological("orientation test is degenerate (α = 0)"));
    }
    Ok(if alpha < 0.0 { MidSign::Plus } else { MidSign::Minus })
}

/// The orientation-resolved mid-circle `±(Ĉ₁ + Ĉ₂)` for two circles through
/// `X₁` and `X₂`.
pub fn mid_circle(c1: &Circle, c2: &Circle, x1: &ConformalPoint, x2: &ConformalPoint) -> Result<Circle> {
    let (c1, c2) = normalize_pair(c1, c2)?;
    let sum = *c1.as_multivector() + *c2.as_multivector();
    Ok(match mid_sign(&c1, &c2, x1, x2)? {
        MidSign::Plus => Circle::raw(sum),
        MidSign::Minus => Circle::raw(-sum),
    })
}

/// `Y(λ) = −(1−λ)(X₂·n)X₁ − λ(X₁·n)X₂ + λ(1−λ)(X₁·X₂)n`, the straight path
/// from `X₁` to `X₂`.
pub fn chord_point(x1: &ConformalPoint, x2: &ConformalPoint, lambda: f64) -> ConformalPoint {
    ConformalPoint::from_vector(&chord_vector(x1, x2, lambda))
        .expect("chord between finite points stays finite")
}

fn chord_vector(x1: &ConformalPoint, x2: &ConformalPoint, lambda: f64) -> Multivector {
    let nv = n();
    let (a, b) = (x1.vector(), x2.vector());
    *a * (-(1.0 - lambda) * vdot(b, &nv)) + *b * (-lambda * vdot(a, &nv))
        + nv * (lambda * (1.0 - lambda) * vdot(a, b))
}

/// `R = 1 + Ĉ L̂`, normalised, taking the chord line `L̂` to the circle `Ĉ`.
pub fn segment_rotor(blend: &Circle, line: &Circle) -> Result<Rotor> {
    let c = blend.normalized()?;
    let l = line.normalized()?;
    let r = Multivector::scalar(1.0) + *c.as_multivector() * *l.as_multivector();
    let rr = r.geometric_product(&r.reverse()).scalar_part();
    if !(rr > ROTOR_NORM_TOL) {
        return Err(Error::OppositeObjects);
    }
    Ok(Rotor::new(r).map_err(|_| Error::OppositeObjects)?.normalized())
}

/// Spherical blend of two unit circles at angle `theta`.
pub fn slerp_circles(c1: &Circle, c2: &Circle, theta: f64, t: f64) -> Circle {
    let s = theta.sin();
    Circle::raw(
        (*c1.as_multivector() * ((1.0 - t) * theta).sin() + *c2.as_multivector() * (t * theta).sin()) / s,
    )
}

/// Linear blend used below [`SMALL_ANGLE`].
pub fn lerp_circles(c1: &Circle, c2: &Circle, t: f64) -> Circle {
    Circle::raw(*c1.as_multivector() * (1.0 - t) + *c2.as_multivector() * t)
}

/// A blended piece of the curve between two adjacent control points.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    x1: ConformalPoint,
    x2: ConformalPoint,
    c1: Circle,
    c2: Circle,
    line: Circle,
    mid: Circle,
    theta: f64,
}

impl Segment {
    /// Builds a segment from its endpoints and the incoming and outgoing
    /// through-circles, resolving the mid-circle by the orientation test.
    pub fn new(x1: ConformalPoint, x2: ConformalPoint, c1: &Circle, c2: &Circle) -> Result<Self> {
        let (n1, n2) = normalize_pair(c1, c2)?;
        Self::check_incidence(&x1, &x2, &n1, &n2)?;
        let sign = mid_sign(&n1, &n2, &x1, &x2)?;
        Self::assemble(x1, x2, n1, n2, sign)
    }

    /// Builds a segment with the mid-circle sign chosen by the caller instead of
    /// the orientation test.
    pub fn with_mid_sign(
        x1: ConformalPoint,
        x2: ConformalPoint,
        c1: &Circle,
        c2: &Circle,
        sign: MidSign,
    ) -> Result<Self> {
        let (n1, n2) = normalize_pair(c1, c2)?;
        Self::check_incidence(&x1, &x2, &n1, &n2)?;
        let sum = *n1.as_multivector() + *n2.as_multivector();
        if sum.coeff_norm() <= OPPOSITE_TOL * n1.as_multivector().coeff_norm() {
            return Err(Error::Pathological("circles are equal and opposite (blend angle π)"));
        }
        Self::assemble(x1, x2, n1, n2, sign)
    }

    fn check_incidence(x1: &ConformalPoint, x2: &ConformalPoint, c1: &Circle, c2: &Circle) -> Result<()> {
        for c in [c1, c2] {
            for x in [x1, x2] {
                if incidence_residual(c.as_multivector(), x.vector()) > INCIDENCE_TOL {
                    return Err(Error::InvalidInput(
                        "segment endpoints must lie on both circles".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn assemble(x1: ConformalPoint, x2: ConformalPoint, c1: Circle, c2: Circle, sign: MidSign) -> Result<Self> {
        let sum = *c1.as_multivector() + *c2.as_multivector();
        let mid = Circle::raw(match sign {
            MidSign::Plus => sum,
            MidSign::Minus => -sum,
        })
        .normalized()?;
        let half = c1.as_multivector().scalar_product(mid.as_multivector()).clamp(-1.0, 1.0).acos();
        let theta = 2.0 * half;
        if TAU - theta < SMALL_ANGLE {
            return Err(Error::Pathological("blend would wind a full turn"));
        }
        let line = line_through(&x1, &x2)?.normalized()?;
        Ok(Segment {
            x1,
            x2,
            c1,
            c2,
            line,
            mid,
            theta,
        })
    }

    pub fn start(&self) -> &ConformalPoint {
        &self.x1
    }

    pub fn end(&self) -> &ConformalPoint {
        &self.x2
    }

    /// Normalised incoming circle.
    pub fn incoming(&self) -> &Circle {
        &self.c1
    }

    /// Normalised outgoing circle.
    pub fn outgoing(&self) -> &Circle {
        &self.c2
    }

    /// Normalised chord line `X₁∧X₂∧n`.
    pub fn chord_line(&self) -> &Circle {
        &self.line
    }

    /// Normalised mid-circle.
    pub fn mid(&self) -> &Circle {
        &self.mid
    }

    /// Blend angle along the chosen path, in `[0, 2π)` and never π.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// True when the blend passes through `−(Ĉ₁ + Ĉ₂)`.
    pub fn is_reflex(&self) -> bool {
        self.theta > PI
    }
}

/// Blended circle `Ĉ(λ)`; linear below [`SMALL_ANGLE`].
pub fn circle_slerp(seg: &Segment, profile: &BlendProfile, lambda: f64) -> Result<Circle> {
    let t = profile.evaluate(lambda)?;
    Ok(if seg.theta < SMALL_ANGLE {
        lerp_circles(&seg.c1, &seg.c2, t)
    } else {
        slerp_circles(&seg.c1, &seg.c2, seg.theta, t)
    })
}

/// Curve point `X(λ) = R(λ) Y(λ) R̃(λ)`.
pub fn evaluate_segment(seg: &Segment, profile: &BlendProfile, lambda: f64) -> Result<ConformalPoint> {
    let blend = circle_slerp(seg, profile, lambda)?;
    evaluate_with_circle(seg, &blend, lambda)
}

/// Curve point for an explicitly supplied blended circle.
pub fn evaluate_with_circle(seg: &Segment, blend: &Circle, lambda: f64) -> Result<ConformalPoint> {
    let rotor = segment_rotor(blend, &seg.line)?;
    let y = chord_vector(&seg.x1, &seg.x2, lambda);
    ConformalPoint::from_vector(&rotor.apply(&y))
}

/// Generator `B₁₂ = (X₁∧X₂)P` for the planar configuration where the two
/// circles are equal and opposite. It is returned scaled so that `B² = −1`;
/// `exp(−τB/2)` then turns circles through `X₁, X₂` within `P` by angle `τ`.
pub fn pathological_generator(x1: &ConformalPoint, x2: &ConformalPoint, plane: &Sphere) -> Result<Multivector> {
    if !is_flat(plane)? {
        return Err(Error::NotFlat);
    }
    for x in [x1, x2] {
        if incidence_residual(plane.as_multivector(), x.vector()) > INCIDENCE_TOL {
            return Err(Error::InvalidInput("points must lie in the plane".into()));
        }
    }
    let b = (*x1.vector() ^ *x2.vector()) * *plane.as_multivector();
    let sq = b.scalar_product(&b);
    if !(sq < 0.0) {
        return Err(Error::ZeroObject);
    }
    Ok(b.grade(2) / (-sq).sqrt())
}

/// Rotor `exp(−τB/2)` for the generator of [`pathological_generator`].
pub fn pathological_rotor(generator: &Multivector, tau: f64) -> Result<Rotor> {
    exp_bivector(&(*generator * (-tau / 2.0)))
}

/// Input to [`build_spline`].
#[derive(Clone, Debug, PartialEq)]
pub struct SplineSpec {
    pub control_points: Vec<Euclidean3>,
    pub closed: bool,
    pub profile: BlendProfile,
    pub samples_per_segment: usize,
    pub refine_depth: usize,
}

impl SplineSpec {
    pub fn new(control_points: Vec<Euclidean3>) -> Self {
        SplineSpec {
            control_points,
            closed: false,
            profile: BlendProfile::G2,
            samples_per_segment: 64,
            refine_depth: 0,
        }
    }

    pub fn closed(mut self, closed: bool) -> Self {
        self.closed = closed;
        self
    }

    pub fn profile(mut self, profile: BlendProfile) -> Self {
        self.profile = profile;
        self
    }

    pub fn samples(mut self, samples: usize) -> Self {
        self.samples_per_segment = samples;
        self
    }

    pub fn refine(mut self, depth: usize) -> Self {
        self.refine_depth = depth;
        self
    }

    pub fn segment_count(&self) -> usize {
        let m = self.control_points.len();
        if self.closed {
            m
        } else {
            m.saturating_sub(1)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.control_points.len();
        let min = if self.closed { 3 } else { 4 };
        if m < min {
            return Err(Error::InvalidInput(format!(
                "{} spline needs at least {min} control points, got {m}",
                if self.closed { "closed" } else { "open" }
            )));
        }
        if self.samples_per_segment == 0 {
            return Err(Error::InvalidInput("samples per segment must be positive".into()));
        }
        if self.control_points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        let scale = self
            .control_points
            .iter()
            .fold(0.0f64, |s, p| s.max(p.norm()))
            .max(1.0);
        for i in 0..self.segment_count() {
            let a = self.control_points[i];
            let b = self.control_points[(i + 1) % m];
            if a.distance(b) <= 1e-12 * scale {
                return Err(Error::InvalidInput(format!(
                    "control points {i} and {} coincide",
                    (i + 1) % m
                )));
            }
        }
        Ok(())
    }
}

/// One sample of a built spline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub segment: usize,
    pub lambda: f64,
    pub point: Euclidean3,
}

/// Segments of a spline, after validation, without sampling.
pub fn spline_segments(spec: &SplineSpec) -> Result<Vec<Segment>> {
    spec.validate()?;
    let pts: Vec<ConformalPoint> = spec.control_points.iter().map(|p| embed_point(*p)).collect();
    let m = pts.len();

    // circles[i] passes through points i−1, i, i+1; open splines have them
    // only for interior points.
    let circle_at = |i: usize| -> Result<Circle> {
        let prev = (i + m - 1) % m;
        let next = (i + 1) % m;
        circle_through(&pts[prev], &pts[i], &pts[next])
    };
    let interior: Vec<usize> = if spec.closed { (0..m).collect() } else { (1..m - 1).collect() };
    let mut circles: Vec<Option<Circle>> = vec![None; m];
    for &i in &interior {
        circles[i] = Some(circle_at(i).map_err(|e| e.at_segment(i.saturating_sub(1)))?);
    }

    (0..spec.segment_count())
        .map(|i| {
            let j = (i + 1) % m;
            // End segments of open splines reuse their single circle.
            let c1 = circles[i].or(circles[j]).expect("neighbouring circle exists");
            let c2 = circles[j].or(circles[i]).expect("neighbouring circle exists");
            Segment::new(pts[i], pts[j], &c1, &c2).map_err(|e| e.at_segment(i))
        })
        .collect()
}

/// Samples a spline at uniform `λ` on every segment, after `refine_depth`
/// rounds of midpoint refinement.
///
/// Each segment yields `samples_per_segment + 1` samples. Segment endpoints
/// are the control points themselves, so consecutive segments share their
/// junction sample exactly.
pub fn build_spline(spec: &SplineSpec) -> Result<Vec<CurveSample>> {
    let spec = refine_midpoints(spec)?;
    let segments = spline_segments(&spec)?;
    let m = spec.control_points.len();
    let n = spec.samples_per_segment;
    let mut out = Vec::with_capacity(segments.len() * (n + 1));
    for (i, seg) in segments.iter().enumerate() {
        for k in 0..=n {
            let lambda = k as f64 / n as f64;
            let point = if k == 0 {
                spec.control_points[i]
            } else if k == n {
                spec.control_points[(i + 1) % m]
            } else {
                evaluate_segment(seg, &spec.profile, lambda)
                    .map_err(|e| e.at_segment(i))?
                    .to_euclidean()
            };
            out.push(CurveSample {
                segment: i,
                lambda,
                point,
            });
        }
    }
    Ok(out)
}

/// Inserts the blended curve's `λ = ½` point into every segment, repeated
/// `refine_depth` times. The returned spec has `refine_depth = 0`.
pub fn refine_midpoints(spec: &SplineSpec) -> Result<SplineSpec> {
    let mut current = spec.clone();
    current.refine_depth = 0;
    for _ in 0..spec.refine_depth {
        let segments = spline_segments(&current)?;
        let m = current.control_points.len();
        let mut pts = Vec::with_capacity(2 * m);
        for (i, seg) in segments.iter().enumerate() {
            pts.push(current.control_points[i]);
            let mid = evaluate_segment(seg, &current.profile, 0.5).map_err(|e| e.at_segment(i))?;
            pts.push(mid.to_euclidean());
        }
        if !current.closed {
            pts.push(current.control_points[m - 1]);
        }
        current.control_points = pts;
    }
    Ok(current)
}
