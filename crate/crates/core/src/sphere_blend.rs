//! Triangular patches from blended spheres.
//!
//! Each corner of a triangle carries a sphere through the three vertices and a
//! control apex. A barycentric blend of the unit spheres picks a sphere for
//! every parameter value, and the rotor `R = 1 − Ŝ P̂` carries the matching
//! point of the flat triangle onto it.

use crate::conformal::{embed_point, ConformalPoint, Euclidean3};
use crate::error::{Error, Result};
use crate::ga::{Multivector, Rotor};
use crate::primitives::{incidence_residual, is_flat, plane_through, Sphere, ZERO_TOL};

/// Slack allowed on the barycentric constraints.
pub const BARYCENTRIC_TOL: f64 = 1e-12;
/// Threshold on `⟨R R̃⟩₀` below which the sphere is opposite to the plane.
pub const SURFACE_ROTOR_TOL: f64 = 1e-12;

/// Barycentric coordinates `(λ, μ, ν)` over the triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Barycentric {
    lambda: f64,
    mu: f64,
    nu: f64,
}

impl Barycentric {
    pub fn new(lambda: f64, mu: f64, nu: f64) -> Result<Self> {
        let ok = |t: f64| t.is_finite() && (-BARYCENTRIC_TOL..=1.0 + BARYCENTRIC_TOL).contains(&t);
        if !(ok(lambda) && ok(mu) && ok(nu)) {
            return Err(Error::OutOfRange("barycentric coordinates must lie in [0, 1]"));
        }
        if (lambda + mu + nu - 1.0).abs() > BARYCENTRIC_TOL {
            return Err(Error::OutOfRange("barycentric coordinates must sum to 1"));
        }
        Ok(Barycentric { lambda, mu, nu })
    }

    /// `(λ, μ, 1 − λ − μ)`.
    pub fn from_lambda_mu(lambda: f64, mu: f64) -> Result<Self> {
        Barycentric::new(lambda, mu, 1.0 - lambda - mu)
    }

    /// The `i`-th corner (0, 1 or 2).
    pub fn corner(i: usize) -> Self {
        let mut c = [0.0; 3];
        c[i] = 1.0;
        Barycentric {
            lambda: c[0],
            mu: c[1],
            nu: c[2],
        }
    }

    pub fn centroid() -> Self {
        Barycentric {
            lambda: 1.0 / 3.0,
            mu: 1.0 / 3.0,
            nu: 1.0 / 3.0,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn weights(&self) -> [f64; 3] {
        [self.lambda, self.mu, self.nu]
    }
}

/// A triangle with three corner spheres and its supporting plane.
#[derive(Clone, Debug)]
pub struct TrianglePatch {
    vertices: [ConformalPoint; 3],
    euclidean: [Euclidean3; 3],
    apexes: [ConformalPoint; 3],
    spheres: [Sphere; 3],
    plane: Sphere,
}

impl TrianglePatch {
    pub fn vertices(&self) -> &[ConformalPoint; 3] {
        &self.vertices
    }

    pub fn euclidean_vertices(&self) -> &[Euclidean3; 3] {
        &self.euclidean
    }

    pub fn apexes(&self) -> &[ConformalPoint; 3] {
        &self.apexes
    }

    /// Unit corner spheres `Ŝ₁, Ŝ₂, Ŝ₃`.
    pub fn spheres(&self) -> &[Sphere; 3] {
        &self.spheres
    }

    /// Unit triangle plane `P̂`.
    pub fn plane(&self) -> &Sphere {
        &self.plane
    }
}

/// Builds the patch with `S_i = A_i∧X₁∧X₂∧X₃` and `P = X₁∧X₂∧X₃∧n`.
pub fn make_patch(vertices: [Euclidean3; 3], apexes: [Euclidean3; 3]) -> Result<TrianglePatch> {
    if vertices.iter().chain(apexes.iter()).any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    let xs = vertices.map(embed_point);
    let plane = plane_through(&xs[0], &xs[1], &xs[2])
        .map_err(|_| Error::InvalidInput("triangle vertices are collinear or coincident".into()))?
        .normalized()?;
    let base = *xs[0].vector() ^ *xs[1].vector() ^ *xs[2].vector();
    let a = apexes.map(embed_point);
    let mut spheres = [plane; 3];
    for (i, apex) in a.iter().enumerate() {
        let s = *apex.vector() ^ base;
        let scale = apex.vector().coeff_norm() * base.coeff_norm();
        if s.coeff_norm() <= ZERO_TOL * scale {
            return Err(Error::DegenerateSphere);
        }
        let s = Sphere::from_multivector(s)?.normalized()?;
        if s.magnitude_sign() != plane.magnitude_sign() {
            return Err(Error::SignMismatch);
        }
        spheres[i] = s;
    }
    Ok(TrianglePatch {
        vertices: xs,
        euclidean: vertices,
        apexes: a,
        spheres,
        plane,
    })
}

/// Conformal image of the Euclidean point `λx₁ + μx₂ + νx₃`.
pub fn barycentric_point(patch: &TrianglePatch, b: &Barycentric) -> ConformalPoint {
    let [p1, p2, p3] = patch.euclidean;
    embed_point(p1 * b.lambda + p2 * b.mu + p3 * b.nu)
}

/// `S = λŜ₁ + μŜ₂ + νŜ₃`, returned unnormalised.
pub fn blend_spheres(patch: &TrianglePatch, b: &Barycentric) -> Result<Sphere> {
    let [s1, s2, s3] = patch.spheres.map(|s| *s.as_multivector());
    let s = s1 * b.lambda + s2 * b.mu + s3 * b.nu;
    // The corner spheres have unit magnitude, so this is already relative.
    if s.coeff_norm() <= 1e-9 || s.magnitude().map(|m| m.mag).unwrap_or(0.0) <= 1e-9 {
        return Err(Error::DegenerateBlend);
    }
    Sphere::from_multivector(s).map_err(|_| Error::DegenerateBlend)
}

/// `R = 1 − Ŝ P̂`, normalised.
pub fn surface_rotor(sphere: &Sphere, plane: &Sphere) -> Result<Rotor> {
    let s = sphere.normalized().map_err(|_| Error::DegenerateBlend)?;
    let r = Multivector::scalar(1.0) - *s.as_multivector() * *plane.as_multivector();
    let rr = r.geometric_product(&r.reverse()).scalar_part();
    if !(rr > SURFACE_ROTOR_TOL) {
        return Err(Error::OppositeObjects);
    }
    Ok(Rotor::new(r).map_err(|_| Error::OppositeObjects)?.normalized())
}

/// Surface point `X = R Y R̃`.
pub fn evaluate_surface(patch: &TrianglePatch, b: &Barycentric) -> Result<ConformalPoint> {
    let sphere = blend_spheres(patch, b)?;
    let rotor = surface_rotor(&sphere, &patch.plane)?;
    let y = barycentric_point(patch, b);
    ConformalPoint::from_vector(&rotor.apply(y.vector()))
}

/// Whether the blended sphere at `b` is the triangle plane itself.
pub fn is_flat_at(patch: &TrianglePatch, b: &Barycentric) -> Result<bool> {
    is_flat(&blend_spheres(patch, b)?)
}

/// `|S(b)∧X(b)|` relative, for diagnostics.
pub fn surface_incidence(patch: &TrianglePatch, b: &Barycentric) -> Result<f64> {
    let s = blend_spheres(patch, b)?;
    let x = evaluate_surface(patch, b)?;
    Ok(incidence_residual(s.as_multivector(), x.vector()))
}

/// Triangle mesh sampled on the barycentric lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Euclidean3>,
    pub params: Vec<Barycentric>,
    /// Zero-based vertex indices.
    pub faces: Vec<[usize; 3]>,
}

/// Index of lattice node `(r, k)`, `0 ≤ k ≤ r ≤ n`.
fn lattice_index(r: usize, k: usize) -> usize {
    r * (r + 1) / 2 + k
}

/// Lattice coordinates: row `r` has `λ = 1 − r/n`, node `k` on it has `ν = k/n`.
pub fn lattice_barycentric(n: usize, r: usize, k: usize) -> Barycentric {
    let nf = n as f64;
    let nu = k as f64 / nf;
    let lambda = (n - r) as f64 / nf;
    Barycentric {
        lambda,
        mu: (r - k) as f64 / nf,
        nu,
    }
}

/// Samples the surface at the `(n+1)(n+2)/2` lattice nodes and joins them
/// into `n²` triangles.
///
/// Faces keep the winding of the lattice: `(x₁, x₂, x₃)` order for upright
/// cells. No outward normal is implied.
pub fn sample_mesh(patch: &TrianglePatch, n: usize) -> Result<Mesh> {
    if n == 0 {
        return Err(Error::OutOfRange("subdivision count must be at least 1"));
    }
    let count = (n + 1) * (n + 2) / 2;
    let mut vertices = Vec::with_capacity(count);
    let mut params = Vec::with_capacity(count);
    for r in 0..=n {
        for k in 0..=r {
            let b = lattice_barycentric(n, r, k);
            // Corners are fixed points of the rotor; pin them exactly.
            let p = match (r, k) {
                (0, 0) => patch.euclidean[0],
                (r, 0) if r == n => patch.euclidean[1],
                (r, k) if r == n && k == n => patch.euclidean[2],
                _ => evaluate_surface(patch, &b)?.to_euclidean(),
            };
            vertices.push(p);
            params.push(b);
        }
    }
    let mut faces = Vec::with_capacity(n * n);
    for r in 0..n {
        for k in 0..=r {
            faces.push([lattice_index(r, k), lattice_index(r + 1, k), lattice_index(r + 1, k + 1)]);
            if k < r {
                faces.push([lattice_index(r, k), lattice_index(r + 1, k + 1), lattice_index(r, k + 1)]);
            }
        }
    }
    Ok(Mesh { vertices, params, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::center_of;

    fn e(x: f64, y: f64, z: f64) -> Euclidean3 {
        Euclidean3::new(x, y, z)
    }

    fn equilateral() -> [Euclidean3; 3] {
        let s = 3f64.sqrt() / 2.0;
        [e(1.0, 0.0, 0.0), e(-0.5, s, 0.0), e(-0.5, -s, 0.0)]
    }

    fn tilted_patch() -> TrianglePatch {
        let v = equilateral();
        make_patch(v, [e(0.2, 0.0, 0.5), e(-0.1, 0.15, 0.7), e(0.0, -0.1, 0.4)]).unwrap()
    }

    #[test]
    fn barycentric_validation() {
        assert!(Barycentric::new(0.2, 0.3, 0.5).is_ok());
        assert!(Barycentric::new(0.2, 0.3, 0.6).is_err());
        assert!(Barycentric::new(-0.1, 0.6, 0.5).is_err());
        assert!(Barycentric::new(f64::NAN, 0.5, 0.5).is_err());
        assert_eq!(Barycentric::from_lambda_mu(1.0, 0.0).unwrap(), Barycentric::corner(0));
    }

    #[test]
    fn centroid_point() {
        let patch = make_patch(
            [e(0.0, 0.0, 0.0), e(3.0, 0.0, 0.0), e(0.0, 3.0, 0.0)],
            [e(1.0, 1.0, 1.0); 3],
        )
        .unwrap();
        let c = barycentric_point(&patch, &Barycentric::centroid()).to_euclidean();
        assert!(c.distance(e(1.0, 1.0, 0.0)) < 1e-14);
        let x1 = barycentric_point(&patch, &Barycentric::corner(0)).to_euclidean();
        assert_eq!(x1, e(0.0, 0.0, 0.0));
    }

    #[test]
    fn symmetric_apexes_give_valid_spheres() {
        let v = equilateral();
        for h in [0.3, -0.3] {
            let patch = make_patch(v, [e(0.0, 0.0, h); 3]).unwrap();
            for (s, a) in patch.spheres().iter().zip(patch.apexes()) {
                for x in patch.vertices() {
                    assert!(incidence_residual(s.as_multivector(), x.vector()) < 1e-12);
                }
                assert!(incidence_residual(s.as_multivector(), a.vector()) < 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let v = equilateral();
        assert!(make_patch([e(0.0, 0.0, 0.0), e(1.0, 0.0, 0.0), e(2.0, 0.0, 0.0)], [e(0.0, 0.0, 1.0); 3]).is_err());
        // (−1, 0, 0) lies on the circumcircle.
        let err = make_patch(v, [e(0.0, 0.0, 0.5), e(-1.0, 0.0, 0.0), e(0.0, 0.0, 0.5)]).unwrap_err();
        assert_eq!(err, Error::DegenerateSphere);
    }

    #[test]
    fn in_plane_apex_yields_the_plane() {
        let patch = make_patch(equilateral(), [e(0.1, 0.1, 0.0), e(0.0, 0.0, 0.3), e(0.0, 0.0, 0.3)]).unwrap();
        assert!(is_flat(&patch.spheres()[0]).unwrap());
        assert!((*patch.spheres()[0].as_multivector() - *patch.plane().as_multivector()).max_abs() < 1e-12);
    }

    #[test]
    fn blend_corners_and_incidence() {
        let patch = tilted_patch();
        for i in 0..3 {
            let s = blend_spheres(&patch, &Barycentric::corner(i)).unwrap();
            assert_eq!(s.as_multivector(), patch.spheres()[i].as_multivector());
        }
        let b = Barycentric::new(0.2, 0.5, 0.3).unwrap();
        let s = blend_spheres(&patch, &b).unwrap();
        for x in patch.vertices() {
            assert!(incidence_residual(s.as_multivector(), x.vector()) < 1e-12);
        }
    }

    #[test]
    fn symmetric_blend_centre_on_axis() {
        let patch = make_patch(equilateral(), [e(0.3, 0.0, 0.6), e(-0.15, 0.26, 0.6), e(-0.15, -0.26, 0.6)]).unwrap();
        let s = blend_spheres(&patch, &Barycentric::centroid()).unwrap();
        let c = center_of(&s).unwrap().to_euclidean();
        assert!(c.x.abs() < 1e-2 && c.y.abs() < 1e-2, "{c}");
    }

    #[test]
    fn corners_are_fixed_and_samples_lie_on_spheres() {
        let patch = tilted_patch();
        for i in 0..3 {
            let x = evaluate_surface(&patch, &Barycentric::corner(i)).unwrap().to_euclidean();
            assert!(x.distance(patch.euclidean_vertices()[i]) < 1e-12);
        }
        for &(l, m) in &[(0.2, 0.3), (0.6, 0.1), (0.0, 0.5), (0.33, 0.33)] {
            let b = Barycentric::from_lambda_mu(l, m).unwrap();
            assert!(surface_incidence(&patch, &b).unwrap() < 1e-12);
            let x = evaluate_surface(&patch, &b).unwrap().to_euclidean();
            assert!(x.z > 0.0, "surface bulges towards the apexes: {x}");
        }
    }

    #[test]
    fn constant_blend_is_a_cap() {
        let v = equilateral();
        let patch = make_patch(v, [e(0.0, 0.0, 0.5); 3]).unwrap();
        // Sphere through the unit circle and (0, 0, 0.5): centre (0, 0, −0.75).
        let c = e(0.0, 0.0, -0.75);
        let mesh = sample_mesh(&patch, 6).unwrap();
        for p in &mesh.vertices {
            assert!((p.distance(c) - 1.25).abs() < 1e-12, "{p}");
        }
    }

    #[test]
    fn flat_patch_is_the_triangle() {
        let v = equilateral();
        let patch = make_patch(v, [e(0.0, 0.0, 0.0); 3]).unwrap();
        let mesh = sample_mesh(&patch, 4).unwrap();
        for (p, b) in mesh.vertices.iter().zip(&mesh.params) {
            let y = barycentric_point(&patch, b).to_euclidean();
            assert!(p.distance(y) < 1e-12);
        }
    }

    #[test]
    fn mesh_counts() {
        let patch = tilted_patch();
        for n in [1usize, 4, 16] {
            let m = sample_mesh(&patch, n).unwrap();
            assert_eq!(m.vertices.len(), (n + 1) * (n + 2) / 2);
            assert_eq!(m.faces.len(), n * n);
            assert!(m.faces.iter().flatten().all(|&i| i < m.vertices.len()));
        }
        let m = sample_mesh(&patch, 1).unwrap();
        assert_eq!(m.vertices, patch.euclidean_vertices().to_vec());
        assert_eq!(m.faces, vec![[0, 1, 2]]);
        assert!(sample_mesh(&patch, 0).is_err());
    }

    #[test]
    fn shared_edge_depends_only_on_its_spheres() {
        let v = equilateral();
        let a = make_patch(v, [e(0.0, 0.0, 0.4), e(0.1, 0.0, 0.6), e(0.0, 0.2, 0.3)]).unwrap();
        let b = make_patch(v, [e(0.0, 0.0, 0.4), e(0.1, 0.0, 0.6), e(-0.2, 0.0, 0.9)]).unwrap();
        for t in [0.1, 0.4, 0.75] {
            let bc = Barycentric::new(1.0 - t, t, 0.0).unwrap();
            let pa = evaluate_surface(&a, &bc).unwrap().to_euclidean();
            let pb = evaluate_surface(&b, &bc).unwrap().to_euclidean();
            assert!(pa.distance(pb) < 1e-14);
        }
    }
}
