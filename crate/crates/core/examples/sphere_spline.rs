//! A closed spline through points on the unit sphere stays on the sphere.

use conformal_blend::circle_blend::{build_spline, SplineSpec};
use conformal_blend::conformal::Euclidean3;

fn main() {
    let pts: Vec<Euclidean3> = [(0.3f64, 0.2f64), (1.4, 0.9), (2.6, -0.4), (3.9, 0.5), (5.1, -0.8)]
        .iter()
        .map(|&(lon, lat)| Euclidean3::new(lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin()))
        .collect();
    let samples = build_spline(&SplineSpec::new(pts).closed(true).samples(64)).unwrap();
    let worst = samples.iter().map(|s| (s.point.norm() - 1.0).abs()).fold(0.0, f64::max);
    println!("{} samples, worst distance from the unit sphere {worst:.2e}", samples.len());
}
