//! An open spline through planar control points, printed as CSV.

use conformal_blend::circle_blend::{build_spline, BlendProfile, SplineSpec};
use conformal_blend::conformal::Euclidean3;

fn main() {
    let pts = [[0.0, 0.0], [1.0, 1.2], [2.5, 0.8], [3.2, -0.5], [4.8, 0.3], [6.0, 1.5]]
        .map(|[x, y]| Euclidean3::new(x, y, 0.0))
        .to_vec();
    let spec = SplineSpec::new(pts).profile(BlendProfile::G2).samples(8);
    let samples = build_spline(&spec).expect("generic planar points blend");
    println!("segment,lambda,x,y");
    for s in samples {
        println!("{},{:.4},{:.9},{:.9}", s.segment, s.lambda, s.point.x, s.point.y);
    }
}
