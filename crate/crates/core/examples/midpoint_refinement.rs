//! One pass of midpoint refinement removes an unwanted inflection from a
//! convex arch.

use conformal_blend::circle_blend::{build_spline, SplineSpec};
use conformal_blend::conformal::Euclidean3;

fn sign_changes(spec: &SplineSpec) -> usize {
    let pts: Vec<Euclidean3> = build_spline(spec).unwrap().into_iter().map(|s| s.point).collect();
    let mut signs = Vec::new();
    for w in pts.windows(3) {
        let (a, b) = (w[1] - w[0], w[2] - w[1]);
        if a.norm() == 0.0 || b.norm() == 0.0 {
            continue;
        }
        let k = 2.0 * a.cross(b).z / (a.norm() * b.norm() * (w[2] - w[0]).norm());
        if k.abs() > 1e-6 {
            signs.push(k.signum());
        }
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn main() {
    let arch = [[0.25, -1.5], [0.75, -0.5], [2.0, -0.25], [2.75, -0.5], [4.25, -1.5]]
        .map(|[x, y]| Euclidean3::new(x, y, 0.0))
        .to_vec();
    let spec = SplineSpec::new(arch).samples(400);
    for depth in 0..3 {
        let s = spec.clone().refine(depth);
        println!("refine depth {depth}: curvature sign changes {}", sign_changes(&s));
    }
}
