//! Curvature on either side of each junction for blend profiles of order 1,
//! 2 and 3. Only orders 2 and above match.

use conformal_blend::circle_blend::{evaluate_segment, spline_segments, BlendProfile, Segment, SplineSpec};
use conformal_blend::conformal::Euclidean3;

fn curvature(a: Euclidean3, b: Euclidean3, c: Euclidean3) -> f64 {
    let (ab, ac, bc) = (b - a, c - a, c - b);
    2.0 * ab.cross(ac).norm() / (ab.norm() * ac.norm() * bc.norm())
}

fn side(seg: &Segment, prof: &BlendProfile, at_end: bool, h: f64) -> f64 {
    let at = |l: f64| evaluate_segment(seg, prof, l).unwrap().to_euclidean();
    let k = |s: f64| {
        if at_end {
            curvature(at(1.0), at(1.0 - s), at(1.0 - 2.0 * s))
        } else {
            curvature(at(0.0), at(s), at(2.0 * s))
        }
    };
    2.0 * k(h) - k(2.0 * h)
}

fn main() {
    let pts = [[0.0, 0.0, 0.0], [1.0, 0.8, 0.2], [2.1, 0.1, -0.3], [3.0, 0.9, 0.4], [4.2, 0.3, 0.0]]
        .map(Euclidean3::from)
        .to_vec();
    for prof in [BlendProfile::G1, BlendProfile::G2, BlendProfile::G3] {
        let segs = spline_segments(&SplineSpec::new(pts.clone()).profile(prof)).unwrap();
        print!("order {}:", prof.order());
        for w in segs.windows(2) {
            let (l, r) = (side(&w[0], &prof, true, 1e-4), side(&w[1], &prof, false, 1e-4));
            print!("  {l:.5}|{r:.5}");
        }
        println!();
    }
}
