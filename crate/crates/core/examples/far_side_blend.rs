//! Two circles more than 180° apart: the orientation test picks the blend
//! that stays near the chord instead of sweeping through infinity.

use conformal_blend::circle_blend::{evaluate_segment, BlendProfile, MidSign, Segment};
use conformal_blend::conformal::{embed_point, Euclidean3};
use conformal_blend::primitives::circle_through;

fn length(seg: &Segment) -> f64 {
    let mut prev = seg.start().to_euclidean();
    let mut len = 0.0;
    for k in 1..=1000 {
        match evaluate_segment(seg, &BlendProfile::G2, k as f64 / 1000.0) {
            Ok(x) => {
                len += x.to_euclidean().distance(prev);
                prev = x.to_euclidean();
            }
            Err(_) => return f64::INFINITY,
        }
    }
    len
}

fn main() {
    let p = |x: f64, y: f64| embed_point(Euclidean3::new(x, y, 0.0));
    // Circles through (±1, 0) centred at (0, ±0.8), entered from opposite sides.
    let h: f64 = 0.8;
    let r = (1.0 + h * h).sqrt();
    let (x0, x1, x2, x3) = (p(0.0, h - r), p(-1.0, 0.0), p(1.0, 0.0), p(0.0, r - h));
    let c1 = circle_through(&x0, &x1, &x2).unwrap();
    let c2 = circle_through(&x1, &x2, &x3).unwrap();

    let chosen = Segment::new(x1, x2, &c1, &c2).unwrap();
    println!("chosen blend angle θ = {:.6} (reflex: {})", chosen.theta(), chosen.is_reflex());
    for sign in [MidSign::Plus, MidSign::Minus] {
        let seg = Segment::with_mid_sign(x1, x2, &c1, &c2, sign).unwrap();
        println!("{sign:?}: θ = {:.6}, sampled length {:.6}", seg.theta(), length(&seg));
    }
}
