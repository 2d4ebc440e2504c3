//! Circles, lines, spheres and planes as blades, with their radii, centres
//! and intersections.

use conformal_blend::conformal::{embed_point, Euclidean3};
use conformal_blend::primitives::{
    angle_between, center_of, circle_radius, circle_through, is_flat, meet_spheres, sphere_radius, sphere_through,
    split_point_pair, PairPoint, PointPair,
};

fn p(x: f64, y: f64, z: f64) -> conformal_blend::conformal::ConformalPoint {
    embed_point(Euclidean3::new(x, y, z))
}

fn main() {
    let c = circle_through(&p(2.0, 0.0, 1.0), &p(0.0, 2.0, 1.0), &p(-2.0, 0.0, 1.0)).unwrap();
    println!("circle: radius {:.9}, centre {}", circle_radius(&c).unwrap(), center_of(&c).unwrap().to_euclidean());

    let line = circle_through(&p(0.0, 0.0, 0.0), &p(1.0, 1.0, 0.0), &p(3.0, 3.0, 0.0)).unwrap();
    println!("three collinear points give a flat circle: {}", is_flat(&line).unwrap());

    let s1 = sphere_through(&p(0.5, 0.0, 1.0), &p(0.5, 0.0, -1.0), &p(1.5, 0.0, 0.0), &p(0.5, 1.0, 0.0)).unwrap();
    let s2 = sphere_through(&p(-0.5, 0.0, 1.0), &p(-0.5, 0.0, -1.0), &p(-1.5, 0.0, 0.0), &p(-0.5, 1.0, 0.0)).unwrap();
    println!("unit spheres at x = ±0.5: radii {:.9} {:.9}", sphere_radius(&s1).unwrap(), sphere_radius(&s2).unwrap());
    let meet = meet_spheres(&s1, &s2);
    println!(
        "their meet: radius {:.9} (√3/2 = {:.9}), centre {}",
        circle_radius(&meet).unwrap(),
        3f64.sqrt() / 2.0,
        center_of(&meet).unwrap().to_euclidean()
    );

    let a = circle_through(&p(1.0, 0.0, 0.0), &p(0.0, 1.0, 0.0), &p(-1.0, 0.0, 0.0)).unwrap();
    let b = circle_through(&p(1.0, 0.0, 0.0), &p(0.0, 0.0, 1.0), &p(-1.0, 0.0, 0.0)).unwrap();
    println!("angle between orthogonal great circles: {:.9}", angle_between(&a, &b).unwrap());

    let pair = PointPair::from_multivector(*p(1.0, 2.0, 3.0).vector() ^ *p(-1.0, 0.0, 2.0).vector()).unwrap();
    let (first, second) = split_point_pair(&pair).unwrap();
    for (label, q) in [("first", first), ("second", second)] {
        if let PairPoint::Finite(q) = q {
            println!("split {label}: {}", q.to_euclidean());
        }
    }
}
