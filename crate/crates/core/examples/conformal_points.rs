//! Points as null vectors: embedding, distances and translations.

use conformal_blend::conformal::{embed_point, extract_point, point_distance, translator, Euclidean3};

fn main() {
    let x = Euclidean3::new(1.0, 2.0, 2.0);
    let y = Euclidean3::new(-1.0, 0.5, 4.0);
    let (cx, cy) = (embed_point(x), embed_point(y));
    println!("X = {:?}", cx.vector());
    println!("X·X = {:.3e}", cx.dot(&cx));
    println!("|x − y| from X·Y: {:.12}  direct: {:.12}", point_distance(&cx, &cy), x.distance(y));

    // Homogeneous: any positive multiple is the same point.
    let scaled = *cx.vector() * 7.5;
    println!("extract(7.5 X) = {}", extract_point(&scaled).unwrap());

    let t = translator(Euclidean3::new(0.0, 0.0, -2.0));
    println!("x moved down by 2: {}", extract_point(&t.apply(cx.vector())).unwrap());
}
