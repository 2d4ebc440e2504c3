//! Products, duality and rotors in G(4,1).

use conformal_blend::ga::{exp_bivector, Multivector};

fn main() {
    let e = Multivector::basis;
    println!("e0² = {}  e1² = {}", (e(0) * e(0)).scalar_part(), (e(1) * e(1)).scalar_part());

    let i = Multivector::pseudoscalar();
    println!("I² = {}", (i * i).scalar_part());

    let a = e(1) + e(2) * 2.0;
    let b = e(2) - e(3);
    println!("a·b = {:?}", a | b);
    println!("a∧b = {:?}", a ^ b);
    println!("ab  = {:?}", a * b);

    // exp(−θ/2 e1e2) turns e1 towards e2 by θ.
    let theta = std::f64::consts::FRAC_PI_3;
    let r = exp_bivector(&((e(1) * e(2)) * (-theta / 2.0))).expect("bivector exponential");
    let turned = r.apply(&e(1));
    println!(
        "e1 turned by 60°: ({:.6}, {:.6}), expected ({:.6}, {:.6})",
        turned.vector_coeff(1),
        turned.vector_coeff(2),
        theta.cos(),
        theta.sin()
    );
}
