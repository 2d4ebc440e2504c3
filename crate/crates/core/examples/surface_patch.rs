//! A sphere-blended triangular patch written as an OBJ mesh.
//!
//! `cargo run --example surface_patch > patch.obj`

use conformal_blend::cli::mesh_obj;
use conformal_blend::conformal::Euclidean3;
use conformal_blend::sphere_blend::{make_patch, sample_mesh};

fn main() {
    let s = 3f64.sqrt() / 2.0;
    let vertices = [[1.0, 0.0, 0.0], [-0.5, s, 0.0], [-0.5, -s, 0.0]].map(Euclidean3::from);
    let apexes = [[0.2, 0.0, 0.5], [-0.1, 0.15, 0.7], [0.0, -0.1, 0.4]].map(Euclidean3::from);
    let patch = make_patch(vertices, apexes).expect("apexes are off the circumcircle");
    let mesh = sample_mesh(&patch, 8).unwrap();
    print!("{}", mesh_obj(&mesh));
}
