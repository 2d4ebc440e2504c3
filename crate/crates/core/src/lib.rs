//! Circle-blended space curves and sphere-blended triangular patches, built on
//! the conformal model of Euclidean 3-space inside G(4,1).
//!
//! Points are null vectors ([`conformal`]), circles and spheres are blades
//! ([`primitives`]), and curves and surfaces come from rotors that carry a
//! chord or a flat triangle onto blended round objects ([`circle_blend`],
//! [`sphere_blend`]). The `cblend` binary wraps these in [`cli`].

pub mod circle_blend;
pub mod cli;
pub mod conformal;
pub mod error;
pub mod ga;
pub mod primitives;
pub mod sphere_blend;
