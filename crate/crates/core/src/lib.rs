//! Certification toolkit for Zariski pairs and triplets of plane sextics.
//!
//! Lattice side: overlattices of `Z lambda + root lattice`, discriminant forms
//! and the two Urabe conditions. Curve side: exact intersection multiplicities,
//! Milnor numbers and ADE classification over quadratic fields.

pub mod exact;
pub mod lattice;
pub mod k3;
pub mod curve;
pub mod catalog;
