//! Geometry of a Kummer surface of product type through its 24-curve
//! configuration: lattice data, two elliptic fibrations, the torsor calculus
//! on an `I8` fiber, a Cremona involution preserving a quadric, and
//! non-abelian `H^1` counts.

pub mod config;
pub mod error;
pub mod fibration;
pub mod legendre;
pub mod mobius;
pub mod torsor;
pub mod mukai;
pub mod galois;
pub mod symmetry;
