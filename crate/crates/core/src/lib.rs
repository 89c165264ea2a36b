//! Sharp, strictly sharp and blunt triples attached to dual pairs of affine
//! Weyl groups, computed from root data, lattice quotients and Hecke-algebra
//! generic degrees.

pub mod ablat;
pub mod corresp;
pub mod error;
pub mod fungroup;
pub mod jsonint;
pub mod rootdata;
pub mod sharpfin;
pub mod triples;

pub use error::{Error, Result};
