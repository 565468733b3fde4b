//! Combinatorics of nilpotent orbits and unipotent infinitesimal characters
//! for classical Lie algebras, finite-dimensional Peirce decompositions, and
//! lattice checks for unipotent/degenerate decomposition tables.

pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod orbits;
pub mod parabolic;
pub mod peirce;
pub mod partitions;
pub mod rational;
pub mod weights;

pub use error::{Error, Result};
