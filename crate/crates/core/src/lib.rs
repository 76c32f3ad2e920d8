//! Exact cohomological integrality for symmetric representations of
//! reductive groups.

pub mod bps;
pub mod coh;
pub mod error;
pub mod group_rep;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod poset;
pub mod sign;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{Cocharacter, RationalSubspace, Weight};
