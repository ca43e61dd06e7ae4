//! Representation combinatorics of quantum GL3 at an l-th root of unity.
//!
//! Weights use the two-coordinate SL3 form `(a, b)`; a GL3 weight
//! `(x, y, z)` corresponds to `(x - y, y - z)`.

pub mod charring;
pub mod decomp;
pub mod error;
pub mod export;
pub mod ext;
pub mod homs;
pub mod lattice;
pub mod structure;
pub mod translate;
pub mod verify;

pub use charring::FormalChar;
pub use error::{Error, Result};
pub use lattice::{w, FacetType, PositiveRoot, Weight};
