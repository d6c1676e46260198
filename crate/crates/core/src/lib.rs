//! Moduli of holomorphic isometric embeddings of the projective line into
//! complex quadrics, computed with exact SU(2) representation theory.

pub mod decompose;
pub mod error;
pub mod exact;
pub mod geo_maps;
pub mod moduli;
pub mod op_spaces;
pub mod rep;

pub use error::{Error, Result};
