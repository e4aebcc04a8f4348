//! Isotropic matroids, multimatroids and circle graphs in exact arithmetic.

pub mod error;
pub mod exactalg;
pub mod fourreg;
pub mod graph;
pub mod isotropic;
pub mod multimatroid;
pub mod recognize;
pub mod signedias;

pub use error::{Error, Result};
pub use exactalg::{ExactMatrix, FieldSpec};
pub use graph::LoopedGraph;
