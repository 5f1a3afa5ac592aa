//! Subdivisions of multigraphs in host graphs.
//!
//! The crate covers construction of `k`-subdivisions, an exact embedding
//! oracle plus a staged embedding engine built around distant vertices and
//! good paths, the admissible/good path classification with its threshold
//! families, rich/poor vertex pairs and their auxiliary graphs, small exact
//! extremal numbers, and an audit harness that measures the counting bounds
//! these notions satisfy on concrete host graphs.

pub mod embedder;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod harness;
pub mod numeric;
pub mod pathlab;
pub mod regularize;
pub mod richness;

pub use error::{Error, Result};
pub use graph::{DegreeProfile, MultiGraph, Path, SimpleGraph, SubdivisionSpec, Vertex};

/// Library version echoed into report sidecars.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
