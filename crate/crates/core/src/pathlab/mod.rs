//! Admissible and good paths, bad pairs, and internally disjoint path packings.
//!
//! A path of length 1 is admissible and good. A longer path is admissible
//! when every proper contiguous subpath is good, and good when it is
//! admissible and its endpoint pair carries at most `f(len)` admissible paths
//! of its length. Every proper subpath lies inside one of the two subpaths
//! obtained by deleting an end vertex, so only those two are consulted.

mod family;
mod packing;
mod table;

pub use family::{FamilyKind, ThresholdFamily};
pub use packing::{max_disjoint_paths, packing_reaches, Packing, PackingMode, Reach, DEFAULT_NODE_BUDGET};
pub use table::{
    classify_paths, count_good_2k_within, BadPairSet, GoodnessTable, LayerSummary, PathFlags, DEFAULT_PATH_BUDGET,
};
