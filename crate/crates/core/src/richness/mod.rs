//! Rich and poor vertex pairs, distant pairs, and the auxiliary graphs on
//! walks that are built from richness.
//!
//! A pair `(x, y)` is `(i, j)`-rich when more than
//! `(2(i+j)|V(H)|(2k+1) + 2(i+1)j) (K delta)^(i+j-1)` pairs of directed paths
//! `(P, Q)` of lengths `i` and `j` from `x` and `y` end at vertices joined by
//! at least `(|V(H)| + 2)(2k + 1) + 1` internally disjoint paths of length
//! `2k - i - j`. Here `H = F^(2k-1)` and `K delta` is the maximum degree.

mod aux;
mod clique;
mod distant;
mod ramsey;
mod rich;

pub use aux::{aux_graph, AuxGraph, AuxLevel, DEFAULT_TUPLE_BUDGET};
pub use clique::{clique_free_up_to, CliqueCheck};
pub use distant::{distant_from, is_distant, DistantReport};
pub use ramsey::{ramsey_bound, RamseyBound, RamseyProvenance};
pub use rich::{disjointness_demand, is_rich, richness_threshold, RichnessOracle, RichnessReport};
