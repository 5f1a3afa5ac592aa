//! Extremal numbers `ex(n, F^s)` at small scale.

mod canon;
mod exact;
mod search;

pub use canon::{canonical_code, decode, encode, Code, MAX_CANON_N};
pub use exact::{ex_exact, is_h_free, DEFAULT_EXACT_CAP};
pub use search::{ex_lower_search, SearchOptions};

use serde::Serialize;

use crate::graph::{SimpleGraph, SubdivisionSpec, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    Search,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub spec: SubdivisionSpec,
    /// Exact for [`Method::Exhaustive`], a certified lower bound otherwise.
    pub value: usize,
    pub method: Method,
    pub witness: Vec<(Vertex, Vertex)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    /// Non-isomorphic `H`-free graphs per edge count (exhaustive only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub level_sizes: Vec<usize>,
}

impl ExtremalResult {
    pub fn witness_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for &(u, v) in &self.witness {
            g.insert_edge(u, v);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{MultiGraph, SubdivisionSpec};

    fn c4() -> SubdivisionSpec {
        SubdivisionSpec::new(MultiGraph::parallel(2).unwrap(), 1).unwrap()
    }

    fn c6() -> SubdivisionSpec {
        SubdivisionSpec::new(MultiGraph::complete(3), 1).unwrap()
    }

    #[test]
    fn small_square_free_values() {
        let values: Vec<usize> = (3..=6)
            .map(|n| ex_exact(n, &c4(), DEFAULT_EXACT_CAP).unwrap().value)
            .collect();
        assert_eq!(values, vec![3, 4, 6, 7]);
        assert_eq!(ex_exact(7, &c4(), DEFAULT_EXACT_CAP).unwrap().value, 9);
        assert_eq!(ex_exact(8, &c4(), DEFAULT_EXACT_CAP).unwrap().value, 11);
    }

    #[test]
    fn exact_witness_and_monotonicity() {
        let mut prev = 0;
        for n in 1..=7 {
            let r = ex_exact(n, &c6(), DEFAULT_EXACT_CAP).unwrap();
            let w = r.witness_graph();
            assert_eq!(w.edge_count(), r.value);
            assert!(is_h_free(&w, &c6()).unwrap());
            assert!(r.value >= prev);
            prev = r.value;
        }
        assert!(matches!(ex_exact(9, &c4(), 8), Err(crate::Error::CapExceeded { .. })));
    }

    #[test]
    fn search_is_dominated_by_exact() {
        for n in 4..=6 {
            let exact = ex_exact(n, &c4(), DEFAULT_EXACT_CAP).unwrap().value;
            let opts = SearchOptions {
                budget: 3_000,
                seed: n as u64,
                ..Default::default()
            };
            let found = ex_lower_search(n, &c4(), &opts).unwrap();
            assert!(found.value <= exact);
            assert_eq!(found.value, exact);
            assert!(is_h_free(&found.witness_graph(), &c4()).unwrap());
        }
    }

    #[test]
    fn search_on_ten_vertices() {
        let opts = SearchOptions {
            budget: 4_000,
            seed: 11,
            ..Default::default()
        };
        let r = ex_lower_search(10, &c4(), &opts).unwrap();
        assert!(r.value >= 13, "got {}", r.value);
        let again = ex_lower_search(10, &c4(), &opts).unwrap();
        assert_eq!(r.witness, again.witness);
    }
}
