use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{SimpleGraph, Vertex};

/// Loopless multigraph; edges are kept merged and sorted as `(u, v, multiplicity)`
/// with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: &[(Vertex, Vertex, usize)]) -> Result<Self> {
        let mut merged: std::collections::BTreeMap<(Vertex, Vertex), usize> = Default::default();
        for &(u, v, m) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            if m == 0 {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} has multiplicity 0")));
            }
            *merged.entry((u.min(v), u.max(v))).or_default() += m;
        }
        Ok(MultiGraph {
            n,
            edges: merged.into_iter().map(|((u, v), m)| (u, v, m)).collect(),
        })
    }

    /// Two vertices joined by `count` parallel edges.
    pub fn parallel(count: usize) -> Result<Self> {
        MultiGraph::new(2, &[(0, 1, count)])
    }

    pub fn complete(t: usize) -> Self {
        let edges: Vec<_> = (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v, 1))).collect();
        MultiGraph::new(t, &edges).expect("complete graph is valid")
    }

    pub fn from_simple(g: &SimpleGraph) -> Self {
        MultiGraph {
            n: g.n(),
            edges: g.edges().map(|(u, v)| (u, v, 1)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex, usize)] {
        &self.edges
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.2 == 1)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).map(|e| e.2).sum()
    }

    /// Each edge copy as `(u, v)`, parallel copies adjacent, in edge order.
    pub fn edge_copies(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().flat_map(|&(u, v, m)| std::iter::repeat_n((u, v), m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_validates() {
        let f = MultiGraph::new(3, &[(1, 0, 1), (0, 1, 2), (2, 1, 1)]).unwrap();
        assert_eq!(f.edges(), &[(0, 1, 3), (1, 2, 1)]);
        assert_eq!(f.edge_count(), 4);
        assert_eq!(f.degree(1), 4);
        assert!(!f.is_simple());
        assert!(MultiGraph::new(2, &[(0, 0, 1)]).is_err());
        assert!(MultiGraph::new(2, &[(0, 1, 0)]).is_err());
        assert!(MultiGraph::new(2, &[(0, 2, 1)]).is_err());
    }
}
