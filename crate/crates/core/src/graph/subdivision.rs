use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{MultiGraph, SimpleGraph};

/// A pattern multigraph `F` together with the subdivision parameter `s`:
/// every edge of `F` becomes a path of length `s + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionSpec {
    pub pattern: MultiGraph,
    pub s: usize,
}

impl SubdivisionSpec {
    pub fn new(pattern: MultiGraph, s: usize) -> Result<Self> {
        let spec = SubdivisionSpec { pattern, s };
        spec.validate()?;
        Ok(spec)
    }

    /// `H = F^{2k-1}`, the graph the long-path machinery works with.
    pub fn for_k(pattern: MultiGraph, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        SubdivisionSpec::new(pattern, 2 * k - 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 {
            if let Some(&(u, v, m)) = self.pattern.edges().iter().find(|e| e.2 > 1) {
                return Err(Error::ParallelEdgeAtZero { u, v, multiplicity: m });
            }
        }
        Ok(())
    }

    /// `t = |V(F)|`.
    pub fn branch_count(&self) -> usize {
        self.pattern.n()
    }

    /// `|V(F^s)| = |V(F)| + s |E(F)|`.
    pub fn vertex_count(&self) -> usize {
        self.pattern.n() + self.s * self.pattern.edge_count()
    }

    /// `|E(F^s)| = (s + 1) |E(F)|`.
    pub fn edge_count(&self) -> usize {
        (self.s + 1) * self.pattern.edge_count()
    }

    pub fn path_length(&self) -> usize {
        self.s + 1
    }
}

/// Builds `F^s`. Branch vertices keep ids `0..t`; the `s` internal vertices of
/// each edge copy are numbered consecutively in edge-copy order.
pub fn subdivide(spec: &SubdivisionSpec) -> Result<SimpleGraph> {
    spec.validate()?;
    let t = spec.pattern.n();
    let mut g = SimpleGraph::new(spec.vertex_count());
    let mut next = t;
    for (u, v) in spec.pattern.edge_copies() {
        let mut prev = u;
        for _ in 0..spec.s {
            g.insert_edge(prev, next);
            prev = next;
            next += 1;
        }
        g.insert_edge(prev, v);
    }
    debug_assert_eq!(g.edge_count(), spec.edge_count());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_one_subdivision_is_c6() {
        let g = subdivide(&SubdivisionSpec::new(MultiGraph::complete(3), 1).unwrap()).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 6));
        assert!((0..6).all(|v| g.degree(v) == 2));
        // 0-1 edge is subdivided by vertex 3
        assert!(g.has_edge(0, 3) && g.has_edge(3, 1));
    }

    #[test]
    fn double_edge_one_subdivision_is_c4() {
        let g = subdivide(&SubdivisionSpec::new(MultiGraph::parallel(2).unwrap(), 1).unwrap()).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        assert_eq!(g.edge_list(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn theta_counts() {
        let spec = SubdivisionSpec::new(MultiGraph::parallel(5).unwrap(), 2).unwrap();
        let g = subdivide(&spec).unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 15));
    }

    #[test]
    fn zero_subdivision_of_multigraph_rejected() {
        let err = SubdivisionSpec::new(MultiGraph::parallel(2).unwrap(), 0).unwrap_err();
        assert!(matches!(err, Error::ParallelEdgeAtZero { multiplicity: 2, .. }));
        let k3 = SubdivisionSpec::new(MultiGraph::complete(3), 0).unwrap();
        assert_eq!(subdivide(&k3).unwrap(), crate::graph::complete(3));
    }
}
