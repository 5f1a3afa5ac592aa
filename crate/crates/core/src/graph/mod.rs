//! Graph representations and the enumeration primitives everything else
//! is built on.

mod construct;
mod io;
mod multigraph;
mod paths;
mod subdivision;
mod walks;

pub use construct::*;
pub use io::{parse_multigraph, parse_simple_graph, read_multigraph, read_simple_graph, write_edge_list};
pub use multigraph::MultiGraph;
pub use paths::{count_paths_capped, directed_paths_from, for_each_path, paths_between, paths_of_length, Path};
pub use subdivision::{subdivide, SubdivisionSpec};
pub use walks::{count_walks, walk_counts_from, walk_layers};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SimpleGraph {
    adj: Vec<Vec<Vertex>>,
    edges: usize,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Adds `uv`; loops, duplicates and out-of-range ids are errors.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge {u}-{v} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if !self.insert_edge(u, v) {
            return Err(Error::InvalidGraph(format!("parallel edge {u}-{v}")));
        }
        Ok(())
    }

    /// Inserts `uv` if absent. Returns whether the graph changed.
    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        debug_assert!(u != v);
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edges += 1;
                true
            }
        }
    }

    /// Removes `uv` if present. Returns whether the graph changed.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(pos);
                self.edges -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        self.edges().collect()
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = SimpleGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> SimpleGraph {
        assert_eq!(perm.len(), self.n(), "permutation length");
        let mut g = SimpleGraph::new(self.n());
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        degree_profile(self)
    }

    /// Vertices within `radius` steps of any source.
    pub fn ball(&self, sources: impl IntoIterator<Item = Vertex>, radius: usize) -> Vec<bool> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut frontier: Vec<Vertex> = Vec::new();
        for s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                frontier.push(s);
            }
        }
        let mut r = 0;
        while !frontier.is_empty() && r < radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = r + 1;
                        next.push(w);
                    }
                }
            }
            frontier = next;
            r += 1;
        }
        dist.into_iter().map(|d| d != usize::MAX).collect()
    }

    /// BFS distances from `source`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, source: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Minimum degree, maximum degree and their ratio `K = Delta / delta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub delta: usize,
    #[serde(rename = "Delta")]
    pub max_degree: usize,
    /// `None` encodes an infinite ratio (`delta == 0`).
    #[serde(rename = "K")]
    pub ratio: Option<f64>,
}

impl DegreeProfile {
    pub fn new(delta: usize, max_degree: usize) -> Self {
        let ratio = (delta > 0).then(|| max_degree as f64 / delta as f64);
        DegreeProfile {
            delta,
            max_degree,
            ratio,
        }
    }

    pub fn k(&self) -> f64 {
        self.ratio.unwrap_or(f64::INFINITY)
    }

    /// `K * delta`, which is the maximum degree itself.
    pub fn k_delta(&self) -> usize {
        self.max_degree
    }
}

pub fn degree_profile(g: &SimpleGraph) -> DegreeProfile {
    let delta = (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0);
    let max_degree = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    DegreeProfile::new(delta, max_degree)
}
