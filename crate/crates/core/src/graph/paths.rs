use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SimpleGraph, Vertex};

/// A simple path `v_0 .. v_l`, stored in canonical orientation `v_0 <= v_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Vertex>);

impl Path {
    /// Orients `vertices` canonically. Panics on an empty sequence.
    pub fn canonical(mut vertices: Vec<Vertex>) -> Path {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        if vertices[0] > vertices[vertices.len() - 1] {
            vertices.reverse();
        }
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> Vertex {
        self.0[0]
    }

    pub fn end(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.start(), self.end())
    }

    pub fn internal(&self) -> &[Vertex] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    /// Canonical `v_i .. v_j`.
    pub fn subpath(&self, i: usize, j: usize) -> Path {
        Path::canonical(self.0[i..=j].to_vec())
    }

    /// Consecutive vertices adjacent and all vertices distinct.
    pub fn is_path_in(&self, g: &SimpleGraph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.0.iter().all(|&v| v < g.n() && seen.insert(v)) && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

struct Dfs<'a> {
    g: &'a SimpleGraph,
    on_path: Vec<bool>,
    stack: Vec<Vertex>,
}

impl<'a> Dfs<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        Dfs {
            g,
            on_path: vec![false; g.n()],
            stack: Vec::new(),
        }
    }

    /// Extends the current stack by `remaining` edges, calling `emit` on every
    /// complete simple path. `dist` (when given) is the distance to `target`.
    fn extend(&mut self, remaining: usize, target: Option<(Vertex, &[usize])>, emit: &mut dyn FnMut(&[Vertex])) {
        let last = *self.stack.last().expect("nonempty stack");
        if remaining == 0 {
            if target.is_none_or(|(t, _)| t == last) {
                emit(&self.stack);
            }
            return;
        }
        for &w in self.g.neighbors(last) {
            if self.on_path[w] {
                continue;
            }
            if let Some((t, dist)) = target {
                // the target may only appear as the final vertex
                if (w == t && remaining != 1) || dist[w] > remaining - 1 {
                    continue;
                }
            }
            self.on_path[w] = true;
            self.stack.push(w);
            self.extend(remaining - 1, target, emit);
            self.stack.pop();
            self.on_path[w] = false;
        }
    }

    fn run_from(
        &mut self,
        start: Vertex,
        len: usize,
        target: Option<(Vertex, &[usize])>,
        emit: &mut dyn FnMut(&[Vertex]),
    ) {
        self.on_path[start] = true;
        self.stack.push(start);
        self.extend(len, target, emit);
        self.stack.pop();
        self.on_path[start] = false;
    }
}

/// All simple paths with exactly `len` edges between `u` and `v`, each once,
/// canonically oriented and in lexicographic order.
pub fn paths_between(g: &SimpleGraph, u: Vertex, v: Vertex, len: usize) -> Vec<Path> {
    if len == 0 {
        return if u == v { vec![Path(vec![u])] } else { Vec::new() };
    }
    if u == v {
        return Vec::new();
    }
    let (a, b) = (u.min(v), u.max(v));
    let dist = g.distances_from(b);
    if dist[a] > len {
        return Vec::new();
    }
    let mut out = Vec::new();
    Dfs::new(g).run_from(a, len, Some((b, &dist)), &mut |p| out.push(Path(p.to_vec())));
    out
}

/// Calls `f` on every simple path of `len >= 1` edges once, in canonical
/// orientation, in lexicographic order.
pub fn for_each_path(g: &SimpleGraph, len: usize, mut f: impl FnMut(&[Vertex])) {
    assert!(len >= 1);
    let mut dfs = Dfs::new(g);
    for start in 0..g.n() {
        dfs.run_from(start, len, None, &mut |p| {
            if p[p.len() - 1] > p[0] {
                f(p)
            }
        });
    }
}

/// Counts canonical paths of `len >= 1` edges, giving up once `cap` is passed.
/// Returns `None` when the count exceeds `cap`.
pub fn count_paths_capped(g: &SimpleGraph, len: usize, cap: u64) -> Option<u64> {
    assert!(len >= 1);
    // directed paths from each start, halved; the DFS is cut short per start
    let mut total = 0u64;
    for start in 0..g.n() {
        let mut dfs = Dfs::new(g);
        let mut local = 0u64;
        dfs.run_from(start, len, None, &mut |p| {
            if p[p.len() - 1] > start {
                local += 1;
            }
        });
        total += local;
        if total > cap {
            return None;
        }
    }
    Some(total)
}

/// All simple paths of `len >= 1` edges, canonical and lexicographically
/// sorted. Start vertices are processed in parallel and merged in order.
pub fn paths_of_length(g: &SimpleGraph, len: usize) -> Vec<Path> {
    assert!(len >= 1);
    (0..g.n())
        .into_par_iter()
        .map(|start| {
            let mut out = Vec::new();
            Dfs::new(g).run_from(start, len, None, &mut |p| {
                if p[p.len() - 1] > start {
                    out.push(Path(p.to_vec()));
                }
            });
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Directed simple paths of `len` edges starting at `x`; `len == 0` gives `[x]`.
pub fn directed_paths_from(g: &SimpleGraph, x: Vertex, len: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    Dfs::new(g).run_from(x, len, None, &mut |p| out.push(p.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path_graph};

    #[test]
    fn cycle_antipodal_pair() {
        let ps = paths_between(&cycle(6), 0, 3, 3);
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].vertices(), &[0, 1, 2, 3]);
        assert_eq!(ps[1].vertices(), &[0, 5, 4, 3]);
    }

    #[test]
    fn complete_graph_counts() {
        let k4 = complete(4);
        assert_eq!(paths_between(&k4, 0, 1, 2).len(), 2);
        assert_eq!(paths_between(&k4, 2, 3, 3).len(), 2);
        // orientation is canonical regardless of argument order
        assert_eq!(paths_between(&k4, 3, 1, 2), paths_between(&k4, 1, 3, 2));
    }

    #[test]
    fn degenerate_lengths() {
        let g = path_graph(3);
        assert_eq!(paths_between(&g, 1, 1, 0).len(), 1);
        assert!(paths_between(&g, 1, 1, 2).is_empty());
        assert_eq!(paths_between(&g, 0, 1, 1).len(), 1);
        assert!(paths_between(&g, 0, 2, 1).is_empty());
    }

    #[test]
    fn all_paths_match_pairwise_enumeration() {
        let g = complete(5);
        for len in 1..=4 {
            let all = paths_of_length(&g, len);
            let mut pairwise = Vec::new();
            for u in 0..5 {
                for v in u + 1..5 {
                    pairwise.extend(paths_between(&g, u, v, len));
                }
            }
            pairwise.sort();
            assert_eq!(all, pairwise);
            let mut streamed = Vec::new();
            for_each_path(&g, len, |p| streamed.push(Path(p.to_vec())));
            assert_eq!(streamed, all);
        }
    }

    #[test]
    fn directed_paths() {
        assert_eq!(directed_paths_from(&cycle(4), 0, 0), vec![vec![0]]);
        assert_eq!(directed_paths_from(&cycle(4), 0, 1).len(), 2);
        assert_eq!(directed_paths_from(&complete(4), 2, 2).len(), 6);
    }

    #[test]
    fn path_accessors() {
        let p = Path::canonical(vec![4, 1, 2]);
        assert_eq!(p.vertices(), &[2, 1, 4]);
        assert_eq!(p.len(), 2);
        assert_eq!(p.internal(), &[1]);
        assert_eq!(p.subpath(1, 2).vertices(), &[1, 4]);
        assert!(p.is_path_in(&complete(5)));
        assert!(!Path::canonical(vec![0, 1, 0]).is_path_in(&complete(5)));
    }
}
