//! Named host and pattern graphs used by tests, examples and the CLI.

use super::{subdivide, MultiGraph, SimpleGraph, SubdivisionSpec};

pub fn empty(n: usize) -> SimpleGraph {
    SimpleGraph::new(n)
}

pub fn complete(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.insert_edge(u, v);
        }
    }
    g
}

pub fn cycle(n: usize) -> SimpleGraph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut g = SimpleGraph::new(n);
    for v in 0..n {
        g.insert_edge(v, (v + 1) % n);
    }
    g
}

pub fn path_graph(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for v in 1..n {
        g.insert_edge(v - 1, v);
    }
    g
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(leaves + 1);
    for v in 1..=leaves {
        g.insert_edge(0, v);
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.insert_edge(u, v);
        }
    }
    g
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> SimpleGraph {
    let mut g = SimpleGraph::new(10);
    for i in 0..5 {
        g.insert_edge(i, (i + 1) % 5);
        g.insert_edge(5 + i, 5 + (i + 2) % 5);
        g.insert_edge(i, i + 5);
    }
    g
}

/// `theta_{len,count}`: branch vertices 0 and 1 joined by `count` internally
/// disjoint paths of length `len`.
pub fn theta(len: usize, count: usize) -> SimpleGraph {
    assert!(len >= 1 && count >= 1);
    if len == 1 {
        assert_eq!(count, 1, "theta with len 1 would need parallel edges");
    }
    let spec = SubdivisionSpec {
        pattern: MultiGraph::parallel(count).expect("valid"),
        s: len - 1,
    };
    subdivide(&spec).expect("valid theta")
}

/// Disjoint union; `b`'s vertices are shifted by `a.n()`.
pub fn disjoint_union(a: &SimpleGraph, b: &SimpleGraph) -> SimpleGraph {
    let mut g = SimpleGraph::new(a.n() + b.n());
    for (u, v) in a.edges() {
        g.insert_edge(u, v);
    }
    for (u, v) in b.edges() {
        g.insert_edge(u + a.n(), v + a.n());
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(cycle(7).edge_count(), 7);
        assert_eq!(petersen().edge_count(), 15);
        assert_eq!(complete_bipartite(3, 4).edge_count(), 12);
        let t = theta(2, 25);
        assert_eq!((t.n(), t.edge_count()), (27, 50));
        assert_eq!(disjoint_union(&complete(8), &empty(50)).n(), 58);
    }
}
