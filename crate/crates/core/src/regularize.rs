//! Extraction of a dense almost-regular induced subgraph.
//!
//! Vertices whose degree falls below `(2/5) * e(G*) * (1 + eps) / |G*|` are
//! deleted round by round; the densest snapshot (by `e / m^(1+eps)`) is kept.
//! The result records truthfully whether it meets the size, density and
//! regularity targets rather than promising them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DegreeProfile, SimpleGraph, Vertex};

/// Relative slack for comparisons of real-valued thresholds.
pub const REAL_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Snapshot {
    pub round: usize,
    pub vertices: usize,
    pub edges: usize,
    pub density: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegularizationResult {
    #[serde(skip)]
    pub subgraph: SimpleGraph,
    /// Original ids of the subgraph's vertices, in subgraph order.
    pub vertices: Vec<Vertex>,
    pub profile: DegreeProfile,
    pub m: usize,
    pub edges: usize,
    /// `log(e) / log(m) - 1`, when `m >= 2` and `e >= 1`.
    pub achieved_density_exponent: Option<f64>,
    /// `log2` of the regularity target `20 * 2^(1/eps^2 + 1)`.
    pub target_k_log2: f64,
    /// The target itself when it fits comfortably in an `f64`.
    pub target_k: Option<f64>,
    pub edges_target: f64,
    pub size_target: f64,
    pub meets_edges: bool,
    pub meets_regularity: bool,
    pub meets_size: bool,
    pub empty: bool,
    pub snapshots: Vec<Snapshot>,
}

fn density(edges: usize, m: usize, eps: f64) -> f64 {
    if m == 0 {
        0.0
    } else {
        edges as f64 / (m as f64).powf(1.0 + eps)
    }
}

/// `log2(20 * 2^(1/eps^2 + 1))`.
pub fn regularity_target_log2(eps: f64) -> f64 {
    20f64.log2() + 1.0 / (eps * eps) + 1.0
}

pub fn extract_almost_regular(g: &SimpleGraph, eps: f64, c: f64) -> Result<RegularizationResult> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {eps} not in (0, 1)")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c {c} must be positive")));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::Precondition("empty host graph".into()));
    }
    let required = c * (n as f64).powf(1.0 + eps);
    if (g.edge_count() as f64) < required {
        return Err(Error::Precondition(format!(
            "e(G) = {} < c n^(1+eps) = {required:.3}",
            g.edge_count()
        )));
    }

    let mut alive: Vec<Vertex> = (0..n).collect();
    let mut current = g.clone();
    let mut snapshots = vec![Snapshot {
        round: 0,
        vertices: n,
        edges: current.edge_count(),
        density: density(current.edge_count(), n, eps),
    }];
    let mut best = (0usize, alive.clone(), current.clone());
    let mut round = 0;
    while !alive.is_empty() {
        let m = alive.len() as f64;
        let threshold = 0.4 * current.edge_count() as f64 * (1.0 + eps) / m;
        let keep: Vec<usize> = (0..alive.len())
            .filter(|&i| current.degree(i) as f64 >= threshold)
            .collect();
        if keep.len() == alive.len() {
            break;
        }
        round += 1;
        current = current.induced_subgraph(&keep);
        alive = keep.iter().map(|&i| alive[i]).collect();
        let snap = Snapshot {
            round,
            vertices: alive.len(),
            edges: current.edge_count(),
            density: density(current.edge_count(), alive.len(), eps),
        };
        if snap.density > snapshots[best.0].density {
            best = (snapshots.len(), alive.clone(), current.clone());
        }
        snapshots.push(snap);
    }

    let (_, vertices, subgraph) = best;
    let m = vertices.len();
    let edges = subgraph.edge_count();
    let profile = subgraph.degree_profile();
    let target_k_log2 = regularity_target_log2(eps);
    let meets_regularity =
        profile.delta > 0 && (profile.max_degree as f64 / profile.delta as f64).log2() <= target_k_log2 + REAL_MARGIN;
    let edges_target = 0.4 * c * (m as f64).powf(1.0 + eps);
    let size_target = (n as f64).powf((eps - eps * eps) / (2.0 + 2.0 * eps));
    let achieved_density_exponent = (m >= 2 && edges >= 1).then(|| (edges as f64).ln() / (m as f64).ln() - 1.0);
    Ok(RegularizationResult {
        subgraph,
        m,
        edges,
        profile,
        achieved_density_exponent,
        target_k_log2,
        target_k: (target_k_log2 <= 64.0).then(|| target_k_log2.exp2()),
        edges_target,
        size_target,
        meets_edges: edges as f64 >= edges_target * (1.0 - REAL_MARGIN),
        meets_regularity,
        meets_size: m as f64 >= size_target * (1.0 - REAL_MARGIN),
        empty: m == 0,
        vertices,
        snapshots,
    })
}

/// `Delta <= K * delta` with `delta > 0`.
pub fn verify_almost_regular(g: &SimpleGraph, k: f64) -> bool {
    let p = g.degree_profile();
    p.delta > 0 && p.max_degree as f64 <= k * p.delta as f64 * (1.0 + REAL_MARGIN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, disjoint_union, empty, petersen, star};

    #[test]
    fn verify_examples() {
        assert!(verify_almost_regular(&cycle(4), 1.0));
        assert!(!verify_almost_regular(&star(3), 2.0));
        assert!(verify_almost_regular(&star(3), 3.0));
        assert!(verify_almost_regular(&petersen(), 1.0));
        assert!(!verify_almost_regular(&empty(3), 10.0));
    }

    #[test]
    fn complete_graph_is_kept_whole() {
        let r = extract_almost_regular(&complete(20), 0.5, 1.0).unwrap();
        assert_eq!(r.m, 20);
        assert_eq!(r.edges, 190);
        assert!(r.meets_regularity && r.meets_edges && r.meets_size);
        assert!(verify_almost_regular(&r.subgraph, r.profile.k()));
    }

    #[test]
    fn clique_plus_isolated_vertices() {
        let g = disjoint_union(&complete(8), &empty(50));
        // 28 edges < 58^1.2 ~ 130
        assert!(matches!(
            extract_almost_regular(&g, 0.2, 1.0),
            Err(Error::Precondition(_))
        ));
        // with c = 0.2 the threshold is ~26 and the isolated vertices are trimmed in one round
        let r = extract_almost_regular(&g, 0.2, 0.2).unwrap();
        assert_eq!(r.vertices, (0..8).collect::<Vec<_>>());
        assert_eq!(r.snapshots.len(), 2);
        assert!(r.meets_regularity);
        assert_eq!(r.subgraph, complete(8));
    }

    #[test]
    fn rounds_strictly_shrink() {
        // a star attached to a clique: the leaves go first
        let mut g = disjoint_union(&complete(10), &star(30));
        g.insert_edge(0, 10);
        let r = extract_almost_regular(&g, 0.3, 0.5).unwrap();
        for w in r.snapshots.windows(2) {
            assert!(w[1].vertices < w[0].vertices);
        }
        assert!(r.snapshots.len() <= g.n() + 1);
        assert_eq!(r.subgraph, g.induced_subgraph(&r.vertices));
        assert_eq!(r.profile, r.subgraph.degree_profile());
    }

    #[test]
    fn tiny_epsilon_target_reported_in_log_space() {
        let r = extract_almost_regular(&complete(6), 0.05, 1.0).unwrap();
        assert!(r.target_k.is_none());
        assert!(r.target_k_log2 > 400.0);
        assert!(r.meets_regularity);
    }

    #[test]
    fn parameter_validation() {
        assert!(extract_almost_regular(&complete(5), 0.0, 1.0).is_err());
        assert!(extract_almost_regular(&complete(5), 1.0, 1.0).is_err());
        assert!(extract_almost_regular(&complete(5), 0.5, -1.0).is_err());
    }
}
