use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueCheck {
    /// No `K_t` is present.
    pub free: bool,
    pub witness: Option<Vec<Vertex>>,
}

fn extend(
    nbrs: &[FixedBitSet],
    order: &[Vertex],
    clique: &mut Vec<Vertex>,
    candidates: &FixedBitSet,
    t: usize,
) -> bool {
    if clique.len() == t {
        return true;
    }
    if clique.len() + candidates.count_ones(..) < t {
        return false;
    }
    let mut remaining = candidates.clone();
    for &v in order {
        if !remaining.contains(v) {
            continue;
        }
        if clique.len() + remaining.count_ones(..) < t {
            return false;
        }
        remaining.set(v, false);
        let mut next = remaining.clone();
        next.intersect_with(&nbrs[v]);
        clique.push(v);
        if extend(nbrs, order, clique, &next, t) {
            return true;
        }
        clique.pop();
    }
    false
}

/// Exact `K_t` search; returns a witness clique when one exists.
pub fn clique_free_up_to(g: &SimpleGraph, t: usize) -> Result<CliqueCheck> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("clique size {t} must be at least 2")));
    }
    let n = g.n();
    let nbrs: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(n);
            for &w in g.neighbors(v) {
                b.insert(w);
            }
            b
        })
        .collect();
    // a vertex in a K_t has degree >= t - 1
    let mut candidates = FixedBitSet::with_capacity(n);
    for v in (0..n).filter(|&v| g.degree(v) + 1 >= t) {
        candidates.insert(v);
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut clique = Vec::new();
    if extend(&nbrs, &order, &mut clique, &candidates, t) {
        clique.sort_unstable();
        Ok(CliqueCheck {
            free: false,
            witness: Some(clique),
        })
    } else {
        Ok(CliqueCheck {
            free: true,
            witness: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, empty, petersen};

    #[test]
    fn examples() {
        assert!(clique_free_up_to(&empty(6), 2).unwrap().free);
        let c = clique_free_up_to(&complete(5), 5).unwrap();
        assert_eq!(c.witness, Some(vec![0, 1, 2, 3, 4]));
        assert!(clique_free_up_to(&complete(5), 6).unwrap().free);
        assert!(clique_free_up_to(&petersen(), 3).unwrap().free);
        assert!(clique_free_up_to(&complete_bipartite(4, 4), 3).unwrap().free);
        assert!(!clique_free_up_to(&cycle(3), 3).unwrap().free);
        assert!(clique_free_up_to(&cycle(5), 1).is_err());
    }

    #[test]
    fn witness_is_a_clique() {
        let mut g = petersen();
        g.insert_edge(0, 2);
        g.insert_edge(0, 3);
        g.insert_edge(2, 4);
        let c = clique_free_up_to(&g, 4).unwrap();
        let w = c.witness.expect("0,2,3,4? or another K4");
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                assert!(g.has_edge(w[a], w[b]));
            }
        }
    }
}
