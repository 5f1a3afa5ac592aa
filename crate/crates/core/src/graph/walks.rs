use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{SimpleGraph, Vertex};

/// `layers[i][w]` = number of walks of length `i` from `u` to `w`, for `i <= max_len`.
pub fn walk_counts_from(g: &SimpleGraph, u: Vertex, max_len: usize) -> Vec<Vec<BigUint>> {
    let mut current = vec![BigUint::zero(); g.n()];
    current[u] = BigUint::one();
    let mut layers = Vec::with_capacity(max_len + 1);
    for _ in 0..max_len {
        let mut next = vec![BigUint::zero(); g.n()];
        for (w, count) in current.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &x in g.neighbors(w) {
                next[x] += count;
            }
        }
        layers.push(std::mem::replace(&mut current, next));
    }
    layers.push(current);
    layers
}

/// Number of walks of length `i` from `u` to `v`, i.e. `(A^i)_{uv}`.
pub fn count_walks(g: &SimpleGraph, u: Vertex, v: Vertex, i: usize) -> BigUint {
    walk_counts_from(g, u, i).swap_remove(i)[v].clone()
}

/// `reach[i][w]`: some walk of length exactly `i` leads from `u` to `w`.
pub fn walk_layers(g: &SimpleGraph, u: Vertex, max_len: usize) -> Vec<Vec<bool>> {
    let mut layer = vec![false; g.n()];
    layer[u] = true;
    let mut out = vec![layer];
    for _ in 0..max_len {
        let prev = out.last().expect("nonempty");
        let mut next = vec![false; g.n()];
        for w in (0..g.n()).filter(|&w| prev[w]) {
            for &x in g.neighbors(w) {
                next[x] = true;
            }
        }
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path_graph};

    #[test]
    fn small_counts() {
        assert_eq!(count_walks(&path_graph(3), 0, 2, 2), BigUint::from(1u32));
        assert_eq!(count_walks(&cycle(4), 0, 2, 2), BigUint::from(2u32));
        assert_eq!(count_walks(&complete(3), 1, 1, 3), BigUint::from(2u32));
        assert_eq!(count_walks(&complete(3), 1, 1, 0), BigUint::one());
    }

    #[test]
    fn layers_track_parity() {
        let reach = walk_layers(&cycle(4), 0, 3);
        assert_eq!(reach[2], vec![true, false, true, false]);
        assert_eq!(reach[3], vec![false, true, false, true]);
    }
}
