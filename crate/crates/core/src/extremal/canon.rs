use crate::graph::SimpleGraph;

/// Largest vertex count whose adjacency code fits the packed `u64` form.
pub const MAX_CANON_N: usize = 11;

/// Packed upper triangle, column by column from the most significant bit:
/// edge `{i, j}` (`i < j`) sits at index `j(j-1)/2 + i` counted from the top.
pub type Code = u64;

fn index(i: usize, j: usize) -> u32 {
    (j * (j - 1) / 2 + i) as u32
}

fn bit(i: usize, j: usize) -> u32 {
    63 - index(i, j)
}

/// Bits fixed once positions `0..=j` are placed.
fn prefix_mask(j: usize) -> Code {
    let len = index(0, j + 1);
    if len == 0 {
        0
    } else {
        !0 << (64 - len)
    }
}

pub fn encode(g: &SimpleGraph) -> Code {
    let mut c = 0;
    for (u, v) in g.edges() {
        c |= 1 << bit(u.min(v), u.max(v));
    }
    c
}

pub fn decode(n: usize, code: Code) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for j in 1..n {
        for i in 0..j {
            if code >> bit(i, j) & 1 == 1 {
                g.insert_edge(i, j);
            }
        }
    }
    g
}

/// Colour refinement starting from degrees; returns a colour per vertex whose
/// order is an isomorphism invariant.
fn refine(adj: &[u32], n: usize) -> Vec<usize> {
    let mut colour: Vec<usize> = (0..n).map(|v| adj[v].count_ones() as usize).collect();
    loop {
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0; n];
        let mut c = 0;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                c += 1;
            }
            next[sig[i].2] = c;
        }
        let classes = |col: &[usize]| {
            let mut s = col.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

struct Canon<'a> {
    n: usize,
    adj: &'a [u32],
    colour: Vec<usize>,
    /// Required colour at each position (colours sorted).
    slots: Vec<usize>,
    perm: Vec<usize>,
    taken: u32,
    best: Option<Code>,
}

impl Canon<'_> {
    /// Fills position `j`; `code` holds the bits of positions `< j`. The
    /// canonical code is the largest reachable one.
    fn go(&mut self, j: usize, code: Code) {
        if j == self.n {
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        let upto = prefix_mask(j);
        for v in 0..self.n {
            if self.taken >> v & 1 == 1 || self.colour[v] != self.slots[j] {
                continue;
            }
            let mut col = 0;
            for i in 0..j {
                if self.adj[v] >> self.perm[i] & 1 == 1 {
                    col |= 1 << bit(i, j);
                }
            }
            let next = code | col;
            if matches!(self.best, Some(b) if next & upto < b & upto) {
                continue;
            }
            self.perm.push(v);
            self.taken |= 1 << v;
            self.go(j + 1, next);
            self.taken &= !(1 << v);
            self.perm.pop();
        }
    }
}

/// Canonical code: equal for isomorphic graphs, and decodes to a graph
/// isomorphic to `g`.
pub fn canonical_code(g: &SimpleGraph) -> Code {
    let n = g.n();
    assert!(
        n <= MAX_CANON_N,
        "canonical form supports at most {MAX_CANON_N} vertices"
    );
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let colour = refine(&adj, n);
    let mut slots = colour.clone();
    slots.sort_unstable_by(|a, b| b.cmp(a));
    let mut c = Canon {
        n,
        adj: &adj,
        colour,
        slots,
        perm: Vec::with_capacity(n),
        taken: 0,
        best: None,
    };
    c.go(0, 0);
    c.best.unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path_graph, petersen};

    fn relabel_all(g: &SimpleGraph) -> Vec<SimpleGraph> {
        let n = g.n();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        for shift in 0..n {
            perm.rotate_left(1);
            let mut p = perm.clone();
            p.swap(0, shift);
            out.push(g.relabel(&p));
        }
        out
    }

    #[test]
    fn codes_are_invariant_under_relabeling() {
        for g in [cycle(7), path_graph(6), petersen()] {
            let c = canonical_code(&g);
            for h in relabel_all(&g) {
                assert_eq!(canonical_code(&h), c);
            }
            let back = decode(g.n(), c);
            assert_eq!(back.edge_count(), g.edge_count());
            assert_eq!(canonical_code(&back), c);
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // C_6 versus two triangles: same degrees
        let mut two = SimpleGraph::new(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            two.insert_edge(u, v);
        }
        assert_ne!(canonical_code(&two), canonical_code(&cycle(6)));
        assert_eq!(decode(6, encode(&two)).edge_list(), two.edge_list());
    }
}
