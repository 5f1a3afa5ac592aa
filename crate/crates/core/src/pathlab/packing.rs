use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{paths_between, Path, SimpleGraph, Vertex};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PackingMode {
    /// First-fit over paths in lexicographic order; inclusion-maximal.
    #[serde(alias = "greedy")]
    GreedyMaximal,
    /// Branch and bound; certified maximum within the node budget.
    #[serde(alias = "exact")]
    ExactMax,
}

impl std::str::FromStr for PackingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" | "greedy-maximal" => Ok(PackingMode::GreedyMaximal),
            "exact" | "exact-max" => Ok(PackingMode::ExactMax),
            other => Err(Error::InvalidParameter(format!("unknown packing mode {other:?}"))),
        }
    }
}

/// Pairwise internally vertex-disjoint `u`-`v` paths of one length.
#[derive(Clone, Debug, Serialize)]
pub struct Packing {
    pub u: Vertex,
    pub v: Vertex,
    pub len: usize,
    pub paths: Vec<Path>,
    pub mode: PackingMode,
}

impl Packing {
    pub fn size(&self) -> usize {
        self.paths.len()
    }
}

/// Outcome of asking whether a packing of `target` paths exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Reach {
    pub reached: bool,
    /// The answer is proven (always true when `reached`).
    pub certified: bool,
    pub found: usize,
}

struct Candidates {
    paths: Vec<Path>,
    internal: Vec<FixedBitSet>,
    first: Vec<Vertex>,
    last: Vec<Vertex>,
}

fn candidates(g: &SimpleGraph, u: Vertex, v: Vertex, len: usize) -> Candidates {
    let mut seen = std::collections::HashSet::new();
    let mut out = Candidates {
        paths: Vec::new(),
        internal: Vec::new(),
        first: Vec::new(),
        last: Vec::new(),
    };
    for p in paths_between(g, u, v, len) {
        let mut set = FixedBitSet::with_capacity(g.n());
        for &w in p.internal() {
            set.insert(w);
        }
        // paths with the same internal vertex set are interchangeable
        if !seen.insert(set.clone()) {
            continue;
        }
        let vs = p.vertices();
        out.first.push(vs[1.min(vs.len() - 1)]);
        out.last.push(vs[vs.len().saturating_sub(2)]);
        out.internal.push(set);
        out.paths.push(p);
    }
    out
}

fn greedy(c: &Candidates, n: usize) -> Vec<usize> {
    let mut used = FixedBitSet::with_capacity(n);
    let mut chosen = Vec::new();
    for (i, set) in c.internal.iter().enumerate() {
        if used.is_disjoint(set) {
            used.union_with(set);
            chosen.push(i);
        }
    }
    chosen
}

struct Search<'a> {
    c: &'a Candidates,
    len: usize,
    n: usize,
    best: Vec<usize>,
    target: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn bound(&self, remaining: &[usize]) -> usize {
        if self.len < 2 {
            return remaining.len().min(1);
        }
        let mut firsts = FixedBitSet::with_capacity(self.n);
        let mut lasts = FixedBitSet::with_capacity(self.n);
        let mut covered = FixedBitSet::with_capacity(self.n);
        for &i in remaining {
            firsts.insert(self.c.first[i]);
            lasts.insert(self.c.last[i]);
            covered.union_with(&self.c.internal[i]);
        }
        remaining
            .len()
            .min(firsts.count_ones(..))
            .min(lasts.count_ones(..))
            .min(covered.count_ones(..) / (self.len - 1))
    }

    /// Returns `true` once the target is met.
    fn run(&mut self, chosen: &mut Vec<usize>, remaining: &[usize]) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded { budget: self.budget });
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
            if self.best.len() >= self.target {
                return Ok(true);
            }
        }
        if remaining.is_empty() || chosen.len() + self.bound(remaining) <= self.best.len() {
            return Ok(false);
        }
        let (&pick, rest) = remaining.split_first().expect("nonempty");
        let compatible: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&j| self.c.internal[pick].is_disjoint(&self.c.internal[j]))
            .collect();
        chosen.push(pick);
        if self.run(chosen, &compatible)? {
            return Ok(true);
        }
        chosen.pop();
        self.run(chosen, rest)
    }
}

fn exact(c: &Candidates, n: usize, len: usize, target: usize, budget: u64) -> Result<Vec<usize>> {
    let mut search = Search {
        c,
        len,
        n,
        best: greedy(c, n),
        target,
        nodes: 0,
        budget,
    };
    if search.best.len() >= target {
        return Ok(search.best);
    }
    let all: Vec<usize> = (0..c.paths.len()).collect();
    search.run(&mut Vec::new(), &all)?;
    Ok(search.best)
}

fn assemble(c: Candidates, chosen: Vec<usize>, u: Vertex, v: Vertex, len: usize, mode: PackingMode) -> Packing {
    let mut paths: Vec<Path> = chosen.into_iter().map(|i| c.paths[i].clone()).collect();
    paths.sort();
    Packing { u, v, len, paths, mode }
}

/// Internally disjoint `u`-`v` paths of length `len`: inclusion-maximal in
/// greedy mode, maximum in exact mode (error once `budget` search nodes are spent).
pub fn max_disjoint_paths(
    g: &SimpleGraph,
    u: Vertex,
    v: Vertex,
    len: usize,
    mode: PackingMode,
    budget: u64,
) -> Result<Packing> {
    if u == v {
        return Err(Error::InvalidParameter("packing endpoints must differ".into()));
    }
    let c = candidates(g, u, v, len);
    let chosen = match mode {
        PackingMode::GreedyMaximal => greedy(&c, g.n()),
        PackingMode::ExactMax => exact(&c, g.n(), len, usize::MAX, budget)?,
    };
    Ok(assemble(c, chosen, u, v, len, mode))
}

/// Whether `target` internally disjoint `u`-`v` paths of length `len` exist.
/// Cheap degree bounds settle most negative cases in either mode; greedy
/// mode otherwise only certifies positive answers.
pub fn packing_reaches(
    g: &SimpleGraph,
    u: Vertex,
    v: Vertex,
    len: usize,
    target: usize,
    mode: PackingMode,
    budget: u64,
) -> Result<Reach> {
    if target == 0 {
        return Ok(Reach {
            reached: true,
            certified: true,
            found: 0,
        });
    }
    let no = |found| Reach {
        reached: false,
        certified: true,
        found,
    };
    if u == v || len == 0 {
        return Ok(no(0));
    }
    let degree_cap = if len == 1 { 1 } else { g.degree(u).min(g.degree(v)) };
    if degree_cap < target {
        // still report what is there, cheaply, when the answer is already "no"
        return Ok(no(0));
    }
    let c = candidates(g, u, v, len);
    let greedy_pick = greedy(&c, g.n());
    if greedy_pick.len() >= target {
        return Ok(Reach {
            reached: true,
            certified: true,
            found: greedy_pick.len(),
        });
    }
    let all: Vec<usize> = (0..c.paths.len()).collect();
    let probe = Search {
        c: &c,
        len,
        n: g.n(),
        best: Vec::new(),
        target,
        nodes: 0,
        budget,
    };
    if probe.bound(&all) < target {
        return Ok(no(greedy_pick.len()));
    }
    match mode {
        PackingMode::GreedyMaximal => Ok(Reach {
            reached: false,
            certified: false,
            found: greedy_pick.len(),
        }),
        PackingMode::ExactMax => {
            let best = exact(&c, g.n(), len, target, budget)?;
            Ok(Reach {
                reached: best.len() >= target,
                certified: true,
                found: best.len(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, theta};

    fn disjoint(p: &Packing) -> bool {
        let mut seen = std::collections::HashSet::new();
        p.paths.iter().all(|q| q.internal().iter().all(|&w| seen.insert(w)))
    }

    #[test]
    fn spec_examples() {
        let c4 = max_disjoint_paths(&cycle(4), 0, 2, 2, PackingMode::ExactMax, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c4.size(), 2);
        let th = max_disjoint_paths(&theta(3, 5), 0, 1, 3, PackingMode::ExactMax, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(th.size(), 5);
        let k5 = max_disjoint_paths(&complete(5), 0, 1, 2, PackingMode::GreedyMaximal, 0).unwrap();
        assert_eq!(k5.size(), 3);
        assert!(disjoint(&th) && disjoint(&k5));
    }

    #[test]
    fn greedy_can_be_beaten_by_exact() {
        let g = crate::graph::SimpleGraph::from_edges(6, &[(0, 1), (1, 4), (4, 5), (0, 2), (2, 4), (1, 3), (3, 5)])
            .unwrap();
        // length-3 paths 0..5: 0-1-3-5, 0-1-4-5, 0-2-4-5 ; greedy takes 0-1-3-5 then 0-2-4-5
        let greedy = max_disjoint_paths(&g, 0, 5, 3, PackingMode::GreedyMaximal, 0).unwrap();
        let exact = max_disjoint_paths(&g, 0, 5, 3, PackingMode::ExactMax, 1000).unwrap();
        assert_eq!(greedy.size(), 2);
        assert_eq!(exact.size(), 2);

        // here first-fit picks 0-1-2-5 and blocks both others
        let h = crate::graph::SimpleGraph::from_edges(7, &[(0, 1), (1, 2), (2, 6), (0, 3), (3, 2), (1, 4), (4, 6)])
            .unwrap();
        let greedy = max_disjoint_paths(&h, 0, 6, 3, PackingMode::GreedyMaximal, 0).unwrap();
        let exact = max_disjoint_paths(&h, 0, 6, 3, PackingMode::ExactMax, 1000).unwrap();
        assert_eq!(greedy.size(), 1);
        assert_eq!(exact.size(), 2);
        assert!(disjoint(&exact));
    }

    #[test]
    fn reach_queries() {
        let g = theta(2, 25);
        let r = packing_reaches(&g, 0, 1, 2, 25, PackingMode::GreedyMaximal, 10).unwrap();
        assert!(r.reached && r.certified);
        let r = packing_reaches(&g, 0, 1, 2, 26, PackingMode::GreedyMaximal, 10).unwrap();
        assert!(!r.reached && r.certified);
        let r = packing_reaches(&cycle(4), 0, 2, 2, 25, PackingMode::ExactMax, 10).unwrap();
        assert!(!r.reached && r.certified);
    }

    #[test]
    fn budget_exceeded_in_exact_mode() {
        // in K_9 the root bound already proves greedy optimal
        let g = complete(9);
        assert_eq!(
            max_disjoint_paths(&g, 0, 1, 3, PackingMode::ExactMax, 1)
                .unwrap()
                .size(),
            3
        );
        let h = crate::graph::SimpleGraph::from_edges(7, &[(0, 1), (1, 2), (2, 6), (0, 3), (3, 2), (1, 4), (4, 6)])
            .unwrap();
        let err = max_disjoint_paths(&h, 0, 6, 3, PackingMode::ExactMax, 1).unwrap_err();
        assert!(matches!(err, Error::SearchBudgetExceeded { budget: 1 }));
    }

    #[test]
    fn same_endpoints_rejected() {
        assert!(max_disjoint_paths(&cycle(4), 1, 1, 2, PackingMode::ExactMax, 10).is_err());
    }
}
