use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, SubdivisionSpec, Vertex};

use super::EmbeddingCertificate;

pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

struct Copy {
    index: usize,
    u: usize,
    v: usize,
    /// Earlier copy of the same pattern edge, whose internal sequence must be
    /// lexicographically smaller.
    twin: Option<usize>,
}

/// Backtracking embedder. Pattern vertices are placed in `order`; right after
/// placing `order[step]` every edge copy whose endpoints are both placed gets
/// routed.
pub(crate) struct Search<'g> {
    g: &'g SimpleGraph,
    s: usize,
    order: Vec<usize>,
    candidates: Vec<Vec<Vertex>>,
    routes: Vec<Vec<Copy>>,
    map: Vec<Vertex>,
    used: Vec<bool>,
    paths: Vec<Vec<Vertex>>,
    dist: HashMap<Vertex, Vec<usize>>,
    nodes: u64,
    budget: u64,
}

fn placement_order(spec: &SubdivisionSpec) -> Vec<usize> {
    let t = spec.pattern.n();
    let mut placed = vec![false; t];
    let mut order = Vec::with_capacity(t);
    let mut links = vec![0usize; t];
    for _ in 0..t {
        let next = (0..t)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], spec.pattern.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
        for &(a, b, m) in spec.pattern.edges() {
            if a == next {
                links[b] += m;
            } else if b == next {
                links[a] += m;
            }
        }
    }
    order
}

impl<'g> Search<'g> {
    /// `pins[v]` fixes the image of pattern vertex `v`; `blocked` vertices are
    /// never used.
    pub(crate) fn new(
        g: &'g SimpleGraph,
        spec: &SubdivisionSpec,
        pins: &[Option<Vertex>],
        blocked: &[Vertex],
        budget: u64,
    ) -> Self {
        let t = spec.pattern.n();
        let order = placement_order(spec);
        let mut host: Vec<Vertex> = (0..g.n()).collect();
        host.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let candidates = order
            .iter()
            .map(|&pv| match pins.get(pv).copied().flatten() {
                Some(x) => vec![x],
                None => {
                    let need = spec.pattern.degree(pv);
                    host.iter().copied().filter(|&x| g.degree(x) >= need).collect()
                }
            })
            .collect();
        let mut position = vec![0; t];
        for (i, &pv) in order.iter().enumerate() {
            position[pv] = i;
        }
        let mut routes: Vec<Vec<Copy>> = (0..t).map(|_| Vec::new()).collect();
        let mut last_of_pair: HashMap<(usize, usize), usize> = HashMap::new();
        for (index, (u, v)) in spec.pattern.edge_copies().enumerate() {
            let step = position[u].max(position[v]);
            let twin = last_of_pair.insert((u, v), index);
            routes[step].push(Copy { index, u, v, twin });
        }
        let mut used = vec![false; g.n()];
        for &b in blocked {
            used[b] = true;
        }
        Search {
            g,
            s: spec.s,
            order,
            candidates,
            routes,
            map: vec![usize::MAX; t],
            used,
            paths: vec![Vec::new(); spec.pattern.edge_count()],
            dist: HashMap::new(),
            nodes: 0,
            budget,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// Runs the search; `Ok(None)` means no copy exists under the pins.
    pub(crate) fn run(&mut self) -> Result<Option<(Vec<Vertex>, Vec<Vec<Vertex>>)>> {
        if self.place(0)? {
            Ok(Some((self.map.clone(), self.paths.clone())))
        } else {
            Ok(None)
        }
    }

    fn place(&mut self, step: usize) -> Result<bool> {
        if step == self.order.len() {
            return Ok(true);
        }
        let pv = self.order[step];
        for ci in 0..self.candidates[step].len() {
            let x = self.candidates[step][ci];
            if self.used[x] {
                continue;
            }
            self.tick()?;
            self.map[pv] = x;
            self.used[x] = true;
            if self.route(step, 0)? {
                return Ok(true);
            }
            self.used[x] = false;
        }
        self.map[pv] = usize::MAX;
        Ok(false)
    }

    fn route(&mut self, step: usize, idx: usize) -> Result<bool> {
        if idx == self.routes[step].len() {
            return self.place(step + 1);
        }
        let (u, v) = (self.routes[step][idx].u, self.routes[step][idx].v);
        let (a, b) = (self.map[u], self.map[v]);
        if !self.dist.contains_key(&b) {
            let d = self.g.distances_from(b);
            self.dist.insert(b, d);
        }
        let mut path = vec![a];
        self.extend(step, idx, b, &mut path)
    }

    fn extend(&mut self, step: usize, idx: usize, target: Vertex, path: &mut Vec<Vertex>) -> Result<bool> {
        self.tick()?;
        let last = *path.last().expect("nonempty");
        let remaining = self.s + 2 - path.len();
        if remaining == 1 {
            if !self.g.has_edge(last, target) {
                return Ok(false);
            }
            let copy = &self.routes[step][idx];
            let (index, twin) = (copy.index, copy.twin);
            if let Some(tw) = twin {
                if self.paths[tw][1..=self.s] >= path[1..] {
                    return Ok(false);
                }
            }
            let mut full = path.clone();
            full.push(target);
            self.paths[index] = full;
            return self.route(step, idx + 1);
        }
        let g = self.g;
        for &w in g.neighbors(last) {
            if self.used[w] || self.dist[&target][w] > remaining - 1 {
                continue;
            }
            self.used[w] = true;
            path.push(w);
            let found = self.extend(step, idx, target, path)?;
            path.pop();
            self.used[w] = false;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Exhaustive search for a copy of `F^s` in `g`.
///
/// The search branches over the image of the first pattern vertex in
/// parallel; `budget` caps the nodes explored under each such image. `Ok(None)`
/// is a certified absence. Exceeding the budget without finding a copy is
/// reported as [`Error::SearchBudgetExceeded`].
pub fn find_subdivision_exact(
    g: &SimpleGraph,
    spec: &SubdivisionSpec,
    budget: u64,
) -> Result<Option<EmbeddingCertificate>> {
    spec.validate()?;
    let t = spec.pattern.n();
    if t == 0 {
        return Ok(Some(EmbeddingCertificate {
            spec: Some(spec.clone()),
            branch_map: vec![],
            paths: vec![],
        }));
    }
    if spec.vertex_count() > g.n() || spec.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let probe = Search::new(g, spec, &[], &[], budget);
    let root = probe.order[0];
    let roots = probe.candidates[0].clone();
    drop(probe);

    let chunk = rayon::current_num_threads().max(1) * 2;
    let mut exhausted = false;
    for block in roots.chunks(chunk) {
        let results: Vec<Result<Option<(Vec<Vertex>, Vec<Vec<Vertex>>)>>> = block
            .par_iter()
            .map(|&x| {
                let mut pins = vec![None; t];
                pins[root] = Some(x);
                Search::new(g, spec, &pins, &[], budget).run()
            })
            .collect();
        for r in results {
            match r {
                Ok(Some((branch_map, paths))) => {
                    let cert = EmbeddingCertificate {
                        spec: Some(spec.clone()),
                        branch_map,
                        paths,
                    };
                    debug_assert!(super::verify_certificate(g, spec, &cert));
                    return Ok(Some(cert));
                }
                Ok(None) => {}
                Err(Error::SearchBudgetExceeded { .. }) => exhausted = true,
                Err(e) => return Err(e),
            }
        }
    }
    if exhausted {
        Err(Error::SearchBudgetExceeded { budget })
    } else {
        Ok(None)
    }
}

/// `true` when `g` contains a copy of `F^s`; budget exhaustion is an error.
pub fn contains_subdivision(g: &SimpleGraph, spec: &SubdivisionSpec, budget: u64) -> Result<bool> {
    Ok(find_subdivision_exact(g, spec, budget)?.is_some())
}
