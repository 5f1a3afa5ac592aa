use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedder::{find_subdivision_exact, DEFAULT_SEARCH_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, SubdivisionSpec, Vertex};

use super::{is_h_free, ExtremalResult, Method};

/// Annealing parameters. Defaults: 4 chains, start temperature 1.0, cooling
/// factor 0.999 per iteration, restart from the chain's best graph after
/// `budget / 10` iterations without improvement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchOptions {
    /// Iterations per chain.
    pub budget: u64,
    pub seed: u64,
    pub chains: usize,
    pub start_temperature: f64,
    pub cooling: f64,
    /// Iterations without improvement before a restart; 0 means `budget / 10`.
    pub patience: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 10_000,
            seed: 0,
            chains: 4,
            start_temperature: 1.0,
            cooling: 0.999,
            patience: 0,
        }
    }
}

/// A copy of `H` created by adding an edge at `u` must contain that edge, so only the
/// component of `u` needs checking.
fn addition_keeps_free(g: &SimpleGraph, u: Vertex, spec: &SubdivisionSpec) -> Result<bool> {
    let reach = g.ball([u], g.n());
    let comp: Vec<Vertex> = (0..g.n()).filter(|&w| reach[w]).collect();
    if comp.len() < spec.vertex_count() {
        return Ok(true);
    }
    let sub = g.induced_subgraph(&comp);
    Ok(find_subdivision_exact(&sub, spec, DEFAULT_SEARCH_BUDGET)?.is_none())
}

fn greedy_fill(g: &mut SimpleGraph, spec: &SubdivisionSpec) -> Result<()> {
    let n = g.n();
    for v in 1..n {
        for u in 0..v {
            if !g.has_edge(u, v) {
                g.insert_edge(u, v);
                if !addition_keeps_free(g, u, spec)? {
                    g.remove_edge(u, v);
                }
            }
        }
    }
    Ok(())
}

fn chain_seed(seed: u64, chain: usize) -> u64 {
    seed ^ (chain as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn run_chain(n: usize, spec: &SubdivisionSpec, opts: &SearchOptions, chain: usize) -> Result<SimpleGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(chain_seed(opts.seed, chain));
    let patience = if opts.patience == 0 {
        (opts.budget / 10).max(1)
    } else {
        opts.patience
    };
    let mut g = SimpleGraph::new(n);
    let mut best = g.clone();
    let mut temperature = opts.start_temperature;
    let mut stale = 0u64;
    for _ in 0..opts.budget {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        if g.has_edge(u, v) {
            let accept = temperature > 0.0 && rng.gen::<f64>() < (-1.0 / temperature).exp();
            if accept {
                g.remove_edge(u, v);
            }
        } else {
            g.insert_edge(u, v);
            if !addition_keeps_free(&g, u, spec)? {
                g.remove_edge(u, v);
            }
        }
        if g.edge_count() > best.edge_count() {
            best = g.clone();
            stale = 0;
        } else {
            stale += 1;
            if stale >= patience {
                g = best.clone();
                stale = 0;
            }
        }
        temperature *= opts.cooling;
    }
    greedy_fill(&mut best, spec)?;
    Ok(best)
}

/// Lower bound on `ex(n, F^s)` from seeded annealing over edge flips. Chains
/// run in parallel; the best chain wins, ties going to the lower index, so
/// the result does not depend on the worker count.
pub fn ex_lower_search(n: usize, spec: &SubdivisionSpec, opts: &SearchOptions) -> Result<ExtremalResult> {
    spec.validate()?;
    if opts.chains == 0 {
        return Err(Error::InvalidParameter("at least one chain is needed".into()));
    }
    if !(opts.cooling > 0.0 && opts.cooling <= 1.0) || opts.start_temperature < 0.0 {
        return Err(Error::InvalidParameter(
            "cooling must lie in (0, 1] and temperature be non-negative".into(),
        ));
    }
    let graphs: Vec<Result<SimpleGraph>> = if n < 2 {
        (0..opts.chains).map(|_| Ok(SimpleGraph::new(n))).collect()
    } else {
        (0..opts.chains)
            .into_par_iter()
            .map(|c| run_chain(n, spec, opts, c))
            .collect()
    };
    let mut best: Option<SimpleGraph> = None;
    for g in graphs {
        let g = g?;
        if best.as_ref().is_none_or(|b| g.edge_count() > b.edge_count()) {
            best = Some(g);
        }
    }
    let witness = best.expect("at least one chain");
    if !is_h_free(&witness, spec)? {
        return Err(Error::Precondition("search witness failed re-verification".into()));
    }
    Ok(ExtremalResult {
        n,
        spec: spec.clone(),
        value: witness.edge_count(),
        method: Method::Search,
        witness: witness.edge_list(),
        seed: Some(opts.seed),
        iterations: Some(opts.budget),
        level_sizes: vec![],
    })
}
