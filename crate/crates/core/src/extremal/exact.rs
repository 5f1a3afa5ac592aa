use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::embedder::{find_subdivision_exact, DEFAULT_SEARCH_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{complete, SimpleGraph, SubdivisionSpec};

use super::canon::{canonical_code, decode, encode, Code, MAX_CANON_N};
use super::{ExtremalResult, Method};

pub const DEFAULT_EXACT_CAP: usize = 8;

/// `g` contains no copy of `F^s`.
pub fn is_h_free(g: &SimpleGraph, spec: &SubdivisionSpec) -> Result<bool> {
    Ok(find_subdivision_exact(g, spec, DEFAULT_SEARCH_BUDGET)?.is_none())
}

/// Exact `ex(n, F^s)` by orderly generation: the `H`-free graphs with `e + 1`
/// edges are exactly the `H`-free one-edge extensions of those with `e`
/// edges, kept up to isomorphism.
pub fn ex_exact(n: usize, spec: &SubdivisionSpec, cap: usize) -> Result<ExtremalResult> {
    spec.validate()?;
    let cap = cap.min(MAX_CANON_N);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if spec.vertex_count() > n {
        let g = complete(n);
        return Ok(ExtremalResult {
            n,
            spec: spec.clone(),
            value: g.edge_count(),
            method: Method::Exhaustive,
            witness: g.edge_list(),
            seed: None,
            iterations: None,
            level_sizes: vec![],
        });
    }
    let mut level: BTreeSet<Code> = BTreeSet::from([canonical_code(&SimpleGraph::new(n))]);
    let mut sizes = vec![1];
    loop {
        let codes: Vec<Code> = level.iter().copied().collect();
        let children: Vec<Code> = codes
            .par_iter()
            .flat_map_iter(|&c| {
                let g = decode(n, c);
                let mut out = Vec::new();
                for v in 1..n {
                    for u in 0..v {
                        if !g.has_edge(u, v) {
                            let mut h = g.clone();
                            h.insert_edge(u, v);
                            out.push(canonical_code(&h));
                        }
                    }
                }
                out
            })
            .collect();
        let fresh: Vec<Code> = children.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let kept: Vec<Result<Option<Code>>> = fresh
            .par_iter()
            .map(|&c| Ok(is_h_free(&decode(n, c), spec)?.then_some(c)))
            .collect();
        let mut next = BTreeSet::new();
        for r in kept {
            if let Some(c) = r? {
                next.insert(c);
            }
        }
        if next.is_empty() {
            break;
        }
        sizes.push(next.len());
        level = next;
    }
    let best = *level.iter().next_back().expect("nonempty level");
    let witness = decode(n, best);
    debug_assert_eq!(encode(&witness), best);
    if !is_h_free(&witness, spec)? {
        return Err(Error::Precondition("extremal witness failed re-verification".into()));
    }
    Ok(ExtremalResult {
        n,
        spec: spec.clone(),
        value: witness.edge_count(),
        method: Method::Exhaustive,
        witness: witness.edge_list(),
        seed: None,
        iterations: None,
        level_sizes: sizes,
    })
}
