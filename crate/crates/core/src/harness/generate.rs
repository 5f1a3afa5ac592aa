use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Vertex};

const REGULAR_RESTARTS: usize = 1_000;
const RANDOM_PICKS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomKind {
    ErdosRenyi,
    RandomRegular,
}

/// Seeded random graph. `parameter` is the edge probability `p` for
/// Erdos-Renyi graphs and the degree `d` for random regular graphs.
pub fn gen_random(kind: RandomKind, n: usize, parameter: f64, seed: u64) -> Result<SimpleGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        RandomKind::ErdosRenyi => {
            if !(0.0..=1.0).contains(&parameter) {
                return Err(Error::InvalidParameter(format!("p = {parameter} outside [0, 1]")));
            }
            let mut g = SimpleGraph::new(n);
            for v in 1..n {
                for u in 0..v {
                    if rng.gen::<f64>() < parameter {
                        g.insert_edge(u, v);
                    }
                }
            }
            Ok(g)
        }
        RandomKind::RandomRegular => {
            if parameter < 0.0 || parameter.fract() != 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "degree {parameter} is not a nonnegative integer"
                )));
            }
            random_regular(n, parameter as usize, &mut rng)
        }
    }
}

fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<SimpleGraph> {
    if d > 0 && d >= n {
        return Err(Error::InvalidParameter(format!(
            "degree {d} needs more than {n} vertices"
        )));
    }
    if n * d % 2 == 1 {
        return Err(Error::InvalidParameter(format!("n * d = {} is odd", n * d)));
    }
    'restart: for _ in 0..REGULAR_RESTARTS {
        let mut g = SimpleGraph::new(n);
        let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        while !stubs.is_empty() {
            let ok = |g: &SimpleGraph, a: Vertex, b: Vertex| a != b && !g.has_edge(a, b);
            let mut pick = None;
            for _ in 0..RANDOM_PICKS {
                let i = rng.gen_range(0..stubs.len());
                let j = rng.gen_range(0..stubs.len());
                if ok(&g, stubs[i], stubs[j]) {
                    pick = Some((i, j));
                    break;
                }
            }
            if pick.is_none() {
                let mut options = Vec::new();
                for i in 0..stubs.len() {
                    for j in i + 1..stubs.len() {
                        if ok(&g, stubs[i], stubs[j]) {
                            options.push((i, j));
                        }
                    }
                }
                match options.choose(rng) {
                    Some(&p) => pick = Some(p),
                    None => continue 'restart,
                }
            }
            let (i, j) = pick.expect("picked");
            g.insert_edge(stubs[i], stubs[j]);
            let (hi, lo) = (i.max(j), i.min(j));
            stubs.swap_remove(hi);
            stubs.swap_remove(lo);
        }
        return Ok(g);
    }
    Err(Error::InvalidParameter(format!(
        "no {d}-regular graph on {n} vertices after {REGULAR_RESTARTS} restarts"
    )))
}
