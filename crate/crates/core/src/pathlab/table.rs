use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{count_paths_capped, paths_of_length, Path, SimpleGraph, Vertex};

use super::ThresholdFamily;

pub const DEFAULT_PATH_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PathFlags {
    pub admissible: bool,
    pub good: bool,
}

#[derive(Clone, Debug, Default)]
struct Layer {
    paths: Vec<Path>,
    flags: Vec<PathFlags>,
    index: HashMap<Path, usize>,
    /// `A_l(u, w)` for pairs with at least one admissible path, `u < w`.
    admissible: BTreeMap<(Vertex, Vertex), u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LayerSummary {
    pub length: usize,
    pub paths: u64,
    pub admissible: u64,
    pub good: u64,
    pub bad_pairs: u64,
}

/// Admissible/good flags for every path of length `1..=max_len`, with the
/// per-pair admissible counts they were decided from.
#[derive(Clone, Debug)]
pub struct GoodnessTable {
    n: usize,
    family: ThresholdFamily,
    layers: Vec<Layer>,
}

/// Endpoint pairs joined by an admissible but not good path of length `len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadPairSet {
    pub len: usize,
    pub pairs: BTreeSet<(Vertex, Vertex)>,
}

fn max_path_bound(g: &SimpleGraph, len: usize) -> f64 {
    let d = g.degree_profile().max_degree as f64;
    g.n() as f64 * d * (d - 1.0).max(0.0).powi(len as i32 - 1) / 2.0
}

/// Builds the goodness table up to `max_len`. A length is good-classified
/// from the goodness of its two end-deleted subpaths, so lengths are processed
/// in order; paths within a length are classified in parallel.
pub fn classify_paths(g: &SimpleGraph, family: &ThresholdFamily, max_len: usize, budget: u64) -> Result<GoodnessTable> {
    if max_len == 0 || max_len > family.max_len() {
        return Err(Error::InvalidParameter(format!(
            "max_len {max_len} outside 1..={} covered by the threshold family",
            family.max_len()
        )));
    }
    let mut layers: Vec<Layer> = Vec::with_capacity(max_len);
    let mut total = 0u64;
    for len in 1..=max_len {
        let remaining = budget.saturating_sub(total);
        if max_path_bound(g, len) > remaining as f64 && count_paths_capped(g, len, remaining).is_none() {
            return Err(Error::PathBudgetExceeded { length: len, budget });
        }
        let paths = paths_of_length(g, len);
        total += paths.len() as u64;

        let admissible: Vec<bool> = if len == 1 {
            vec![true; paths.len()]
        } else {
            let prev = &layers[len - 2];
            paths
                .par_iter()
                .map(|p| {
                    let head = p.subpath(0, len - 1);
                    let tail = p.subpath(1, len);
                    prev.is_good(&head) && prev.is_good(&tail)
                })
                .collect()
        };
        let mut counts: BTreeMap<(Vertex, Vertex), u64> = BTreeMap::new();
        for (p, &adm) in paths.iter().zip(&admissible) {
            if adm {
                *counts.entry(p.endpoints()).or_default() += 1;
            }
        }
        let flags: Vec<PathFlags> = paths
            .iter()
            .zip(&admissible)
            .map(|(p, &adm)| PathFlags {
                admissible: adm,
                good: adm && (len == 1 || family.admits(len, counts[&p.endpoints()])),
            })
            .collect();
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        layers.push(Layer {
            paths,
            flags,
            index,
            admissible: counts,
        });
    }
    Ok(GoodnessTable {
        n: g.n(),
        family: family.clone(),
        layers,
    })
}

impl Layer {
    fn is_good(&self, p: &Path) -> bool {
        self.index.get(p).is_some_and(|&i| self.flags[i].good)
    }
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

impl GoodnessTable {
    pub fn max_len(&self) -> usize {
        self.layers.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &ThresholdFamily {
        &self.family
    }

    fn layer(&self, len: usize) -> &Layer {
        assert!(
            (1..=self.max_len()).contains(&len),
            "length {len} not covered by the table (max {})",
            self.max_len()
        );
        &self.layers[len - 1]
    }

    /// All paths of length `len` in lexicographic order.
    pub fn paths(&self, len: usize) -> &[Path] {
        &self.layer(len).paths
    }

    pub fn entries(&self, len: usize) -> impl Iterator<Item = (&Path, PathFlags)> + '_ {
        let layer = self.layer(len);
        layer.paths.iter().zip(layer.flags.iter().copied())
    }

    pub fn flags(&self, path: &Path) -> Option<PathFlags> {
        if path.is_empty() || path.len() > self.max_len() {
            return None;
        }
        let layer = self.layer(path.len());
        layer.index.get(path).map(|&i| layer.flags[i])
    }

    pub fn is_good(&self, path: &Path) -> bool {
        self.flags(path).is_some_and(|f| f.good)
    }

    pub fn is_admissible(&self, path: &Path) -> bool {
        self.flags(path).is_some_and(|f| f.admissible)
    }

    /// `A_len(u, v)`: number of admissible paths of length `len` between `u` and `v`.
    pub fn admissible_count(&self, u: Vertex, v: Vertex, len: usize) -> u64 {
        self.layer(len).admissible.get(&key(u, v)).copied().unwrap_or(0)
    }

    /// Admissible counts for every pair carrying at least one admissible path.
    pub fn admissible_counts(&self, len: usize) -> &BTreeMap<(Vertex, Vertex), u64> {
        &self.layer(len).admissible
    }

    /// Number of good paths of length `len` between `u` and `v`. Either every
    /// admissible path of the pair is good or none is, so this never exceeds `f(len)`.
    pub fn count_good_between(&self, u: Vertex, v: Vertex, len: usize) -> u64 {
        let a = self.admissible_count(u, v, len);
        if len == 1 || self.family.admits(len, a) {
            a
        } else {
            0
        }
    }

    pub fn bad_pairs(&self, len: usize) -> BadPairSet {
        assert!(len >= 2, "bad pairs are defined for lengths >= 2");
        let pairs = self
            .layer(len)
            .admissible
            .iter()
            .filter(|(_, &a)| !self.family.admits(len, a))
            .map(|(&pair, _)| pair)
            .collect();
        BadPairSet { len, pairs }
    }

    /// Good paths of length `len` with both endpoints in `set`.
    pub fn count_good_within(&self, set: &[Vertex], len: usize) -> u64 {
        let mut member = vec![false; self.n];
        for &v in set {
            member[v] = true;
        }
        self.entries(len)
            .filter(|(p, f)| f.good && member[p.start()] && member[p.end()])
            .count() as u64
    }

    pub fn summary(&self, len: usize) -> LayerSummary {
        let layer = self.layer(len);
        LayerSummary {
            length: len,
            paths: layer.paths.len() as u64,
            admissible: layer.flags.iter().filter(|f| f.admissible).count() as u64,
            good: layer.flags.iter().filter(|f| f.good).count() as u64,
            bad_pairs: if len >= 2 {
                self.bad_pairs(len).pairs.len() as u64
            } else {
                0
            },
        }
    }
}

/// Good paths of length `2k` with both endpoints in `set`.
pub fn count_good_2k_within(table: &GoodnessTable, set: &[Vertex], two_k: usize) -> u64 {
    table.count_good_within(set, two_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path_graph};

    fn constant(v: u64, len: usize) -> ThresholdFamily {
        ThresholdFamily::constant(v, len).unwrap()
    }

    #[test]
    fn paper_family_marks_everything_good() {
        let g = complete(6);
        let t = classify_paths(&g, &ThresholdFamily::paper(2.0, 2).unwrap(), 2, DEFAULT_PATH_BUDGET).unwrap();
        assert!(t.entries(2).all(|(_, f)| f.good));
        assert!(t.bad_pairs(2).pairs.is_empty());
    }

    #[test]
    fn four_cycle_with_unit_threshold() {
        let t = classify_paths(&cycle(4), &constant(1, 3), 3, DEFAULT_PATH_BUDGET).unwrap();
        let s2 = t.summary(2);
        assert_eq!((s2.paths, s2.admissible, s2.good), (4, 4, 0));
        assert_eq!(t.admissible_count(0, 2, 2), 2);
        assert_eq!(t.bad_pairs(2).pairs, BTreeSet::from([(0, 2), (1, 3)]));
        // each of the 4 length-3 paths contains a length-2 path that is not good
        let s3 = t.summary(3);
        assert_eq!((s3.paths, s3.admissible, s3.good), (4, 0, 0));
    }

    #[test]
    fn good_counts_between() {
        let c6 = cycle(6);
        let t = classify_paths(&c6, &ThresholdFamily::paper(2.0, 3).unwrap(), 3, DEFAULT_PATH_BUDGET).unwrap();
        assert_eq!(t.count_good_between(0, 3, 3), 2);
        assert_eq!(t.count_good_between(0, 3, 2), 0);
        assert_eq!(count_good_2k_within(&t, &(0..6).collect::<Vec<_>>(), 2), 6);
        assert_eq!(count_good_2k_within(&t, &[], 2), 0);

        let k5 = classify_paths(&complete(5), &constant(3, 2), 2, DEFAULT_PATH_BUDGET).unwrap();
        assert_eq!(k5.count_good_between(0, 1, 2), 3);
        let k4 = classify_paths(&complete(4), &constant(2, 2), 2, DEFAULT_PATH_BUDGET).unwrap();
        assert!(k4.bad_pairs(2).pairs.is_empty());
        let k4p = classify_paths(
            &complete(4),
            &ThresholdFamily::paper(2.0, 2).unwrap(),
            2,
            DEFAULT_PATH_BUDGET,
        )
        .unwrap();
        assert_eq!(count_good_2k_within(&k4p, &[0, 1], 2), 2);
    }

    #[test]
    fn length_one_always_good() {
        let t = classify_paths(&path_graph(4), &constant(1, 1), 1, DEFAULT_PATH_BUDGET).unwrap();
        assert!(t.entries(1).all(|(_, f)| f.admissible && f.good));
        assert_eq!(t.count_good_between(1, 2, 1), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let err = classify_paths(&complete(8), &constant(5, 3), 3, 100).unwrap_err();
        assert!(matches!(err, Error::PathBudgetExceeded { length: 2, .. }));
        assert!(classify_paths(&complete(4), &constant(5, 2), 3, 100).is_err());
    }
}
