use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{directed_paths_from, DegreeProfile, SimpleGraph, SubdivisionSpec, Vertex};
use crate::pathlab::{packing_reaches, PackingMode, Reach};

/// `(|V(H)| + 2)(2k + 1) + 1`.
pub fn disjointness_demand(h: usize, k: usize) -> usize {
    (h + 2) * (2 * k + 1) + 1
}

/// `(2(i+j) h (2k+1) + 2(i+1) j) * max_degree^(i+j-1)` as an exact rational.
/// With `i = j = 0` the coefficient vanishes and the threshold is 0.
pub fn richness_threshold(i: usize, j: usize, k: usize, h: usize, max_degree: usize) -> BigRational {
    let coef = 2 * (i + j) * h * (2 * k + 1) + 2 * (i + 1) * j;
    if coef == 0 {
        return BigRational::zero();
    }
    let base = BigRational::from_integer(BigInt::from(max_degree));
    // i + j >= 1 here, so the exponent is nonnegative
    let power = num_traits::pow(base, i + j - 1);
    BigRational::from_integer(BigInt::from(coef)) * power
}

#[derive(Clone, Debug, Serialize)]
pub struct RichnessReport {
    pub x: Vertex,
    pub y: Vertex,
    pub i: usize,
    pub j: usize,
    /// Disjoint paths demanded between the far endpoints.
    pub demand: usize,
    pub witness_pairs: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub threshold: BigRational,
    pub rich: bool,
    pub mode: PackingMode,
    /// `witness_pairs` is exact (every endpoint test was decided).
    pub certified: bool,
    pub budget_exhausted: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Memoizing richness evaluator for one host graph and one `(k, H)`.
pub struct RichnessOracle<'g> {
    g: &'g SimpleGraph,
    k: usize,
    h: usize,
    demand: usize,
    max_degree: usize,
    mode: PackingMode,
    budget: u64,
    endpoints: HashMap<(Vertex, usize), BTreeMap<Vertex, u64>>,
    reach: HashMap<(Vertex, Vertex, usize), (bool, bool, bool)>,
    verdicts: HashMap<(Vertex, Vertex, usize, usize), bool>,
    pub uncertified_checks: u64,
    pub exhausted_checks: u64,
}

impl<'g> RichnessOracle<'g> {
    pub fn new(
        g: &'g SimpleGraph,
        k: usize,
        spec: &SubdivisionSpec,
        profile: &DegreeProfile,
        mode: PackingMode,
        budget: u64,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if spec.s != 2 * k - 1 {
            return Err(Error::InvalidParameter(format!(
                "richness needs H = F^(2k-1) = F^{}, got s = {}",
                2 * k - 1,
                spec.s
            )));
        }
        let h = spec.vertex_count();
        Ok(RichnessOracle {
            g,
            k,
            h,
            demand: disjointness_demand(h, k),
            max_degree: profile.k_delta(),
            mode,
            budget,
            endpoints: HashMap::new(),
            reach: HashMap::new(),
            verdicts: HashMap::new(),
            uncertified_checks: 0,
            exhausted_checks: 0,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn demand(&self) -> usize {
        self.demand
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn mode(&self) -> PackingMode {
        self.mode
    }

    fn endpoint_counts(&mut self, x: Vertex, len: usize) -> BTreeMap<Vertex, u64> {
        let g = self.g;
        self.endpoints
            .entry((x, len))
            .or_insert_with(|| {
                let mut counts = BTreeMap::new();
                for p in directed_paths_from(g, x, len) {
                    *counts.entry(p[p.len() - 1]).or_default() += 1;
                }
                counts
            })
            .clone()
    }

    /// (reached, certified, exhausted) for `>= demand` disjoint paths of length `len`.
    fn far_pair(&mut self, a: Vertex, b: Vertex, len: usize) -> Result<(bool, bool, bool)> {
        let key = (a.min(b), a.max(b), len);
        if let Some(&r) = self.reach.get(&key) {
            return Ok(r);
        }
        let r = match packing_reaches(self.g, a, b, len, self.demand, self.mode, self.budget) {
            Ok(Reach { reached, certified, .. }) => (reached, certified, false),
            Err(Error::SearchBudgetExceeded { .. }) => (false, false, true),
            Err(e) => return Err(e),
        };
        self.reach.insert(key, r);
        Ok(r)
    }

    pub fn report(&mut self, x: Vertex, y: Vertex, i: usize, j: usize) -> Result<RichnessReport> {
        if i + j >= 2 * self.k {
            return Err(Error::InvalidParameter(format!(
                "i + j = {} must be below 2k = {}",
                i + j,
                2 * self.k
            )));
        }
        let n = self.g.n();
        if x >= n || y >= n {
            return Err(Error::InvalidParameter(format!("vertex out of range for {n} vertices")));
        }
        let threshold = richness_threshold(i, j, self.k, self.h, self.max_degree);
        let far_len = 2 * self.k - i - j;
        let from_x = self.endpoint_counts(x, i);
        let from_y = self.endpoint_counts(y, j);
        let mut witness_pairs = 0u64;
        let mut certified = true;
        let mut budget_exhausted = false;
        for (&a, &ca) in &from_x {
            for (&b, &cb) in &from_y {
                let (reached, cert, exhausted) = self.far_pair(a, b, far_len)?;
                if reached {
                    witness_pairs += ca * cb;
                }
                if !cert {
                    certified = false;
                    self.uncertified_checks += 1;
                }
                if exhausted {
                    budget_exhausted = true;
                    self.exhausted_checks += 1;
                }
            }
        }
        let rich = x != y && BigRational::from_integer(BigInt::from(witness_pairs)) > threshold;
        self.verdicts.insert((x, y, i, j), rich);
        Ok(RichnessReport {
            x,
            y,
            i,
            j,
            demand: self.demand,
            witness_pairs,
            threshold,
            rich,
            mode: self.mode,
            certified,
            budget_exhausted,
        })
    }

    pub fn is_rich(&mut self, x: Vertex, y: Vertex, i: usize, j: usize) -> Result<bool> {
        if x == y {
            return Ok(false);
        }
        if let Some(&v) = self.verdicts.get(&(x, y, i, j)) {
            return Ok(v);
        }
        Ok(self.report(x, y, i, j)?.rich)
    }

    /// `(x, y)` is `(i, j)`-rich for some `0 <= i, j <= k - 1`.
    pub fn rich_for_some(&mut self, x: Vertex, y: Vertex) -> Result<bool> {
        if x == y {
            return Ok(false);
        }
        for i in 0..self.k {
            for j in 0..self.k {
                if self.is_rich(x, y, i, j)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// `(x, y)` is `(i, j)`-poor for every `0 <= i, j <= k - 1`.
    pub fn poor_for_all(&mut self, x: Vertex, y: Vertex) -> Result<bool> {
        Ok(!self.rich_for_some(x, y)?)
    }
}

/// One-shot richness test; see [`RichnessOracle`] for repeated queries.
#[allow(clippy::too_many_arguments)]
pub fn is_rich(
    g: &SimpleGraph,
    x: Vertex,
    y: Vertex,
    i: usize,
    j: usize,
    k: usize,
    spec: &SubdivisionSpec,
    profile: &DegreeProfile,
    mode: PackingMode,
    budget: u64,
) -> Result<RichnessReport> {
    RichnessOracle::new(g, k, spec, profile, mode, budget)?.report(x, y, i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, theta, MultiGraph};
    use crate::pathlab::DEFAULT_NODE_BUDGET;

    fn k3_spec() -> SubdivisionSpec {
        SubdivisionSpec::for_k(MultiGraph::complete(3), 1).unwrap()
    }

    #[test]
    fn thresholds_by_hand() {
        // h = 6, k = 1, Delta = 4
        assert_eq!(richness_threshold(0, 0, 1, 6, 4), BigRational::zero());
        // (2*1*6*3 + 2*1*1) * 4^0 = 38
        assert_eq!(richness_threshold(0, 1, 1, 6, 4), BigRational::from_integer(38.into()));
        // (36 + 0) * 4^0 = 36
        assert_eq!(richness_threshold(1, 0, 1, 6, 4), BigRational::from_integer(36.into()));
        // k = 2: (2*2*6*5 + 2*2*1) * 4^1 = 124 * 4
        assert_eq!(richness_threshold(1, 1, 2, 6, 4), BigRational::from_integer(496.into()));
        assert_eq!(disjointness_demand(6, 1), 25);
    }

    #[test]
    fn equal_vertices_are_poor() {
        let g = theta(2, 25);
        let r = is_rich(
            &g,
            0,
            0,
            0,
            0,
            1,
            &k3_spec(),
            &g.degree_profile(),
            PackingMode::ExactMax,
            10,
        )
        .unwrap();
        assert!(!r.rich);
    }

    #[test]
    fn four_cycle_pair_is_poor() {
        let g = cycle(4);
        let r = is_rich(
            &g,
            0,
            2,
            0,
            0,
            1,
            &k3_spec(),
            &g.degree_profile(),
            PackingMode::ExactMax,
            10,
        )
        .unwrap();
        assert_eq!(r.demand, 25);
        assert_eq!(r.witness_pairs, 0);
        assert!(!r.rich && r.certified);
    }

    #[test]
    fn theta_branch_vertices_are_rich() {
        let g = theta(2, 25);
        let r = is_rich(
            &g,
            0,
            1,
            0,
            0,
            1,
            &k3_spec(),
            &g.degree_profile(),
            PackingMode::ExactMax,
            DEFAULT_NODE_BUDGET,
        )
        .unwrap();
        assert_eq!(r.witness_pairs, 1);
        assert_eq!(r.threshold, BigRational::zero());
        assert!(r.rich && r.certified);
        // one path short of the demand
        let g = theta(2, 24);
        let r = is_rich(
            &g,
            0,
            1,
            0,
            0,
            1,
            &k3_spec(),
            &g.degree_profile(),
            PackingMode::GreedyMaximal,
            0,
        )
        .unwrap();
        assert!(!r.rich && r.certified);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = cycle(5);
        let p = g.degree_profile();
        assert!(is_rich(&g, 0, 1, 1, 1, 1, &k3_spec(), &p, PackingMode::ExactMax, 10).is_err());
        let wrong = SubdivisionSpec::new(MultiGraph::complete(3), 2).unwrap();
        assert!(is_rich(&g, 0, 1, 0, 0, 1, &wrong, &p, PackingMode::ExactMax, 10).is_err());
    }
}
