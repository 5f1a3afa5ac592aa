use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{walk_counts_from, walk_layers, MultiGraph, SimpleGraph, SubdivisionSpec, Vertex};
use crate::numeric::{le_half_power, ratio_from_f64};
use crate::pathlab::{classify_paths, ThresholdFamily, DEFAULT_PATH_BUDGET};

use super::exact::{Search, DEFAULT_SEARCH_BUDGET};
use super::{verify_certificate, EmbeddingCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GuidedOptions {
    /// Drop candidates that are not distant from an earlier branch vertex.
    pub distant_filter: bool,
    /// Drop candidates close to a short walk between two branch vertices.
    pub walk_filter: bool,
    pub path_budget: u64,
    pub route_budget: u64,
}

impl Default for GuidedOptions {
    fn default() -> Self {
        GuidedOptions {
            distant_filter: true,
            walk_filter: true,
            path_budget: DEFAULT_PATH_BUDGET,
            route_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl GuidedOptions {
    /// Both filters off; only goodness scores and routing drive the search.
    pub fn relaxed() -> Self {
        GuidedOptions {
            distant_filter: false,
            walk_filter: false,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarvingStep {
    STooSmall,
    NoGoodPaths,
    NoPivot,
    DistantFilterEmptied,
}

impl std::fmt::Display for StarvingStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StarvingStep::STooSmall => "S-too-small",
            StarvingStep::NoGoodPaths => "no-good-paths",
            StarvingStep::NoPivot => "no-pivot",
            StarvingStep::DistantFilterEmptied => "distant-filter-emptied",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageLog {
    pub stage: usize,
    pub s_size: usize,
    pub y_size: usize,
    pub z_size: usize,
    pub s_prime_size: usize,
    pub max_score: usize,
    pub pivot: Option<Vertex>,
    pub candidates_tried: usize,
}

fn ser_ratios<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct GuidedState {
    pub t: usize,
    pub k: usize,
    pub stage: usize,
    pub x: Vec<Vertex>,
    #[serde(skip)]
    pub s: Vec<Vertex>,
    pub epsilon: f64,
    #[serde(serialize_with = "ser_ratios")]
    pub c: Vec<BigRational>,
    #[serde(rename = "L")]
    pub l: f64,
    pub family: String,
    pub options: GuidedOptions,
    pub log: Vec<StageLog>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureReport {
    pub stage: usize,
    pub step: StarvingStep,
    pub s_size: usize,
    pub y_size: usize,
    pub z_size: usize,
    pub s_prime_size: usize,
    pub max_score: usize,
    pub candidates_tried: usize,
    pub state: GuidedState,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum GuidedOutcome {
    Embedded {
        certificate: EmbeddingCertificate,
        state: GuidedState,
    },
    Failed(FailureReport),
}

impl GuidedOutcome {
    pub fn certificate(&self) -> Option<&EmbeddingCertificate> {
        match self {
            GuidedOutcome::Embedded { certificate, .. } => Some(certificate),
            GuidedOutcome::Failed(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&FailureReport> {
        match self {
            GuidedOutcome::Embedded { .. } => None,
            GuidedOutcome::Failed(f) => Some(f),
        }
    }
}

/// `c_0 = eps`, `c_{l+1} = (3 * 5^(2k) + 1) c_l + 2k eps`, for `l = 0..=t`.
pub fn exponent_sequence(eps: &BigRational, k: usize, t: usize) -> Vec<BigRational> {
    let factor = BigRational::from_integer(BigInt::from(3) * BigInt::from(5).pow(2 * k as u32) + 1);
    let step = eps * BigRational::from_integer(BigInt::from(2 * k));
    let mut c = vec![eps.clone()];
    for _ in 0..t {
        let next = &factor * c.last().expect("nonempty") + &step;
        c.push(next);
    }
    c
}

/// `sum_{i=1}^{4k-2} K^i delta^(2k - 1/2)`: how many vertices can fail to be
/// distant from a fixed vertex.
pub fn non_distant_bound(k_ratio: f64, delta: usize, k: usize) -> f64 {
    let d = delta as f64;
    (1..=4 * k - 2).map(|i| k_ratio.powi(i as i32)).sum::<f64>() * d.powf(2.0 * k as f64 - 0.5)
}

/// Marks vertices that fail to be distant from at least one of `xs`.
pub fn not_distant_mask(g: &SimpleGraph, xs: &[Vertex], k: usize, delta: usize) -> Result<Vec<bool>> {
    let mut out = vec![false; g.n()];
    let max_len = 4 * k - 2;
    let d = if delta > 0 {
        Some(ratio_from_f64(delta as f64)?)
    } else {
        None
    };
    for &x in xs {
        let layers = walk_counts_from(g, x, max_len);
        for (v, flag) in out.iter_mut().enumerate() {
            if *flag || v == x {
                continue;
            }
            let distant = (1..=max_len).all(|i| {
                let twice = 2 * i as i64 - 4 * k as i64 + 1;
                match &d {
                    Some(d) => le_half_power(&layers[i][v], d, twice),
                    // delta^e with delta = 0: infinite for e < 0, zero for e > 0
                    None => twice < 0 || layers[i][v].is_zero(),
                }
            });
            *flag = !distant;
        }
    }
    Ok(out)
}

/// Marks `y` with `dist(y, w) <= 4k - gamma - 1` for a vertex `w` on some walk
/// of length `gamma <= 4k - 2` between two of `xs`.
pub fn near_walk_mask(g: &SimpleGraph, xs: &[Vertex], k: usize) -> Vec<bool> {
    let n = g.n();
    let max_len = 4 * k - 2;
    let reach: Vec<Vec<Vec<bool>>> = xs.iter().map(|&x| walk_layers(g, x, max_len)).collect();
    let mut out = vec![false; n];
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            for gamma in 1..=max_len {
                if !reach[a][gamma][xs[b]] {
                    continue;
                }
                let on_walk: Vec<Vertex> = (0..n)
                    .filter(|&w| (0..=gamma).any(|s| reach[a][s][w] && reach[b][gamma - s][w]))
                    .collect();
                let ball = g.ball(on_walk, 4 * k - gamma - 1);
                for (o, inside) in out.iter_mut().zip(ball) {
                    *o |= inside;
                }
            }
        }
    }
    out
}

fn route_star(
    g: &SimpleGraph,
    xs: &[Vertex],
    y: Vertex,
    k: usize,
    blocked: &[Vertex],
    budget: u64,
) -> Result<Option<Vec<Vec<Vertex>>>> {
    let edges: Vec<(usize, usize, usize)> = (1..=xs.len()).map(|i| (0, i, 1)).collect();
    let spec = SubdivisionSpec::new(MultiGraph::new(xs.len() + 1, &edges)?, 2 * k - 1)?;
    let mut pins = vec![Some(y)];
    pins.extend(xs.iter().map(|&x| Some(x)));
    match Search::new(g, &spec, &pins, blocked, budget).run() {
        Ok(Some((_, paths))) => Ok(Some(
            paths
                .into_iter()
                .map(|mut p| {
                    p.reverse();
                    p
                })
                .collect(),
        )),
        Ok(None) | Err(Error::SearchBudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Builds `K_t^(2k-1)` one branch vertex at a time, choosing each new branch
/// vertex among the surviving candidates by its number of good `2k`-path
/// partners, and reports the first step that starves.
pub fn find_subdivision_guided(
    g: &SimpleGraph,
    t: usize,
    k: usize,
    epsilon: f64,
    family: &ThresholdFamily,
    options: GuidedOptions,
) -> Result<GuidedOutcome> {
    if t == 0 || k == 0 {
        return Err(Error::InvalidParameter("t and k must be at least 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} outside (0, 1)")));
    }
    let two_k = 2 * k;
    if family.max_len() < two_k {
        return Err(Error::InvalidParameter(format!(
            "threshold family covers lengths up to {}, need {two_k}",
            family.max_len()
        )));
    }
    let n = g.n();
    let profile = g.degree_profile();
    let table = classify_paths(g, family, two_k, options.path_budget)?;
    let mut good_pairs: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut linked: HashSet<(Vertex, Vertex)> = HashSet::new();
    for (p, flags) in table.entries(two_k) {
        linked.insert(p.endpoints());
        if flags.good {
            good_pairs.insert(p.endpoints());
        }
    }
    let pattern = MultiGraph::complete(t);
    let spec = SubdivisionSpec::new(pattern.clone(), two_k - 1)?;
    let mut state = GuidedState {
        t,
        k,
        stage: 0,
        x: Vec::new(),
        s: (0..n).collect(),
        epsilon,
        c: exponent_sequence(&ratio_from_f64(epsilon)?, k, t),
        l: family.l(),
        family: family.describe(),
        options,
        log: Vec::new(),
    };
    let mut paths: Vec<((usize, usize), Vec<Vertex>)> = Vec::new();

    for stage in 0..t {
        state.stage = stage;
        let s_size = state.s.len();
        let mut log = StageLog {
            stage,
            s_size,
            y_size: 0,
            z_size: 0,
            s_prime_size: 0,
            max_score: 0,
            pivot: None,
            candidates_tried: 0,
        };
        let fail = |step: StarvingStep, log: StageLog, mut state: GuidedState| {
            state.log.push(log.clone());
            Ok(GuidedOutcome::Failed(FailureReport {
                stage,
                step,
                s_size: log.s_size,
                y_size: log.y_size,
                z_size: log.z_size,
                s_prime_size: log.s_prime_size,
                max_score: log.max_score,
                candidates_tried: log.candidates_tried,
                state,
            }))
        };
        if s_size == 0 {
            return fail(StarvingStep::STooSmall, log, state);
        }
        let y_mask = if options.walk_filter {
            near_walk_mask(g, &state.x, k)
        } else {
            vec![false; n]
        };
        let z_mask = if options.distant_filter {
            not_distant_mask(g, &state.x, k, profile.delta)?
        } else {
            vec![false; n]
        };
        log.y_size = state.s.iter().filter(|&&y| y_mask[y]).count();
        log.z_size = state.s.iter().filter(|&&y| z_mask[y]).count();
        let s_prime: Vec<Vertex> = state.s.iter().copied().filter(|&y| !y_mask[y] && !z_mask[y]).collect();
        log.s_prime_size = s_prime.len();
        if s_prime.is_empty() {
            return fail(StarvingStep::DistantFilterEmptied, log, state);
        }
        let mut in_prime = vec![false; n];
        for &y in &s_prime {
            in_prime[y] = true;
        }
        let mut score = vec![0usize; n];
        for &(a, b) in &good_pairs {
            if in_prime[a] && in_prime[b] {
                score[a] += 1;
                score[b] += 1;
            }
        }
        log.max_score = s_prime.iter().map(|&y| score[y]).max().unwrap_or(0);
        let last = stage + 1 == t;
        if !last && log.max_score == 0 {
            return fail(StarvingStep::NoGoodPaths, log, state);
        }
        let mut candidates: Vec<Vertex> = s_prime.iter().copied().filter(|&y| last || score[y] > 0).collect();
        candidates.sort_by_key(|&y| (std::cmp::Reverse(score[y]), y));

        let blocked: Vec<Vertex> = paths
            .iter()
            .flat_map(|(_, p)| p[1..p.len() - 1].iter().copied())
            .collect();
        let mut chosen = None;
        for &y in &candidates {
            log.candidates_tried += 1;
            if let Some(new_paths) = route_star(g, &state.x, y, k, &blocked, options.route_budget)? {
                chosen = Some((y, new_paths));
                break;
            }
        }
        let Some((y, new_paths)) = chosen else {
            return fail(StarvingStep::NoPivot, log, state);
        };
        for (i, p) in new_paths.into_iter().enumerate() {
            paths.push(((i, stage), p));
        }
        log.pivot = Some(y);
        state.log.push(log);
        state.x.push(y);
        state.s = s_prime
            .iter()
            .copied()
            .filter(|&z| z != y && linked.contains(&(y.min(z), y.max(z))))
            .collect();
    }

    paths.sort_by_key(|(key, _)| *key);
    let certificate = EmbeddingCertificate {
        spec: Some(spec.clone()),
        branch_map: state.x.clone(),
        paths: paths.into_iter().map(|(_, p)| p).collect(),
    };
    if !verify_certificate(g, &spec, &certificate) {
        return Err(Error::Precondition(
            "guided engine produced an invalid certificate".into(),
        ));
    }
    state.stage = t;
    Ok(GuidedOutcome::Embedded { certificate, state })
}
