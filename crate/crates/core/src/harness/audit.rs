use std::cell::OnceCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::embedder::find_subdivision_exact;
use crate::error::{Error, Result};
use crate::graph::{count_paths_capped, DegreeProfile, MultiGraph, Path, SimpleGraph, SubdivisionSpec, Vertex};
use crate::numeric::{binomial, ratio_from_f64, ratio_from_uint, ratio_to_f64};
use crate::pathlab::{classify_paths, packing_reaches, GoodnessTable, PackingMode, ThresholdFamily};
use crate::richness::{aux_graph, disjointness_demand, ramsey_bound, AuxLevel, RichnessOracle};

use super::config::{AuditId, ExperimentConfig};
use crate::embedder::harvest_poor_tuples;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One measured quantity against its bound on one host.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRecord {
    pub lemma: AuditId,
    pub host_index: usize,
    pub generator: String,
    pub seed: u64,
    pub n: usize,
    pub delta: usize,
    pub max_degree: usize,
    #[serde(rename = "K")]
    pub k_ratio: String,
    pub k: usize,
    pub t: usize,
    #[serde(rename = "L")]
    pub l: f64,
    pub family: String,
    pub mode: PackingMode,
    pub s_rule: String,
    pub s_size: usize,
    pub measured: String,
    /// Exact rational, already multiplied by `constant` where one applies.
    pub bound: String,
    pub constant: f64,
    pub ratio: Option<f64>,
    pub status: Status,
    /// Strict records decide the exit code; the rest are trend data.
    pub strict: bool,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub note: String,
}

/// Number of strict records that failed.
pub fn strict_failures(records: &[AuditRecord]) -> usize {
    records.iter().filter(|r| r.strict && r.status == Status::Fail).count()
}

struct Outcome {
    measured: String,
    bound: Option<BigRational>,
    ratio: Option<f64>,
    status: Status,
    strict: bool,
    alpha: Option<usize>,
    beta: Option<usize>,
    note: String,
}

impl Outcome {
    fn na(note: impl Into<String>) -> Self {
        Outcome {
            measured: String::new(),
            bound: None,
            ratio: None,
            status: Status::NotApplicable,
            strict: false,
            alpha: None,
            beta: None,
            note: note.into(),
        }
    }

    /// `measured <= bound` (upper) or `measured >= bound` (lower).
    fn compare(measured: BigRational, bound: BigRational, upper: bool, strict: bool) -> Self {
        let ok = if upper { measured <= bound } else { measured >= bound };
        let ratio = (!bound.is_zero()).then(|| ratio_to_f64(&(&measured / &bound)));
        Outcome {
            measured: show(&measured),
            bound: Some(bound),
            ratio,
            status: if ok { Status::Pass } else { Status::Fail },
            strict,
            alpha: None,
            beta: None,
            note: String::new(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

fn show(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn pow(base: usize, e: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(base).pow(e as u32))
}

/// Which `L`-dependent statements hold at every scale for `family`: the
/// pigeonhole inequality makes an admissible, non-good path of length `l`
/// force `ceil(L)` internally disjoint paths.
fn pigeonhole_closed(family: &ThresholdFamily) -> bool {
    family.satisfies_pigeonhole()
}

/// Admissible, non-good pairs at lengths `2..=table.max_len()` checked for
/// `target` internally disjoint paths by exact packing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DisjointnessCheck {
    pub checked: u64,
    pub violations: u64,
    pub exhausted: u64,
}

pub fn check_admissible_not_good(
    g: &SimpleGraph,
    table: &GoodnessTable,
    lengths: impl IntoIterator<Item = usize>,
    target: usize,
    budget: u64,
) -> Result<DisjointnessCheck> {
    let mut out = DisjointnessCheck::default();
    for len in lengths {
        for &(u, v) in &table.bad_pairs(len).pairs {
            out.checked += 1;
            match packing_reaches(g, u, v, len, target, PackingMode::ExactMax, budget) {
                Ok(r) if r.reached => {}
                Ok(_) => out.violations += 1,
                Err(Error::SearchBudgetExceeded { .. }) => out.exhausted += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

struct Cell<'a> {
    cfg: &'a ExperimentConfig,
    g: SimpleGraph,
    profile: DegreeProfile,
    s: Vec<Vertex>,
    family: ThresholdFamily,
    spec: SubdivisionSpec,
    constant: BigRational,
    l: BigRational,
    table: OnceCell<std::result::Result<GoodnessTable, String>>,
    h_free: OnceCell<Option<bool>>,
}

impl<'a> Cell<'a> {
    fn table(&self) -> std::result::Result<&GoodnessTable, String> {
        self.table
            .get_or_init(|| {
                classify_paths(&self.g, &self.family, 2 * self.cfg.k, self.cfg.budgets.paths).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// `Some(true)` when the exact oracle certifies that `H` is absent.
    fn h_free(&self) -> Option<bool> {
        *self.h_free.get_or_init(
            || match find_subdivision_exact(&self.g, &self.spec, self.cfg.budgets.search) {
                Ok(found) => Some(found.is_none()),
                Err(_) => None,
            },
        )
    }

    fn oracle(&self) -> Result<RichnessOracle<'_>> {
        RichnessOracle::new(
            &self.g,
            self.cfg.k,
            &self.spec,
            &self.profile,
            self.cfg.mode,
            self.cfg.budgets.packing,
        )
    }

    fn n(&self) -> usize {
        self.g.n()
    }

    fn h(&self) -> usize {
        self.spec.vertex_count()
    }

    fn require_h_free(&self) -> std::result::Result<(), Outcome> {
        match self.h_free() {
            Some(true) => Ok(()),
            Some(false) => Err(Outcome::na("host contains H")),
            None => Err(Outcome::na("H-freeness undecided within search budget")),
        }
    }

    fn run(&self, lemma: AuditId) -> Outcome {
        let r = match lemma {
            AuditId::BadPairPacking => self.bad_pair_packing(),
            AuditId::Good2kCount => self.good_2k_count(),
            AuditId::ShortNonGood => self.short_non_good(),
            AuditId::LongNonGood => self.long_non_good(),
            AuditId::RichPacking => self.rich_packing(),
            AuditId::AuxCliqueFree => self.aux_clique_free(),
            AuditId::PoorHarvest => self.poor_harvest(),
            AuditId::RepeatedWalks => self.repeated_walks(),
            AuditId::NonGood2k => self.non_good_2k(),
            AuditId::PoorMirrored => self.poor_mirrored(false),
            AuditId::BadGoodHalves => self.poor_mirrored(true),
            AuditId::FCap => self.f_cap(),
        };
        r.unwrap_or_else(|e| Outcome::na(e.to_string()))
    }

    fn bad_pair_packing(&self) -> Result<Outcome> {
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => return Ok(Outcome::na(e)),
        };
        let target = self.cfg.l.ceil() as usize;
        let c = check_admissible_not_good(&self.g, table, 2..=table.max_len(), target, self.cfg.budgets.packing)?;
        if c.exhausted > 0 {
            return Ok(Outcome::na(format!("{} packing searches hit the budget", c.exhausted)));
        }
        Ok(Outcome::compare(
            int(c.violations),
            BigRational::zero(),
            true,
            pigeonhole_closed(&self.family),
        )
        .with_note(format!("checked {} bad pairs", c.checked)))
    }

    fn good_2k_count(&self) -> Result<Outcome> {
        if self.n() == 0 {
            return Ok(Outcome::na("empty host"));
        }
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => return Ok(Outcome::na(e)),
        };
        let two_k = 2 * self.cfg.k;
        let measured = table.count_good_within(&self.s, two_k);
        let s = self.s.len();
        let bound = &self.constant * pow(s, 2) * pow(self.profile.delta, two_k) / int(self.n() as u64);
        Ok(Outcome::compare(int(measured), bound, false, false))
    }

    fn short_non_good(&self) -> Result<Outcome> {
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => return Ok(Outcome::na(e)),
        };
        let k = self.cfg.k;
        let measured = table.entries(k).filter(|(_, f)| !f.good).count() as u64;
        let bound = &self.constant * int(self.n() as u64) * pow(self.profile.delta, k) / &self.l;
        Ok(Outcome::compare(int(measured), bound, true, false))
    }

    fn long_non_good(&self) -> Result<Outcome> {
        let k = self.cfg.k;
        if k < 2 {
            return Ok(Outcome::na("needs k >= 2"));
        }
        if let Err(o) = self.require_h_free() {
            return Ok(o);
        }
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => return Ok(Outcome::na(e)),
        };
        let mut worst: Option<(Outcome, f64, usize)> = None;
        let mut failed = false;
        for len in 2..=k {
            let measured = table.entries(len).filter(|(_, f)| f.admissible && !f.good).count() as u64;
            let bound =
                int(2 * self.n() as u64) * pow(self.profile.max_degree, len) / ratio_from_uint(self.family.f(len - 1));
            let o = Outcome::compare(int(measured), bound, true, true);
            failed |= o.status == Status::Fail;
            let r = o.ratio.unwrap_or(f64::INFINITY);
            if worst.as_ref().is_none_or(|w| r > w.1) {
                worst = Some((o, r, len));
            }
        }
        let (mut o, _, len) = worst.expect("k >= 2");
        if failed {
            o.status = Status::Fail;
        }
        Ok(o.with_note(format!("worst length {len}")))
    }

    fn ordered_pairs(&self) -> Option<Vec<(Vertex, Vertex)>> {
        let s = self.s.len() as u64;
        if s * s.saturating_sub(1) > self.cfg.budgets.pairs {
            return None;
        }
        Some(
            self.s
                .iter()
                .flat_map(|&x| self.s.iter().filter(move |&&y| y != x).map(move |&y| (x, y)))
                .collect(),
        )
    }

    fn rich_packing(&self) -> Result<Outcome> {
        let Some(pairs) = self.ordered_pairs() else {
            return Ok(Outcome::na("pair budget exceeded"));
        };
        let k = self.cfg.k;
        let mut oracle = self.oracle()?;
        let mut rich = 0u64;
        let mut violations = 0u64;
        let mut unknown = 0u64;
        for (x, y) in pairs {
            let is_rich = (0..2 * k)
                .flat_map(|i| (0..2 * k - i).map(move |j| (i, j)))
                .map(|(i, j)| oracle.is_rich(x, y, i, j))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .any(|b| b);
            if !is_rich {
                continue;
            }
            rich += 1;
            match packing_reaches(
                &self.g,
                x,
                y,
                2 * k,
                self.h(),
                PackingMode::ExactMax,
                self.cfg.budgets.packing,
            ) {
                Ok(r) if r.reached => {}
                Ok(_) => violations += 1,
                Err(Error::SearchBudgetExceeded { .. }) => unknown += 1,
                Err(e) => return Err(e),
            }
        }
        if unknown > 0 {
            return Ok(Outcome::na(format!("{unknown} packing checks hit the budget")));
        }
        Ok(Outcome::compare(int(violations), BigRational::zero(), true, true)
            .with_note(format!("{rich} rich ordered pairs")))
    }

    fn aux_clique_free(&self) -> Result<Outcome> {
        if let Err(o) = self.require_h_free() {
            return Ok(o);
        }
        let k = self.cfg.k;
        let t = self.cfg.t;
        let r = ramsey_bound(k, t)?;
        let r_small = r.as_usize().filter(|&r| r <= 64);
        let mut oracle = self.oracle()?;
        let mut witnesses = 0u64;
        for &v in &self.s {
            let aux = match aux_graph(&self.g, v, AuxLevel::Union, &mut oracle, self.cfg.budgets.tuples) {
                Ok(a) => a,
                Err(Error::PathBudgetExceeded { .. }) => return Ok(Outcome::na("tuple budget exceeded")),
                Err(e) => return Err(e),
            };
            for l in 1..=k {
                if !aux.level_subgraph(l).clique_free_up_to(t)?.free {
                    witnesses += 1;
                }
            }
            if let Some(r) = r_small {
                if !aux.clique_free_up_to(r)?.free {
                    witnesses += 1;
                }
            }
        }
        let note = match r_small {
            Some(r) => format!("r = {r}"),
            None => "union check skipped: r too large".into(),
        };
        Ok(Outcome::compare(int(witnesses), BigRational::zero(), true, true).with_note(note))
    }

    fn poor_harvest(&self) -> Result<Outcome> {
        let k = self.cfg.k;
        let r = match ramsey_bound(k, self.cfg.t)?.as_usize() {
            Some(r) => r,
            None => return Ok(Outcome::na("Ramsey bound too large")),
        };
        let n = self.n() as u64;
        let delta = self.profile.delta;
        if delta == 0 {
            return Ok(Outcome::na("minimum degree 0"));
        }
        let s = self.s.len();
        if int(s as u64) * pow(delta, k) < int(2 * n * r as u64) {
            return Ok(Outcome::na(format!("|S| = {s} below 2nr/delta^k")));
        }
        if let Err(o) = self.require_h_free() {
            return Ok(o);
        }
        let bound = pow(s, 2) * pow(delta, 2 * k) / int(4 * (r * r) as u64 * n);
        let mut oracle = self.oracle()?;
        let h = harvest_poor_tuples(&self.g, &self.s, &mut oracle, self.cfg.budgets.tuples)?;
        let measured = int(h.count as u64);
        if h.exhausted && measured < bound {
            return Ok(Outcome::na("tuple budget exhausted below the bound"));
        }
        let o = Outcome::compare(measured, bound, false, !h.heuristic);
        Ok(if h.heuristic {
            o.with_note("poor verdicts not certified")
        } else {
            o
        })
    }

    fn repeated_walks(&self) -> Result<Outcome> {
        let k = self.cfg.k;
        let two_k = 2 * k;
        let Some(paths) = count_paths_capped(&self.g, two_k, self.cfg.budgets.paths) else {
            return Ok(Outcome::na("path budget exceeded"));
        };
        let mut walks = vec![BigUint::one(); self.n()];
        for _ in 0..two_k {
            let mut next = vec![BigUint::zero(); self.n()];
            for (v, c) in walks.iter().enumerate() {
                for &w in self.g.neighbors(v) {
                    next[w] += c;
                }
            }
            walks = next;
        }
        let total: BigUint = walks.iter().sum();
        let repeated = total - BigUint::from(2 * paths);
        let bound = ratio_from_uint(&binomial(two_k as u64 + 1, 2))
            * int(self.n() as u64)
            * pow(self.profile.max_degree, two_k - 1);
        Ok(Outcome::compare(ratio_from_uint(&repeated), bound, true, true))
    }

    fn non_good_2k(&self) -> Result<Outcome> {
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => return Ok(Outcome::na(e)),
        };
        let k = self.cfg.k;
        let measured = table
            .paths(2 * k)
            .par_iter()
            .filter(|p| (0..=k).any(|j| !table.is_good(&p.subpath(j, j + k))))
            .count() as u64;
        let bound = &self.constant * int(self.n() as u64) * pow(self.profile.delta, 2 * k) / &self.l;
        Ok(Outcome::compare(int(measured), bound, true, false))
    }

    /// `bad = false`: paths whose mirrored pairs are all poor and that carry
    /// a far-apart pair joined by many disjoint paths.
    /// `bad = true`: non-good paths with good halves must carry such a pair.
    fn poor_mirrored(&self, bad: bool) -> Result<Outcome> {
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => return Ok(Outcome::na(e)),
        };
        let k = self.cfg.k;
        let demand = disjointness_demand(self.h(), k);
        let mut oracle = self.oracle()?;
        let mut far: HashMap<(Vertex, Vertex, usize), Option<bool>> = HashMap::new();
        let mut witness_counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        let mut counted = 0u64;
        let mut considered = 0u64;
        let mut unknown = 0u64;
        for (p, flags) in table.entries(2 * k) {
            let u = p.vertices();
            if bad {
                if flags.good || (0..=k).any(|j| !table.is_good(&Path::canonical(u[j..=j + k].to_vec()))) {
                    continue;
                }
            } else {
                let mut poor = true;
                for l in 1..=k {
                    if !oracle.poor_for_all(u[k - l], u[k + l])? {
                        poor = false;
                        break;
                    }
                }
                if !poor {
                    continue;
                }
            }
            considered += 1;
            let mut witness = None;
            let mut undecided = false;
            'search: for alpha in 1..=k {
                for beta in (k + 1 - alpha).max(1)..=k {
                    let (a, b, len) = (u[k - alpha], u[k + beta], alpha + beta);
                    let key = (a.min(b), a.max(b), len);
                    let reached = *far.entry(key).or_insert_with(|| {
                        match packing_reaches(
                            &self.g,
                            a,
                            b,
                            len,
                            demand,
                            PackingMode::ExactMax,
                            self.cfg.budgets.packing,
                        ) {
                            Ok(r) => Some(r.reached),
                            Err(_) => None,
                        }
                    });
                    match reached {
                        Some(true) => {
                            witness = Some((alpha, beta));
                            break 'search;
                        }
                        Some(false) => {}
                        None => undecided = true,
                    }
                }
            }
            match witness {
                Some(ab) => {
                    *witness_counts.entry(ab).or_default() += 1;
                    if !bad {
                        counted += 1;
                    }
                }
                None if undecided => unknown += 1,
                None => {
                    if bad {
                        counted += 1;
                    }
                }
            }
        }
        let top = witness_counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&ab, _)| ab);
        let mut o = if bad {
            if unknown > 0 {
                return Ok(Outcome::na(format!("{unknown} packing checks hit the budget")));
            }
            let strict = pigeonhole_closed(&self.family) && self.cfg.l >= demand as f64;
            Outcome::compare(int(counted), BigRational::zero(), true, strict)
                .with_note(format!("{considered} non-good paths with good halves"))
        } else {
            let bound = &self.constant * int(self.n() as u64) * pow(self.profile.delta, 2 * k - 1);
            Outcome::compare(int(counted), bound, true, false).with_note(if unknown > 0 {
                format!("{unknown} paths undecided")
            } else {
                String::new()
            })
        };
        if let Some((a, b)) = top {
            o.alpha = Some(a);
            o.beta = Some(b);
        }
        Ok(o)
    }

    fn f_cap(&self) -> Result<Outcome> {
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => return Ok(Outcome::na(e)),
        };
        let mut violations = 0u64;
        let mut pairs = 0u64;
        for len in 1..=table.max_len() {
            let mut good: BTreeMap<(Vertex, Vertex), u64> = BTreeMap::new();
            for (p, f) in table.entries(len) {
                if f.good {
                    *good.entry(p.endpoints()).or_default() += 1;
                }
            }
            pairs += good.len() as u64;
            violations += good.values().filter(|&&c| !self.family.admits(len, c)).count() as u64;
        }
        Ok(Outcome::compare(int(violations), BigRational::zero(), true, true)
            .with_note(format!("{pairs} pairs carry good paths")))
    }
}

/// Runs every configured audit on every host and seed. Rows are ordered by
/// (audit position, host index, seed position).
pub fn run_lemma_audit(cfg: &ExperimentConfig) -> Result<Vec<AuditRecord>> {
    cfg.validate()?;
    let family = cfg.threshold_family()?;
    let spec = SubdivisionSpec::for_k(MultiGraph::complete(cfg.t), cfg.k)?;
    let constant = ratio_from_f64(cfg.constant)?;
    let l = ratio_from_f64(cfg.l)?;
    let hosts = cfg.hosts();
    let mut cells = Vec::new();
    for (hi, &(gen, n)) in hosts.iter().enumerate() {
        for &seed in &cfg.seeds {
            cells.push((hi, gen, n, seed));
        }
    }
    let per_cell: Vec<Result<Vec<(usize, usize, usize, AuditRecord)>>> = cells
        .par_iter()
        .enumerate()
        .map(|(ci, &(hi, gen, n, seed))| {
            let g = cfg.build_host(gen, n, seed)?;
            let s = cfg.s_rule.select(&g, seed)?;
            let profile = g.degree_profile();
            let cell = Cell {
                cfg,
                g,
                profile,
                s,
                family: family.clone(),
                spec: spec.clone(),
                constant: constant.clone(),
                l: l.clone(),
                table: OnceCell::new(),
                h_free: OnceCell::new(),
            };
            let k_ratio = if profile.delta == 0 {
                "inf".to_string()
            } else {
                show(&BigRational::new(
                    BigInt::from(profile.max_degree),
                    BigInt::from(profile.delta),
                ))
            };
            Ok(cfg
                .audits
                .iter()
                .enumerate()
                .map(|(ai, &lemma)| {
                    let o = cell.run(lemma);
                    let uses_constant = matches!(
                        lemma,
                        AuditId::Good2kCount | AuditId::ShortNonGood | AuditId::NonGood2k | AuditId::PoorMirrored
                    );
                    (
                        ai,
                        hi,
                        ci,
                        AuditRecord {
                            lemma,
                            host_index: hi,
                            generator: cfg.generators[gen].describe(),
                            seed,
                            n: cell.n(),
                            delta: profile.delta,
                            max_degree: profile.max_degree,
                            k_ratio: k_ratio.clone(),
                            k: cfg.k,
                            t: cfg.t,
                            l: cfg.l,
                            family: family.describe(),
                            mode: cfg.mode,
                            s_rule: cfg.s_rule.describe(),
                            s_size: cell.s.len(),
                            measured: o.measured,
                            bound: o.bound.as_ref().map(show).unwrap_or_default(),
                            constant: if uses_constant { cfg.constant } else { 1.0 },
                            ratio: o.ratio,
                            status: o.status,
                            strict: o.strict,
                            alpha: o.alpha,
                            beta: o.beta,
                            note: o.note,
                        },
                    )
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_cell {
        rows.extend(r?);
    }
    rows.sort_by_key(|&(ai, hi, ci, _)| (ai, hi, ci));
    Ok(rows.into_iter().map(|(_, _, _, r)| r).collect())
}
