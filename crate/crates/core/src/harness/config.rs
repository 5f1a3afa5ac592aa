use std::path::{Path as FsPath, PathBuf};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{read_simple_graph, SimpleGraph, Vertex};
use crate::pathlab::{PackingMode, ThresholdFamily};

use super::{gen_random, RandomKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    ErdosRenyi { p: f64 },
    RandomRegular { d: usize },
    File { path: String },
}

impl GeneratorSpec {
    pub fn describe(&self) -> String {
        match self {
            GeneratorSpec::ErdosRenyi { p } => format!("erdos-renyi(p={p})"),
            GeneratorSpec::RandomRegular { d } => format!("random-regular(d={d})"),
            GeneratorSpec::File { path } => format!("file({path})"),
        }
    }
}

/// How the vertex set `S` is chosen on each host.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SRule {
    #[default]
    All,
    /// `size` vertices drawn uniformly with the cell's seed.
    Random { size: usize },
    /// Vertices within `radius` of `center`.
    Ball { center: Vertex, radius: usize },
}

impl SRule {
    pub fn describe(&self) -> String {
        match self {
            SRule::All => "all".into(),
            SRule::Random { size } => format!("random({size})"),
            SRule::Ball { center, radius } => format!("ball({center},{radius})"),
        }
    }

    pub fn select(&self, g: &SimpleGraph, seed: u64) -> Result<Vec<Vertex>> {
        let n = g.n();
        match *self {
            SRule::All => Ok((0..n).collect()),
            SRule::Random { size } => {
                if size > n {
                    return Err(Error::Config(format!("S of size {size} from {n} vertices")));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_0F5E_7000_0000);
                let mut s = sample(&mut rng, n, size).into_vec();
                s.sort_unstable();
                Ok(s)
            }
            SRule::Ball { center, radius } => {
                if center >= n {
                    return Err(Error::Config(format!("ball centre {center} out of range")));
                }
                let ball = g.ball([center], radius);
                Ok((0..n).filter(|&v| ball[v]).collect())
            }
        }
    }
}

/// One audited counting bound. Serialized as a short numeric id; the
/// descriptive aliases are accepted in configs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AuditId {
    #[serde(rename = "2.3", alias = "bad-pair-packing")]
    BadPairPacking,
    #[serde(rename = "2.6", alias = "good-2k-count")]
    Good2kCount,
    #[serde(rename = "3.1", alias = "short-non-good")]
    ShortNonGood,
    #[serde(rename = "3.5", alias = "long-non-good")]
    LongNonGood,
    #[serde(rename = "4.2", alias = "rich-packing")]
    RichPacking,
    #[serde(rename = "4.4", alias = "aux-clique-free")]
    AuxCliqueFree,
    #[serde(rename = "4.5", alias = "poor-harvest")]
    PoorHarvest,
    #[serde(rename = "4.6", alias = "repeated-walks")]
    RepeatedWalks,
    #[serde(rename = "4.7", alias = "non-good-2k")]
    NonGood2k,
    #[serde(rename = "4.8", alias = "poor-mirrored")]
    PoorMirrored,
    #[serde(rename = "4.9-2kbad", alias = "bad-good-halves")]
    BadGoodHalves,
    #[serde(rename = "f-cap")]
    FCap,
}

impl AuditId {
    pub const ALL: [AuditId; 12] = [
        AuditId::BadPairPacking,
        AuditId::Good2kCount,
        AuditId::ShortNonGood,
        AuditId::LongNonGood,
        AuditId::RichPacking,
        AuditId::AuxCliqueFree,
        AuditId::PoorHarvest,
        AuditId::RepeatedWalks,
        AuditId::NonGood2k,
        AuditId::PoorMirrored,
        AuditId::BadGoodHalves,
        AuditId::FCap,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AuditId::BadPairPacking => "2.3",
            AuditId::Good2kCount => "2.6",
            AuditId::ShortNonGood => "3.1",
            AuditId::LongNonGood => "3.5",
            AuditId::RichPacking => "4.2",
            AuditId::AuxCliqueFree => "4.4",
            AuditId::PoorHarvest => "4.5",
            AuditId::RepeatedWalks => "4.6",
            AuditId::NonGood2k => "4.7",
            AuditId::PoorMirrored => "4.8",
            AuditId::BadGoodHalves => "4.9-2kbad",
            AuditId::FCap => "f-cap",
        }
    }
}

impl std::fmt::Display for AuditId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    /// Paths enumerated while classifying.
    pub paths: u64,
    /// Nodes per packing search.
    pub packing: u64,
    /// Nodes per subdivision search.
    pub search: u64,
    /// Aux-graph and harvest tuples.
    pub tuples: u64,
    /// Ordered pairs examined by the richness audit.
    pub pairs: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            paths: 10_000_000,
            packing: 1_000_000,
            search: 10_000_000,
            tuples: 1_000_000,
            pairs: 5_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub csv: String,
    pub json: String,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            csv: "audit.csv".into(),
            json: "audit.json".into(),
        }
    }
}

fn default_k() -> usize {
    1
}
fn default_t() -> usize {
    3
}
fn default_l() -> f64 {
    2.0
}
fn default_family() -> String {
    "paper".into()
}
fn default_constant() -> f64 {
    1.0
}
fn default_mode() -> PackingMode {
    PackingMode::ExactMax
}

/// A lemma-audit experiment. Every host is built from one generator, one
/// size (ignored by file generators) and one seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    #[serde(default = "default_k")]
    pub k: usize,
    /// `F = K_t`.
    #[serde(default = "default_t")]
    pub t: usize,
    #[serde(rename = "L", default = "default_l")]
    pub l: f64,
    /// `paper`, `pigeonhole` or `custom:FILE`.
    #[serde(default = "default_family")]
    pub family: String,
    /// Constant multiplying asymptotic bounds.
    #[serde(default = "default_constant")]
    pub constant: f64,
    #[serde(default = "default_mode")]
    pub mode: PackingMode,
    #[serde(default)]
    pub s_rule: SRule,
    pub audits: Vec<AuditId>,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<FsPath>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg = Self::from_toml(&std::fs::read_to_string(path)?)?;
        cfg.base_dir = path.parent().map(|p| p.to_path_buf());
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.generators.is_empty() || self.seeds.is_empty() || self.audits.is_empty() {
            return Err(Error::Config("generators, seeds and audits must be non-empty".into()));
        }
        let random = self.generators.iter().any(|g| !matches!(g, GeneratorSpec::File { .. }));
        if random && self.sizes.is_empty() {
            return Err(Error::Config("random generators need sizes".into()));
        }
        if self.k == 0 || self.t < 2 {
            return Err(Error::Config("need k >= 1 and t >= 2".into()));
        }
        if !(self.constant > 0.0 && self.constant.is_finite()) {
            return Err(Error::Config("constant must be positive".into()));
        }
        Ok(())
    }

    fn resolve(&self, path: &str) -> PathBuf {
        let p = PathBuf::from(path);
        match &self.base_dir {
            Some(base) if p.is_relative() => base.join(p),
            _ => p,
        }
    }

    /// Threshold family covering lengths `1..=2k`.
    pub fn threshold_family(&self) -> Result<ThresholdFamily> {
        let len = 2 * self.k;
        match self.family.as_str() {
            "paper" => ThresholdFamily::paper(self.l, len),
            "pigeonhole" => ThresholdFamily::pigeonhole(self.l, len),
            other => match other.strip_prefix("custom:") {
                Some(file) => ThresholdFamily::parse_custom(self.l, &std::fs::read_to_string(self.resolve(file))?),
                None => Err(Error::Config(format!("unknown family {other:?}"))),
            },
        }
    }

    /// `(generator index, size)` for every host, in order.
    pub fn hosts(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            match g {
                GeneratorSpec::File { .. } => out.push((i, 0)),
                _ => out.extend(self.sizes.iter().map(|&n| (i, n))),
            }
        }
        out
    }

    pub fn build_host(&self, generator: usize, n: usize, seed: u64) -> Result<SimpleGraph> {
        match &self.generators[generator] {
            GeneratorSpec::ErdosRenyi { p } => gen_random(RandomKind::ErdosRenyi, n, *p, seed),
            GeneratorSpec::RandomRegular { d } => gen_random(RandomKind::RandomRegular, n, *d as f64, seed),
            GeneratorSpec::File { path } => read_simple_graph(self.resolve(path)),
        }
    }
}
