use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use subdiv_core::embedder::{find_subdivision_exact, find_subdivision_guided, GuidedOptions, DEFAULT_SEARCH_BUDGET};
use subdiv_core::extremal::{ex_exact, ex_lower_search, SearchOptions, DEFAULT_EXACT_CAP};
use subdiv_core::graph::{read_multigraph, read_simple_graph, subdivide, write_edge_list};
use subdiv_core::harness::{
    self, gen_random, run_lemma_audit, strict_failures, write_report, ExperimentConfig, RandomKind,
};
use subdiv_core::pathlab::{classify_paths, PackingMode, ThresholdFamily, DEFAULT_NODE_BUDGET, DEFAULT_PATH_BUDGET};
use subdiv_core::regularize::extract_almost_regular;
use subdiv_core::richness::RichnessOracle;
use subdiv_core::{Error, MultiGraph, Result, SubdivisionSpec, Vertex};

#[derive(Parser)]
#[command(name = "subdiv", version, about = "Subdivision embedding and path-goodness toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the edge list of F^s.
    Subdivide {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Extract a dense almost-regular induced subgraph.
    Regularize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Edge list of the subgraph, relabelled to 0..m-1.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Admissible/good classification of all paths up to a length.
    ClassifyPaths {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "L")]
        l: f64,
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_PATH_BUDGET)]
        budget: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Rich/poor verdicts for vertex pairs.
    RichPairs {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        pattern: String,
        /// `all` for every ordered pair, or a file of `x y` lines.
        #[arg(long, default_value = "all")]
        pairs: String,
        #[arg(long, default_value = "exact")]
        mode: PackingMode,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Look for a copy of F^s in a host graph.
    FindSubdivision {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value = "exact")]
        mode: FindMode,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long = "L", default_value_t = 2.0)]
        l: f64,
        #[command(flatten)]
        family: FamilyArg,
        /// Guided mode without the distant and walk filters.
        #[arg(long)]
        relaxed: bool,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Exact ex(n, F^s) by orderly generation.
    ExtremalExact {
        #[command(flatten)]
        target: ExtremalTarget,
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        cap: usize,
    },
    /// Lower bound on ex(n, F^s) by annealing.
    ExtremalSearch {
        #[command(flatten)]
        target: ExtremalTarget,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        chains: usize,
    },
    /// Random host graph as an edge list.
    GenRandom {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// `p` for erdos-renyi, `d` for random-regular.
        #[arg(long)]
        parameter: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the configured audit grid; exits 1 when a strict audit fails.
    LemmaAudit {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct FamilyArg {
    /// paper, pigeonhole or custom:FILE
    #[arg(long, default_value = "paper")]
    family: String,
}

#[derive(Args)]
struct ExtremalTarget {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    s: usize,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FindMode {
    Exact,
    Guided,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Kind {
    ErdosRenyi,
    RandomRegular,
}

/// `K<t>`, `K2x<m>` (two vertices, `m` parallel edges) or an edge-list file.
fn load_pattern(arg: &str) -> Result<MultiGraph> {
    if !FsPath::new(arg).exists() {
        if let Some(m) = arg.strip_prefix("K2x").and_then(|m| m.parse().ok()) {
            return MultiGraph::parallel(m);
        }
        if let Some(t) = arg.strip_prefix('K').and_then(|t| t.parse().ok()) {
            return Ok(MultiGraph::complete(t));
        }
    }
    read_multigraph(arg)
}

fn family(arg: &FamilyArg, l: f64, max_len: usize) -> Result<ThresholdFamily> {
    match arg.family.as_str() {
        "paper" => ThresholdFamily::paper(l, max_len),
        "pigeonhole" => ThresholdFamily::pigeonhole(l, max_len),
        other => match other.strip_prefix("custom:") {
            Some(file) => ThresholdFamily::parse_custom(l, &fs::read_to_string(file)?),
            None => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        },
    }
}

fn emit(text: &str, path: Option<&FsPath>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn read_pairs(arg: &str, n: usize) -> Result<Vec<(Vertex, Vertex)>> {
    if arg == "all" {
        return Ok((0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect());
    }
    let text = fs::read_to_string(arg)?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = || Error::Parse {
            line: idx + 1,
            message: format!("expected two vertex ids, found {line:?}"),
        };
        let ids: Vec<Vertex> = line
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| parse_err()))
            .collect::<Result<_>>()?;
        match ids[..] {
            [x, y] if x != y && x < n && y < n => out.push((x, y)),
            _ => return Err(parse_err()),
        }
    }
    Ok(out)
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Subdivide { pattern, s, output } => {
            let spec = SubdivisionSpec::new(load_pattern(&pattern)?, s)?;
            emit(&write_edge_list(&subdivide(&spec)?), output.as_deref())?;
        }
        Command::Regularize {
            input,
            epsilon,
            c,
            output,
            report,
        } => {
            let g = read_simple_graph(&input)?;
            let res = extract_almost_regular(&g, epsilon, c)?;
            if let Some(out) = output {
                fs::write(out, write_edge_list(&res.subgraph))?;
            }
            emit(&to_json(&res)?, report.as_deref())?;
        }
        Command::ClassifyPaths {
            input,
            l,
            family: fam,
            max_len,
            budget,
            report,
        } => {
            let g = read_simple_graph(&input)?;
            let f = family(&fam, l, max_len)?;
            let table = classify_paths(&g, &f, max_len, budget)?;
            let layers: Vec<_> = (1..=max_len)
                .map(|len| {
                    let bad = if len >= 2 {
                        table.bad_pairs(len).pairs
                    } else {
                        Default::default()
                    };
                    json!({
                        "summary": table.summary(len),
                        "f": f.f(len).to_string(),
                        "bad_pairs": bad,
                    })
                })
                .collect();
            let doc = json!({
                "n": g.n(),
                "family": f.describe(),
                "pigeonhole": f.satisfies_pigeonhole(),
                "layers": layers,
            });
            emit(&to_json(&doc)?, report.as_deref())?;
        }
        Command::RichPairs {
            input,
            k,
            pattern,
            pairs,
            mode,
            budget,
            report,
        } => {
            let g = read_simple_graph(&input)?;
            let spec = SubdivisionSpec::for_k(load_pattern(&pattern)?, k)?;
            let profile = g.degree_profile();
            let mut oracle = RichnessOracle::new(&g, k, &spec, &profile, mode, budget)?;
            let mut reports = Vec::new();
            let mut rich_pairs = 0usize;
            let pair_list = read_pairs(&pairs, g.n())?;
            for &(x, y) in &pair_list {
                let mut any = false;
                for i in 0..2 * k {
                    for j in 0..2 * k - i {
                        let r = oracle.report(x, y, i, j)?;
                        any |= r.rich;
                        reports.push(r);
                    }
                }
                rich_pairs += any as usize;
            }
            let doc = json!({
                "n": g.n(),
                "k": k,
                "h": spec.vertex_count(),
                "demand": oracle.demand(),
                "mode": mode,
                "pairs": pair_list.len(),
                "rich_pairs": rich_pairs,
                "uncertified_checks": oracle.uncertified_checks,
                "exhausted_checks": oracle.exhausted_checks,
                "reports": reports,
            });
            emit(&to_json(&doc)?, report.as_deref())?;
        }
        Command::FindSubdivision {
            input,
            pattern,
            s,
            mode,
            t,
            k,
            epsilon,
            l,
            family: fam,
            relaxed,
            budget,
            cert,
        } => {
            let g = read_simple_graph(&input)?;
            let missing = |what: &str| Error::InvalidParameter(format!("--{what} is required in this mode"));
            let (certificate, doc) = match mode {
                FindMode::Exact => {
                    let pattern = load_pattern(pattern.as_deref().ok_or_else(|| missing("pattern"))?)?;
                    let spec = SubdivisionSpec::new(pattern, s.ok_or_else(|| missing("s"))?)?;
                    let found = find_subdivision_exact(&g, &spec, budget)?;
                    let doc = json!({ "mode": "exact", "found": found.is_some() });
                    (found, doc)
                }
                FindMode::Guided => {
                    let t = t.ok_or_else(|| missing("t"))?;
                    let k = k.or_else(|| s.map(|s| s.div_ceil(2))).ok_or_else(|| missing("k"))?;
                    let f = family(&fam, l, 2 * k)?;
                    let options = GuidedOptions {
                        route_budget: budget,
                        ..if relaxed {
                            GuidedOptions::relaxed()
                        } else {
                            GuidedOptions::default()
                        }
                    };
                    let outcome = find_subdivision_guided(&g, t, k, epsilon, &f, options)?;
                    let doc = json!({ "mode": "guided", "found": outcome.certificate().is_some(), "outcome": outcome });
                    (outcome.certificate().cloned(), doc)
                }
            };
            if let (Some(c), Some(path)) = (&certificate, &cert) {
                fs::write(path, c.to_json()? + "\n")?;
            }
            emit(&to_json(&doc)?, None)?;
        }
        Command::ExtremalExact { target, cap } => {
            let spec = SubdivisionSpec::new(load_pattern(&target.pattern)?, target.s)?;
            emit(&to_json(&ex_exact(target.n, &spec, cap)?)?, None)?;
        }
        Command::ExtremalSearch {
            target,
            budget,
            seed,
            chains,
        } => {
            let spec = SubdivisionSpec::new(load_pattern(&target.pattern)?, target.s)?;
            let opts = SearchOptions {
                budget,
                seed,
                chains,
                ..SearchOptions::default()
            };
            emit(&to_json(&ex_lower_search(target.n, &spec, &opts)?)?, None)?;
        }
        Command::GenRandom {
            kind,
            n,
            parameter,
            seed,
            output,
        } => {
            let kind = match kind {
                Kind::ErdosRenyi => RandomKind::ErdosRenyi,
                Kind::RandomRegular => RandomKind::RandomRegular,
            };
            emit(
                &write_edge_list(&gen_random(kind, n, parameter, seed)?),
                output.as_deref(),
            )?;
        }
        Command::LemmaAudit { config, out_dir } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            let records = run_lemma_audit(&cfg)?;
            fs::create_dir_all(&out_dir)?;
            let (csv, sidecar) = write_report(&cfg, &records, &out_dir)?;
            let failures = strict_failures(&records);
            println!("{} records, {failures} strict failures", records.len());
            println!("{}", csv.display());
            println!("{}", sidecar.display());
            if failures > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    harness::init_workers();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
