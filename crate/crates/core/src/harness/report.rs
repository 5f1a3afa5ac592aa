use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};

use serde::Serialize;

use crate::error::Result;

use super::audit::{strict_failures, AuditRecord, Status};
use super::config::ExperimentConfig;

#[derive(Serialize)]
struct Sidecar<'a> {
    version: &'static str,
    config: &'a ExperimentConfig,
    records: usize,
    strict_failures: usize,
    by_lemma: BTreeMap<String, BTreeMap<&'static str, usize>>,
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::NotApplicable => "not-applicable",
    }
}

pub fn records_to_csv(records: &[AuditRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn sidecar_json(cfg: &ExperimentConfig, records: &[AuditRecord]) -> Result<String> {
    let mut by_lemma: BTreeMap<String, BTreeMap<&'static str, usize>> = BTreeMap::new();
    for r in records {
        *by_lemma
            .entry(r.lemma.to_string())
            .or_default()
            .entry(status_name(r.status))
            .or_default() += 1;
    }
    let side = Sidecar {
        version: crate::VERSION,
        config: cfg,
        records: records.len(),
        strict_failures: strict_failures(records),
        by_lemma,
    };
    Ok(serde_json::to_string_pretty(&side)? + "\n")
}

/// Writes the CSV report and its JSON sidecar under `out_dir`.
pub fn write_report(cfg: &ExperimentConfig, records: &[AuditRecord], out_dir: &FsPath) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join(&cfg.output.csv);
    let json_path = out_dir.join(&cfg.output.json);
    std::fs::write(&csv_path, records_to_csv(records)?)?;
    std::fs::write(&json_path, sidecar_json(cfg, records)?)?;
    Ok((csv_path, json_path))
}
