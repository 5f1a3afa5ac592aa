//! Random hosts, lemma audits and reports.

mod audit;
mod config;
mod generate;
mod report;
#[cfg(test)]
mod tests;

pub use audit::{check_admissible_not_good, run_lemma_audit, strict_failures, AuditRecord, DisjointnessCheck, Status};
pub use config::{AuditId, Budgets, ExperimentConfig, GeneratorSpec, OutputSpec, SRule};
pub use generate::{gen_random, RandomKind};
pub use report::{records_to_csv, sidecar_json, write_report};

/// Environment variable holding the worker-thread count.
pub const WORKERS_ENV: &str = "SUBDIV_WORKERS";

/// Worker count from [`WORKERS_ENV`], if set to a positive integer.
pub fn worker_count() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Sizes the global thread pool from [`WORKERS_ENV`]. Call once, early.
pub fn init_workers() {
    if let Some(n) = worker_count() {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
