use super::*;
use crate::graph::{cycle, write_edge_list};

fn small_config() -> ExperimentConfig {
    ExperimentConfig::from_toml(
        r#"
        generators = [{ kind = "erdos-renyi", p = 0.4 }, { kind = "random-regular", d = 3 }]
        sizes = [8, 10]
        seeds = [1, 2]
        k = 1
        L = 3.0
        family = "pigeonhole"
        audits = ["2.3", "2.6", "3.1", "3.5", "4.2", "4.4", "4.5", "4.6", "4.7", "4.8", "4.9-2kbad", "f-cap"]
        "#,
    )
    .unwrap()
}

#[test]
fn record_count_matches_grid() {
    let cfg = small_config();
    let records = run_lemma_audit(&cfg).unwrap();
    assert_eq!(records.len(), 12 * 4 * 2);
    assert_eq!(strict_failures(&records), 0);
    for r in records
        .iter()
        .filter(|r| matches!(r.lemma, AuditId::RepeatedWalks | AuditId::FCap))
    {
        assert!(r.strict);
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
    // rows are grouped by audit first
    assert!(records[..8].iter().all(|r| r.lemma == AuditId::BadPairPacking));
}

#[test]
fn reruns_are_identical_across_pool_sizes() {
    let cfg = small_config();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| records_to_csv(&run_lemma_audit(&cfg).unwrap()).unwrap())
    };
    let a = run(1);
    assert_eq!(a, run(4));
    assert_eq!(a, run(1));
}

#[test]
fn octagon_audits() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c8.txt"), write_edge_list(&cycle(8))).unwrap();
    let mut cfg = ExperimentConfig::from_toml(
        r#"
        generators = [{ kind = "file", path = "c8.txt" }]
        seeds = [0]
        audits = ["4.5", "4.6", "4.4"]
        "#,
    )
    .unwrap();
    cfg.base_dir = Some(dir.path().to_path_buf());
    let records = run_lemma_audit(&cfg).unwrap();
    assert_eq!(records[0].status, Status::NotApplicable);
    assert!(records[0].note.contains("below"));
    // closed walks of length 2 with u_-1 = u_1: 8 * 2
    assert_eq!(records[1].measured, "16");
    assert_eq!(records[1].bound, "48");
    assert_eq!(records[2].status, Status::Pass);
    assert_eq!(records[2].measured, "0");

    let (csv_path, json_path) = write_report(&cfg, &records, dir.path()).unwrap();
    let csv_text = std::fs::read_to_string(csv_path).unwrap();
    assert_eq!(csv_text.lines().count(), 4);
    assert!(csv_text.starts_with("lemma,host_index,generator"));
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(side["records"], 3);
    assert_eq!(side["strict_failures"], 0);
}

#[test]
fn good_paths_trend_on_regular_hosts() {
    let cfg = ExperimentConfig::from_toml(
        r#"
        generators = [{ kind = "random-regular", d = 8 }]
        sizes = [400]
        seeds = [1, 2, 3]
        audits = ["2.6"]
        "#,
    )
    .unwrap();
    let records = run_lemma_audit(&cfg).unwrap();
    for r in &records {
        // every 2-path is good; 400 * 28 of them against 400 * 64
        assert_eq!(r.measured, "11200");
        assert_eq!(r.bound, "25600");
        assert!((r.ratio.unwrap() - 0.4375).abs() < 1e-12);
    }
}

#[test]
fn config_errors() {
    assert!(ExperimentConfig::from_toml("generators = []\nseeds = [1]\naudits = [\"2.3\"]").is_err());
    assert!(ExperimentConfig::from_toml(
        "generators = [{ kind = \"erdos-renyi\", p = 0.1 }]\nseeds = [1]\naudits = [\"2.3\"]"
    )
    .is_err());
    assert!(ExperimentConfig::from_toml(
        "generators = [{ kind = \"erdos-renyi\", p = 0.1 }]\nsizes = [5]\nseeds = [1]\naudits = [\"9.9\"]"
    )
    .is_err());
    let cfg = small_config();
    let back = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn s_rules() {
    let g = cycle(10);
    assert_eq!(SRule::All.select(&g, 0).unwrap().len(), 10);
    let r = SRule::Random { size: 4 }.select(&g, 9).unwrap();
    assert_eq!(r, SRule::Random { size: 4 }.select(&g, 9).unwrap());
    assert_eq!(r.len(), 4);
    assert_eq!(
        SRule::Ball { center: 0, radius: 2 }.select(&g, 0).unwrap(),
        vec![0, 1, 2, 8, 9]
    );
    assert!(SRule::Random { size: 11 }.select(&g, 0).is_err());
}
