use num_rational::BigRational;

use super::*;
use crate::graph::{
    complete, complete_bipartite, cycle, path_graph, petersen, star, MultiGraph, SimpleGraph, SubdivisionSpec,
};
use crate::pathlab::{PackingMode, ThresholdFamily, DEFAULT_NODE_BUDGET};
use crate::richness::RichnessOracle;
use crate::Error;

fn k3(s: usize) -> SubdivisionSpec {
    SubdivisionSpec::new(MultiGraph::complete(3), s).unwrap()
}

fn c4() -> SubdivisionSpec {
    SubdivisionSpec::new(MultiGraph::parallel(2).unwrap(), 1).unwrap()
}

fn exact(g: &SimpleGraph, spec: &SubdivisionSpec) -> Option<EmbeddingCertificate> {
    find_subdivision_exact(g, spec, DEFAULT_SEARCH_BUDGET).unwrap()
}

#[test]
fn hexagon_is_subdivided_triangle() {
    let g = cycle(6);
    let cert = exact(&g, &k3(1)).unwrap();
    assert!(verify_certificate(&g, &k3(1), &cert));
    assert_eq!(cert.paths.len(), 3);
    assert!(cert.paths.iter().all(|p| p.len() == 3));
}

#[test]
fn trees_have_no_cycles() {
    assert!(exact(&path_graph(9), &c4()).is_none());
    assert!(exact(&star(6), &c4()).is_none());
    assert!(exact(&path_graph(9), &k3(1)).is_none());
}

#[test]
fn petersen_has_hexagons_but_no_squares() {
    let g = petersen();
    let cert = exact(&g, &k3(1)).unwrap();
    assert!(verify_certificate(&g, &k3(1), &cert));
    assert!(exact(&g, &c4()).is_none());
    assert!(exact(&g, &k3(0)).is_none());
}

#[test]
fn parallel_edges_become_theta() {
    let spec = SubdivisionSpec::new(MultiGraph::parallel(3).unwrap(), 1).unwrap();
    let g = complete_bipartite(2, 3);
    let cert = exact(&g, &spec).unwrap();
    assert!(verify_certificate(&g, &spec, &cert));
    // parallel copies come out in increasing order
    assert!(cert.paths[0][1] < cert.paths[1][1] && cert.paths[1][1] < cert.paths[2][1]);
    assert!(exact(&cycle(6), &spec).is_none());
}

#[test]
fn budget_hit_is_not_absence() {
    let g = petersen();
    let spec = SubdivisionSpec::new(MultiGraph::complete(4), 1).unwrap();
    assert!(matches!(
        find_subdivision_exact(&g, &spec, 3),
        Err(Error::SearchBudgetExceeded { .. })
    ));
}

#[test]
fn certificate_mutations_are_rejected() {
    let g = complete(7);
    let spec = k3(1);
    let cert = exact(&g, &spec).unwrap();
    assert!(verify_certificate(&g, &spec, &cert));

    let mut shared = cert.clone();
    shared.paths[1][1] = shared.paths[0][1];
    assert!(!verify_certificate(&g, &spec, &shared));

    let mut long = cert.clone();
    long.paths[0].insert(1, 6);
    assert!(!verify_certificate(&g, &spec, &long));

    let mut short = cert.clone();
    short.paths[2].remove(1);
    assert!(!verify_certificate(&g, &spec, &short));

    let mut moved = cert.clone();
    moved.branch_map[0] = 6;
    assert!(!verify_certificate(&g, &spec, &moved));

    let mut repeated = cert.clone();
    repeated.branch_map[1] = repeated.branch_map[0];
    assert!(!verify_certificate(&g, &spec, &repeated));

    let mut swapped = cert.clone();
    swapped.paths.swap(0, 1);
    assert!(!verify_certificate(&g, &spec, &swapped));

    let mut dropped = cert.clone();
    dropped.paths.pop();
    assert!(!verify_certificate(&g, &spec, &dropped));

    let mut through_branch = cert.clone();
    through_branch.paths[0][1] = cert.branch_map[2];
    assert!(!verify_certificate(&g, &spec, &through_branch));

    // a non-edge in a sparse host
    let h = cycle(6);
    let mut c = exact(&h, &spec).unwrap();
    c.paths[0][1] = (c.paths[0][1] + 3) % 6;
    assert!(!verify_certificate(&h, &spec, &c));
}

#[test]
fn certificate_json_round_trip() {
    let g = cycle(6);
    let cert = exact(&g, &k3(1)).unwrap();
    let text = cert.to_json().unwrap();
    assert!(text.contains("branch_map") && text.contains("paths"));
    let back = EmbeddingCertificate::from_json(&text, k3(1)).unwrap();
    assert_eq!(back, cert);
    assert!(verify_embedded(&g, &back));
}

#[test]
fn exponent_sequence_is_exact() {
    let eps = BigRational::new(1.into(), 4.into());
    let c = exponent_sequence(&eps, 1, 2);
    assert_eq!(c[0], eps);
    // factor 3 * 25 + 1 = 76, step 2 * 1/4
    assert_eq!(c[1], BigRational::new(39.into(), 2.into()));
    assert_eq!(c[2], BigRational::new((76 * 39 + 1).into(), 2.into()));
}

fn paper2() -> ThresholdFamily {
    ThresholdFamily::paper(2.0, 2).unwrap()
}

#[test]
fn guided_on_complete_graph() {
    let g = complete(50);
    let strict = find_subdivision_guided(&g, 3, 1, 0.01, &paper2(), GuidedOptions::default()).unwrap();
    let f = strict.failure().unwrap();
    assert_eq!(f.step, StarvingStep::DistantFilterEmptied);
    assert_eq!(f.stage, 1);
    assert_eq!(f.z_size, f.s_size);

    let relaxed = find_subdivision_guided(&g, 3, 1, 0.01, &paper2(), GuidedOptions::relaxed()).unwrap();
    let cert = relaxed.certificate().unwrap();
    assert!(verify_certificate(&g, &k3(1), cert));
    // vertex 2 is already the middle of the 0-1 path
    assert_eq!(cert.branch_map, vec![0, 1, 3]);
}

#[test]
fn guided_on_complete_bipartite() {
    let g = complete_bipartite(20, 20);
    let out = find_subdivision_guided(&g, 3, 1, 0.01, &paper2(), GuidedOptions::relaxed()).unwrap();
    assert!(verify_certificate(&g, &k3(1), out.certificate().unwrap()));
}

#[test]
fn guided_fails_on_trees() {
    for g in [path_graph(12), star(8)] {
        for opts in [GuidedOptions::default(), GuidedOptions::relaxed()] {
            let out = find_subdivision_guided(&g, 3, 1, 0.01, &paper2(), opts).unwrap();
            let f = out.failure().unwrap();
            assert!(f.stage < 3);
        }
    }
}

#[test]
fn guided_rejects_bad_parameters() {
    let g = complete(5);
    assert!(find_subdivision_guided(&g, 3, 1, 0.0, &paper2(), GuidedOptions::default()).is_err());
    assert!(find_subdivision_guided(&g, 3, 2, 0.1, &paper2(), GuidedOptions::default()).is_err());
}

#[test]
fn non_distant_sets_respect_the_walk_bound() {
    for g in [petersen(), cycle(12), complete_bipartite(5, 5), complete(6)] {
        let p = g.degree_profile();
        for k in 1..=2 {
            let bound = non_distant_bound(p.k(), p.delta, k);
            for u in 0..g.n() {
                let z = not_distant_mask(&g, &[u], k, p.delta).unwrap();
                assert!((z.iter().filter(|&&b| b).count() as f64) <= bound * (1.0 + 1e-9));
            }
        }
    }
}

#[test]
fn near_walk_mask_on_a_long_cycle() {
    let g = cycle(20);
    // 0 and 2 are joined by a walk of length 2; radius 4 - 2 - 1 = 1 around {0, 1, 2}
    let m = near_walk_mask(&g, &[0, 2], 1);
    let marked: Vec<usize> = (0..20).filter(|&v| m[v]).collect();
    assert_eq!(marked, vec![0, 1, 2, 3, 19]);
    assert!(near_walk_mask(&g, &[0, 10], 1).iter().all(|&b| !b));
}

fn oracle(g: &SimpleGraph) -> RichnessOracle<'_> {
    RichnessOracle::new(
        g,
        1,
        &k3(1),
        &g.degree_profile(),
        PackingMode::ExactMax,
        DEFAULT_NODE_BUDGET,
    )
    .unwrap()
}

#[test]
fn octagon_harvest() {
    let g = cycle(8);
    let all: Vec<usize> = (0..8).collect();
    let mut o = oracle(&g);
    let r = harvest_poor_tuples(&g, &all, &mut o, 1_000).unwrap();
    assert_eq!(r.count, 16);
    assert!(!r.exhausted && !r.heuristic);
    for t in &r.tuples {
        assert_ne!(t[0], t[2]);
        assert!(check_poor_tuple(&g, &all, t, &mut o).unwrap());
    }
    assert_eq!(harvest_poor_tuples(&g, &[], &mut o, 1_000).unwrap().count, 0);
    let partial = harvest_poor_tuples(&g, &all, &mut o, 5).unwrap();
    assert!(partial.exhausted && partial.count == 5);
}
