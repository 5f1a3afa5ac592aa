use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use subdiv_ffi::*;

fn last_error() -> String {
    let p = subdiv_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    subdiv_string_free(p);
    s
}

fn cycle(n: usize) -> *mut SubdivGraph {
    let edges: Vec<usize> = (0..n).flat_map(|i| [i, (i + 1) % n]).collect();
    let mut g = ptr::null_mut();
    let st = unsafe { subdiv_graph_from_edges(n, edges.as_ptr(), n, &mut g) };
    assert_eq!(st, SubdivStatus::Ok);
    g
}

const TRIANGLE: [usize; 9] = [0, 1, 1, 1, 2, 1, 0, 2, 1];
const DOUBLE_EDGE: [usize; 3] = [0, 1, 2];

#[test]
fn graph_roundtrip_and_counts() {
    let g = cycle(5);
    unsafe {
        assert_eq!(subdiv_graph_vertex_count(g), 5);
        assert_eq!(subdiv_graph_edge_count(g), 5);
        let mut buf = [0usize; 10];
        assert_eq!(subdiv_graph_edges(g, buf.as_mut_ptr(), 10), SubdivStatus::Ok);
        assert_eq!(&buf[..4], &[0, 1, 0, 4]);
        assert_eq!(
            subdiv_graph_edges(g, buf.as_mut_ptr(), 9),
            SubdivStatus::InvalidArgument
        );
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(subdiv_degree_profile(g, &mut lo, &mut hi), SubdivStatus::Ok);
        assert_eq!((lo, hi), (2, 2));
        subdiv_graph_free(g);
    }
}

#[test]
fn walk_counts_as_strings() {
    let g = cycle(4);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(subdiv_count_walks(g, 0, 0, 4, &mut s), SubdivStatus::Ok);
        // closed 4-walks at a vertex of C4: 8
        assert_eq!(take_string(s), "8");
        assert_eq!(subdiv_count_walks(g, 0, 9, 1, &mut s), SubdivStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        subdiv_graph_free(g);
    }
}

#[test]
fn subdivide_triangle() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(subdiv_subdivide(3, TRIANGLE.as_ptr(), 3, 2, &mut h), SubdivStatus::Ok);
        assert_eq!(subdiv_graph_vertex_count(h), 9);
        assert_eq!(subdiv_graph_edge_count(h), 9);
        subdiv_graph_free(h);

        assert_eq!(
            subdiv_subdivide(2, DOUBLE_EDGE.as_ptr(), 1, 0, &mut h),
            SubdivStatus::InvalidArgument
        );
        assert!(last_error().contains("parallel"));
    }
}

#[test]
fn exact_search_and_certificate() {
    let g = cycle(6);
    unsafe {
        let mut found = false;
        let mut cert = ptr::null_mut();
        let st = subdiv_find_exact(g, 3, TRIANGLE.as_ptr(), 3, 1, 1_000_000, &mut found, &mut cert);
        assert_eq!(st, SubdivStatus::Ok);
        assert!(found);
        let json: serde_json::Value = serde_json::from_str(&take_string(cert)).unwrap();
        assert_eq!(json["paths"].as_array().unwrap().len(), 3);

        let st = subdiv_find_exact(g, 3, TRIANGLE.as_ptr(), 3, 2, 1_000_000, &mut found, &mut cert);
        assert_eq!(st, SubdivStatus::Ok);
        assert!(!found);
        assert!(cert.is_null());
        subdiv_graph_free(g);
    }
}

#[test]
fn extremal_c4() {
    let mut value = 0;
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(
            subdiv_ex_exact(5, 2, DOUBLE_EDGE.as_ptr(), 1, 1, 8, &mut value, &mut json),
            SubdivStatus::Ok
        );
        assert_eq!(value, 6);
        assert!(take_string(json).contains("\"value\":6"));
        assert_eq!(
            subdiv_ex_exact(12, 2, DOUBLE_EDGE.as_ptr(), 1, 1, 8, &mut value, ptr::null_mut()),
            SubdivStatus::CapExceeded
        );
    }
}

#[test]
fn distant_pairs() {
    let g = cycle(10);
    unsafe {
        let mut d = false;
        assert_eq!(subdiv_is_distant(g, 0, 5, 1, 2.0, &mut d), SubdivStatus::Ok);
        assert!(d);
        assert_eq!(
            subdiv_is_distant(g, 0, 0, 1, 2.0, &mut d),
            SubdivStatus::InvalidArgument
        );
        subdiv_graph_free(g);
    }
}

#[test]
fn null_and_file_errors() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            subdiv_graph_from_edges(3, ptr::null(), 2, &mut g),
            SubdivStatus::NullPointer
        );
        assert!(last_error().contains("edges"));
        assert_eq!(
            subdiv_graph_from_edges(3, ptr::null(), 0, ptr::null_mut()),
            SubdivStatus::NullPointer
        );
        let missing = CString::new("/nonexistent/graph.txt").unwrap();
        assert_eq!(subdiv_graph_from_file(missing.as_ptr(), &mut g), SubdivStatus::Io);
        let loop_edge = [1usize, 1];
        assert_eq!(
            subdiv_graph_from_edges(3, loop_edge.as_ptr(), 1, &mut g),
            SubdivStatus::InvalidArgument
        );
        subdiv_graph_free(ptr::null_mut());
        subdiv_string_free(ptr::null_mut());
    }
}

#[test]
fn graph_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.txt");
    std::fs::write(&path, "# K4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let c = CString::new(path.to_str().unwrap()).unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(subdiv_graph_from_file(c.as_ptr(), &mut g), SubdivStatus::Ok);
        assert_eq!(subdiv_graph_edge_count(g), 6);
        subdiv_graph_free(g);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(subdiv_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/subdiv.h");
    assert!(std::path::Path::new(header).exists());
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .output()
    else {
        eprintln!("cc not available, skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
