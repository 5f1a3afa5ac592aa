//! C ABI over `subdiv-core`.
//!
//! Graphs cross the boundary as opaque [`SubdivGraph`] handles. Every fallible
//! call returns a [`SubdivStatus`]; on failure the message is available from
//! [`subdiv_last_error`] on the same thread. Strings handed out by the library
//! are NUL-terminated and must be released with [`subdiv_string_free`].
//!
//! Pattern multigraphs are passed as `pattern_n` plus a flat array of
//! `(u, v, multiplicity)` triples.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use subdiv_core::embedder::find_subdivision_exact;
use subdiv_core::extremal::ex_exact;
use subdiv_core::graph::{count_walks, read_simple_graph, subdivide};
use subdiv_core::richness::is_distant;
use subdiv_core::{Error, MultiGraph, SimpleGraph, SubdivisionSpec};

/// Opaque host graph.
pub struct SubdivGraph(SimpleGraph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubdivStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    BudgetExceeded = 5,
    CapExceeded = 6,
    Precondition = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SubdivStatus {
    match e {
        Error::InvalidGraph(_) | Error::InvalidParameter(_) | Error::ParallelEdgeAtZero { .. } | Error::Config(_) => {
            SubdivStatus::InvalidArgument
        }
        Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => SubdivStatus::Parse,
        Error::Io(_) => SubdivStatus::Io,
        Error::PathBudgetExceeded { .. } | Error::SearchBudgetExceeded { .. } => SubdivStatus::BudgetExceeded,
        Error::CapExceeded { .. } => SubdivStatus::CapExceeded,
        Error::Precondition(_) => SubdivStatus::Precondition,
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SubdivStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SubdivStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            SubdivStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            SubdivStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn graph<'a>(g: *const SubdivGraph) -> Result<&'a SimpleGraph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or(Fail::Null("graph"))
}

unsafe fn pattern(n: usize, triples: *const usize, edge_count: usize) -> Result<MultiGraph, Fail> {
    let flat = slice(triples, 3 * edge_count, "pattern edges")?;
    let edges: Vec<_> = flat.chunks_exact(3).map(|e| (e[0], e[1], e[2])).collect();
    Ok(MultiGraph::new(n, &edges)?)
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Error::InvalidParameter("string with interior NUL".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn check_out<T>(p: *mut T, what: &'static str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail::Null(what))
    } else {
        Ok(())
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn subdiv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn subdiv_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Builds a graph on `n` vertices from `edge_count` pairs in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut SubdivGraph,
) -> SubdivStatus {
    guard(|| {
        check_out(out, "out")?;
        let flat = slice(edges, 2 * edge_count, "edges")?;
        let pairs: Vec<_> = flat.chunks_exact(2).map(|e| (e[0], e[1])).collect();
        let g = SimpleGraph::from_edges(n, &pairs)?;
        *out = Box::into_raw(Box::new(SubdivGraph(g)));
        Ok(())
    })
}

/// Reads an edge-list file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_graph_from_file(path: *const c_char, out: *mut *mut SubdivGraph) -> SubdivStatus {
    guard(|| {
        check_out(out, "out")?;
        if path.is_null() {
            return Err(Fail::Null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Error::InvalidParameter("path is not UTF-8".into()))?;
        *out = Box::into_raw(Box::new(SubdivGraph(read_simple_graph(path)?)));
        Ok(())
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn subdiv_graph_free(g: *mut SubdivGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or NULL (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn subdiv_graph_vertex_count(g: *const SubdivGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live handle or NULL (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn subdiv_graph_edge_count(g: *const SubdivGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Writes the edge list of `g` as `2 * edge_count` ids into `buf`, which must
/// hold at least that many values.
///
/// # Safety
/// `buf` must be writable for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn subdiv_graph_edges(g: *const SubdivGraph, buf: *mut usize, capacity: usize) -> SubdivStatus {
    guard(|| {
        let g = graph(g)?;
        let need = 2 * g.edge_count();
        if capacity < need {
            return Err(Error::InvalidParameter(format!("buffer holds {capacity} ids, need {need}")).into());
        }
        if need > 0 {
            check_out(buf, "buf")?;
        }
        for (i, (u, v)) in g.edges().enumerate() {
            *buf.add(2 * i) = u;
            *buf.add(2 * i + 1) = v;
        }
        Ok(())
    })
}

/// Builds `F^s` for the given pattern.
///
/// # Safety
/// `pattern_edges` must point to `3 * pattern_edge_count` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_subdivide(
    pattern_n: usize,
    pattern_edges: *const usize,
    pattern_edge_count: usize,
    s: usize,
    out: *mut *mut SubdivGraph,
) -> SubdivStatus {
    guard(|| {
        check_out(out, "out")?;
        let spec = SubdivisionSpec::new(pattern(pattern_n, pattern_edges, pattern_edge_count)?, s)?;
        *out = Box::into_raw(Box::new(SubdivGraph(subdivide(&spec)?)));
        Ok(())
    })
}

/// Number of `u`-`v` walks of length `i`, as a decimal string.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_count_walks(
    g: *const SubdivGraph,
    u: usize,
    v: usize,
    i: usize,
    out: *mut *mut c_char,
) -> SubdivStatus {
    guard(|| {
        check_out(out, "out")?;
        let g = graph(g)?;
        if u >= g.n() || v >= g.n() {
            return Err(Error::InvalidParameter(format!("vertex out of range for {} vertices", g.n())).into());
        }
        out_string(count_walks(g, u, v, i).to_string(), out)
    })
}

/// Minimum and maximum degree.
///
/// # Safety
/// `g` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_degree_profile(
    g: *const SubdivGraph,
    min_degree: *mut usize,
    max_degree: *mut usize,
) -> SubdivStatus {
    guard(|| {
        check_out(min_degree, "min_degree")?;
        check_out(max_degree, "max_degree")?;
        let p = graph(g)?.degree_profile();
        *min_degree = p.delta;
        *max_degree = p.max_degree;
        Ok(())
    })
}

/// Exact search for `F^s` in `g`. Sets `*found`; when found, `*cert_json`
/// receives the certificate (otherwise NULL).
///
/// # Safety
/// `g` must be a live handle; pattern pointers as in [`subdiv_subdivide`];
/// `found` and `cert_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_find_exact(
    g: *const SubdivGraph,
    pattern_n: usize,
    pattern_edges: *const usize,
    pattern_edge_count: usize,
    s: usize,
    budget: u64,
    found: *mut bool,
    cert_json: *mut *mut c_char,
) -> SubdivStatus {
    guard(|| {
        check_out(found, "found")?;
        check_out(cert_json, "cert_json")?;
        let g = graph(g)?;
        let spec = SubdivisionSpec::new(pattern(pattern_n, pattern_edges, pattern_edge_count)?, s)?;
        *cert_json = ptr::null_mut();
        match find_subdivision_exact(g, &spec, budget)? {
            Some(cert) => {
                *found = true;
                out_string(cert.to_json()?, cert_json)
            }
            None => {
                *found = false;
                Ok(())
            }
        }
    })
}

/// Exact `ex(n, F^s)`. `result_json` may be NULL; otherwise it receives the
/// full result including a witness.
///
/// # Safety
/// Pattern pointers as in [`subdiv_subdivide`]; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_ex_exact(
    n: usize,
    pattern_n: usize,
    pattern_edges: *const usize,
    pattern_edge_count: usize,
    s: usize,
    cap: usize,
    value: *mut usize,
    result_json: *mut *mut c_char,
) -> SubdivStatus {
    guard(|| {
        check_out(value, "value")?;
        let spec = SubdivisionSpec::new(pattern(pattern_n, pattern_edges, pattern_edge_count)?, s)?;
        let res = ex_exact(n, &spec, cap)?;
        *value = res.value;
        if !result_json.is_null() {
            out_string(serde_json::to_string(&res).map_err(Error::from)?, result_json)?;
        }
        Ok(())
    })
}

/// Whether `u` and `v` are distant at parameter `k` and minimum degree `delta`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_is_distant(
    g: *const SubdivGraph,
    u: usize,
    v: usize,
    k: usize,
    delta: f64,
    out: *mut bool,
) -> SubdivStatus {
    guard(|| {
        check_out(out, "out")?;
        let g = graph(g)?;
        if u >= g.n() || v >= g.n() {
            return Err(Error::InvalidParameter(format!("vertex out of range for {} vertices", g.n())).into());
        }
        *out = is_distant(g, u, v, k, delta)?.distant;
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn subdiv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
