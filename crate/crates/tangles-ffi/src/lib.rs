//! C ABI for the separation-system toolkit.
//!
//! Handles are opaque; every fallible function returns a status code and
//! writes results through out-pointers.  Strings handed out through
//! `char **` out-parameters are heap-allocated and must be released with
//! `tangles_string_free`.  The pointer returned by `tangles_last_error`
//! stays owned by the library and is valid on the calling thread until its
//! next failing call.  The build script generates `include/tangles.h`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tangles::cluster::{cluster, ClusterVerdict, PixelGrid};
use tangles::duality::{verify_duality, Outcome};
use tangles::family::{BagFamily, Family};
use tangles::graph::{cover_star_family, vertex_separations, Graph};
use tangles::io::{
    cluster_verdict_to_json, graph_from_text, matroid_recipe_from_json, verdict_to_json,
};
use tangles::matroid::{matroid_lambda, matroid_norm_family, matroid_treewidth, Matroid};
use tangles::sep::SepSystem;
use tangles::setsep::{
    carving_width, edge_cut_order, rank_order, rank_width, set_cover_star_family,
};
use tangles::widths::{branchwidth, pathwidth, tangle_number, treewidth};
use tangles::Error;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TanglesStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The input could not be parsed or is out of the supported range.
    InvalidInput = 2,
    /// The tree search exceeded the node cap.
    CapExceeded = 3,
    /// An internal invariant failed; always a bug worth reporting.
    Internal = 4,
}

/// Width parameter selector: each one names both the number and the family
/// whose tangle/tree duality defines it.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TanglesParameter {
    /// Tree-width: bags over vertex separations.
    TreeWidth = 0,
    /// Path-width: at most two bags per star.
    PathWidth = 1,
    /// Branch-width: star covers of vertices and edges.
    BranchWidth = 2,
    /// Carving-width: covering stars over edge-cut bipartitions.
    CarvingWidth = 3,
    /// Rank-width: covering stars over GF(2) cut-rank bipartitions.
    RankWidth = 4,
}

/// Opaque graph handle; create with `tangles_graph_new` or
/// `tangles_graph_parse`, release with `tangles_graph_free`.
#[repr(C)]
pub struct TanglesGraph {
    _private: [u8; 0],
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: TanglesStatus, message: &str) -> TanglesStatus {
    let clean = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
    status
}

fn fail_with(e: &Error) -> TanglesStatus {
    let status = match e {
        Error::Input(_) | Error::Domain(_) => TanglesStatus::InvalidInput,
        Error::CapExceeded(_) => TanglesStatus::CapExceeded,
        Error::Duality(_) => TanglesStatus::Internal,
    };
    fail(status, &e.to_string())
}

/// Run a body under a panic guard so unwinding never crosses the ABI.
fn guarded(f: impl FnOnce() -> TanglesStatus) -> TanglesStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(TanglesStatus::Internal, "internal panic"),
    }
}

fn graph_ref<'a>(g: *const TanglesGraph) -> Option<&'a Graph> {
    unsafe { (g as *const Graph).as_ref() }
}

fn graph_handle(g: Graph) -> *mut TanglesGraph {
    Box::into_raw(Box::new(g)) as *mut TanglesGraph
}

unsafe fn write_out<T>(out: *mut T, value: T) {
    if !out.is_null() {
        out.write(value);
    }
}

/// Hand a JSON string to the caller when a slot was provided.
unsafe fn write_json(out: *mut *mut c_char, json: String) {
    if !out.is_null() {
        let c = CString::new(json).unwrap_or_default();
        out.write(c.into_raw());
    }
}

unsafe fn str_arg<'a>(text: *const c_char) -> Option<&'a str> {
    if text.is_null() {
        return None;
    }
    CStr::from_ptr(text).to_str().ok()
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn tangles_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread; owned by the
/// library, valid until the next failing call.  Empty when nothing failed.
#[no_mangle]
pub extern "C" fn tangles_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string obtained from a `char **` out-parameter.
#[no_mangle]
pub unsafe extern "C" fn tangles_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a graph on `n` vertices from `n_edges` pairs laid out flat as
/// u0, v0, u1, v1, …  Writes the new handle to `out`.
#[no_mangle]
pub unsafe extern "C" fn tangles_graph_new(
    n: u32,
    edges: *const u32,
    n_edges: usize,
    out: *mut *mut TanglesGraph,
) -> TanglesStatus {
    guarded(|| {
        if out.is_null() || (edges.is_null() && n_edges > 0) {
            return fail(TanglesStatus::NullArgument, "null out or edge pointer");
        }
        let flat = if n_edges == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, n_edges * 2)
        };
        let pairs: Vec<(u32, u32)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        match Graph::new(n as usize, &pairs) {
            Ok(g) => {
                write_out(out, graph_handle(g));
                TanglesStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Parse a graph from text: JSON (`{"n": 4, "edges": [[0,1], …]}`) or
/// whitespace-separated `u v` edge lines.
#[no_mangle]
pub unsafe extern "C" fn tangles_graph_parse(
    text: *const c_char,
    out: *mut *mut TanglesGraph,
) -> TanglesStatus {
    guarded(|| {
        if out.is_null() {
            return fail(TanglesStatus::NullArgument, "null out pointer");
        }
        let Some(text) = str_arg(text) else {
            return fail(TanglesStatus::NullArgument, "null or non-UTF-8 text");
        };
        match graph_from_text(text) {
            Ok(g) => {
                write_out(out, graph_handle(g));
                TanglesStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Release a graph handle; a null handle is ignored.
#[no_mangle]
pub unsafe extern "C" fn tangles_graph_free(g: *mut TanglesGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g as *mut Graph));
    }
}

/// Vertex and edge counts of a graph.
#[no_mangle]
pub unsafe extern "C" fn tangles_graph_counts(
    g: *const TanglesGraph,
    out_vertices: *mut u32,
    out_edges: *mut u32,
) -> TanglesStatus {
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return fail(TanglesStatus::NullArgument, "null graph");
        };
        write_out(out_vertices, g.n() as u32);
        write_out(out_edges, g.m() as u32);
        TanglesStatus::Ok
    })
}

/// Compute a width parameter exactly.  `max_nodes` caps the certificate
/// tree search (0 means the library default of one million nodes).
#[no_mangle]
pub unsafe extern "C" fn tangles_width(
    g: *const TanglesGraph,
    parameter: TanglesParameter,
    max_nodes: usize,
    out_value: *mut i64,
) -> TanglesStatus {
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return fail(TanglesStatus::NullArgument, "null graph");
        };
        let cap = if max_nodes == 0 { 1_000_000 } else { max_nodes };
        let result = match parameter {
            TanglesParameter::TreeWidth => treewidth(g, cap),
            TanglesParameter::PathWidth => pathwidth(g, cap),
            TanglesParameter::BranchWidth => branchwidth(g, cap),
            TanglesParameter::CarvingWidth => carving_width(g, cap),
            TanglesParameter::RankWidth => rank_width(g, cap),
        };
        match result {
            Ok(w) => {
                write_out(out_value, w.value);
                TanglesStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// The largest k for which the graph has a tangle of order k.
#[no_mangle]
pub unsafe extern "C" fn tangles_tangle_number(
    g: *const TanglesGraph,
    out_value: *mut u32,
) -> TanglesStatus {
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return fail(TanglesStatus::NullArgument, "null graph");
        };
        match tangle_number(g) {
            Ok(t) => {
                write_out(out_value, t.value);
                TanglesStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

fn duality_for(
    g: &Graph,
    parameter: TanglesParameter,
    k: u32,
    cap: usize,
) -> Result<(bool, String), Error> {
    let (sys, fam): (SepSystem, Box<dyn Family>) = match parameter {
        TanglesParameter::TreeWidth => (
            vertex_separations(g, k),
            Box::new(BagFamily::tree(g.n(), k)),
        ),
        TanglesParameter::PathWidth => (
            vertex_separations(g, k),
            Box::new(BagFamily::path(g.n(), k)),
        ),
        TanglesParameter::BranchWidth => {
            (vertex_separations(g, k), Box::new(cover_star_family(g)?))
        }
        TanglesParameter::CarvingWidth => (
            SepSystem::below(&edge_cut_order(g)?, k),
            Box::new(set_cover_star_family(g.n())?),
        ),
        TanglesParameter::RankWidth => (
            SepSystem::below(&rank_order(g)?, k),
            Box::new(set_cover_star_family(g.n())?),
        ),
    };
    let v = verify_duality(&sys, fam.as_ref(), k, cap)?;
    let is_tangle = matches!(v.outcome, Outcome::Tangle(_));
    Ok((is_tangle, verdict_to_json(&v, &sys)))
}

/// Decide which dual certificate exists for the parameter's family on the
/// order-k separation system: writes 1 to `out_is_tangle` for a tangle,
/// 0 for a tree over the family.  `out_json` (nullable) receives the full
/// certificate; release it with `tangles_string_free`.
#[no_mangle]
pub unsafe extern "C" fn tangles_duality(
    g: *const TanglesGraph,
    parameter: TanglesParameter,
    k: u32,
    max_nodes: usize,
    out_is_tangle: *mut c_int,
    out_json: *mut *mut c_char,
) -> TanglesStatus {
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return fail(TanglesStatus::NullArgument, "null graph");
        };
        if k == 0 {
            return fail(TanglesStatus::InvalidInput, "k must be at least 1");
        }
        let cap = if max_nodes == 0 { 1_000_000 } else { max_nodes };
        match duality_for(g, parameter, k, cap) {
            Ok((is_tangle, json)) => {
                write_out(out_is_tangle, is_tangle as c_int);
                write_json(out_json, json);
                TanglesStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Tree-width of a matroid given as a JSON recipe:
/// `{"kind":"graphic","graph":{…}}`, `{"kind":"gf2","columns":[[0,1],…]}`,
/// or `{"kind":"uniform","r":2,"n":4}`.
#[no_mangle]
pub unsafe extern "C" fn tangles_matroid_treewidth(
    recipe_json: *const c_char,
    max_nodes: usize,
    out_value: *mut i64,
) -> TanglesStatus {
    guarded(|| {
        let Some(text) = str_arg(recipe_json) else {
            return fail(TanglesStatus::NullArgument, "null or non-UTF-8 recipe");
        };
        let cap = if max_nodes == 0 { 1_000_000 } else { max_nodes };
        let run = || -> Result<i64, Error> {
            let m = matroid_recipe_from_json(text)?.build()?;
            Ok(matroid_treewidth(&m, cap)?.value)
        };
        match run() {
            Ok(value) => {
                write_out(out_value, value);
                TanglesStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// The matroid analogue of `tangles_duality`: connectivity-norm stars
/// against the order-k connectivity system of a matroid recipe.
#[no_mangle]
pub unsafe extern "C" fn tangles_matroid_duality(
    recipe_json: *const c_char,
    k: u32,
    max_nodes: usize,
    out_is_tangle: *mut c_int,
    out_json: *mut *mut c_char,
) -> TanglesStatus {
    guarded(|| {
        let Some(text) = str_arg(recipe_json) else {
            return fail(TanglesStatus::NullArgument, "null or non-UTF-8 recipe");
        };
        if k == 0 {
            return fail(TanglesStatus::InvalidInput, "k must be at least 1");
        }
        let cap = if max_nodes == 0 { 1_000_000 } else { max_nodes };
        let run = || -> Result<(bool, String), Error> {
            let m: Matroid = matroid_recipe_from_json(text)?.build()?;
            let sys = SepSystem::below(&matroid_lambda(&m)?, k);
            let fam = matroid_norm_family(&m, k);
            let v = verify_duality(&sys, &fam, k, cap)?;
            let is_tangle = matches!(v.outcome, Outcome::Tangle(_));
            Ok((is_tangle, verdict_to_json(&v, &sys)))
        };
        match run() {
            Ok((is_tangle, json)) => {
                write_out(out_is_tangle, is_tangle as c_int);
                write_json(out_json, json);
                TanglesStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Cluster a PGM image (P2 or P5 bytes): writes 1 to `out_coherent` when a
/// region of coherence ≥ k exists, 0 when the grid segments into a laminar
/// set of cheaper lines.  `out_json` (nullable) receives the certificate.
#[no_mangle]
pub unsafe extern "C" fn tangles_cluster_pgm(
    bytes: *const u8,
    len: usize,
    k: u32,
    max_nodes: usize,
    out_coherent: *mut c_int,
    out_json: *mut *mut c_char,
) -> TanglesStatus {
    guarded(|| {
        if bytes.is_null() {
            return fail(TanglesStatus::NullArgument, "null image bytes");
        }
        if k == 0 {
            return fail(TanglesStatus::InvalidInput, "k must be at least 1");
        }
        let data = std::slice::from_raw_parts(bytes, len);
        let cap = if max_nodes == 0 { 1_000_000 } else { max_nodes };
        let run = || -> Result<(bool, String), Error> {
            let grid = PixelGrid::parse_pgm(data)?;
            let v = cluster(&grid, k, cap)?;
            let coherent = matches!(v, ClusterVerdict::Coherent { .. });
            Ok((coherent, cluster_verdict_to_json(&v)))
        };
        match run() {
            Ok((coherent, json)) => {
                write_out(out_coherent, coherent as c_int);
                write_json(out_json, json);
                TanglesStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}
