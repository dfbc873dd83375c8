//! C interface to `connlab`.
//!
//! Graphs and incremental sessions are opaque handles created and freed
//! through this interface. Every fallible call returns a [`ConnlabStatus`];
//! on failure [`connlab_last_error`] describes what went wrong on the
//! calling thread. Output arrays are caller-allocated.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use connlab::driver::{spanning_forest, static_connectivity, AlgorithmSpec, Batch, BatchOp, IncrementalSession};
use connlab::graph::{build_csr, load_graph, EdgeList, Graph};
use connlab::{Error, Executor, VertexId};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    MalformedInput = 3,
    Config = 4,
    Io = 5,
    Verification = 6,
    NoConvergence = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// Operation kinds for [`connlab_session_apply`].
pub const CONNLAB_OP_INSERT: u8 = 0;
pub const CONNLAB_OP_QUERY: u8 = 1;

/// Opaque undirected graph.
pub struct ConnlabGraph {
    graph: Graph,
}

/// Opaque batch-incremental connectivity session.
pub struct ConnlabSession {
    session: IncrementalSession,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(ConnlabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::MalformedInput(_) | Error::Parse { .. } | Error::Csv(_) | Error::Json(_) => {
                ConnlabStatus::MalformedInput
            }
            Error::Config(_) => ConnlabStatus::Config,
            Error::Verification(_) => ConnlabStatus::Verification,
            Error::NoConvergence(..) => ConnlabStatus::NoConvergence,
            Error::Io(_) => ConnlabStatus::Io,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ConnlabStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(ConnlabStatus::InvalidArgument, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ConnlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_error();
            ConnlabStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ConnlabStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Fail> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn parse_spec(p: *const c_char, seed: u64) -> Result<AlgorithmSpec, Fail> {
    Ok(AlgorithmSpec::parse(text(p, "spec")?)?.with_seed(seed))
}

// Zero workers means CONN_LAB_THREADS or all cores.
fn executor(workers: usize) -> Result<Executor, Fail> {
    Ok(if workers == 0 { Executor::from_env()? } else { Executor::new(workers)? })
}

unsafe fn graph_ref<'a>(g: *const ConnlabGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null("graph"))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn connlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Checks a spec string of the form `sample+finish[+find[+splice]]`.
///
/// # Safety
/// `spec` must be a NUL-terminated string or null.
#[no_mangle]
pub unsafe extern "C" fn connlab_spec_validate(spec: *const c_char) -> ConnlabStatus {
    guard(|| {
        parse_spec(spec, 0)?.validate()?;
        Ok(())
    })
}

/// Whether the spec can build a spanning forest or run incrementally.
/// Writes 1 or 0 to `out`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn connlab_spec_is_root_based(spec: *const c_char, out: *mut u8) -> ConnlabStatus {
    guard(|| {
        let s = parse_spec(spec, 0)?;
        *out.as_mut().ok_or_else(|| null("out"))? = s.is_root_based() as u8;
        Ok(())
    })
}

/// Builds a graph on `n` vertices from `m` edges `(src[i], dst[i])`.
/// Duplicates and self-loops are dropped.
///
/// # Safety
/// `src` and `dst` must point to `m` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn connlab_graph_from_edges(
    n: usize,
    src: *const u32,
    dst: *const u32,
    m: usize,
    out: *mut *mut ConnlabGraph,
) -> ConnlabStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let (s, d) = (input(src, m, "src")?, input(dst, m, "dst")?);
        let edges = s.iter().copied().zip(d.iter().copied()).collect();
        let graph = build_csr(&EdgeList::new(n, edges)?)?;
        *out = Box::into_raw(Box::new(ConnlabGraph { graph }));
        Ok(())
    })
}

/// Loads a text edge list or binary CSR file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn connlab_graph_load(path: *const c_char, out: *mut *mut ConnlabGraph) -> ConnlabStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let graph = load_graph(text(path, "path")?)?;
        *out = Box::into_raw(Box::new(ConnlabGraph { graph }));
        Ok(())
    })
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn connlab_graph_num_vertices(g: *const ConnlabGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.num_vertices())
}

/// Undirected edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn connlab_graph_num_edges(g: *const ConnlabGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.num_edges() / 2)
}

/// # Safety
/// `g` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn connlab_graph_free(g: *mut ConnlabGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Connected components. Writes the smallest vertex id of each vertex's
/// component to `labels` (capacity `n`, the vertex count) and the number of
/// components to `components` when it is not null. `workers` 0 uses
/// `CONN_LAB_THREADS` or every core.
///
/// # Safety
/// `g` must be a live handle, `spec` a NUL-terminated string, `labels`
/// writable for `n` values.
#[no_mangle]
pub unsafe extern "C" fn connlab_static_connectivity(
    g: *const ConnlabGraph,
    spec: *const c_char,
    seed: u64,
    workers: usize,
    labels: *mut u32,
    n: usize,
    components: *mut usize,
) -> ConnlabStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        if n != graph.num_vertices() {
            return Err(invalid(format!("labels holds {n} entries, graph has {}", graph.num_vertices())));
        }
        let out = output(labels, n, "labels")?;
        let (result, stats) = static_connectivity(&executor(workers)?, graph, &parse_spec(spec, seed)?)?;
        out.copy_from_slice(&result);
        if let Some(c) = components.as_mut() {
            *c = stats.component_count;
        }
        Ok(())
    })
}

/// Spanning forest. Writes the forest's edges to `eu[i], ev[i]` (each of
/// capacity `n`, the vertex count) and their number to `edges`. The spec
/// must be root-based.
///
/// # Safety
/// `g` must be a live handle, `spec` a NUL-terminated string, `eu` and `ev`
/// writable for `n` values, `edges` writable.
#[no_mangle]
pub unsafe extern "C" fn connlab_spanning_forest(
    g: *const ConnlabGraph,
    spec: *const c_char,
    seed: u64,
    workers: usize,
    eu: *mut u32,
    ev: *mut u32,
    n: usize,
    edges: *mut usize,
) -> ConnlabStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        if n != graph.num_vertices() {
            return Err(invalid(format!("edge arrays hold {n} entries, graph has {}", graph.num_vertices())));
        }
        let count = edges.as_mut().ok_or_else(|| null("edges"))?;
        let (us, vs) = (output(eu, n, "eu")?, output(ev, n, "ev")?);
        let (forest, _) = spanning_forest(&executor(workers)?, graph, &parse_spec(spec, seed)?)?;
        let mut k = 0;
        for (u, v) in forest.iter() {
            us[k] = u;
            vs[k] = v;
            k += 1;
        }
        *count = k;
        Ok(())
    })
}

/// Starts an empty incremental session. The spec must be root-based and
/// `racy` is only accepted for union-find finishes.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn connlab_session_new(
    spec: *const c_char,
    seed: u64,
    workers: usize,
    racy: bool,
    out: *mut *mut ConnlabSession,
) -> ConnlabStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let session = IncrementalSession::new(executor(workers)?, parse_spec(spec, seed)?, racy)?;
        *out = Box::into_raw(Box::new(ConnlabSession { session }));
        Ok(())
    })
}

/// Applies one batch of `len` operations: `kinds[i]` is
/// `CONNLAB_OP_INSERT` or `CONNLAB_OP_QUERY` on `(u[i], v[i])`. Inserts of
/// the batch are visible to its queries. `results[i]` receives 1 for a
/// connected query pair and 0 otherwise (always 0 for inserts); it may be
/// null if no answers are wanted.
///
/// # Safety
/// `s` must be a live handle; the arrays must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn connlab_session_apply(
    s: *mut ConnlabSession,
    kinds: *const u8,
    u: *const u32,
    v: *const u32,
    len: usize,
    results: *mut u8,
) -> ConnlabStatus {
    guard(|| {
        let h = s.as_mut().ok_or_else(|| null("session"))?;
        let (kinds, us, vs) = (input(kinds, len, "kinds")?, input(u, len, "u")?, input(v, len, "v")?);
        let ops = (0..len)
            .map(|i| match kinds[i] {
                CONNLAB_OP_INSERT => Ok(BatchOp::Insert(us[i], vs[i])),
                CONNLAB_OP_QUERY => Ok(BatchOp::Query(us[i], vs[i])),
                k => Err(invalid(format!("operation {i} has unknown kind {k}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let out = if results.is_null() { None } else { Some(output(results, len, "results")?) };
        let mut batch = Batch::new(ops);
        h.session.apply(&mut batch)?;
        if let Some(out) = out {
            for (o, &r) in out.iter_mut().zip(&batch.results) {
                *o = r as u8;
            }
        }
        Ok(())
    })
}

/// Number of vertices the session has seen (one past the largest id).
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn connlab_session_num_vertices(s: *const ConnlabSession) -> usize {
    s.as_ref().map_or(0, |h| h.session.capacity())
}

/// Current component labels (smallest id per component). `cap` must be at
/// least [`connlab_session_num_vertices`]; the count written goes to `len`.
///
/// # Safety
/// `s` must be a live handle, `labels` writable for `cap` values, `len`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn connlab_session_labels(
    s: *const ConnlabSession,
    labels: *mut u32,
    cap: usize,
    len: *mut usize,
) -> ConnlabStatus {
    guard(|| {
        let h = s.as_ref().ok_or_else(|| null("session"))?;
        let len = len.as_mut().ok_or_else(|| null("len"))?;
        let current: Vec<VertexId> = h.session.labels();
        if cap < current.len() {
            return Err(invalid(format!("labels holds {cap} entries, session has {}", current.len())));
        }
        output(labels, current.len(), "labels")?.copy_from_slice(&current);
        *len = current.len();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn connlab_session_free(s: *mut ConnlabSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
