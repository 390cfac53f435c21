//! C ABI for circnoc.
//!
//! Graphs and routers are opaque heap handles created by `*_new`-style
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`CircnocStatus`]; the message of the most recent failure on the
//! calling thread is available from [`circnoc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use circnoc::analysis::{chip_capacity, efficiency_with, memory_report, ChipProfile, Resource, ResourceModel};
use circnoc::routing::{default_hop_limit, AdaptiveMode, Algorithm, LeftSeed, Router, RouterConfig};
use circnoc::topology::{build_circulant, build_mesh, build_torus, metrics, CirculantSpec, Graph};
use circnoc::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircnocStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    NodeOutOfRange = 3,
    Disconnected = 4,
    Livelock = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircnocAlgorithm {
    Table = 0,
    Clockwise = 1,
    Adaptive = 2,
}

/// Left seed of adaptive routing.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircnocLeftSeed {
    Corrected = 0,
    AsPrinted = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CircnocMetrics {
    pub diameter: usize,
    pub avg_distance: f64,
    pub edge_count: usize,
    pub max_degree: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CircnocMemory {
    pub payload_bits: u32,
    pub table_bits: u64,
    pub clockwise_bits: u64,
    pub adaptive_bits: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CircnocCapacity {
    pub max_routers: usize,
    /// 0 when ALMs run out first, 1 for registers.
    pub register_bound: u8,
    pub alm_used: f64,
    pub reg_used: f64,
}

/// Opaque topology handle.
pub struct CircnocGraph(Graph);

/// Opaque router handle.
pub struct CircnocRouter(Router);

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: &str) {
    LAST_ERROR.with(|e| {
        let mut buf = e.borrow_mut();
        buf.clear();
        buf.extend_from_slice(msg.as_bytes());
    });
}

fn fail(status: CircnocStatus, msg: &str) -> CircnocStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> CircnocStatus {
    match e {
        Error::NodeOutOfRange { .. } => CircnocStatus::NodeOutOfRange,
        Error::Disconnected { .. } => CircnocStatus::Disconnected,
        Error::Livelock { .. } => CircnocStatus::Livelock,
        e if e.is_validation() => CircnocStatus::InvalidArgument,
        _ => CircnocStatus::Internal,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), CircnocStatus>) -> CircnocStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CircnocStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(CircnocStatus::Internal, "panic inside circnoc"),
    }
}

fn check<T>(r: Result<T, Error>) -> Result<T, CircnocStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

fn non_null<T>(p: *const T) -> Result<(), CircnocStatus> {
    if p.is_null() {
        Err(fail(CircnocStatus::NullPointer, "null pointer argument"))
    } else {
        Ok(())
    }
}

impl From<CircnocAlgorithm> for Algorithm {
    fn from(a: CircnocAlgorithm) -> Self {
        match a {
            CircnocAlgorithm::Table => Algorithm::Table,
            CircnocAlgorithm::Clockwise => Algorithm::Clockwise,
            CircnocAlgorithm::Adaptive => Algorithm::Adaptive,
        }
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn circnoc_status_str(status: CircnocStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CircnocStatus::Ok => c"ok",
        CircnocStatus::InvalidArgument => c"invalid argument",
        CircnocStatus::NullPointer => c"null pointer",
        CircnocStatus::NodeOutOfRange => c"node out of range",
        CircnocStatus::Disconnected => c"graph is disconnected",
        CircnocStatus::Livelock => c"hop limit exceeded",
        CircnocStatus::BufferTooSmall => c"buffer too small",
        CircnocStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Copies the calling thread's last error message into `buf` as a
/// NUL-terminated string, truncating to `cap - 1` bytes. Returns the full
/// message length without the terminator.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn circnoc_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

unsafe fn put_graph(out: *mut *mut CircnocGraph, g: Graph) {
    *out = Box::into_raw(Box::new(CircnocGraph(g)));
}

/// Circulant C(n; gens[0], ..., gens[len - 1]).
///
/// # Safety
/// `gens` must point to `len` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_graph_circulant(
    n: usize,
    gens: *const usize,
    len: usize,
    out: *mut *mut CircnocGraph,
) -> CircnocStatus {
    guard(|| {
        non_null(gens)?;
        non_null(out)?;
        let spec = check(CirculantSpec::new(n, std::slice::from_raw_parts(gens, len).to_vec()))?;
        put_graph(out, build_circulant(&spec));
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_graph_mesh(rows: usize, cols: usize, out: *mut *mut CircnocGraph) -> CircnocStatus {
    guard(|| {
        non_null(out)?;
        put_graph(out, check(build_mesh(rows, cols))?);
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_graph_torus(rows: usize, cols: usize, out: *mut *mut CircnocGraph) -> CircnocStatus {
    guard(|| {
        non_null(out)?;
        put_graph(out, check(build_torus(rows, cols))?);
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn circnoc_graph_free(graph: *mut CircnocGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Node count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn circnoc_graph_node_count(graph: *const CircnocGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_graph_metrics(graph: *const CircnocGraph, out: *mut CircnocMetrics) -> CircnocStatus {
    guard(|| {
        non_null(graph)?;
        non_null(out)?;
        let m = check(metrics(&(*graph).0))?;
        *out = CircnocMetrics {
            diameter: m.diameter,
            avg_distance: m.avg_distance,
            edge_count: m.edge_count,
            max_degree: m.max_degree,
        };
        Ok(())
    })
}

/// Router on C(n; 1, s2).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_router_new(
    n: usize,
    s2: usize,
    algorithm: CircnocAlgorithm,
    seed: CircnocLeftSeed,
    max_cycles: usize,
    out: *mut *mut CircnocRouter,
) -> CircnocStatus {
    guard(|| {
        non_null(out)?;
        let cfg = check(RouterConfig::new(n, s2))?;
        let seed = match seed {
            CircnocLeftSeed::Corrected => LeftSeed::Corrected,
            CircnocLeftSeed::AsPrinted => LeftSeed::AsPrinted,
        };
        let mode = check(AdaptiveMode::new(seed, max_cycles))?;
        *out = Box::into_raw(Box::new(CircnocRouter(Router::new(algorithm.into(), cfg, mode))));
        Ok(())
    })
}

/// # Safety
/// `router` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn circnoc_router_free(router: *mut CircnocRouter) {
    if !router.is_null() {
        drop(Box::from_raw(router));
    }
}

/// Routes `src -> dst` and writes the visited nodes, both endpoints
/// included, into `nodes`. `*len` receives the node count; when it exceeds
/// `cap` nothing is written and `BufferTooSmall` is returned. A `hop_limit`
/// of 0 means 2n.
///
/// # Safety
/// `router` must be a live handle, `nodes` must hold `cap` values (or be null
/// with `cap` 0) and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_router_trace(
    router: *const CircnocRouter,
    src: usize,
    dst: usize,
    hop_limit: usize,
    nodes: *mut usize,
    cap: usize,
    len: *mut usize,
) -> CircnocStatus {
    guard(|| {
        non_null(router)?;
        non_null(len)?;
        let r = &(*router).0;
        let limit = if hop_limit == 0 { default_hop_limit(r.config()) } else { hop_limit };
        let trace = check(r.trace(src, dst, limit))?;
        *len = trace.nodes.len();
        if trace.nodes.len() > cap {
            return Err(fail(CircnocStatus::BufferTooSmall, "node buffer too small"));
        }
        non_null(nodes)?;
        ptr::copy_nonoverlapping(trace.nodes.as_ptr(), nodes, trace.nodes.len());
        Ok(())
    })
}

/// Efficiency criterion K from `source`.
///
/// # Safety
/// `router` must be a live handle and `k` writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_router_efficiency(router: *const CircnocRouter, source: usize, k: *mut f64) -> CircnocStatus {
    guard(|| {
        non_null(router)?;
        non_null(k)?;
        *k = check(efficiency_with(&(*router).0, source))?.k;
        Ok(())
    })
}

/// Memory models for an `n`-node network of four-port routers.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_memory(n: usize, out: *mut CircnocMemory) -> CircnocStatus {
    guard(|| {
        non_null(out)?;
        let m = check(memory_report(n))?;
        *out = CircnocMemory {
            payload_bits: m.payload_bits,
            table_bits: m.table_bits,
            clockwise_bits: m.clockwise_bits,
            adaptive_bits: m.adaptive_bits,
        };
        Ok(())
    })
}

/// Router capacity of a chip with `alm_total` ALMs and `reg_total`
/// registers, of which `budget` (in (0, 1]) is available.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circnoc_capacity(
    algorithm: CircnocAlgorithm,
    alm_total: u64,
    reg_total: u64,
    budget: f64,
    out: *mut CircnocCapacity,
) -> CircnocStatus {
    guard(|| {
        non_null(out)?;
        let profile = check(ChipProfile::new(alm_total, reg_total, budget))?;
        let r = check(chip_capacity(&ResourceModel::CYCLONE_V, algorithm.into(), &profile))?;
        *out = CircnocCapacity {
            max_routers: r.max_routers,
            register_bound: u8::from(r.binding_resource == Resource::Register),
            alm_used: r.alm_used,
            reg_used: r.reg_used,
        };
        Ok(())
    })
}
