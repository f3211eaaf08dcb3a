//! C ABI for twisted-geom.
//!
//! Objects are returned as opaque handles through out-pointers and released
//! with the matching `*_free` function. Every fallible call returns a
//! [`TgStatus`]; on failure, [`tg_last_error`] gives a message for the
//! calling thread. Strings produced by the library are owned by the caller
//! and released with [`tg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twisted_geom::design::Design;
use twisted_geom::error::Error;
use twisted_geom::export;
use twisted_geom::geometry::{self, Instance};
use twisted_geom::graph::Graph;
use twisted_geom::verify::{self, Check, VerifyConfig};
use twisted_geom::Field;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// Bad parameters: not a prime power, e out of range, unknown check name.
    InvalidArgument = 2,
    /// The operation is not available for these parameters.
    Unsupported = 3,
    /// Index out of range.
    OutOfRange = 4,
    /// Unexpected failure inside the library (including caught panics).
    Internal = 5,
}

/// A graph built by one of the `tg_*_graph` constructors.
pub struct TgGraph(Graph);

/// A design built by `tg_pg_design` or `tg_jt_design`.
pub struct TgDesign(Design);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> TgStatus {
    match e {
        Error::InvalidField(_)
        | Error::InvalidArgument(_)
        | Error::BadForm(_)
        | Error::NotHyperplane
        | Error::DimensionMismatch(_) => TgStatus::InvalidArgument,
        Error::Unsupported(_) | Error::Overflow(_) => TgStatus::Unsupported,
        Error::OutOfRange(_) => TgStatus::OutOfRange,
        _ => TgStatus::Internal,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (TgStatus, String)>) -> TgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TgStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (TgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TgStatus, String) {
    (TgStatus::NullPointer, format!("{what} is NULL"))
}

fn instance(q: u32, e: u32) -> Result<Instance, (TgStatus, String)> {
    if e < 2 {
        return Err((TgStatus::InvalidArgument, "e must be ≥ 2".into()));
    }
    let field = Field::with_order(q).map_err(lib_err)?;
    Instance::new(&field, e as usize, None).map_err(lib_err)
}

/// # Safety
/// `out` must be NULL or valid for a pointer write.
unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), (TgStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// # Safety
/// `out` must be NULL or valid for a pointer write.
unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), (TgStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| (TgStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread; do not free.
#[no_mangle]
pub extern "C" fn tg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Twisted Grassmann graph over GF(q) with parameter e (e >= 2), standard polarity.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tg_twisted_graph(q: u32, e: u32, out: *mut *mut TgGraph) -> TgStatus {
    guard(|| {
        let g = instance(q, e)?.twisted_graph().map_err(lib_err)?;
        emit(out, TgGraph(g))
    })
}

/// Grassmann graph J_q(n, k).
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tg_grassmann_graph(q: u32, n: u32, k: u32, out: *mut *mut TgGraph) -> TgStatus {
    guard(|| {
        let field = Field::with_order(q).map_err(lib_err)?;
        let g = geometry::grassmann_graph(&field, n as usize, k as usize).map_err(lib_err)?;
        emit(out, TgGraph(g))
    })
}

/// Geometric design of points and (e+1)-spaces of PG(2e, q); e >= 1.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tg_pg_design(q: u32, e: u32, out: *mut *mut TgDesign) -> TgStatus {
    guard(|| {
        let field = Field::with_order(q).map_err(lib_err)?;
        let d = geometry::pg_design(&field, e as usize).map_err(lib_err)?;
        emit(out, TgDesign(d))
    })
}

/// Jungnickel-Tonchev design; e >= 2.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tg_jt_design(q: u32, e: u32, out: *mut *mut TgDesign) -> TgStatus {
    guard(|| {
        let d = instance(q, e)?.jt_design().map_err(lib_err)?;
        emit(out, TgDesign(d))
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_free(g: *mut TgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `d` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tg_design_free(d: *mut TgDesign) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Vertex count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_vertex_count(g: *const TgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Edge count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_edge_count(g: *const TgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_degree(g: *const TgGraph, v: usize, out: *mut usize) -> TgStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if v >= g.0.vertex_count() {
            return Err((TgStatus::OutOfRange, format!("vertex {v} out of range")));
        }
        *out = g.0.degree(v);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_is_adjacent(g: *const TgGraph, u: usize, v: usize, out: *mut bool) -> TgStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let n = g.0.vertex_count();
        if u >= n || v >= n {
            return Err((TgStatus::OutOfRange, format!("vertex pair ({u}, {v}) out of range")));
        }
        *out = g.0.is_adjacent(u, v);
        Ok(())
    })
}

/// Point count, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tg_design_point_count(d: *const TgDesign) -> usize {
    d.as_ref().map_or(0, |d| d.0.point_count())
}

/// Block count, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tg_design_block_count(d: *const TgDesign) -> usize {
    d.as_ref().map_or(0, |d| d.0.block_count())
}

/// Copies the sorted points of block `i` into `buf`. `*len` holds the
/// capacity on entry and the block size on return; if the capacity is too
/// small nothing is copied and `OutOfRange` is returned with `*len` set.
///
/// # Safety
/// `d` must be a live handle, `len` valid for read/write and `buf` valid for
/// `*len` writes (may be NULL when `*len` is 0).
#[no_mangle]
pub unsafe extern "C" fn tg_design_block(d: *const TgDesign, i: usize, buf: *mut u32, len: *mut usize) -> TgStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("design"))?;
        let len = len.as_mut().ok_or_else(|| null("len"))?;
        if i >= d.0.block_count() {
            return Err((TgStatus::OutOfRange, format!("block {i} out of range")));
        }
        let block = d.0.block(i);
        let cap = *len;
        *len = block.len();
        if cap < block.len() {
            return Err((TgStatus::OutOfRange, format!("buffer holds {cap}, block has {}", block.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(block.as_ptr(), buf, block.len());
        Ok(())
    })
}

/// graph6 encoding (no trailing newline). Free with `tg_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_to_graph6(g: *const TgGraph, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        emit_string(out, export::to_graph6(&g.0))
    })
}

/// JSON `{vertices, edges, labels}`. Free with `tg_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_to_json(g: *const TgGraph, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        emit_string(out, export::graph_to_json(&g.0).map_err(lib_err)?)
    })
}

/// JSON `{v, blocks}`. Free with `tg_string_free`.
///
/// # Safety
/// `d` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tg_design_to_json(d: *const TgDesign, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("design"))?;
        emit_string(out, export::design_to_json(&d.0).map_err(lib_err)?)
    })
}

/// 0/1 incidence matrix as CSV, one row per block. Free with `tg_string_free`.
///
/// # Safety
/// `d` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tg_design_to_incidence_csv(d: *const TgDesign, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("design"))?;
        emit_string(out, export::to_incidence_csv(&d.0))
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a verification check (`thm1`, `drg`, `design`, `spectrum`,
/// `aut-sample`, `aut-exhaustive`, `prank` or `all`) and returns its JSON
/// report. `samples` of 0 selects the default sample size. A failed check
/// still returns `Ok`; inspect `*passed`.
///
/// # Safety
/// `check` must be a NUL-terminated string; `report` and `passed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_verify(
    check: *const c_char,
    q: u32,
    e: u32,
    seed: u64,
    samples: u32,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> TgStatus {
    guard(|| {
        if check.is_null() {
            return Err(null("check"));
        }
        let passed = passed.as_mut().ok_or_else(|| null("passed"))?;
        let name = CStr::from_ptr(check).to_str().map_err(|_| (TgStatus::InvalidArgument, "check is not UTF-8".into()))?;
        instance(q, e)?;
        let mut cfg = VerifyConfig::new(q, e as usize);
        cfg.seed = seed;
        cfg.samples = (samples > 0).then_some(samples as usize);
        let quiet = |_: &str| {};
        let r = match name {
            "all" => verify::run_all(&cfg, &quiet),
            s => {
                let c = Check::parse(s).ok_or_else(|| (TgStatus::InvalidArgument, format!("unknown check '{s}'")))?;
                verify::run_check(c, &cfg, &quiet)
            }
        }
        .map_err(lib_err)?;
        emit_string(report, r.to_json().map_err(lib_err)?)?;
        *passed = r.pass;
        Ok(())
    })
}
