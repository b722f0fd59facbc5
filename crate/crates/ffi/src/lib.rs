//! C interface to tilepot.
//!
//! Pots and graphs are opaque handles created by `tp_*_parse`/`tp_graph_*`
//! and released with the matching `_free`. Every fallible call returns a
//! [`TpStatus`]; on `TP_STATUS_ERROR` and friends `tp_last_error` describes
//! the failure. Strings handed out by the library are released with
//! `tp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tilepot::graph::{generate, Family};
use tilepot::realize::find_realization;
use tilepot::scenario::{check_scenario, Verdict};
use tilepot::spectrum::{min_order_budgeted, spectrum, SpectrumError};
use tilepot::{parse_pot, Budget, MultiGraph, Pot};

/// Result codes; the first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpStatus {
    Ok = 0,
    /// The question was settled negatively.
    No = 1,
    Error = 2,
    /// The search budget ran out first.
    Indeterminate = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
}

/// Opaque pot handle.
pub struct TpPot(Pot);

/// Opaque graph handle.
pub struct TpGraph(MultiGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: TpStatus, message: impl Into<String>) -> TpStatus {
    set_error(message);
    status
}

/// Runs `f`, turning panics into `TP_STATUS_ERROR`.
fn guard(f: impl FnOnce() -> TpStatus) -> TpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(TpStatus::Error, "internal panic"))
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, TpStatus> {
    if text.is_null() {
        return Err(fail(TpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(TpStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> TpStatus {
    if out.is_null() {
        return fail(TpStatus::NullPointer, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            TpStatus::Ok
        }
        Err(_) => fail(TpStatus::Error, "output contains a NUL byte"),
    }
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> TpStatus {
    if out.is_null() {
        return fail(TpStatus::NullPointer, "null output pointer");
    }
    *out = Box::into_raw(Box::new(value));
    TpStatus::Ok
}

macro_rules! deref {
    ($p:expr) => {
        match $p.as_ref() {
            Some(x) => &x.0,
            None => return fail(TpStatus::NullPointer, "null handle"),
        }
    };
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a pot in the text grammar or JSON form.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_pot_parse(text: *const c_char, out: *mut *mut TpPot) -> TpStatus {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_pot(text) {
            Ok(p) => write_handle(out, TpPot(p)),
            Err(e) => fail(TpStatus::Error, e.to_string()),
        }
    })
}

/// # Safety
/// `pot` must come from `tp_pot_parse` and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn tp_pot_free(pot: *mut TpPot) {
    if !pot.is_null() {
        drop(Box::from_raw(pot));
    }
}

/// Number of tile types, or 0 for NULL.
///
/// # Safety
/// `pot` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tp_pot_tile_count(pot: *const TpPot) -> usize {
    pot.as_ref().map_or(0, |p| p.0.len())
}

/// Number of bond-edge types, or 0 for NULL.
///
/// # Safety
/// `pot` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tp_pot_symbol_count(pot: *const TpPot) -> usize {
    pot.as_ref().map_or(0, |p| p.0.symbol_count())
}

/// Text form of the pot.
///
/// # Safety
/// `pot` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_pot_render(pot: *const TpPot, out: *mut *mut c_char) -> TpStatus {
    guard(|| {
        let p = deref!(pot);
        write_string(out, p.render())
    })
}

/// Parses `{"vertices": n, "edges": [[u, v], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_from_json(json: *const c_char, out: *mut *mut TpGraph) -> TpStatus {
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match MultiGraph::from_json_str(text) {
            Ok(g) => write_handle(out, TpGraph(g)),
            Err(e) => fail(TpStatus::Error, e.to_string()),
        }
    })
}

/// Generates a family member, e.g. `("square_tube", {4, 5}, 2)` or `("cube", NULL, 0)`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `dims` must point to `ndims`
/// values (or be NULL when `ndims` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_family(
    name: *const c_char,
    dims: *const usize,
    ndims: usize,
    out: *mut *mut TpGraph,
) -> TpStatus {
    guard(|| {
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let dims: &[usize] = if ndims == 0 {
            &[]
        } else if dims.is_null() {
            return fail(TpStatus::NullPointer, "null dimension array");
        } else {
            std::slice::from_raw_parts(dims, ndims)
        };
        match Family::parse(name, dims).and_then(|f| generate(&f)) {
            Ok(g) => write_handle(out, TpGraph(g)),
            Err(e) => fail(TpStatus::Error, e.to_string()),
        }
    })
}

/// # Safety
/// `graph` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_free(graph: *mut TpGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_vertex_count(graph: *const TpGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `graph` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_edge_count(graph: *const TpGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_to_json(graph: *const TpGraph, out: *mut *mut c_char) -> TpStatus {
    guard(|| {
        let g = deref!(graph);
        write_string(out, serde_json::to_string(&g.to_json()).expect("graphs serialize"))
    })
}

/// Spectrum as JSON: consistency, free count, constants and basis as
/// rational strings. `TP_STATUS_NO` when the spectrum is empty.
///
/// # Safety
/// `pot` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_spectrum_json(pot: *const TpPot, out: *mut *mut c_char) -> TpStatus {
    guard(|| {
        let p = deref!(pot);
        let s = spectrum(p);
        let strings = |v: &[tilepot::spectrum::Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let json = serde_json::json!({
            "consistent": s.consistent,
            "free_count": s.free_count(),
            "constants": strings(&s.constants),
            "basis": s.basis.iter().map(|b| strings(b)).collect::<Vec<_>>(),
        });
        let st = write_string(out, json.to_string());
        if st == TpStatus::Ok && !s.consistent {
            TpStatus::No
        } else {
            st
        }
    })
}

/// Minimum-order witnesses up to `max_order` as
/// `{"free_count": f, "witnesses": [{"order": n, "counts": [...]}]}`.
/// `TP_STATUS_NO` (with the JSON still written) when there are none.
///
/// # Safety
/// `pot` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_min_order_json(
    pot: *const TpPot,
    max_order: u64,
    fallback: bool,
    budget: u64,
    out: *mut *mut c_char,
) -> TpStatus {
    guard(|| {
        let p = deref!(pot);
        match min_order_budgeted(p, max_order, fallback, &mut Budget::new(budget)) {
            Ok(m) => {
                let st = write_string(out, serde_json::to_string(&m).expect("serializes"));
                if st == TpStatus::Ok && m.witnesses.is_empty() {
                    TpStatus::No
                } else {
                    st
                }
            }
            Err(SpectrumError::Budget(b)) => fail(TpStatus::Indeterminate, b.to_string()),
            Err(e) => fail(TpStatus::Error, e.to_string()),
        }
    })
}

/// Searches for a realization of `graph`. On success, when `certificate` is
/// not NULL, it receives `{"tiles": [...], "edge_labels": [[edge, symbol, from]]}`.
///
/// # Safety
/// Handles must be live; `certificate` must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn tp_realize(
    pot: *const TpPot,
    graph: *const TpGraph,
    budget: u64,
    certificate: *mut *mut c_char,
) -> TpStatus {
    guard(|| {
        let p = deref!(pot);
        let g = deref!(graph);
        match find_realization(p, g, &mut Budget::new(budget)) {
            Ok(Some(cert)) if !certificate.is_null() => {
                write_string(certificate, serde_json::to_string(&cert.to_json(g)).expect("serializes"))
            }
            Ok(Some(_)) => TpStatus::Ok,
            Ok(None) => TpStatus::No,
            Err(b) => fail(TpStatus::Indeterminate, b.to_string()),
        }
    })
}

/// Checks scenario `level` (1, 2 or 3): `TP_STATUS_OK` when it holds,
/// `TP_STATUS_NO` when it fails.
///
/// # Safety
/// Handles must be live.
#[no_mangle]
pub unsafe extern "C" fn tp_scenario(
    pot: *const TpPot,
    graph: *const TpGraph,
    level: u8,
    budget: u64,
) -> TpStatus {
    guard(|| {
        let p = deref!(pot);
        let g = deref!(graph);
        match check_scenario(p, g, level, &mut Budget::new(budget)) {
            Ok(r) => match r.verdict {
                Verdict::Holds => TpStatus::Ok,
                Verdict::Fails => TpStatus::No,
                Verdict::Indeterminate => fail(
                    TpStatus::Indeterminate,
                    r.note.unwrap_or_else(|| "budget exhausted".to_string()),
                ),
            },
            Err(e) => fail(TpStatus::Error, e.to_string()),
        }
    })
}
