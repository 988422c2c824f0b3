//! C ABI over the `symmorse` library.
//!
//! Conventions: every function returns a status code (`SM_OK` or a negative
//! `SM_ERR_*` constant) and writes results through out-pointers. Handles are
//! opaque; free them with the matching `*_free` function. After any failure,
//! [`sm_last_error`] returns a message for the calling thread, valid until
//! that thread's next failure.
//!
//! The committed header `include/symmorse.h` is generated from this file and
//! checked against it by the test suite.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use symmorse::collapse::{collapse_by_matching, trace_certifies_point};
use symmorse::complex::SymmetricDeltaComplex;
use symmorse::homology::betti;
use symmorse::io;
use symmorse::matching::{search_matching, OrbitHasse};
use symmorse::morse::validate_dmf;
use symmorse::tropical::{certify_coloop, enumerate_coloop_complex};

/// Success.
pub const SM_OK: c_int = 0;
/// A required pointer argument was null.
pub const SM_ERR_NULL_ARG: c_int = -1;
/// A string argument was not valid UTF-8.
pub const SM_ERR_UTF8: c_int = -2;
/// Reading or parsing a file failed.
pub const SM_ERR_IO: c_int = -3;
/// The requested check ran and was falsified.
pub const SM_ERR_FALSIFIED: c_int = -4;
/// The caller-provided buffer is too small.
pub const SM_ERR_BUFFER: c_int = -5;
/// An internal invariant failed.
pub const SM_ERR_INTERNAL: c_int = -6;

/// Opaque handle to a validated-on-load symmetric Δ-complex.
#[allow(non_camel_case_types)]
pub struct sm_complex {
    inner: SymmetricDeltaComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let message = CString::new(message.replace('\0', "?"))
        .unwrap_or_else(|_| CString::new("invalid error text").expect("static text"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

fn fail(code: c_int, message: &str) -> c_int {
    set_error(message);
    code
}

/// Run `body`, converting panics into `SM_ERR_INTERNAL` instead of
/// unwinding across the ABI boundary.
fn guarded(body: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => fail(SM_ERR_INTERNAL, "internal panic"),
    }
}

/// # Safety
/// `ptr` must be a valid C string.
unsafe fn utf8_arg<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        return Err(fail(SM_ERR_NULL_ARG, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(SM_ERR_UTF8, "string argument is not UTF-8"))
}

/// # Safety
/// `ptr` must be null or a pointer obtained from this library.
unsafe fn complex_arg<'a>(ptr: *const sm_complex) -> Result<&'a SymmetricDeltaComplex, c_int> {
    ptr.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(SM_ERR_NULL_ARG, "null complex handle"))
}

/// Message describing this thread's most recent failure. The pointer stays
/// valid until the next failing call on the same thread. Never null.
#[no_mangle]
pub extern "C" fn sm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Load a complex presentation from a JSON file and validate its relation
/// families. On success writes a handle to `out`; free it with
/// `sm_complex_free`. Presentations that load but fail validation return
/// `SM_ERR_FALSIFIED` and no handle.
///
/// # Safety
/// `path` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_complex_load_json(
    path: *const c_char,
    out: *mut *mut sm_complex,
) -> c_int {
    guarded(|| {
        if out.is_null() {
            return fail(SM_ERR_NULL_ARG, "null out-pointer");
        }
        let path = match utf8_arg(path) {
            Ok(p) => p,
            Err(code) => return code,
        };
        let inner = match io::read_complex(Path::new(path)) {
            Ok(x) => x,
            Err(e) => return fail(SM_ERR_IO, &e.to_string()),
        };
        let report = inner.validate();
        if !report.is_valid() {
            return fail(
                SM_ERR_FALSIFIED,
                &format!("{path}: {} relation violations", report.violations.len()),
            );
        }
        *out = Box::into_raw(Box::new(sm_complex { inner }));
        SM_OK
    })
}

/// Release a handle returned by `sm_complex_load_json`. Null is a no-op.
///
/// # Safety
/// `x` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn sm_complex_free(x: *mut sm_complex) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Top dimension of the complex.
///
/// # Safety
/// `x` must be a live handle; `out_dim` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_complex_max_dim(x: *const sm_complex, out_dim: *mut usize) -> c_int {
    guarded(|| {
        let x = match complex_arg(x) {
            Ok(x) => x,
            Err(code) => return code,
        };
        if out_dim.is_null() {
            return fail(SM_ERR_NULL_ARG, "null out-pointer");
        }
        *out_dim = x.max_dim();
        SM_OK
    })
}

/// Number of simplices in one dimension (0 above the top dimension).
///
/// # Safety
/// `x` must be a live handle; `out_count` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_complex_simplex_count(
    x: *const sm_complex,
    dim: usize,
    out_count: *mut usize,
) -> c_int {
    guarded(|| {
        let x = match complex_arg(x) {
            Ok(x) => x,
            Err(code) => return code,
        };
        if out_count.is_null() {
            return fail(SM_ERR_NULL_ARG, "null out-pointer");
        }
        *out_count = if x.is_empty() || dim > x.max_dim() {
            0
        } else {
            x.simplex_count(dim)
        };
        SM_OK
    })
}

/// Rational Betti numbers of the complex, one per dimension `0..=max_dim`.
/// Writes the required length to `out_len`; fills `buf` when `cap` suffices,
/// otherwise returns `SM_ERR_BUFFER` (call again with a larger buffer).
///
/// # Safety
/// `x` must be a live handle; `buf` must point to at least `cap` elements;
/// `out_len` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_complex_betti(
    x: *const sm_complex,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> c_int {
    guarded(|| {
        let x = match complex_arg(x) {
            Ok(x) => x,
            Err(code) => return code,
        };
        if out_len.is_null() || (cap > 0 && buf.is_null()) {
            return fail(SM_ERR_NULL_ARG, "null out-pointer");
        }
        let numbers = match betti(x) {
            Ok(n) => n,
            Err(e) => return fail(SM_ERR_INTERNAL, &e.to_string()),
        };
        *out_len = numbers.len();
        if numbers.len() > cap {
            return fail(
                SM_ERR_BUFFER,
                &format!("need space for {} entries, got {cap}", numbers.len()),
            );
        }
        for (i, n) in numbers.iter().enumerate() {
            *buf.add(i) = *n;
        }
        SM_OK
    })
}

/// Validate a discrete Morse function stored as a JSON file against the
/// complex. Returns `SM_OK` when valid and `SM_ERR_FALSIFIED` (with the
/// violation count in the error message) when not.
///
/// # Safety
/// `x` must be a live handle; `path` must be a valid C string.
#[no_mangle]
pub unsafe extern "C" fn sm_complex_check_dmf_file(
    x: *const sm_complex,
    path: *const c_char,
) -> c_int {
    guarded(|| {
        let x = match complex_arg(x) {
            Ok(x) => x,
            Err(code) => return code,
        };
        let path = match utf8_arg(path) {
            Ok(p) => p,
            Err(code) => return code,
        };
        let f = match io::read_dmf(Path::new(path), x) {
            Ok(f) => f,
            Err(e) => return fail(SM_ERR_IO, &e.to_string()),
        };
        let report = match validate_dmf(x, &f) {
            Ok(r) => r,
            Err(e) => return fail(SM_ERR_INTERNAL, &e.to_string()),
        };
        if report.is_valid() {
            SM_OK
        } else {
            fail(
                SM_ERR_FALSIFIED,
                &format!("{path}: {} violations", report.violations.len()),
            )
        }
    })
}

/// Search for a matching with the given seed, replay its collapsing
/// sequence, and report through `out_point` whether the trace certifies a
/// point (a single vertex-orbit attachment and nothing else).
///
/// # Safety
/// `x` must be a live handle; `out_point` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_complex_collapse_certify(
    x: *const sm_complex,
    seed: u64,
    out_point: *mut bool,
) -> c_int {
    guarded(|| {
        let x = match complex_arg(x) {
            Ok(x) => x,
            Err(code) => return code,
        };
        if out_point.is_null() {
            return fail(SM_ERR_NULL_ARG, "null out-pointer");
        }
        let hasse = match OrbitHasse::new(x) {
            Ok(h) => h,
            Err(e) => return fail(SM_ERR_INTERNAL, &e.to_string()),
        };
        let m = search_matching(x, &hasse, seed);
        let trace = match collapse_by_matching(x, &hasse, &m) {
            Ok(t) => t,
            Err(e) => return fail(SM_ERR_INTERNAL, &e.to_string()),
        };
        *out_point = trace_certifies_point(&trace);
        SM_OK
    })
}

/// Build the coloop census for rank bound `g` and run its four-clause
/// certificate. Writes the verdict to `out_ok`. Rank bound 4 needs
/// `allow_g4`; bounds outside `1..=4` are rejected as `SM_ERR_IO`-style
/// usage failures with an explanatory message.
///
/// # Safety
/// `out_ok` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_coloop_certify(g: usize, allow_g4: bool, out_ok: *mut bool) -> c_int {
    guarded(|| {
        if out_ok.is_null() {
            return fail(SM_ERR_NULL_ARG, "null out-pointer");
        }
        let (x, census) = match enumerate_coloop_complex(g, allow_g4) {
            Ok(pair) => pair,
            Err(e) => return fail(SM_ERR_IO, &e.to_string()),
        };
        match certify_coloop(&x, &census) {
            Ok(cert) => {
                *out_ok = cert.ok();
                SM_OK
            }
            Err(e) => fail(SM_ERR_INTERNAL, &e.to_string()),
        }
    })
}
