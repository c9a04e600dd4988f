//! C ABI over `pkp-core`.
//!
//! Instances and solutions are opaque heap handles created and destroyed
//! through this API. Every fallible call returns a [`PkpStatus`]; the message
//! for the most recent failure on the calling thread is available from
//! [`pkp_last_error`]. Strings returned to the caller must be released with
//! [`pkp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pkp_core::io::{from_json, from_text, to_json};
use pkp_core::numerics::floor_scaled_log2_u64;
use pkp_core::reduction::{reduce_ppp_to_pkp, PppInstance};
use pkp_core::report::{solve_raw, Algorithm};
use pkp_core::{Instance, Item, PkpError, Rational, Solution};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkpStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidInput = 3,
    EpsOutOfRange = 4,
    TooLarge = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkpAlgorithm {
    Exact = 0,
    Fptas = 1,
    Greedy = 2,
    Brute = 3,
}

impl From<PkpAlgorithm> for Algorithm {
    fn from(a: PkpAlgorithm) -> Self {
        match a {
            PkpAlgorithm::Exact => Algorithm::Exact,
            PkpAlgorithm::Fptas => Algorithm::Fptas,
            PkpAlgorithm::Greedy => Algorithm::Greedy,
            PkpAlgorithm::Brute => Algorithm::Brute,
        }
    }
}

/// Opaque problem instance.
pub struct PkpInstance {
    inner: Instance,
}

/// Opaque solver result, indices refer to the instance it was solved from.
pub struct PkpSolution {
    inner: Solution,
    value: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &PkpError) -> PkpStatus {
    match e {
        PkpError::Parse(_) => PkpStatus::Parse,
        PkpError::EpsOutOfRange(_) => PkpStatus::EpsOutOfRange,
        PkpError::TooLarge { .. } | PkpError::BitBudgetExceeded { .. } | PkpError::Overflow(_) => {
            PkpStatus::TooLarge
        }
        _ => PkpStatus::InvalidInput,
    }
}

fn fail(e: PkpError) -> PkpStatus {
    set_error(&e.to_string());
    status_of(&e)
}

/// Runs `f`, converting panics into [`PkpStatus::Internal`].
fn guarded(f: impl FnOnce() -> PkpStatus) -> PkpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == PkpStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => {
            set_error("internal panic");
            PkpStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PkpStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(PkpStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        PkpStatus::Parse
    })
}

unsafe fn store_instance(inst: Instance, out: *mut *mut PkpInstance) -> PkpStatus {
    *out = Box::into_raw(Box::new(PkpInstance { inner: inst }));
    PkpStatus::Ok
}

/// Message describing the last failure on this thread, empty after a
/// success. The pointer stays valid until the next call into this library
/// from the same thread.
#[no_mangle]
pub extern "C" fn pkp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an instance from the JSON format.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkp_instance_from_json(json: *const c_char, out: *mut *mut PkpInstance) -> PkpStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return PkpStatus::NullPointer;
        }
        let s = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match from_json(s) {
            Ok(inst) => store_instance(inst, out),
            Err(e) => fail(e),
        }
    })
}

/// Parses an instance from the plain-text format (`n C` then `p w` lines).
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkp_instance_from_text(text: *const c_char, out: *mut *mut PkpInstance) -> PkpStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return PkpStatus::NullPointer;
        }
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match from_text(s) {
            Ok(inst) => store_instance(inst, out),
            Err(e) => fail(e),
        }
    })
}

/// Builds an instance from parallel profit and weight arrays of length `n`.
///
/// # Safety
/// `profits` and `weights` must point to `n` readable values (or may be null
/// when `n == 0`); `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkp_instance_new(
    profits: *const i64,
    weights: *const i64,
    n: usize,
    capacity: i64,
    out: *mut *mut PkpInstance,
) -> PkpStatus {
    guarded(|| {
        if out.is_null() || (n > 0 && (profits.is_null() || weights.is_null())) {
            set_error("null pointer argument");
            return PkpStatus::NullPointer;
        }
        let items = if n == 0 {
            Vec::new()
        } else {
            let p = std::slice::from_raw_parts(profits, n);
            let w = std::slice::from_raw_parts(weights, n);
            p.iter().zip(w).map(|(&p, &w)| Item::new(p, w)).collect()
        };
        match Instance::new(items, capacity) {
            Ok(inst) => store_instance(inst, out),
            Err(e) => fail(e),
        }
    })
}

/// Reduces a Product Partition instance to a PKP instance.
///
/// # Safety
/// `a` must point to `n` readable values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkp_reduce_ppp(a: *const u64, n: usize, out: *mut *mut PkpInstance) -> PkpStatus {
    guarded(|| {
        if out.is_null() || (n > 0 && a.is_null()) {
            set_error("null pointer argument");
            return PkpStatus::NullPointer;
        }
        let values = if n == 0 { Vec::new() } else { std::slice::from_raw_parts(a, n).to_vec() };
        match PppInstance::new(values).and_then(|p| reduce_ppp_to_pkp(&p)) {
            Ok(red) => store_instance(red.pkp, out),
            Err(e) => fail(e),
        }
    })
}

/// Number of items, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pkp_instance_len(inst: *const PkpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.len())
}

/// Capacity, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pkp_instance_capacity(inst: *const PkpInstance) -> i64 {
    inst.as_ref().map_or(0, |i| i.inner.capacity())
}

/// JSON encoding of the instance; release with [`pkp_string_free`]. Null on
/// a null handle.
///
/// # Safety
/// `inst` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pkp_instance_to_json(inst: *const PkpInstance) -> *mut c_char {
    match inst.as_ref() {
        Some(i) => CString::new(to_json(&i.inner)).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `inst` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pkp_instance_free(inst: *mut PkpInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Preprocesses and solves `inst`. `eps_num/eps_den` is used by the FPTAS
/// only and must be `0/0` for the other algorithms.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkp_solve(
    inst: *const PkpInstance,
    algorithm: PkpAlgorithm,
    eps_num: u64,
    eps_den: u64,
    out: *mut *mut PkpSolution,
) -> PkpStatus {
    guarded(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            set_error("null pointer argument");
            return PkpStatus::NullPointer;
        };
        let eps = match (eps_num, eps_den) {
            (0, 0) => None,
            (n, d) => match Rational::new(n, d) {
                Ok(r) => Some(r),
                Err(_) => return fail(PkpError::EpsOutOfRange(format!("{n}/{d}"))),
            },
        };
        match solve_raw(&inst.inner, algorithm.into(), eps) {
            Ok(outcome) => {
                let value = CString::new(outcome.solution.value.to_string()).expect("digits only");
                *out = Box::into_raw(Box::new(PkpSolution { inner: outcome.solution, value }));
                PkpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of selected items, 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pkp_solution_len(sol: *const PkpSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.inner.indices.len())
}

/// Copies the sorted item indices into `buf` (capacity `cap`).
///
/// # Safety
/// `sol` must be a live handle; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn pkp_solution_indices(sol: *const PkpSolution, buf: *mut usize, cap: usize) -> PkpStatus {
    guarded(|| {
        let Some(sol) = sol.as_ref() else {
            set_error("null solution handle");
            return PkpStatus::NullPointer;
        };
        let idx = &sol.inner.indices;
        if idx.len() > cap {
            set_error(&format!("buffer holds {cap} indices, need {}", idx.len()));
            return PkpStatus::BufferTooSmall;
        }
        if !idx.is_empty() {
            if buf.is_null() {
                set_error("null buffer");
                return PkpStatus::NullPointer;
            }
            ptr::copy_nonoverlapping(idx.as_ptr(), buf, idx.len());
        }
        PkpStatus::Ok
    })
}

/// Objective value as a decimal string owned by the solution handle.
///
/// # Safety
/// `sol` must be null or a live handle; the pointer dies with the handle.
#[no_mangle]
pub unsafe extern "C" fn pkp_solution_value(sol: *const PkpSolution) -> *const c_char {
    sol.as_ref().map_or(ptr::null(), |s| s.value.as_ptr())
}

/// # Safety
/// `sol` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pkp_solution_free(sol: *mut PkpSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pkp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `⌊(num/den)·log₂x⌋` computed exactly.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkp_floor_scaled_log2(x: u64, num: u64, den: u64, out: *mut u64) -> PkpStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return PkpStatus::NullPointer;
        }
        let r = Rational::new(num, den).and_then(|c| floor_scaled_log2_u64(x, c));
        match r {
            Ok(v) => {
                *out = v;
                PkpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
