//! C interface to `modforms`.
//!
//! Every exported function is prefixed `mf_`. Fallible calls return an
//! [`MfStatus`] and write results through out-pointers; on failure
//! [`mf_last_error_message`] describes the problem. Objects are opaque
//! handles released with their matching `_free` function, and strings
//! returned by the library are released with [`mf_string_free`].

#![deny(unsafe_op_in_unsafe_fn)]

mod error;

use std::ffi::{c_char, CStr, CString};
use std::panic::AssertUnwindSafe;

use modforms::forms::{delta_series, eisenstein_series};
use modforms::hecke::{eigenbasis, hecke_matrix, hecke_prec, Eigenform};
use modforms::identities::{
    default_decomposition_prec, nonvanishing_report, verify_e24, verify_e32, verify_ramanujan, verify_table1,
};
use modforms::serial::{to_json, DecompositionJson, EigenformJson, HeckeJson};
use modforms::zeros::jvalue_algebraicity_check;
use modforms::{QSeries, Rational};

pub use error::{mf_last_error_message, MfStatus};
use error::{guard, Body, Fail};

/// A power series with rational coefficients.
pub struct MfSeries(QSeries<Rational>);

/// A normalized Hecke eigenform with coefficients in its Hecke field.
pub struct MfEigenform(Eigenform);

static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
    Ok(s) => s,
    Err(_) => panic!("version string"),
};

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn mf_version() -> *const c_char {
    VERSION.as_ptr()
}

fn null(what: &str) -> Fail {
    Fail(MfStatus::MfErrNullPointer, format!("{what} is NULL"))
}

/// Writes `v` through `out`, checking for NULL first.
unsafe fn put<T>(out: *mut T, v: T) -> Body<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: non-null and, per the caller's contract, valid for writes
    unsafe { out.write(v) };
    Ok(())
}

fn c_string(s: String) -> Body<*mut c_char> {
    CString::new(s).map(CString::into_raw).map_err(|_| Fail(MfStatus::MfErrUtf8, "interior NUL".into()))
}

fn json_string<T: serde::Serialize>(x: &T) -> Body<*mut c_char> {
    let v = to_json(x)?;
    c_string(v.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Body<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: caller passes a NUL-terminated string
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| Fail(MfStatus::MfErrUtf8, format!("{what} is not UTF-8")))
}

unsafe fn series_ref<'a>(s: *const MfSeries) -> Body<&'a QSeries<Rational>> {
    // SAFETY: caller passes a live handle or NULL
    unsafe { s.as_ref() }.map(|s| &s.0).ok_or_else(|| null("series"))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in this crate
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Normalized Eisenstein series `E_k` (constant term 1) to `prec` terms.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_series_eisenstein(k: u32, prec: usize, out: *mut *mut MfSeries) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        let s = eisenstein_series(k, prec)?;
        // SAFETY: forwarded caller contract
        unsafe { put(out, Box::into_raw(Box::new(MfSeries(s)))) }
    }))
}

/// `Delta = q prod (1 - q^n)^24` to `prec` terms.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_series_delta(prec: usize, out: *mut *mut MfSeries) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        if prec == 0 {
            return Err(Fail(MfStatus::MfErrInvalidArgument, "prec must be positive".into()));
        }
        // SAFETY: forwarded caller contract
        unsafe { put(out, Box::into_raw(Box::new(MfSeries(delta_series(prec))))) }
    }))
}

/// Product of two series, truncated to the shorter precision.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn mf_series_mul(a: *const MfSeries, b: *const MfSeries, out: *mut *mut MfSeries) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        // SAFETY: forwarded caller contract
        let (a, b) = unsafe { (series_ref(a)?, series_ref(b)?) };
        let p = a.try_mul(b)?;
        // SAFETY: forwarded caller contract
        unsafe { put(out, Box::into_raw(Box::new(MfSeries(p)))) }
    }))
}

/// Number of known coefficients, or 0 for NULL.
///
/// # Safety
/// `s` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn mf_series_len(s: *const MfSeries) -> usize {
    // SAFETY: forwarded caller contract
    unsafe { s.as_ref() }.map_or(0, |s| s.0.prec())
}

/// Coefficient of `q^n` as a string `p/q` (or an integer); free with
/// [`mf_string_free`].
///
/// # Safety
/// `s` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn mf_series_coeff(s: *const MfSeries, n: usize, out: *mut *mut c_char) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        // SAFETY: forwarded caller contract
        let s = unsafe { series_ref(s)? };
        let c = s.coeff(n).ok_or(modforms::Error::InsufficientPrecision { required: n + 1, available: s.prec() })?;
        let text = c_string(modforms::arith::rational::to_pq(c))?;
        // SAFETY: forwarded caller contract
        unsafe { put(out, text) }
    }))
}

/// Releases a series handle. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mf_series_free(s: *mut MfSeries) {
    if !s.is_null() {
        // SAFETY: produced by Box::into_raw in this crate
        drop(unsafe { Box::from_raw(s) });
    }
}

/// `T_n` on `S_k` as JSON `{n, weight, dim, matrix, charpoly}`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_hecke_json(n: u64, k: u32, out: *mut *mut c_char) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        let m = hecke_matrix(n, k, hecke_prec(n, k))?;
        let s = json_string(&HeckeJson::new(&m))?;
        // SAFETY: forwarded caller contract
        unsafe { put(out, s) }
    }))
}

/// Normalized eigenform of `S_k` to `prec` terms (0 selects a default).
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_eigenform_new(k: u32, prec: usize, out: *mut *mut MfEigenform) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        let p = if prec == 0 { 10 * modforms::forms::dim_mk(k as i64) + 10 } else { prec };
        let f = eigenbasis(k, p)?.remove(0);
        // SAFETY: forwarded caller contract
        unsafe { put(out, Box::into_raw(Box::new(MfEigenform(f)))) }
    }))
}

/// Degree of the Hecke field, or 0 for NULL.
///
/// # Safety
/// `f` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn mf_eigenform_degree(f: *const MfEigenform) -> usize {
    // SAFETY: forwarded caller contract
    unsafe { f.as_ref() }.map_or(0, |f| f.0.degree())
}

/// The eigenform as JSON, coefficients in the power basis of its field.
///
/// # Safety
/// `f` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn mf_eigenform_json(f: *const MfEigenform, out: *mut *mut c_char) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        // SAFETY: forwarded caller contract
        let f = unsafe { f.as_ref() }.ok_or_else(|| null("eigenform"))?;
        let s = json_string(&EigenformJson::new(&f.0))?;
        // SAFETY: forwarded caller contract
        unsafe { put(out, s) }
    }))
}

/// Releases an eigenform handle. NULL is ignored.
///
/// # Safety
/// `f` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mf_eigenform_free(f: *mut MfEigenform) {
    if !f.is_null() {
        // SAFETY: produced by Box::into_raw in this crate
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Runs a named identity check (`ramanujan`, `e24`, `e32`, `table1`).
/// `prec` 0 selects the default. `verified` receives the verdict and
/// `report` (may be NULL) the JSON report.
///
/// # Safety
/// `name` must be a NUL-terminated string; `verified` must be valid for
/// writing; `report` must be NULL or valid for writing.
#[no_mangle]
pub unsafe extern "C" fn mf_verify(
    name: *const c_char,
    prec: usize,
    verified: *mut bool,
    report: *mut *mut c_char,
) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        // SAFETY: forwarded caller contract
        let name = unsafe { str_arg(name, "name")? };
        let pick = |d: usize| if prec == 0 { d } else { prec };
        let r = match name {
            "ramanujan" => verify_ramanujan(pick(501))?,
            "e24" => verify_e24(pick(40))?,
            "e32" => verify_e32(pick(40))?,
            "table1" => verify_table1(pick(30))?,
            other => return Err(Fail(MfStatus::MfErrInvalidArgument, format!("unknown identity '{other}'"))),
        };
        // SAFETY: forwarded caller contract
        unsafe { put(verified, r.is_verified())? };
        if !report.is_null() {
            let s = json_string(&r)?;
            // SAFETY: checked non-null above
            unsafe { put(report, s)? };
        }
        Ok(())
    }))
}

/// Decomposition of `f^2` (f the weight-`k` eigenform) as JSON;
/// `all_nonzero` receives whether every coefficient is nonzero.
///
/// # Safety
/// `all_nonzero` and `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn mf_decompose_json(
    k: u32,
    prec: usize,
    all_nonzero: *mut bool,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        let p = if prec == 0 { default_decomposition_prec(k) } else { prec };
        let (dec, nums) = nonvanishing_report(k, p)?;
        let j = DecompositionJson::new(&dec, nums);
        // SAFETY: forwarded caller contract
        unsafe { put(all_nonzero, j.all_nonzero)? };
        let s = json_string(&j)?;
        // SAFETY: forwarded caller contract
        unsafe { put(out, s) }
    }))
}

/// Zeros of `E_12n` on the arc and the j-value comparison, as JSON;
/// `passed` receives the verdict.
///
/// # Safety
/// `passed` and `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn mf_zeros_json(
    n: u32,
    tol_zero: f64,
    tol_match: f64,
    seed: u64,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(AssertUnwindSafe(|| {
        if !(tol_zero > 0.0 && tol_match > 0.0) {
            return Err(Fail(MfStatus::MfErrInvalidArgument, "tolerances must be positive".into()));
        }
        let r = jvalue_algebraicity_check(n, tol_zero, tol_match, seed)?;
        // SAFETY: forwarded caller contract
        unsafe { put(passed, r.passed)? };
        let s = json_string(&r)?;
        // SAFETY: forwarded caller contract
        unsafe { put(out, s) }
    }))
}
