use std::ffi::{c_char, CStr, CString};
use std::ptr;

use modforms_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mf_string_free(s) };
    out
}

fn last_error() -> String {
    let p = mf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(mf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn eisenstein_coefficients() {
    let mut e4 = ptr::null_mut();
    assert_eq!(unsafe { mf_series_eisenstein(4, 6, &mut e4) }, MfStatus::MfOk);
    assert_eq!(unsafe { mf_series_len(e4) }, 6);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { mf_series_coeff(e4, 1, &mut c) }, MfStatus::MfOk);
    assert_eq!(take(c), "240");
    assert_eq!(unsafe { mf_series_coeff(e4, 6, &mut c) }, MfStatus::MfErrInsufficientPrecision);
    assert!(last_error().contains("precision"));
    unsafe { mf_series_free(e4) };
}

#[test]
fn e4_squared_is_e8() {
    let (mut e4, mut e8, mut sq) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(mf_series_eisenstein(4, 10, &mut e4), MfStatus::MfOk);
        assert_eq!(mf_series_eisenstein(8, 10, &mut e8), MfStatus::MfOk);
        assert_eq!(mf_series_mul(e4, e4, &mut sq), MfStatus::MfOk);
        for n in 0..10 {
            let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
            mf_series_coeff(sq, n, &mut a);
            mf_series_coeff(e8, n, &mut b);
            assert_eq!(take(a), take(b), "n = {n}");
        }
        mf_series_free(e4);
        mf_series_free(e8);
        mf_series_free(sq);
    }
}

#[test]
fn delta_tau() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { mf_series_delta(4, &mut d) }, MfStatus::MfOk);
    let taus: Vec<String> = (0..4)
        .map(|n| {
            let mut c = ptr::null_mut();
            unsafe { mf_series_coeff(d, n, &mut c) };
            take(c)
        })
        .collect();
    assert_eq!(taus, ["0", "1", "-24", "252"]);
    unsafe { mf_series_free(d) };
}

#[test]
fn bad_weight_reports_error() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mf_series_eisenstein(3, 5, &mut s) }, MfStatus::MfErrInvalidWeight);
    assert!(s.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn null_pointers_are_rejected() {
    assert_eq!(unsafe { mf_series_eisenstein(4, 5, ptr::null_mut()) }, MfStatus::MfErrNullPointer);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { mf_series_coeff(ptr::null(), 0, &mut c) }, MfStatus::MfErrNullPointer);
    assert_eq!(unsafe { mf_series_len(ptr::null()) }, 0);
    unsafe {
        mf_series_free(ptr::null_mut());
        mf_string_free(ptr::null_mut());
        mf_eigenform_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_last_error() {
    let mut s = ptr::null_mut();
    unsafe { mf_series_eisenstein(3, 5, &mut s) };
    assert!(!mf_last_error_message().is_null());
    assert_eq!(unsafe { mf_series_delta(3, &mut s) }, MfStatus::MfOk);
    assert!(mf_last_error_message().is_null());
    unsafe { mf_series_free(s) };
}

#[test]
fn hecke_json_weight_24() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mf_hecke_json(2, 24, &mut out) }, MfStatus::MfOk);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["dim"], 2);
}

#[test]
fn eigenform_handle() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { mf_eigenform_new(24, 0, &mut f) }, MfStatus::MfOk);
    assert_eq!(unsafe { mf_eigenform_degree(f) }, 2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mf_eigenform_json(f, &mut out) }, MfStatus::MfOk);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert!(v.is_object());
    unsafe { mf_eigenform_free(f) };
}

#[test]
fn verify_e24_and_unknown_name() {
    let name = CString::new("e24").unwrap();
    let mut ok = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { mf_verify(name.as_ptr(), 0, &mut ok, &mut report) }, MfStatus::MfOk);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(v["status"]["status"], "Verified");

    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { mf_verify(bad.as_ptr(), 0, &mut ok, ptr::null_mut()) }, MfStatus::MfErrInvalidArgument);
    assert!(last_error().contains("nope"));
}

#[test]
fn decompose_weight_24() {
    let mut nz = false;
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mf_decompose_json(24, 0, &mut nz, &mut out) }, MfStatus::MfOk);
    assert!(nz);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["weight"], 48);
}

#[test]
fn zeros_small_n() {
    let mut passed = false;
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mf_zeros_json(2, 1e-12, 1e-8, 1, &mut passed, &mut out) }, MfStatus::MfOk);
    assert!(passed);
    take(out);
    assert_eq!(
        unsafe { mf_zeros_json(2, -1.0, 1e-8, 1, &mut passed, &mut out) },
        MfStatus::MfErrInvalidArgument
    );
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/modforms.h");
    let src = format!("#include \"{header}\"\nint main(void) {{ return mf_version() == 0; }}\n");
    let dir = std::env::temp_dir().join(format!("mf_hdr_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let c = dir.join("t.c");
    std::fs::write(&c, src).unwrap();
    match std::process::Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg(&c).status() {
        Ok(st) => assert!(st.success(), "header failed to compile"),
        Err(_) => eprintln!("no C compiler found, skipping"),
    }
}
