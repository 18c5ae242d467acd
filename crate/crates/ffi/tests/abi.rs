use std::ffi::{CStr, CString};
use std::ptr;

use vertexlie_ffi::*;

fn preset(name: &str) -> *mut VlFormula {
    let name = CString::new(name).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { vl_formula_from_preset(name.as_ptr(), &mut f) }, VlStatus::Ok);
    assert!(!f.is_null());
    f
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { vl_string_free(s) };
    out
}

fn last_error() -> String {
    let p = vl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn virasoro_end_to_end() {
    let f = preset("virasoro");
    assert_eq!(unsafe { vl_formula_dim(f) }, 2);

    let mut v = VlVerdict::Undetermined;
    assert_eq!(unsafe { vl_formula_verdict(f, &mut v) }, VlStatus::Ok);
    assert_eq!(v, VlVerdict::InjectiveCentralIdeal);

    let (u, w) = (CString::new("ω").unwrap(), CString::new("omega").unwrap());
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { vl_bracket(f, u.as_ptr(), 3, w.as_ptr(), -1, &mut s) }, VlStatus::Ok);
    assert_eq!(take(s), "4*ω_1 + 1/2*c_-1");

    let mut dims = [0u64; 16];
    let mut len = 0usize;
    assert_eq!(unsafe { vl_verma_dims(f, 9, 1, dims.as_mut_ptr(), dims.len(), &mut len) }, VlStatus::Ok);
    assert_eq!(&dims[..len], &[1, 0, 1, 1, 2, 2, 4, 4, 7, 8]);
    assert_eq!(unsafe { vl_verma_dims(f, 9, 1, dims.as_mut_ptr(), 3, &mut len) }, VlStatus::BufferTooSmall);
    assert_eq!(len, 10);

    unsafe { vl_formula_free(f) };
}

#[test]
fn toml_round_trip_through_handles() {
    let f = preset("neveu-schwarz");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { vl_formula_export(f, &mut text) }, VlStatus::Ok);
    let text = take(text);
    let c = CString::new(text.clone()).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { vl_formula_from_toml(c.as_ptr(), &mut g) }, VlStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { vl_formula_export(g, &mut again) }, VlStatus::Ok);
    assert_eq!(take(again), text);
    let mut dims = [0u64; 8];
    let mut len = 0;
    // weights 0, 1/2, ..., 3: τ_{-1}, ω_{-1}, τ_{-2}, ω_{-2}
    assert_eq!(unsafe { vl_verma_dims(g, 3, 1, dims.as_mut_ptr(), 8, &mut len) }, VlStatus::Ok);
    assert_eq!(&dims[..len], &[1, 0, 0, 1, 1, 1, 1]);
    unsafe {
        vl_formula_free(f);
        vl_formula_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let bad = CString::new("nope").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { vl_formula_from_preset(bad.as_ptr(), &mut f) }, VlStatus::UnknownPreset);
    assert!(f.is_null());
    assert!(last_error().contains("nope"));

    let text = CString::new("[[basis]]\nname = 1\n").unwrap();
    assert_eq!(unsafe { vl_formula_from_toml(text.as_ptr(), &mut f) }, VlStatus::Parse);
    assert!(last_error().starts_with("parse error: <memory>:2:"), "{}", last_error());

    let g = preset("virasoro");
    let (q, w) = (CString::new("q").unwrap(), CString::new("ω").unwrap());
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { vl_bracket(g, q.as_ptr(), 0, w.as_ptr(), 0, &mut s) }, VlStatus::UnknownBasis);
    assert_eq!(unsafe { vl_bracket(ptr::null(), q.as_ptr(), 0, w.as_ptr(), 0, &mut s) }, VlStatus::NullPointer);
    assert_eq!(unsafe { vl_formula_dim(ptr::null()) }, 0);

    let flipped = preset("novikov-flipped");
    let mut len = 0;
    assert_eq!(unsafe { vl_verma_dims(flipped, 4, 1, ptr::null_mut(), 0, &mut len) }, VlStatus::NotInjective);
    unsafe {
        vl_formula_free(g);
        vl_formula_free(flipped);
        vl_formula_free(ptr::null_mut());
        vl_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/vertexlie.h")).unwrap();
    for sym in [
        "vl_last_error",
        "vl_formula_from_preset",
        "vl_formula_from_toml",
        "vl_formula_free",
        "vl_formula_dim",
        "vl_formula_verdict",
        "vl_bracket",
        "vl_verma_dims",
        "vl_formula_export",
        "vl_string_free",
        "typedef struct VlFormula VlFormula",
        "VL_STATUS_OK = 0",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}
