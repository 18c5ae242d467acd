//! C ABI over `vertexlie`.
//!
//! Formulas are opaque [`VlFormula`] handles created from a preset name or a
//! TOML formula file and released with [`vl_formula_free`]. Every fallible
//! call returns a [`VlStatus`]; on failure [`vl_last_error`] describes it.
//! Strings handed out by the library are freed with [`vl_string_free`].

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use vertexlie::check::{formula_verdict, VerdictStatus};
use vertexlie::error::Error;
use vertexlie::io::{export_formula, parse_formula};
use vertexlie::lie::{bracket_generators, show_lie, LieGenerator};
use vertexlie::presets::preset_by_name;
use vertexlie::verma::VermaModule;
use vertexlie::{FormulaSpec, Scalar};

/// Opaque formula handle.
pub struct VlFormula {
    spec: FormulaSpec,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownBasis = 4,
    UnknownPreset = 5,
    NotInjective = 6,
    CutoffExceeded = 7,
    BufferTooSmall = 8,
    Invalid = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VlVerdict {
    InjectiveZeroIdeal = 0,
    InjectiveCentralIdeal = 1,
    PureLie = 2,
    NotInjectiveCandidate = 3,
    Undetermined = 4,
}

impl From<VerdictStatus> for VlVerdict {
    fn from(s: VerdictStatus) -> Self {
        match s {
            VerdictStatus::InjectiveZeroIdeal => VlVerdict::InjectiveZeroIdeal,
            VerdictStatus::InjectiveCentralIdeal => VlVerdict::InjectiveCentralIdeal,
            VerdictStatus::PureLie => VlVerdict::PureLie,
            VerdictStatus::NotInjectiveCandidate => VlVerdict::NotInjectiveCandidate,
            VerdictStatus::Undetermined => VlVerdict::Undetermined,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: VlStatus, msg: impl Into<String>) -> VlStatus {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
    status
}

fn fail_with(e: Error) -> VlStatus {
    let status = match e {
        Error::Parse(_) | Error::InvalidSpec(_) => VlStatus::Parse,
        Error::UnknownBasis(_) => VlStatus::UnknownBasis,
        Error::UnknownPreset(_) => VlStatus::UnknownPreset,
        Error::NotInjective(_) => VlStatus::NotInjective,
        Error::CutoffExceeded { .. } => VlStatus::CutoffExceeded,
        _ => VlStatus::Invalid,
    };
    fail(status, e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, VlStatus> {
    if p.is_null() {
        return Err(fail(VlStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(VlStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn formula_arg<'a>(p: *const VlFormula) -> Result<&'a VlFormula, VlStatus> {
    p.as_ref().ok_or_else(|| fail(VlStatus::NullPointer, "null formula handle"))
}

fn give_string(s: String, out: *mut *mut c_char) -> VlStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            VlStatus::Ok
        }
        Err(_) => fail(VlStatus::Invalid, "result contains a NUL byte"),
    }
}

fn give_formula(spec: FormulaSpec, out: *mut *mut VlFormula) -> VlStatus {
    unsafe { *out = Box::into_raw(Box::new(VlFormula { spec })) };
    VlStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a preset (`virasoro`, `heisenberg`, ...) with default parameters.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_formula_from_preset(name: *const c_char, out: *mut *mut VlFormula) -> VlStatus {
    if out.is_null() {
        return fail(VlStatus::NullPointer, "null output pointer");
    }
    let name = tri!(str_arg(name));
    match preset_by_name(name, &BTreeMap::new()) {
        Ok(spec) => give_formula(spec, out),
        Err(e) => fail_with(e),
    }
}

/// Parses a TOML formula file held in memory.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_formula_from_toml(text: *const c_char, out: *mut *mut VlFormula) -> VlStatus {
    if out.is_null() {
        return fail(VlStatus::NullPointer, "null output pointer");
    }
    let text = tri!(str_arg(text));
    match parse_formula(text, "<memory>") {
        Ok(spec) => give_formula(spec, out),
        Err(e) => fail_with(e),
    }
}

/// # Safety
/// `f` must come from a `vl_formula_from_*` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_formula_free(f: *mut VlFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of basis vectors, 0 for a NULL handle.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vl_formula_dim(f: *const VlFormula) -> usize {
    f.as_ref().map_or(0, |f| f.spec.dim())
}

/// Injectivity verdict using the formula's designated central vector.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_formula_verdict(f: *const VlFormula, out: *mut VlVerdict) -> VlStatus {
    let f = tri!(formula_arg(f));
    if out.is_null() {
        return fail(VlStatus::NullPointer, "null output pointer");
    }
    match formula_verdict(&f.spec, None) {
        Ok(v) => {
            *out = v.status.into();
            VlStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// `[u_n, v_p]` in `L(U)`, printed like `4*ω_1 + 1/2*c_-1`.
///
/// # Safety
/// `f` must be a live handle, `u`/`v` NUL-terminated, `out` valid; free the
/// result with `vl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn vl_bracket(
    f: *const VlFormula,
    u: *const c_char,
    n: i64,
    v: *const c_char,
    p: i64,
    out: *mut *mut c_char,
) -> VlStatus {
    let f = tri!(formula_arg(f));
    if out.is_null() {
        return fail(VlStatus::NullPointer, "null output pointer");
    }
    let (u, v) = (tri!(str_arg(u)), tri!(str_arg(v)));
    let (u, v) = match (f.spec.find(u), f.spec.find(v)) {
        (Ok(u), Ok(v)) => (u, v),
        (Err(e), _) | (_, Err(e)) => return fail_with(e),
    };
    let b = bracket_generators(&f.spec, LieGenerator::new(u, n), LieGenerator::new(v, p));
    give_string(show_lie(&f.spec, &b).to_string(), out)
}

/// Graded dimensions of `V(U)` for weights `0 ≤ w ≤ cutoff_num/cutoff_den`,
/// in increasing weight. Writes at most `cap` entries and always sets
/// `*len` to the full count; returns `BufferTooSmall` if `cap < *len`.
///
/// # Safety
/// `f` must be a live handle, `dims` valid for `cap` writes, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn vl_verma_dims(
    f: *const VlFormula,
    cutoff_num: i64,
    cutoff_den: i64,
    dims: *mut u64,
    cap: usize,
    len: *mut usize,
) -> VlStatus {
    let f = tri!(formula_arg(f));
    if len.is_null() || (dims.is_null() && cap > 0) {
        return fail(VlStatus::NullPointer, "null output pointer");
    }
    if cutoff_den <= 0 || cutoff_num < 0 {
        return fail(VlStatus::Invalid, "cutoff must be a nonnegative fraction with positive denominator");
    }
    let verdict = match formula_verdict(&f.spec, None) {
        Ok(v) => v,
        Err(e) => return fail_with(e),
    };
    if !verdict.status.is_injective() {
        return fail_with(Error::NotInjective(verdict.status.as_str().into()));
    }
    let cutoff = Scalar::new(cutoff_num.into(), cutoff_den.into());
    let table = match VermaModule::new(&f.spec).graded_dimension(&cutoff) {
        Ok(t) => t,
        Err(e) => return fail_with(e),
    };
    *len = table.len();
    if cap < table.len() {
        return fail(VlStatus::BufferTooSmall, format!("need {} entries", table.len()));
    }
    for (i, d) in table.values().enumerate() {
        *dims.add(i) = u64::try_from(*d).unwrap_or(u64::MAX);
    }
    VlStatus::Ok
}

/// Canonical TOML export of the formula.
///
/// # Safety
/// `f` must be a live handle and `out` valid; free with `vl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn vl_formula_export(f: *const VlFormula, out: *mut *mut c_char) -> VlStatus {
    let f = tri!(formula_arg(f));
    if out.is_null() {
        return fail(VlStatus::NullPointer, "null output pointer");
    }
    give_string(export_formula(&f.spec), out)
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn vl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
