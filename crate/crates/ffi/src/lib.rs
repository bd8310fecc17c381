//! C ABI surface over the k3kit core: opaque handles, integer status codes,
//! and JSON-string reports. Every returned string is owned by the caller and
//! must be released with `k3k_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use k3kit::classifier::{self, SurfaceDescriptor};
use k3kit::elliptic::{analyze, WeierstrassModel};
use k3kit::lattice::Lattice;
use k3kit::matrix::IntMat;
use k3kit::ratpoly::RatPoly;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K3kStatus {
    Ok = 0,
    NullArgument = 1,
    ParseError = 2,
    DomainError = 3,
    Panic = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = RefCell::new(None);
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Message for the most recent error on this thread, or null. The pointer is
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn k3k_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Opaque lattice handle.
pub struct K3kLattice {
    inner: Lattice,
}

fn guard<F: FnOnce() -> K3kStatus>(f: F) -> K3kStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".to_string());
            K3kStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, K3kStatus> {
    if ptr.is_null() {
        set_error("null string argument".into());
        return Err(K3kStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| {
        set_error(format!("argument is not UTF-8: {e}"));
        K3kStatus::ParseError
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> K3kStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            K3kStatus::Ok
        }
        Err(e) => {
            set_error(format!("output contains NUL: {e}"));
            K3kStatus::DomainError
        }
    }
}

/// Release a string returned by any `k3k_*` call.
#[no_mangle]
pub extern "C" fn k3k_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

/// Build a named lattice: "U", "E8", "E8_MINUS_1", "RANK1(k)".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k3k_lattice_standard(
    name: *const c_char,
    out: *mut *mut K3kLattice,
) -> K3kStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer".into());
            return K3kStatus::NullArgument;
        }
        let name = match read_str(name) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match Lattice::by_name(name) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(K3kLattice { inner }));
                K3kStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                K3kStatus::DomainError
            }
        }
    })
}

/// Build a lattice from a row-major rank x rank Gram matrix of i64 entries.
///
/// # Safety
/// `entries` must point to `rank * rank` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn k3k_lattice_from_gram(
    rank: usize,
    entries: *const i64,
    out: *mut *mut K3kLattice,
) -> K3kStatus {
    guard(|| {
        if entries.is_null() || out.is_null() {
            set_error("null argument".into());
            return K3kStatus::NullArgument;
        }
        if rank == 0 {
            set_error("rank must be positive".into());
            return K3kStatus::ParseError;
        }
        let flat = std::slice::from_raw_parts(entries, rank * rank);
        let rows: Vec<Vec<i64>> = flat.chunks(rank).map(|c| c.to_vec()).collect();
        match Lattice::new(IntMat::from_rows(&rows)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(K3kLattice { inner }));
                K3kStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                K3kStatus::DomainError
            }
        }
    })
}

/// Release a lattice handle.
///
/// # Safety
/// `l` must come from a `k3k_lattice_*` constructor, at most once.
#[no_mangle]
pub unsafe extern "C" fn k3k_lattice_free(l: *mut K3kLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Rank of the lattice; 0 for a null handle.
///
/// # Safety
/// `l` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn k3k_lattice_rank(l: *const K3kLattice) -> usize {
    if l.is_null() {
        return 0;
    }
    (*l).inner.rank()
}

/// Invariants as a JSON string (det, rank, signature, parity, discriminant
/// group invariant factors).
///
/// # Safety
/// `l` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k3k_lattice_invariants_json(
    l: *const K3kLattice,
    out: *mut *mut c_char,
) -> K3kStatus {
    guard(|| {
        if l.is_null() || out.is_null() {
            set_error("null argument".into());
            return K3kStatus::NullArgument;
        }
        let lattice = &(*l).inner;
        let inv = match lattice.invariants() {
            Ok(i) => i,
            Err(e) => {
                set_error(e.to_string());
                return K3kStatus::DomainError;
            }
        };
        let disc = match lattice.discriminant_group() {
            Ok(d) => d,
            Err(e) => {
                set_error(e.to_string());
                return K3kStatus::DomainError;
            }
        };
        let value = serde_json::json!({
            "invariants": inv,
            "discriminant_group": disc
                .invariant_factors
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>(),
        });
        give_string(value.to_string(), out)
    })
}

/// Neron-Severi report for polarization degree 2d, as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k3k_ns_report_json(d: i64, out: *mut *mut c_char) -> K3kStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer".into());
            return K3kStatus::NullArgument;
        }
        match k3kit::nsclass::report(d) {
            Ok(rep) => give_string(
                serde_json::to_value(&rep).expect("report serializes").to_string(),
                out,
            ),
            Err(e) => {
                set_error(e.to_string());
                K3kStatus::DomainError
            }
        }
    })
}

/// Fiber analysis of `y^2 = x(x^2 + a x + b)` with comma-separated rational
/// coefficient lists, as JSON; `quotient` != 0 analyzes the 2-isogeny
/// quotient.
///
/// # Safety
/// `a_csv`, `b_csv` must be NUL-terminated strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k3k_elliptic_analyze_json(
    a_csv: *const c_char,
    b_csv: *const c_char,
    quotient: i32,
    out: *mut *mut c_char,
) -> K3kStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer".into());
            return K3kStatus::NullArgument;
        }
        let (a, b) = match (read_str(a_csv), read_str(b_csv)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let parse = |s: &str| -> Result<RatPoly, String> {
            s.split(',')
                .map(|tok| num_rational::BigRational::from_str(tok.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map(RatPoly::from_coeffs)
                .map_err(|e| format!("bad coefficient list {s:?}: {e}"))
        };
        let (a_poly, b_poly) = match (parse(a), parse(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                set_error(e);
                return K3kStatus::ParseError;
            }
        };
        let model = match WeierstrassModel::new(a_poly, b_poly) {
            Ok(m) => m,
            Err(e) => {
                set_error(e.to_string());
                return K3kStatus::DomainError;
            }
        };
        match analyze(&model, quotient != 0) {
            Ok(rep) => give_string(
                serde_json::to_value(&rep).expect("report serializes").to_string(),
                out,
            ),
            Err(e) => {
                set_error(e.to_string());
                K3kStatus::DomainError
            }
        }
    })
}

/// Run the rule engine on a surface-descriptor JSON string; returns the
/// explained derivation as JSON.
///
/// # Safety
/// `descriptor_json` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k3k_classify_json(
    descriptor_json: *const c_char,
    out: *mut *mut c_char,
) -> K3kStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer".into());
            return K3kStatus::NullArgument;
        }
        let text = match read_str(descriptor_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let desc: SurfaceDescriptor = match serde_json::from_str(text) {
            Ok(d) => d,
            Err(e) => {
                set_error(format!("bad descriptor JSON: {e}"));
                return K3kStatus::ParseError;
            }
        };
        match classifier::classify(&desc) {
            Ok(derivation) => {
                let explanation = classifier::explain(&derivation);
                give_string(
                    serde_json::to_value(&explanation)
                        .expect("derivation serializes")
                        .to_string(),
                    out,
                )
            }
            Err(e) => {
                set_error(e.to_string());
                K3kStatus::DomainError
            }
        }
    })
}

/// Run the full acceptance suite; returns Ok iff every criterion passes.
#[no_mangle]
pub extern "C" fn k3k_selftest() -> K3kStatus {
    guard(|| {
        let results = k3kit::acceptance::run_all();
        let failures: Vec<String> = results
            .iter()
            .filter_map(|r| {
                r.outcome
                    .as_ref()
                    .err()
                    .map(|e| format!("{}: {}", r.name, e))
            })
            .collect();
        if failures.is_empty() {
            K3kStatus::Ok
        } else {
            set_error(failures.join("; "));
            K3kStatus::DomainError
        }
    })
}
