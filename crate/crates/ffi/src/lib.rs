//! C ABI over `shafdec`.
//!
//! Every fallible call returns a [`ShafdecStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can
//! be read with [`shafdec_last_error_message`]. Strings handed out by the
//! library are freed with [`shafdec_string_free`]; handles with their own
//! `_free` function. Reports are returned as JSON text with rationals as
//! `"n/d"` strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shafdec::decompose::decompose_recursive;
use shafdec::enumerate::enumerate_split_models;
use shafdec::fiberprod::fiber_genus;
use shafdec::hypermodel::{
    good_reduction_outside, lockhart_discriminant, reduction_bijection_check, weierstrass_points, PointedModel,
};
use shafdec::{Error, Poly, PrimeSet};

/// Result of a call. Values from 10 up mirror the library's error kinds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShafdecStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    InvalidJson = 10,
    ZeroPolynomial = 11,
    DegreeTooLow = 12,
    ZeroInput = 13,
    ParseRational = 14,
    ParsePrimeSet = 15,
    NotPrime = 16,
    NonSquarefree = 17,
    MissingPrimeTwo = 18,
    NotSIntegral = 19,
    BadPrime = 20,
    DegreeMismatch = 21,
    InvalidGenus = 22,
    ZeroConstantTerm = 23,
    NotSplit = 24,
    RepeatedRoots = 25,
    NotCoprime = 26,
    RepeatedPoint = 27,
    TooFewPoints = 28,
}

impl From<&Error> for ShafdecStatus {
    fn from(e: &Error) -> Self {
        match e.root_cause() {
            Error::InvalidJson(_) => ShafdecStatus::InvalidJson,
            Error::ZeroPolynomial => ShafdecStatus::ZeroPolynomial,
            Error::DegreeTooLow => ShafdecStatus::DegreeTooLow,
            Error::ZeroInput => ShafdecStatus::ZeroInput,
            Error::ParseRational(_) => ShafdecStatus::ParseRational,
            Error::ParsePrimeSet(_) => ShafdecStatus::ParsePrimeSet,
            Error::NotPrime(_) => ShafdecStatus::NotPrime,
            Error::NonSquarefree => ShafdecStatus::NonSquarefree,
            Error::MissingPrimeTwo => ShafdecStatus::MissingPrimeTwo,
            Error::NotSIntegral(_) => ShafdecStatus::NotSIntegral,
            Error::BadPrime(_) => ShafdecStatus::BadPrime,
            Error::DegreeMismatch { .. } => ShafdecStatus::DegreeMismatch,
            Error::InvalidGenus(_) => ShafdecStatus::InvalidGenus,
            Error::ZeroConstantTerm => ShafdecStatus::ZeroConstantTerm,
            Error::NotSplit => ShafdecStatus::NotSplit,
            Error::RepeatedRoots => ShafdecStatus::RepeatedRoots,
            Error::NotCoprime => ShafdecStatus::NotCoprime,
            Error::RepeatedPoint => ShafdecStatus::RepeatedPoint,
            Error::TooFewPoints => ShafdecStatus::TooFewPoints,
            Error::AtNode { .. } => unreachable!("root_cause strips node wrappers"),
        }
    }
}

/// Opaque validated model.
pub struct ShafdecModel(PointedModel);

/// Opaque prime set `S`.
pub struct ShafdecPrimeSet(PrimeSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

struct Failure(ShafdecStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ShafdecStatus::NullArgument, format!("{what} is null"))
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ShafdecStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ShafdecStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            ShafdecStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ShafdecStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(ShafdecStatus::Panic, "output contained NUL".into()))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<*mut c_char, Failure> {
    to_c_string(serde_json::to_string(v).expect("reports serialize"))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn shafdec_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn shafdec_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn shafdec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `{"genus": g, "P": [...], "Q": [...]}` into a model handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_model_from_json(json: *const c_char, out: *mut *mut ShafdecModel) -> ShafdecStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let model = PointedModel::from_json(text)?;
        write_out(out, Box::into_raw(Box::new(ShafdecModel(model))))
    })
}

/// # Safety
/// `model` must come from [`shafdec_model_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn shafdec_model_free(model: *mut ShafdecModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_model_genus(model: *const ShafdecModel, out: *mut u32) -> ShafdecStatus {
    guard(|| write_out(out, deref(model, "model")?.0.genus()))
}

/// Parse a comma-separated prime list such as `"2,3,5"`; `""` is empty.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_primeset_parse(text: *const c_char, out: *mut *mut ShafdecPrimeSet) -> ShafdecStatus {
    guard(|| {
        let s: PrimeSet = read_str(text, "text")?.parse()?;
        write_out(out, Box::into_raw(Box::new(ShafdecPrimeSet(s))))
    })
}

/// # Safety
/// `set` must come from [`shafdec_primeset_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn shafdec_primeset_free(set: *mut ShafdecPrimeSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// `2^{4g}·disc(P + Q^2/4)` as a rational string.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_model_discriminant(model: *const ShafdecModel, out: *mut *mut c_char) -> ShafdecStatus {
    guard(|| {
        let d = lockhart_discriminant(&deref(model, "model")?.0)?;
        write_out(out, to_c_string(d.to_string())?)
    })
}

/// Reduction report of the model relative to `S`, as JSON.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_good_reduction_json(
    model: *const ShafdecModel,
    primes: *const ShafdecPrimeSet,
    out: *mut *mut c_char,
) -> ShafdecStatus {
    guard(|| {
        let report = good_reduction_outside(&deref(model, "model")?.0, &deref(primes, "primes")?.0)?;
        write_out(out, to_json(&report)?)
    })
}

/// Rational Weierstrass points and their count, as JSON.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_weierstrass_json(model: *const ShafdecModel, out: *mut *mut c_char) -> ShafdecStatus {
    guard(|| {
        let data = weierstrass_points(&deref(model, "model")?.0)?;
        write_out(out, to_json(&data)?)
    })
}

/// Whether reduction mod `p` is a bijection on Weierstrass points.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_reduction_bijection(model: *const ShafdecModel, p: u64, out: *mut bool) -> ShafdecStatus {
    guard(|| write_out(out, reduction_bijection_check(&deref(model, "model")?.0, p)?))
}

/// Full decomposition tree, as JSON.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_decompose_json(
    model: *const ShafdecModel,
    primes: *const ShafdecPrimeSet,
    out: *mut *mut c_char,
) -> ShafdecStatus {
    guard(|| {
        let tree = decompose_recursive(&deref(model, "model")?.0, &deref(primes, "primes")?.0)?;
        write_out(out, to_json(&tree)?)
    })
}

/// Fiber-product genus report for `y^2 = R1`, `y^2 = R2`, each given as an
/// ascending JSON array of rational strings.
///
/// # Safety
/// Inputs must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_fiber_genus_json(
    r1_json: *const c_char,
    r2_json: *const c_char,
    out: *mut *mut c_char,
) -> ShafdecStatus {
    guard(|| {
        let r1 = Poly::from_json(read_str(r1_json, "r1_json")?)?;
        let r2 = Poly::from_json(read_str(r2_json, "r2_json")?)?;
        write_out(out, to_json(&fiber_genus(&r1, &r2)?)?)
    })
}

/// Split model classes of genus `genus` with exponent bound `bound`, as JSON.
///
/// # Safety
/// `primes` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shafdec_enumerate_json(
    genus: u32,
    primes: *const ShafdecPrimeSet,
    bound: u32,
    out: *mut *mut c_char,
) -> ShafdecStatus {
    guard(|| {
        let e = enumerate_split_models(genus, &deref(primes, "primes")?.0, bound)?;
        write_out(out, to_json(&e)?)
    })
}
