//! C ABI for eulab.
//!
//! Every fallible function returns an [`EulabStatus`]. On failure the message is available from
//! [`eulab_last_error`] on the same thread. Strings handed out by the library are owned by the
//! caller and released with [`eulab_string_free`]; matroid handles with [`eulab_matroid_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eulab::basis::Composition;
use eulab::cli::{invariant_json, pretty, InvariantKind, MEN_MAX_N};
use eulab::eulerian::{mixed_eulerian, Algorithm, EulerianEngine};
use eulab::matroid::json::MatroidSpec;
use eulab::{Error, Matroid};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulabStatus {
    Ok = 0,
    Internal = 1,
    InvalidParameters = 2,
    InvalidMatroid = 3,
    SizeLimit = 4,
    NullPointer = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulabAlgorithm {
    Closed = 0,
    RecursionFlat = 1,
    RecursionLex = 2,
    Chow = 3,
    Divisorial = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulabInvariant {
    MenVector = 0,
    Tutte = 1,
    Charpoly = 2,
    Ginv = 3,
    Catenary = 4,
}

/// Opaque matroid handle.
pub struct EulabMatroid {
    inner: Matroid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> EulabStatus {
    match e {
        Error::InvalidParameters(_) => EulabStatus::InvalidParameters,
        Error::InvalidMatroid { .. } => EulabStatus::InvalidMatroid,
        Error::SizeLimit(_) => EulabStatus::SizeLimit,
        Error::Internal(_) => EulabStatus::Internal,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, records any error or panic, and converts the outcome to a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EulabStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EulabStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.describe());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("{what} is a null pointer"));
            EulabStatus::NullPointer
        }
        Err(_) => {
            set_last_error("internal panic");
            EulabStatus::Internal
        }
    }
}

unsafe fn matroid_ref<'a>(m: *const EulabMatroid) -> Result<&'a Matroid, Failure> {
    m.as_ref().map(|h| &h.inner).ok_or(Failure::Null("matroid"))
}

unsafe fn composition(entries: *const u32, len: usize) -> Result<Composition, Failure> {
    if len == 0 {
        return Ok(Composition::new(Vec::new()));
    }
    if entries.is_null() {
        return Err(Failure::Null("composition"));
    }
    Ok(Composition::new(std::slice::from_raw_parts(entries, len).to_vec()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("output"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|_| Error::Internal("string contains NUL".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_handle(out: *mut *mut EulabMatroid, inner: Matroid) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("output"));
    }
    out.write(Box::into_raw(Box::new(EulabMatroid { inner })));
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn eulab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn eulab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroid_uniform(rank: usize, elements: usize, out: *mut *mut EulabMatroid) -> EulabStatus {
    guard(|| write_handle(out, Matroid::uniform(rank, elements)?))
}

/// Bases are bitmasks over the ground set `0..elements`.
///
/// # Safety
/// `bases` must point to `count` readable values and `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroid_from_bases(elements: usize, bases: *const u32, count: usize, out: *mut *mut EulabMatroid) -> EulabStatus {
    guard(|| {
        if bases.is_null() && count > 0 {
            return Err(Failure::Null("bases"));
        }
        let list = if count == 0 { &[][..] } else { std::slice::from_raw_parts(bases, count) };
        write_handle(out, Matroid::from_bases(elements, list)?)
    })
}

/// Accepts the same JSON description as the command-line tool.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroid_from_json(json: *const c_char, out: *mut *mut EulabMatroid) -> EulabStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| Error::InvalidParameters("matroid JSON is not UTF-8".into()))?;
        write_handle(out, MatroidSpec::parse(text)?.build()?)
    })
}

/// # Safety
/// `m` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroid_free(m: *mut EulabMatroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroid_num_elements(m: *const EulabMatroid, out: *mut usize) -> EulabStatus {
    guard(|| write_out(out, matroid_ref(m)?.num_elements()))
}

/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroid_rank(m: *const EulabMatroid, out: *mut usize) -> EulabStatus {
    guard(|| write_out(out, matroid_ref(m)?.rank()))
}

/// `A(a_1, …, a_n)` as a decimal string.
///
/// # Safety
/// `a` must point to `len` readable values and `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn eulab_mixed_eulerian(a: *const u32, len: usize, out: *mut *mut c_char) -> EulabStatus {
    guard(|| {
        if len > MEN_MAX_N {
            return Err(Error::SizeLimit(format!("mixed Eulerian numbers are limited to n <= {MEN_MAX_N}")).into());
        }
        write_string(out, mixed_eulerian(&composition(a, len)?)?.to_string())
    })
}

/// `A_M(a)` by the chosen evaluator, as a decimal string.
///
/// # Safety
/// `m` must be a live handle, `a` must point to `len` readable values and `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroidal(m: *const EulabMatroid, algorithm: EulabAlgorithm, a: *const u32, len: usize, out: *mut *mut c_char) -> EulabStatus {
    guard(|| {
        let alg = match algorithm {
            EulabAlgorithm::Closed => Algorithm::Closed,
            EulabAlgorithm::RecursionFlat => Algorithm::RecursionFlat,
            EulabAlgorithm::RecursionLex => Algorithm::RecursionLex,
            EulabAlgorithm::Chow => Algorithm::Chow,
            EulabAlgorithm::Divisorial => Algorithm::Divisorial,
        };
        let value = EulerianEngine::new().matroidal(alg, matroid_ref(m)?, &composition(a, len)?)?;
        write_string(out, value.to_string())
    })
}

/// Absolute value of the coefficient of `q^l` in the reduced characteristic polynomial.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn eulab_gamma(m: *const EulabMatroid, l: i64, out: *mut u64) -> EulabStatus {
    guard(|| write_out(out, matroid_ref(m)?.gamma(l)?))
}

/// The same JSON document the command-line tool prints for this invariant.
///
/// # Safety
/// `m` must be a live handle and `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroid_invariant_json(m: *const EulabMatroid, invariant: EulabInvariant, out: *mut *mut c_char) -> EulabStatus {
    guard(|| {
        let kind = match invariant {
            EulabInvariant::MenVector => InvariantKind::MenVector,
            EulabInvariant::Tutte => InvariantKind::Tutte,
            EulabInvariant::Charpoly => InvariantKind::Charpoly,
            EulabInvariant::Ginv => InvariantKind::Ginv,
            EulabInvariant::Catenary => InvariantKind::Catenary,
        };
        write_string(out, pretty(&invariant_json(matroid_ref(m)?, kind, None, false)?))
    })
}

/// Canonical JSON description of the matroid by its bases.
///
/// # Safety
/// `m` must be a live handle and `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn eulab_matroid_to_json(m: *const EulabMatroid, out: *mut *mut c_char) -> EulabStatus {
    guard(|| write_string(out, MatroidSpec::from_matroid(matroid_ref(m)?).to_canonical_json()))
}
