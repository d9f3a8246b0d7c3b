//! C ABI for `charvar`. Results live behind opaque handles; every call
//! returns a `CharvarStatus`, and the message of the last failure on the
//! calling thread is available from `charvar_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use charvar::cli::parse_mu;
use charvar::hlv::{self, MixedHodgeResult};
use charvar::markov::{reduce_trace_word, TraceWord, TRACE_VARIABLES};
use charvar::Error;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharvarStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    /// A truncation rank or reduction bound was exceeded.
    LimitExceeded = 4,
    /// An internal consistency check failed.
    CheckFailed = 5,
    Panic = 6,
}

/// Opaque mixed Hodge polynomial of a character variety.
pub struct CharvarMixedHodge(MixedHodgeResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CharvarStatus {
    match e {
        Error::RankOverflow { .. } | Error::ReductionLimit(_) => CharvarStatus::LimitExceeded,
        Error::MembershipFailure { .. } => CharvarStatus::CheckFailed,
        _ => CharvarStatus::InvalidInput,
    }
}

fn fail(status: CharvarStatus, msg: String) -> CharvarStatus {
    set_error(msg);
    status
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), CharvarStatus>) -> CharvarStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CharvarStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(CharvarStatus::Panic, "internal panic".into()),
    }
}

fn lib_err(e: Error) -> CharvarStatus {
    fail(status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CharvarStatus> {
    if s.is_null() {
        return Err(fail(
            CharvarStatus::NullPointer,
            "null string argument".into(),
        ));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        fail(
            CharvarStatus::InvalidUtf8,
            "string argument is not UTF-8".into(),
        )
    })
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

fn check_out<T>(out: *mut T) -> Result<(), CharvarStatus> {
    if out.is_null() {
        Err(fail(
            CharvarStatus::NullPointer,
            "null output pointer".into(),
        ))
    } else {
        Ok(())
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn charvar_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The caller
/// owns the result and frees it with `charvar_string_free`.
#[no_mangle]
pub extern "C" fn charvar_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn charvar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Computes the mixed Hodge polynomial for genus `genus` and multiplicity
/// data `mu`, written as `"2,1;1,1,1"` with one block per puncture.
///
/// # Safety
/// `mu` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn charvar_mixed_hodge(
    genus: u32,
    mu: *const c_char,
    max_rank: usize,
    out: *mut *mut CharvarMixedHodge,
) -> CharvarStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let mu = parse_mu(read_str(mu)?).map_err(lib_err)?;
        let r = hlv::mixed_hodge(genus, &mu, max_rank).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CharvarMixedHodge(r)));
        Ok(())
    })
}

/// Frees a handle. NULL is ignored.
///
/// # Safety
/// `h` must be NULL or a handle from `charvar_mixed_hodge`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn charvar_mixed_hodge_free(h: *mut CharvarMixedHodge) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Whether the value is a polynomial in `q^(1/2), t^(1/2)`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn charvar_mixed_hodge_is_polynomial(
    h: *const CharvarMixedHodge,
    out: *mut bool,
) -> CharvarStatus {
    guard(|| {
        check_out(out)?;
        let h = h
            .as_ref()
            .ok_or_else(|| fail(CharvarStatus::NullPointer, "null handle".into()))?;
        *out = h.0.is_polynomial;
        Ok(())
    })
}

/// The value as text, e.g. `q + t + 4`. Free with `charvar_string_free`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn charvar_mixed_hodge_text(
    h: *const CharvarMixedHodge,
    out: *mut *mut c_char,
) -> CharvarStatus {
    guard(|| {
        check_out(out)?;
        let h = h
            .as_ref()
            .ok_or_else(|| fail(CharvarStatus::NullPointer, "null handle".into()))?;
        *out = owned(h.0.mh.to_string());
        Ok(())
    })
}

/// Point count `q^(dim/2) MH(q, 1/q)` as text. `dim` must be even and the
/// value a polynomial. Free with `charvar_string_free`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn charvar_mixed_hodge_point_count(
    h: *const CharvarMixedHodge,
    dim: u32,
    out: *mut *mut c_char,
) -> CharvarStatus {
    guard(|| {
        check_out(out)?;
        let h = h
            .as_ref()
            .ok_or_else(|| fail(CharvarStatus::NullPointer, "null handle".into()))?;
        let pc = hlv::fq_point_count(&h.0.mh, dim).map_err(lib_err)?;
        *out = owned(pc.to_string());
        Ok(())
    })
}

/// Reduces the trace of a word in `M1, M2, M3`, written as comma-separated
/// letters with negatives for inverses (e.g. `"1,2,-3"`), to a polynomial
/// in `x, y, z, a1..a4`.
/// Free the result with `charvar_string_free`.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn charvar_trace_word(
    word: *const c_char,
    out: *mut *mut c_char,
) -> CharvarStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let w = TraceWord::parse(read_str(word)?).map_err(lib_err)?;
        let p = reduce_trace_word(&w).map_err(lib_err)?;
        let names: Vec<String> = TRACE_VARIABLES.iter().map(|s| s.to_string()).collect();
        *out = owned(p.render(&names));
        Ok(())
    })
}
