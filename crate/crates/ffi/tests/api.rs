use std::ffi::{CStr, CString};
use std::ptr;

use charvar_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let r = CStr::from_ptr(s).to_str().unwrap().to_owned();
    charvar_string_free(s);
    r
}

#[test]
fn mixed_hodge_round_trip() {
    let mu = CString::new("1,1;1,1;1,1;1,1").unwrap();
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            charvar_mixed_hodge(0, mu.as_ptr(), 4, &mut h),
            CharvarStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(charvar_mixed_hodge_text(h, &mut s), CharvarStatus::Ok);
        assert_eq!(take(s), "q + t + 4");
        let mut poly = false;
        assert_eq!(
            charvar_mixed_hodge_is_polynomial(h, &mut poly),
            CharvarStatus::Ok
        );
        assert!(poly);
        let mut pc = ptr::null_mut();
        assert_eq!(
            charvar_mixed_hodge_point_count(h, 2, &mut pc),
            CharvarStatus::Ok
        );
        assert_eq!(take(pc), "q^2 + 4*q + 1");
        assert_eq!(
            charvar_mixed_hodge_point_count(h, 3, &mut pc),
            CharvarStatus::InvalidInput
        );
        charvar_mixed_hodge_free(h);
        charvar_mixed_hodge_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("1,a").unwrap();
    let big = CString::new("2;2;2;2").unwrap();
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            charvar_mixed_hodge(0, bad.as_ptr(), 4, &mut h),
            CharvarStatus::InvalidInput
        );
        assert!(h.is_null());
        assert!(take(charvar_last_error()).contains("partition"));
        assert_eq!(
            charvar_mixed_hodge(0, big.as_ptr(), 1, &mut h),
            CharvarStatus::LimitExceeded
        );
        assert_eq!(
            charvar_mixed_hodge(0, ptr::null(), 4, &mut h),
            CharvarStatus::NullPointer
        );
        assert_eq!(
            charvar_mixed_hodge(0, big.as_ptr(), 4, ptr::null_mut()),
            CharvarStatus::NullPointer
        );
        let mut s = ptr::null_mut();
        assert_eq!(
            charvar_mixed_hodge_text(ptr::null(), &mut s),
            CharvarStatus::NullPointer
        );
    }
}

#[test]
fn last_error_clears_on_success() {
    let w = CString::new("1,2").unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            charvar_trace_word(ptr::null(), &mut s),
            CharvarStatus::NullPointer
        );
        assert_eq!(charvar_trace_word(w.as_ptr(), &mut s), CharvarStatus::Ok);
        assert_eq!(take(s), "x");
        assert!(charvar_last_error().is_null());
    }
}

#[test]
fn trace_word_errors() {
    let w = CString::new("1,7").unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            charvar_trace_word(w.as_ptr(), &mut s),
            CharvarStatus::InvalidInput
        );
        assert!(s.is_null());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(charvar_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
