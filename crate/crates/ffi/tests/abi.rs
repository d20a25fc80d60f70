use std::ffi::{CStr, CString};
use std::ptr;

use laxforge_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    lf_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(lf_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn algebra_roundtrip() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(lf_algebra_new(3, 2, &mut a), LfStatus::Ok);
        assert_eq!(lf_algebra_dim(a), 5);
        let mut js = ptr::null_mut();
        assert_eq!(lf_algebra_to_json(a, &mut js), LfStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["m"], 3);
        lf_algebra_free(a);
    }
}

#[test]
fn unsupported_rank_sets_error() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(lf_algebra_new(2, 2, &mut a), LfStatus::UnsupportedRank);
        assert!(a.is_null());
        assert!(!last_error().is_empty());
    }
}

#[test]
fn null_arguments() {
    unsafe {
        assert_eq!(lf_algebra_new(3, 0, ptr::null_mut()), LfStatus::NullArgument);
        let mut js = ptr::null_mut();
        assert_eq!(lf_algebra_to_json(ptr::null(), &mut js), LfStatus::NullArgument);
        assert_eq!(lf_algebra_dim(ptr::null()), 0);
        lf_algebra_free(ptr::null_mut());
        lf_sigma_free(ptr::null_mut());
        lf_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_vector_sigma() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(lf_algebra_new(3, 2, &mut a), LfStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(lf_sigma_vector(a, &mut s), LfStatus::Ok);
        let suites = CString::new("ybe,delta,qcom,spectral-untwisted").unwrap();
        let mut rep = ptr::null_mut();
        assert_eq!(lf_verify(s, suites.as_ptr(), 7, &mut rep), LfStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(rep)).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["reports"].as_array().unwrap().len(), 4);

        let mut r = ptr::null_mut();
        assert_eq!(lf_r_matrix_json(s, &mut r), LfStatus::Ok);
        assert!(take(r).contains("entries"));

        let bad = CString::new("ybe,bogus").unwrap();
        let mut rep = ptr::null_mut();
        assert_eq!(lf_verify(s, bad.as_ptr(), 7, &mut rep), LfStatus::InvalidInput);
        lf_sigma_free(s);
        lf_algebra_free(a);
    }
}

#[test]
fn sigma_from_rep_json_matches_vector() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(lf_algebra_new(4, 0, &mut a), LfStatus::Ok);
        let rep = laxforge::gradedmat::build_vector_rep(&laxforge::superroot::build_algebra(4, 0).unwrap()).unwrap();
        let doc = CString::new(rep.to_json()).unwrap();
        let mut s1 = ptr::null_mut();
        assert_eq!(lf_sigma_from_rep_json(doc.as_ptr(), &mut s1), LfStatus::Ok);
        let mut s2 = ptr::null_mut();
        assert_eq!(lf_sigma_vector(a, &mut s2), LfStatus::Ok);
        let (mut j1, mut j2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(lf_sigma_to_json(s1, &mut j1), LfStatus::Ok);
        assert_eq!(lf_sigma_to_json(s2, &mut j2), LfStatus::Ok);
        assert_eq!(take(j1), take(j2));

        let junk = CString::new("{not json").unwrap();
        let mut s3 = ptr::null_mut();
        assert_ne!(lf_sigma_from_rep_json(junk.as_ptr(), &mut s3), LfStatus::Ok);
        assert!(s3.is_null());
        lf_sigma_free(s1);
        lf_sigma_free(s2);
        lf_algebra_free(a);
    }
}

#[test]
fn spectral_eval_at_one_is_permutation() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(lf_algebra_new(3, 0, &mut a), LfStatus::Ok);
        let (s, z) = (CString::new("2").unwrap(), CString::new("1").unwrap());
        let mut out = ptr::null_mut();
        assert_eq!(
            lf_spectral_eval(a, LfSpectralKind::Untwisted, s.as_ptr(), z.as_ptr(), &mut out),
            LfStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        let entries = v["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 9);
        for e in entries {
            assert_eq!(e[2], "1");
        }
        let bad = CString::new("x").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(
            lf_spectral_eval(a, LfSpectralKind::Twisted, bad.as_ptr(), z.as_ptr(), &mut out),
            LfStatus::Parse
        );
        lf_algebra_free(a);
    }
}
