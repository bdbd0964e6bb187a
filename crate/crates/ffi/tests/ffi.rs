use std::ffi::{CStr, CString};
use std::ptr;

use secohom_ffi::*;

const T5: &str = include_str!("../../core/data/t5.json");
const T5_GF7: &str = include_str!("../../core/data/t5_gf7.json");
const M2: &str = include_str!("../../core/data/m2.json");
const NONCENTRAL: &str = include_str!("../../core/data/noncentral.json");
const GOLDEN: &str = include_str!("../../core/data/golden/t5_cohomology.json");

fn load(text: &str) -> *mut SecohomTriple {
    let json = CString::new(text).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { secohom_triple_from_json(json.as_ptr(), &mut t) }, SecohomStatus::Ok);
    assert!(!t.is_null());
    t
}

fn last_error() -> String {
    let p = secohom_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn t5_dimensions() {
    for text in [T5, T5_GF7] {
        let t = load(text);
        let mut dims = Vec::new();
        for n in 0..=2 {
            let mut d = 0usize;
            assert_eq!(unsafe { secohom_cohomology_dim(t, ptr::null(), SECOHOM_FLAVOR_SECONDARY, n, &mut d) }, SecohomStatus::Ok);
            dims.push(d);
        }
        assert_eq!(dims, [3, 1, 2]);
        let mut k = 0usize;
        assert_eq!(unsafe { secohom_ker_phi_dim(t, ptr::null(), 2, &mut k) }, SecohomStatus::Ok);
        assert_eq!(k, 1);
        let module = CString::new("quotient").unwrap();
        let mut d = 0usize;
        assert_eq!(unsafe { secohom_cohomology_dim(t, module.as_ptr(), SECOHOM_FLAVOR_SECONDARY, 0, &mut d) }, SecohomStatus::Ok);
        assert_eq!(d, 2);
        unsafe { secohom_triple_free(t) };
    }
}

#[test]
fn hodge_components() {
    let t = load(T5);
    let mut dims = [0usize; 4];
    let mut len = 0usize;
    assert_eq!(unsafe { secohom_hodge_dims(t, ptr::null(), 2, dims.as_mut_ptr(), dims.len(), &mut len) }, SecohomStatus::Ok);
    assert_eq!(&dims[..len], &[2, 0]);
    assert_eq!(unsafe { secohom_hodge_dims(t, ptr::null(), 2, dims.as_mut_ptr(), 1, &mut len) }, SecohomStatus::Precondition);
    assert_eq!(len, 2);
    unsafe { secohom_triple_free(t) };

    let m = load(M2);
    let status = unsafe { secohom_hodge_dims(m, ptr::null(), 1, dims.as_mut_ptr(), dims.len(), &mut len) };
    assert_eq!(status, SecohomStatus::Precondition);
    assert!(last_error().contains("not commutative"));
    unsafe { secohom_triple_free(m) };
}

#[test]
fn report_matches_golden() {
    let t = load(T5);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { secohom_cohomology_report_json(t, ptr::null(), SECOHOM_FLAVOR_SECONDARY, 0, 2, &mut s) }, SecohomStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), GOLDEN);
    unsafe {
        secohom_string_free(s);
        secohom_triple_free(t);
    }
}

#[test]
fn poly_kerphi() {
    let mut out = 0i64;
    for n in 2..=6 {
        let f = CString::new(format!("X^{n}")).unwrap();
        assert_eq!(unsafe { secohom_poly_kerphi(f.as_ptr(), ptr::null(), &mut out) }, SecohomStatus::Ok);
        assert_eq!(out, n - 1);
    }
    let f = CString::new("X^3").unwrap();
    let gf3 = CString::new("GF(3)").unwrap();
    assert_eq!(unsafe { secohom_poly_kerphi(f.as_ptr(), gf3.as_ptr(), &mut out) }, SecohomStatus::Ok);
    assert_eq!(out, -1);
    let bad = CString::new("X^").unwrap();
    assert_eq!(unsafe { secohom_poly_kerphi(bad.as_ptr(), ptr::null(), &mut out) }, SecohomStatus::InvalidInput);
}

#[test]
fn errors() {
    let json = CString::new(NONCENTRAL).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { secohom_triple_from_json(json.as_ptr(), &mut t) }, SecohomStatus::InvalidInput);
    assert!(t.is_null());
    assert!(last_error().contains("image not central"));

    let json = CString::new("{ \"format\": ").unwrap();
    assert_eq!(unsafe { secohom_triple_from_json(json.as_ptr(), &mut t) }, SecohomStatus::InvalidInput);
    assert!(last_error().contains("line 1"));

    assert_eq!(unsafe { secohom_triple_from_json(ptr::null(), &mut t) }, SecohomStatus::NullPointer);

    let t = load(T5);
    let mut d = 0usize;
    assert_eq!(unsafe { secohom_triple_set_max_basis(t, 100) }, SecohomStatus::Ok);
    assert_eq!(unsafe { secohom_cohomology_dim(t, ptr::null(), SECOHOM_FLAVOR_SECONDARY, 3, &mut d) }, SecohomStatus::SizeCap);
    assert!(last_error().contains("size cap"));
    assert_eq!(unsafe { secohom_cohomology_dim(t, ptr::null(), 7, 0, &mut d) }, SecohomStatus::InvalidInput);
    let missing = CString::new("nope").unwrap();
    assert_eq!(unsafe { secohom_cohomology_dim(t, missing.as_ptr(), SECOHOM_FLAVOR_SECONDARY, 0, &mut d) }, SecohomStatus::Precondition);
    assert_eq!(unsafe { secohom_cohomology_dim(t, ptr::null(), SECOHOM_FLAVOR_SECONDARY, 0, &mut d) }, SecohomStatus::Ok);
    assert!(secohom_last_error_message().is_null());
    unsafe { secohom_triple_free(t) };
}

#[test]
fn header_declares_api() {
    let header = include_str!("../include/secohom.h");
    for name in [
        "secohom_triple_from_json",
        "secohom_triple_free",
        "secohom_cohomology_dim",
        "secohom_ker_phi_dim",
        "secohom_hodge_dims",
        "secohom_poly_kerphi",
        "secohom_cohomology_report_json",
        "secohom_string_free",
        "secohom_last_error_message",
        "SECOHOM_STATUS_SIZE_CAP",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/secohom.h");
    match std::process::Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header]).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(_) => eprintln!("no C compiler; skipped"),
    }
}
