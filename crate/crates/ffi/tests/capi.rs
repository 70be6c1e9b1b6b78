use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use freudenthal_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { fd_string_free(s) };
    out
}

fn w(json: &str, algebra: Option<&str>) -> *mut FdW {
    let j = CString::new(json).unwrap();
    let a = algebra.map(|a| CString::new(a).unwrap());
    let mut h = ptr::null_mut();
    let st = unsafe { fd_w_from_json(j.as_ptr(), a.as_ref().map_or(ptr::null(), |a| a.as_ptr()), &mut h) };
    assert_eq!(st, FdStatus::Ok);
    h
}

#[test]
fn base_point_round_trip() {
    let h = w(r#"{"a":1,"b":0,"c":0,"d":0}"#, None);
    let mut rank = 9u8;
    assert_eq!(unsafe { fd_w_rank(h, &mut rank) }, FdStatus::Ok);
    assert_eq!(rank, 1);
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { fd_w_quartic(h, &mut q) }, FdStatus::Ok);
    assert_eq!(take(q), "0");
    let mut a = 0u64;
    assert_eq!(unsafe { fd_a_theta(h, &mut a) }, FdStatus::Ok);
    assert_eq!(a, 1);
    unsafe { fd_w_free(h) };
}

#[test]
fn symplectic_pairing_of_dual_points() {
    let x = w(r#"{"a":1,"b":0,"c":0,"d":0}"#, None);
    let y = w(r#"{"a":0,"b":0,"c":0,"d":1}"#, None);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fd_w_symp(x, y, &mut s) }, FdStatus::Ok);
    assert_eq!(take(s), "1");
    let mut q = ptr::null_mut();
    let z = w(r#"{"a":1,"b":0,"c":0,"d":1}"#, None);
    assert_eq!(unsafe { fd_w_quartic(z, &mut q) }, FdStatus::Ok);
    assert_eq!(take(q), "1");
    unsafe {
        fd_w_free(x);
        fd_w_free(y);
        fd_w_free(z);
    }
}

#[test]
fn e7_pullback_at_base_point() {
    let h = w(r#"{"a":0,"b":0,"c":0,"d":1}"#, Some("hurwitz"));
    let (mut v, mut complete) = (0u64, false);
    assert_eq!(unsafe { fd_e7_pullback(h, 4, &mut v, &mut complete) }, FdStatus::Ok);
    assert_eq!((v, complete), (1, true));
    unsafe { fd_w_free(h) };
}

#[test]
fn jordan_identity() {
    let j = CString::new(r#"{"diag":[1,1,1],"off":[0,0,0]}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { fd_jordan_from_json(j.as_ptr(), ptr::null(), &mut h) }, FdStatus::Ok);
    let (mut n, mut r) = (ptr::null_mut(), 0u8);
    assert_eq!(unsafe { fd_jordan_norm(h, &mut n) }, FdStatus::Ok);
    assert_eq!(take(n), "1");
    assert_eq!(unsafe { fd_jordan_rank(h, &mut r) }, FdStatus::Ok);
    assert_eq!(r, 3);
    unsafe { fd_jordan_free(h) };
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("{not json").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { fd_w_from_json(bad.as_ptr(), ptr::null(), &mut h) }, FdStatus::Parse);
    assert!(h.is_null());
    assert!(!fd_last_error().is_null());

    let alg = CString::new("sedenion").unwrap();
    let ok = CString::new(r#"{"a":1,"b":0,"c":0,"d":0}"#).unwrap();
    assert_ne!(unsafe { fd_w_from_json(ok.as_ptr(), alg.as_ptr(), &mut h) }, FdStatus::Ok);

    let mut k = 0.0;
    assert_eq!(unsafe { fd_kbessel(0.5, -1.0, &mut k) }, FdStatus::Domain);
    assert_eq!(unsafe { fd_w_rank(ptr::null(), ptr::null_mut()) }, FdStatus::NullPointer);
}

#[test]
fn kbessel_half_order() {
    let mut k = 0.0;
    assert_eq!(unsafe { fd_kbessel(0.5, 2.0, &mut k) }, FdStatus::Ok);
    let exact = (std::f64::consts::PI / 4.0).sqrt() * (-2.0f64).exp();
    assert!((k - exact).abs() < 1e-12);
}

#[test]
fn cli_runner() {
    let args: Vec<CString> = ["coeff", "sigma", "--k", "3", "--n", "2"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut code) = (ptr::null_mut(), -1 as c_int);
    assert_eq!(unsafe { fd_cli_run(argv.as_ptr(), argv.len() as c_int, &mut out, &mut code) }, FdStatus::Ok);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["sigma"], 9);
}
