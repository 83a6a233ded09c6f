use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use netforge_ffi::*;

fn take(s: *mut c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { nf_string_free(s) };
    v
}

fn last_error() -> String {
    let p = nf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn construct(spec: &str) -> *mut NfNet {
    let spec = CString::new(spec).unwrap();
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { nf_net_construct(spec.as_ptr(), &mut net) }, NfStatus::Ok);
    net
}

#[test]
fn field_arithmetic() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { nf_field_new(7, 1, &mut f) }, NfStatus::Ok);
    assert_eq!(unsafe { nf_field_order(f) }, 7);
    let mut x = 0u32;
    assert_eq!(unsafe { nf_field_mul(f, 3, 5, &mut x) }, NfStatus::Ok);
    assert_eq!(x, 1);
    assert_eq!(unsafe { nf_field_add(f, 3, 5, &mut x) }, NfStatus::Ok);
    assert_eq!(x, 1);
    assert_eq!(unsafe { nf_field_div(f, 1, 0, &mut x) }, NfStatus::Field);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { nf_field_mul(f, 9, 1, &mut x) }, NfStatus::InvalidArgument);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { nf_field_descriptor(f, &mut d) }, NfStatus::Ok);
    assert_eq!(take(d)["p"], 7);
    unsafe { nf_field_free(f) };
    assert_eq!(unsafe { nf_field_new(6, 1, &mut f) }, NfStatus::Field);
    assert_eq!(unsafe { nf_field_order(ptr::null()) }, 0);
}

#[test]
fn net_roundtrip_and_analysis() {
    let net = construct(r#"{"family":"classical","p":7,"r":1}"#);
    let mut pass = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { nf_net_verify(net, &mut pass, &mut report) }, NfStatus::Ok);
    assert!(pass);
    assert_eq!(take(report)["k"], 4);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { nf_net_to_json(net, &mut json) }, NfStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_owned();
    unsafe { nf_string_free(json) };
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { nf_net_from_json(text.as_ptr(), &mut back) }, NfStatus::Ok);
    assert_eq!(unsafe { nf_net_verify(back, &mut pass, ptr::null_mut()) }, NfStatus::Ok);
    assert!(pass);

    let mut a = ptr::null_mut();
    assert_eq!(unsafe { nf_net_analyze(back, &mut a) }, NfStatus::Ok);
    let a = take(a);
    assert_eq!(a["satisfies_eq9"], true);
    assert_eq!(a["pencil_in_orbit"], true);

    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { nf_net_refute(net, ptr::null(), &mut cert) }, NfStatus::Ok);
    let cert = take(cert);
    assert_eq!(cert["exhaustive"], true);
    assert_eq!(cert["solution_count"], 0);
    unsafe {
        nf_net_free(net);
        nf_net_free(back);
    }
}

#[test]
fn errors_are_reported() {
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { nf_net_from_json(ptr::null(), &mut net) }, NfStatus::NullPointer);
    let bad = CString::new("{\"schema\":\"nope\"}").unwrap();
    assert_eq!(unsafe { nf_net_from_json(bad.as_ptr(), &mut net) }, NfStatus::Format);
    let spec = CString::new(r#"{"family":"classical","p":5,"r":1}"#).unwrap();
    assert_eq!(unsafe { nf_net_construct(spec.as_ptr(), &mut net) }, NfStatus::Construction);
    assert!(last_error().contains("cube root"), "{}", last_error());
    let spec = CString::new(r#"{"family":"unknown"}"#).unwrap();
    assert_eq!(unsafe { nf_net_construct(spec.as_ptr(), &mut net) }, NfStatus::InvalidArgument);
    let net = construct(r#"{"family":"classical","p":7,"r":1}"#);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { nf_net_analyze(net, ptr::null_mut()) }, NfStatus::NullPointer);
    assert_eq!(unsafe { nf_gcd_certificate(3, 8, ptr::null_mut(), &mut out) }, NfStatus::NullPointer);
    unsafe { nf_net_free(net) };
}

#[test]
fn certificates() {
    let mut refuted = false;
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { nf_gcd_certificate(3, 8, &mut refuted, &mut out) }, NfStatus::Ok);
    assert!(refuted);
    assert_eq!(take(out)["gcd"], 1);
    assert_eq!(unsafe { nf_bound_report(3, 1000, &mut out) }, NfStatus::Ok);
    assert_eq!(take(out)["abs_resultant"], "4116");

    let mut f = ptr::null_mut();
    assert_eq!(unsafe { nf_field_new(2, 2, &mut f) }, NfStatus::Ok);
    let limits = NfSearchLimits { serial: true, ..NfSearchLimits::default() };
    assert_eq!(unsafe { nf_search_order3(f, &limits, &mut out) }, NfStatus::Ok);
    let cert = take(out);
    assert_eq!(cert["solution_count"], 1);
    unsafe { nf_field_free(f) };
    assert_eq!(unsafe { nf_field_new(17, 1, &mut f) }, NfStatus::Ok);
    assert_eq!(unsafe { nf_search_order3(f, ptr::null(), &mut out) }, NfStatus::Search);
    unsafe { nf_field_free(f) };
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "netforge.h"

int main(void) {
    NfNet *net = NULL;
    if (nf_net_construct("{\"family\":\"char3\",\"r\":2}", &net) != NF_STATUS_OK) return 10;
    bool pass = false;
    if (nf_net_verify(net, &pass, NULL) != NF_STATUS_OK || !pass) return 11;
    char *json = NULL;
    if (nf_net_analyze(net, &json) != NF_STATUS_OK) return 12;
    int ok = strstr(json, "\"constant\":true") != NULL;
    nf_string_free(json);
    nf_net_free(net);
    if (!ok) return 13;
    NfField *f = NULL;
    if (nf_field_new(4, 1, &f) != NF_STATUS_FIELD) return 14;
    if (nf_last_error() == NULL) return 15;
    puts("ok");
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    if !have_cc() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(include.join("netforge.h").exists());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let lib = target_dir().join("libnetforge_ffi.a");
    if !lib.exists() {
        let st = Command::new("cc")
            .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
            .arg(&include)
            .arg(&src)
            .status()
            .unwrap();
        assert!(st.success());
        return;
    }
    let bin = dir.path().join("prog");
    let st = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
