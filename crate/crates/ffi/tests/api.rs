use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use formhasse_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(field: &str, entries: &str) -> *mut FhForm {
    let mut out = ptr::null_mut();
    let st = unsafe { fh_form_parse(c(field).as_ptr(), c(entries).as_ptr(), &mut out) };
    assert_eq!(st, FhStatus::Ok);
    out
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { fh_string_free(p) };
    s
}

fn last_error() -> String {
    let p = fh_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn forms_and_equivalence() {
    let f = parse("Q", "1,1,1,1,-1");
    let q = parse("Q", "23,1,1,1,-23");
    let mut dim = 0usize;
    assert_eq!(unsafe { fh_form_dim(f, &mut dim) }, FhStatus::Ok);
    assert_eq!(dim, 5);
    let mut eq = -1;
    assert_eq!(unsafe { fh_equivalent(f, q, &mut eq) }, FhStatus::Ok);
    assert_eq!(eq, 1);

    let short = parse("Q", "1,1");
    assert_eq!(
        unsafe { fh_equivalent(f, short, &mut eq) },
        FhStatus::DimensionMismatch
    );
    let k = parse("K5", "1,1,1,1,-phi");
    assert_eq!(
        unsafe { fh_equivalent(f, k, &mut eq) },
        FhStatus::FieldMismatch
    );

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { fh_hasse_json(k, &mut json) }, FhStatus::Ok);
    assert_eq!(take_string(json), "[]");
    let odd = parse("Q", "-1,-1");
    assert_eq!(unsafe { fh_hasse_json(odd, &mut json) }, FhStatus::Ok);
    assert_eq!(take_string(json), r#"["real","2"]"#);

    for h in [f, q, short, k, odd] {
        unsafe { fh_form_free(h) };
    }
}

#[test]
fn witness_round_trip() {
    let f = parse("Q", "1,1,1,1,-1");
    let q = parse("Q", "7,1,1,1,-7");
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { fh_find_witness_json(f, q, 12, &mut json) },
        FhStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["field"], "Q");
    assert_eq!(v["p"].as_array().unwrap().len(), 5);

    let a = parse("Q", "1,1");
    let b = parse("Q", "1,-1");
    assert_eq!(
        unsafe { fh_find_witness_json(a, b, 12, &mut json) },
        FhStatus::NotFound
    );
    assert!(json.is_null());
    for h in [f, q, a, b] {
        unsafe { fh_form_free(h) };
    }
}

#[test]
fn scalar_entry_points() {
    let mut s = 0i8;
    assert_eq!(
        unsafe {
            fh_hilbert_q(
                c("-1").as_ptr(),
                c("-1").as_ptr(),
                c("real").as_ptr(),
                &mut s,
            )
        },
        FhStatus::Ok
    );
    assert_eq!(s, -1);
    assert_eq!(
        unsafe { fh_hilbert_q(c("3/4").as_ptr(), c("5").as_ptr(), c("3").as_ptr(), &mut s) },
        FhStatus::Ok
    );
    // v_3(3/4) = 1 and 5 is a unit, so the symbol is (5|3) = (2|3)
    assert_eq!(s, -1);
    assert_eq!(
        unsafe { fh_hilbert_q(c("1/0x").as_ptr(), c("5").as_ptr(), c("3").as_ptr(), &mut s) },
        FhStatus::Parse
    );
    assert!(last_error().contains("1/0x"));

    let mut m = -1;
    assert_eq!(unsafe { fh_in_prime_set_p(11, &mut m) }, FhStatus::Ok);
    assert_eq!(m, 1);
    assert_eq!(unsafe { fh_in_prime_set_p(3, &mut m) }, FhStatus::Ok);
    assert_eq!(m, 0);
    assert_eq!(
        unsafe { fh_in_prime_set_p(15, &mut m) },
        FhStatus::InvalidArgument
    );
}

#[test]
fn verify_reports() {
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { fh_verify_paper_json(c("swd-19").as_ptr(), 50, &mut json) },
        FhStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(
        unsafe { fh_verify_paper_json(ptr::null(), 30, &mut json) },
        FhStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
    assert_eq!(
        unsafe { fh_verify_paper_json(c("nope").as_ptr(), 30, &mut json) },
        FhStatus::InvalidArgument
    );
    assert!(last_error().contains("nope"));
}

#[test]
fn null_and_bad_input() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { fh_form_parse(ptr::null(), c("1").as_ptr(), &mut out) },
        FhStatus::NullPointer
    );
    let bytes = [0xffu8, 0];
    assert_eq!(
        unsafe { fh_form_parse(c("Q").as_ptr(), bytes.as_ptr().cast(), &mut out) },
        FhStatus::InvalidUtf8
    );
    assert_eq!(
        unsafe { fh_form_parse(c("Q").as_ptr(), c("1,phi").as_ptr(), &mut out) },
        FhStatus::Parse
    );
    assert!(out.is_null());
    let mut dim = 0usize;
    assert_eq!(
        unsafe { fh_form_dim(ptr::null(), &mut dim) },
        FhStatus::NullPointer
    );
    unsafe {
        fh_form_free(ptr::null_mut());
        fh_string_free(ptr::null_mut());
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libformhasse_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("fh_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
