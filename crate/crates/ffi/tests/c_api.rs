use nullray_ffi::*;
use std::ffi::{CStr, CString};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

fn last_error() -> String {
    unsafe { CStr::from_ptr(nr_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn bessel_and_errors() {
    let mut v = f64::NAN;
    assert_eq!(unsafe { nr_bessel_j(0, 0.0, &mut v) }, NrStatus::NrOk);
    assert_eq!(v, 1.0);
    assert_eq!(last_error(), "");
    assert_eq!(unsafe { nr_bessel_j(0, -1.0, &mut v) }, NrStatus::NrDomainError);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { nr_bessel_j(1000, 1.0, &mut v) }, NrStatus::NrUnsupportedOrder);
    assert_eq!(unsafe { nr_bessel_j(0, 1.0, ptr::null_mut()) }, NrStatus::NrNullPointer);
}

#[test]
fn mode_handle_lifecycle() {
    let mut mode = ptr::null_mut();
    assert_eq!(unsafe { nr_mode_new(0, 0.0, 0.0, 1.0, &mut mode) }, NrStatus::NrOk);
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { nr_mode_eval_u(mode, 0.0, 0.0, 0.0, &mut re, &mut im) }, NrStatus::NrOk);
    assert!((re - 1.0 / (4.0 * PI)).abs() < 1e-15 && im == 0.0);

    let p = (0.7, -0.4, 1.3);
    let (mut vr, mut vi) = (0.0, 0.0);
    assert_eq!(unsafe { nr_mode_apply_v(mode, p.0, p.1, p.2, &mut vr, &mut vi) }, NrStatus::NrOk);
    let (mut wr, mut wi) = (0.0, 0.0);
    assert_eq!(unsafe { nr_eval_w(0, 1.0, p.0, p.1, p.2, &mut wr, &mut wi) }, NrStatus::NrOk);
    let diff = (vr - wr).hypot(vi - wi) / wr.hypot(wi);
    assert!(diff < 1e-4, "V u vs w: {diff}");
    unsafe { nr_mode_free(mode) };
    unsafe { nr_mode_free(ptr::null_mut()) };

    assert_eq!(unsafe { nr_mode_new(0, 0.0, 0.0, 0.0, &mut mode) }, NrStatus::NrDomainError);
    assert_eq!(unsafe { nr_mode_eval_u(ptr::null(), 0.0, 0.0, 0.0, &mut re, &mut im) }, NrStatus::NrNullPointer);
}

#[test]
fn report_handle() {
    let suites = CString::new("specfun,fields").unwrap();
    let profile = CString::new("fast").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { nr_report_run(suites.as_ptr(), profile.as_ptr(), 3, &mut report) }, NrStatus::NrOk);
    assert_eq!(unsafe { nr_report_failed(report) }, 0);
    assert!(unsafe { nr_report_passed(report) } >= 10);
    let json = unsafe { CStr::from_ptr(nr_report_json(report)) }.to_str().unwrap().to_owned();
    let parsed: serde_like::Value = serde_like::parse(&json);
    assert!(parsed.0.contains("\"summary\""));
    unsafe { nr_report_free(report) };

    let bad = CString::new("nonsense").unwrap();
    assert_eq!(unsafe { nr_report_run(bad.as_ptr(), profile.as_ptr(), 3, &mut report) }, NrStatus::NrConfigError);
    assert!(last_error().contains("algebra"));
}

mod serde_like {
    pub struct Value(pub String);
    pub fn parse(s: &str) -> Value {
        assert!(s.trim_start().starts_with('{') && s.trim_end().ends_with('}'));
        Value(s.to_owned())
    }
}

#[test]
fn grid_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("g.csv").to_str().unwrap()).unwrap();
    let (xz, abs) = (CString::new("xz").unwrap(), CString::new("abs").unwrap());
    assert_eq!(unsafe { nr_grid_write(0, 1.0, xz.as_ptr(), 5.0, 16, abs.as_ptr(), path.as_ptr()) }, NrStatus::NrOk);
    let text = std::fs::read_to_string(dir.path().join("g.csv")).unwrap();
    assert_eq!(text.lines().count(), 257);
    let bad = CString::new("yz").unwrap();
    assert_eq!(unsafe { nr_grid_write(0, 1.0, bad.as_ptr(), 5.0, 16, abs.as_ptr(), path.as_ptr()) }, NrStatus::NrConfigError);
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("nullray.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for f in [
        "nr_bessel_j",
        "nr_mode_new",
        "nr_mode_free",
        "nr_mode_eval_u",
        "nr_mode_apply_v",
        "nr_eval_w",
        "nr_grid_write",
        "nr_report_run",
        "nr_report_json",
        "nr_report_free",
        "nr_last_error_message",
        "NR_QUADRATURE_FAILURE",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }
}

/// Compiles a C program against the header and the static library, when a C compiler is present.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libnullray_ffi.a");
    let modified = |p: &Path| std::fs::metadata(p).and_then(|m| m.modified()).ok();
    let source = Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs");
    if modified(&lib).is_none() || modified(&lib) < modified(&source) {
        eprintln!("skipping: no up-to-date static library at {}; run cargo build -p nullray-ffi", lib.display());
        return;
    }
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <math.h>
#include "nullray.h"
int main(void) {
    double v = 0.0;
    if (nr_bessel_j(1, M_PI, &v) != NR_OK || fabs(v) > 1e-15) return 1;
    if (nr_bessel_j(0, -1.0, &v) != NR_DOMAIN_ERROR) return 2;
    if (nr_last_error_message()[0] == '\0') return 3;
    NrMode *m = NULL;
    if (nr_mode_new(1, 0.0, 0.0, 1.0, &m) != NR_OK) return 4;
    double re, im;
    if (nr_mode_eval_u(m, 0.0, 0.0, -2.0, &re, &im) != NR_OK || re != 0.0 || im != 0.0) return 5;
    nr_mode_free(m);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("smoke");
    let out = Command::new("cc")
        .arg("-D_DEFAULT_SOURCE")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "cc failed: {}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
