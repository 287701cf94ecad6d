use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fourquad_ffi::*;

fn load(spec: &str) -> *mut FqGroup {
    let s = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fq_group_load(s.as_ptr(), &mut g) }, FqStatus::Ok);
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fq_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn group_queries() {
    let g = load("G4");
    let (mut order, mut classes, mut scalars, mut pass) = (0, 0, 0, -1);
    unsafe {
        assert_eq!(fq_group_order(g, &mut order), FqStatus::Ok);
        assert_eq!(fq_group_class_count(g, &mut classes), FqStatus::Ok);
        assert_eq!(fq_group_scalar_order(g, &mut scalars), FqStatus::Ok);
        assert_eq!(fq_lefschetz(g, &mut pass), FqStatus::Ok);
        fq_group_free(g);
    }
    assert_eq!((order, classes, scalars, pass), (256, 46, 4, 1));
}

#[test]
fn full_runs_classify() {
    for (name, want, points) in [
        ("D8_regular", FqClassification::Rejected, 0),
        ("H8_regular", FqClassification::Allowable, 0),
        ("G4", FqClassification::SemiAllowable, 64),
    ] {
        let g = load(name);
        let mut r = ptr::null_mut();
        let mut class = FqClassification::Rejected;
        let mut n = usize::MAX;
        unsafe {
            assert_eq!(fq_full(g, 65537, 0, &mut r), FqStatus::Ok, "{name}");
            assert_eq!(fq_report_classification(r, &mut class), FqStatus::Ok);
            assert_eq!(fq_report_singular_points(r, &mut n), FqStatus::Ok);
            let json = CStr::from_ptr(fq_report_json(r)).to_str().unwrap();
            assert!(json.contains(&format!("\"group\": \"{name}\"")));
            let stage = CStr::from_ptr(fq_report_decided_by(r)).to_str().unwrap();
            if name == "D8_regular" {
                assert_eq!(stage, "lefschetz");
            }
            fq_report_free(r);
            fq_group_free(g);
        }
        assert_eq!(class, want, "{name}");
        assert_eq!(n, points, "{name}");
    }
}

#[test]
fn errors_have_codes_and_messages() {
    let mut g = ptr::null_mut();
    let missing = CString::new("/no/such/group.json").unwrap();
    assert_eq!(unsafe { fq_group_load(missing.as_ptr(), &mut g) }, FqStatus::UnreadableInput);
    assert!(g.is_null());
    assert!(last_error().contains("/no/such/group.json"));
    assert_eq!(unsafe { fq_group_load(ptr::null(), &mut g) }, FqStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { fq_group_load(bad.as_ptr().cast(), &mut g) }, FqStatus::InvalidUtf8);

    let g = load("G4");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { fq_full(g, 65539, 0, &mut r) }, FqStatus::InvalidPrime);
    assert!(r.is_null());
    assert!(last_error().contains("65539"));
    let mut n = 0;
    unsafe {
        assert_eq!(fq_group_order(ptr::null(), &mut n), FqStatus::NullPointer);
        assert_eq!(fq_group_order(g, ptr::null_mut()), FqStatus::NullPointer);
        assert!(fq_report_json(ptr::null()).is_null());
        fq_report_free(ptr::null_mut());
        fq_group_free(g);
        fq_group_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = target_dir().join("libfourquad_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "order 8 classes 5 lefschetz 1 class 0\n");
}
