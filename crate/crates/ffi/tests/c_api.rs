use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use arcgen_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { arcgen_string_free(s) };
    out
}

fn last_error() -> String {
    let e = arcgen_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_str().unwrap().to_owned()
}

#[test]
fn bundle_lifecycle() {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { arcgen_bundle_new(2, 2, &mut b) }, ArcgenStatus::Ok);
    let (mut n, mut d) = (0usize, 0usize);
    unsafe {
        assert_eq!(arcgen_bundle_vertex_count(b, &mut n), ArcgenStatus::Ok);
        assert_eq!(arcgen_bundle_valency(b, &mut d), ArcgenStatus::Ok);
    }
    assert_eq!((n, d), (32, 8));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { arcgen_bundle_order(b, &mut s) }, ArcgenStatus::Ok);
    assert_eq!(take(s), "65536");

    assert_eq!(unsafe { arcgen_bundle_export_graph(b, ArcgenFormat::EdgeList as i32, &mut s) }, ArcgenStatus::Ok);
    assert!(take(s).starts_with("32 128\n"));
    assert_eq!(unsafe { arcgen_bundle_export_graph(b, ArcgenFormat::Sparse6 as i32, &mut s) }, ArcgenStatus::Ok);
    assert!(take(s).starts_with(":_"));
    assert_eq!(unsafe { arcgen_bundle_export_graph(b, 7, &mut s) }, ArcgenStatus::InvalidInput);

    assert_eq!(unsafe { arcgen_bundle_generators(b, ArcgenGroup::Big as i32, &mut s) }, ArcgenStatus::Ok);
    let big = take(s);
    assert_eq!(unsafe { arcgen_bundle_generators(b, ArcgenGroup::Small as i32, &mut s) }, ArcgenStatus::Ok);
    let small = take(s);
    // 10 module generators and 2 translations, plus φ and ψ
    assert_eq!((small.lines().count(), big.lines().count()), (12, 14));
    unsafe { arcgen_bundle_free(b) };
}

#[test]
fn invalid_parameters_set_last_error() {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { arcgen_bundle_new(4, 1, &mut b) }, ArcgenStatus::InvalidInput);
    assert!(b.is_null());
    assert_eq!(last_error(), "4 is not prime");
    assert_eq!(unsafe { arcgen_bundle_new(2, 2, ptr::null_mut()) }, ArcgenStatus::NullPointer);
    let mut n = 0usize;
    assert_eq!(unsafe { arcgen_bundle_vertex_count(ptr::null(), &mut n) }, ArcgenStatus::NullPointer);
    unsafe {
        arcgen_bundle_free(ptr::null_mut());
        arcgen_string_free(ptr::null_mut());
    }
}

#[test]
fn error_is_cleared_by_next_success() {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { arcgen_bundle_new(6, 1, &mut b) }, ArcgenStatus::InvalidInput);
    assert!(!arcgen_last_error().is_null());
    assert_eq!(unsafe { arcgen_bundle_new(3, 1, &mut b) }, ArcgenStatus::Ok);
    assert!(arcgen_last_error().is_null());
    unsafe { arcgen_bundle_free(b) };
}

#[test]
fn certificate_through_c_api() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { arcgen_verify_theorem1(3, 1, false, &mut s) }, ArcgenStatus::Ok);
    let cert = take(s);
    assert!(cert.starts_with("# p=3 h=1 n=27 valency=12 order=26244"));
    assert_eq!(cert.lines().count(), 10);
    assert_eq!(unsafe { arcgen_verify_theorem1(2, 9, false, &mut s) }, ArcgenStatus::Partial);
    assert!(take(s).contains("C7 514 skipped skipped 0"));
}

#[test]
fn bound_report_through_c_api() {
    let c5 = CString::new("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n\n1 2 3 4 0\n0 4 3 2 1\n").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { arcgen_verify_theorem2(c5.as_ptr(), &mut s) }, ArcgenStatus::Ok);
    let report = take(s);
    assert!(report.contains("g_order 10\n"));
    assert!(report.contains("status pass\n"));

    let bad = CString::new("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n\n0 2 1 3 4\n").unwrap();
    assert_eq!(unsafe { arcgen_verify_theorem2(bad.as_ptr(), &mut s) }, ArcgenStatus::InvalidInput);
    assert_eq!(last_error(), "generator 1 is not an automorphism");
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/arcgen.h");
    let dir = tempfile_dir();
    let src = dir.join("check.c");
    std::fs::write(
        &src,
        "#include \"arcgen.h\"\nint main(void) { ArcgenBundle *b = 0; return arcgen_bundle_new(2, 2, &b) == ARCGEN_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let include = std::path::Path::new(header).parent().unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(include)
        .arg(&src)
        .status()
        .expect("C compiler available");
    assert!(status.success());
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("arcgen-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
