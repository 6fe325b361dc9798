//! C ABI over `arcgen`.
//!
//! Every fallible function returns an [`ArcgenStatus`]. On failure the message
//! is available from [`arcgen_last_error`] on the same thread. Strings handed
//! out by the library must be released with [`arcgen_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use arcgen::caps::Caps;
use arcgen::error::Error;
use arcgen::format::{export_graph, write_perms, GraphFormat};
use arcgen::harness::{bound_report, VTInstance};
use arcgen::pipeline::{build_bundle, verify_theorem1, Bundle, ConstructionParams};

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcgenStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    CapExceeded = 3,
    CheckFailed = 4,
    Partial = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcgenFormat {
    EdgeList = 0,
    Sparse6 = 1,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcgenGroup {
    /// G_h
    Big = 0,
    /// γ_{q-1} ⋊ H
    Small = 1,
}

/// Opaque handle to a constructed (Γ_h, G_h).
pub struct ArcgenBundle {
    inner: Bundle,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: ArcgenStatus, msg: impl Into<String>) -> ArcgenStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> ArcgenStatus {
    let status = match e {
        Error::Cap(_) => ArcgenStatus::CapExceeded,
        Error::Invariant(_) => ArcgenStatus::CheckFailed,
        _ => ArcgenStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> ArcgenStatus) -> ArcgenStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ArcgenStatus::Panic, "internal panic"))
}

fn hand_out(s: String, out: *mut *mut c_char) -> ArcgenStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before calling.
            unsafe { *out = c.into_raw() };
            ArcgenStatus::Ok
        }
        Err(_) => fail(ArcgenStatus::Panic, "output contained a nul byte"),
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn arcgen_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arcgen_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds (Γ_h, G_h) with default caps and checks every construction invariant.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn arcgen_bundle_new(p: u32, h: u32, out: *mut *mut ArcgenBundle) -> ArcgenStatus {
    guard(|| {
        if out.is_null() {
            return fail(ArcgenStatus::NullPointer, "out is null");
        }
        let bundle = match ConstructionParams::new(p, h).and_then(build_bundle) {
            Ok(b) => b,
            Err(e) => return from_error(&e),
        };
        *out = Box::into_raw(Box::new(ArcgenBundle { inner: bundle }));
        ArcgenStatus::Ok
    })
}

/// # Safety
/// `bundle` must be null or a handle from [`arcgen_bundle_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arcgen_bundle_free(bundle: *mut ArcgenBundle) {
    if !bundle.is_null() {
        drop(Box::from_raw(bundle));
    }
}

/// # Safety
/// `bundle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn arcgen_bundle_vertex_count(bundle: *const ArcgenBundle, out: *mut usize) -> ArcgenStatus {
    guard(|| match (bundle.as_ref(), out.is_null()) {
        (Some(b), false) => {
            *out = b.inner.vertex_count();
            ArcgenStatus::Ok
        }
        _ => fail(ArcgenStatus::NullPointer, "null argument"),
    })
}

/// # Safety
/// `bundle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn arcgen_bundle_valency(bundle: *const ArcgenBundle, out: *mut usize) -> ArcgenStatus {
    guard(|| match (bundle.as_ref(), out.is_null()) {
        (Some(b), false) => {
            *out = b.inner.valency();
            ArcgenStatus::Ok
        }
        _ => fail(ArcgenStatus::NullPointer, "null argument"),
    })
}

/// |G_h| as a decimal string.
///
/// # Safety
/// `bundle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn arcgen_bundle_order(bundle: *const ArcgenBundle, out: *mut *mut c_char) -> ArcgenStatus {
    guard(|| {
        let Some(b) = bundle.as_ref() else { return fail(ArcgenStatus::NullPointer, "bundle is null") };
        if out.is_null() {
            return fail(ArcgenStatus::NullPointer, "out is null");
        }
        match b.inner.big_group.order(&b.inner.params.caps) {
            Ok(order) => hand_out(order.to_string(), out),
            Err(e) => from_error(&e.into()),
        }
    })
}

/// Γ_h as edge list or sparse6 text.
///
/// # Safety
/// `bundle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn arcgen_bundle_export_graph(
    bundle: *const ArcgenBundle,
    format: i32,
    out: *mut *mut c_char,
) -> ArcgenStatus {
    guard(|| {
        let Some(b) = bundle.as_ref() else { return fail(ArcgenStatus::NullPointer, "bundle is null") };
        if out.is_null() {
            return fail(ArcgenStatus::NullPointer, "out is null");
        }
        let format = match format {
            f if f == ArcgenFormat::EdgeList as i32 => GraphFormat::EdgeList,
            f if f == ArcgenFormat::Sparse6 as i32 => GraphFormat::Sparse6,
            f => return fail(ArcgenStatus::InvalidInput, format!("unknown format {f}")),
        };
        let bytes = export_graph(b.inner.graph(), format);
        hand_out(String::from_utf8(bytes).expect("graph formats are ASCII"), out)
    })
}

/// Generators of G_h or γ⋊H, one permutation per line.
///
/// # Safety
/// `bundle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn arcgen_bundle_generators(
    bundle: *const ArcgenBundle,
    group: i32,
    out: *mut *mut c_char,
) -> ArcgenStatus {
    guard(|| {
        let Some(b) = bundle.as_ref() else { return fail(ArcgenStatus::NullPointer, "bundle is null") };
        if out.is_null() {
            return fail(ArcgenStatus::NullPointer, "out is null");
        }
        let g = match group {
            g if g == ArcgenGroup::Big as i32 => &b.inner.big_group,
            g if g == ArcgenGroup::Small as i32 => &b.inner.small_group,
            g => return fail(ArcgenStatus::InvalidInput, format!("unknown group {g}")),
        };
        hand_out(write_perms(g.generators()), out)
    })
}

/// Runs the claim checklist and writes the certificate. Returns `Ok` when all
/// evaluated claims pass, `Partial` when some were skipped, `CheckFailed`
/// when any failed; the certificate is written in all three cases.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn arcgen_verify_theorem1(p: u32, h: u32, timing: bool, out: *mut *mut c_char) -> ArcgenStatus {
    guard(|| {
        if out.is_null() {
            return fail(ArcgenStatus::NullPointer, "out is null");
        }
        let report = match ConstructionParams::with_caps(p, h, Caps::default()).and_then(verify_theorem1) {
            Ok(r) => r,
            Err(e) => return from_error(&e),
        };
        let status = hand_out(report.to_certificate(timing), out);
        if status != ArcgenStatus::Ok {
            return status;
        }
        if report.any_failed() {
            fail(ArcgenStatus::CheckFailed, "some claims failed")
        } else if report.any_skipped() {
            fail(ArcgenStatus::Partial, "some claims were skipped")
        } else {
            ArcgenStatus::Ok
        }
    })
}

/// Parses an instance (edge list, blank line, generators) and writes the
/// bound report. Returns `CheckFailed` when decomposition, size bound or
/// generation fails; the report is written in that case too.
///
/// # Safety
/// `instance` must be a nul-terminated string and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn arcgen_verify_theorem2(instance: *const c_char, out: *mut *mut c_char) -> ArcgenStatus {
    guard(|| {
        if instance.is_null() || out.is_null() {
            return fail(ArcgenStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(instance).to_str() else {
            return fail(ArcgenStatus::InvalidInput, "instance is not UTF-8");
        };
        let report = match VTInstance::parse(text).and_then(|inst| bound_report(&inst, &Caps::default())) {
            Ok(r) => r,
            Err(e) => return from_error(&e),
        };
        let status = hand_out(report.to_text(), out);
        if status == ArcgenStatus::Ok && !report.passes() {
            return fail(ArcgenStatus::CheckFailed, "bound checks failed");
        }
        status
    })
}
