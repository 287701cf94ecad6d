//! C interface to the fourquad pipeline.
//!
//! Groups and reports are opaque handles created by `fq_*_load`/`fq_full`
//! and released by the matching `_free`. Every fallible call returns an
//! `FqStatus`; on failure `fq_last_error` gives a message for the calling
//! thread. Strings returned by the library stay valid until the handle
//! that owns them is freed.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fourquad::geometry::GeometryError;
use fourquad::groups::{GroupError, DEFAULT_CAP};
use fourquad::io::{load_group, GroupDefinition, IoError};
use fourquad::pipeline::{run_full, Analysis, PipelineError, RunConfig};
use fourquad::report::{to_json, Classification, FullReport};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqStatus {
    Ok = 0,
    Failed = 1,
    UnreadableInput = 2,
    InvalidPrime = 3,
    CapExceeded = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqClassification {
    Allowable = 0,
    SemiAllowable = 1,
    Rejected = 2,
}

/// A closed group with its character table.
pub struct FqGroup {
    def: GroupDefinition,
    analysis: Analysis,
}

/// The result of a full run.
pub struct FqReport {
    report: FullReport,
    json: CString,
    decided_by: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &PipelineError) -> FqStatus {
    match e {
        PipelineError::Io(_) => FqStatus::UnreadableInput,
        PipelineError::InvalidPrime { .. } | PipelineError::Geometry(GeometryError::BadPrime { .. }) => {
            FqStatus::InvalidPrime
        }
        PipelineError::Group(GroupError::CapExceeded(_)) => FqStatus::CapExceeded,
        _ => FqStatus::Failed,
    }
}

fn guarded(f: impl FnOnce() -> Result<(), FqStatus>) -> FqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FqStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            FqStatus::Panic
        }
    }
}

fn fail(e: PipelineError) -> FqStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, FqStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(FqStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8".into());
        FqStatus::InvalidUtf8
    })
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, FqStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle".into());
        FqStatus::NullPointer
    })
}

fn out_arg<T>(p: *mut T) -> Result<(), FqStatus> {
    if p.is_null() {
        set_error("null output pointer".into());
        return Err(FqStatus::NullPointer);
    }
    Ok(())
}

/// Message for the last failure on this thread, or an empty string.
#[no_mangle]
pub extern "C" fn fq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Loads a catalog group by name, or a group file by path, and closes it.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_group_load(spec: *const c_char, out: *mut *mut FqGroup) -> FqStatus {
    guarded(|| {
        out_arg(out)?;
        *out = ptr::null_mut();
        let spec = str_arg(spec)?;
        let def = load_group(spec).map_err(|e: IoError| fail(e.into()))?;
        let analysis = Analysis::new(&def, DEFAULT_CAP).map_err(fail)?;
        *out = Box::into_raw(Box::new(FqGroup { def, analysis }));
        Ok(())
    })
}

/// # Safety
/// `group` must come from `fq_group_load` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fq_group_free(group: *mut FqGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Order of the group.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_group_order(group: *const FqGroup, out: *mut usize) -> FqStatus {
    guarded(|| {
        out_arg(out)?;
        *out = ref_arg(group)?.analysis.group.order();
        Ok(())
    })
}

/// Number of conjugacy classes.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_group_class_count(group: *const FqGroup, out: *mut usize) -> FqStatus {
    guarded(|| {
        out_arg(out)?;
        *out = ref_arg(group)?.analysis.classes.len();
        Ok(())
    })
}

/// Order of the scalar subgroup.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_group_scalar_order(group: *const FqGroup, out: *mut usize) -> FqStatus {
    guarded(|| {
        out_arg(out)?;
        *out = ref_arg(group)?.analysis.scalars.scalar_order;
        Ok(())
    })
}

/// Sets `*pass` to 1 if the group passes the Lefschetz screen, else 0.
///
/// # Safety
/// `group` must be a live handle and `pass` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_lefschetz(group: *const FqGroup, pass: *mut i32) -> FqStatus {
    guarded(|| {
        out_arg(pass)?;
        let v = ref_arg(group)?.analysis.lefschetz().map_err(fail)?;
        *pass = i32::from(v.pass);
        Ok(())
    })
}

/// Runs every stage at the given prime and seed with random parameters.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_full(group: *const FqGroup, prime: u64, seed: u64, out: *mut *mut FqReport) -> FqStatus {
    guarded(|| {
        out_arg(out)?;
        *out = ptr::null_mut();
        let g = ref_arg(group)?;
        let config = RunConfig { prime, seed, ..RunConfig::default() };
        let report = run_full(&g.def, &config).map_err(fail)?;
        let json = CString::new(to_json(&report)).expect("JSON has no NUL");
        let decided_by = CString::new(report.decided_by.clone()).expect("no NUL");
        *out = Box::into_raw(Box::new(FqReport { report, json, decided_by }));
        Ok(())
    })
}

/// # Safety
/// `report` must come from `fq_full` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fq_report_free(report: *mut FqReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_report_classification(report: *const FqReport, out: *mut FqClassification) -> FqStatus {
    guarded(|| {
        out_arg(out)?;
        *out = match ref_arg(report)?.report.classification {
            Classification::Allowable => FqClassification::Allowable,
            Classification::SemiAllowable => FqClassification::SemiAllowable,
            Classification::Rejected => FqClassification::Rejected,
        };
        Ok(())
    })
}

/// Name of the stage that decided the classification; owned by `report`.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fq_report_decided_by(report: *const FqReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.decided_by.as_ptr())
}

/// The report as JSON; owned by `report`.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fq_report_json(report: *const FqReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Number of singular points found by the census, 0 when no census ran.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_report_singular_points(report: *const FqReport, out: *mut usize) -> FqStatus {
    guarded(|| {
        out_arg(out)?;
        *out = ref_arg(report)?.report.singularities.as_ref().map_or(0, |c| c.point_count);
        Ok(())
    })
}
