//! C interface to `isoreduce`.
//!
//! Every function returns an [`IsoStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `*_free`
//! function, and strings returned by the library are released with
//! [`iso_string_free`]. After a non-OK status, [`iso_last_error`] describes
//! the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use isoreduce::hierarchy::{sequential_reduce, HierarchyResult, MinDegreeRule};
use isoreduce::isored::reduce;
use isoreduce::netmat::{bipartite_adjacency, project_cols, project_rows, IncidenceData};
use isoreduce::spectra::verify_spectrum;
use isoreduce::{Error, NodeSet, RfMatrix};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoStatus {
    Ok = 0,
    InvalidArgument = 1,
    Singular = 2,
    Pole = 3,
    Convergence = 4,
    Parse = 5,
    NullPointer = 6,
    Utf8 = 7,
    Panic = 8,
}

/// Two-mode 0/1 incidence data.
pub struct IsoIncidence(IncidenceData);

/// Square labeled matrix over the rational functions in `x`.
pub struct IsoMatrix(RfMatrix);

/// Core and peripheral levels of a sequential reduction.
pub struct IsoHierarchy(HierarchyResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(IsoStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidArgument(_) => IsoStatus::InvalidArgument,
            Error::Singular => IsoStatus::Singular,
            Error::Pole { .. } => IsoStatus::Pole,
            Error::Convergence { .. } => IsoStatus::Convergence,
            Error::Parse { .. } => IsoStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(IsoStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> IsoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            IsoStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            IsoStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(IsoStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s)
        .map_err(|_| Failure(IsoStatus::InvalidArgument, "string contains NUL".into()))?
        .into_raw();
    Ok(())
}

unsafe fn label_set(labels: *const *const c_char, n: usize) -> Result<NodeSet, Failure> {
    if n > 0 && labels.is_null() {
        return Err(null("label array"));
    }
    (0..n)
        .map(|i| text(*labels.add(i), "label").map(str::to_string))
        .collect()
}

/// Message for the last failure on this thread; empty after success. The
/// pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn iso_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn iso_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn iso_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses incidence CSV text; `year` completes `M/D` dates.
///
/// # Safety
/// `csv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_incidence_from_csv(
    csv: *const c_char,
    year: i32,
    out: *mut *mut IsoIncidence,
) -> IsoStatus {
    guard(|| {
        let data = IncidenceData::from_csv(text(csv, "csv")?, year)?;
        put(out, IsoIncidence(data))
    })
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn iso_incidence_free(p: *mut IsoIncidence) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Which matrix [`iso_incidence_to_matrix`] builds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoMode {
    /// `[[0, A], [A^T, 0]]`.
    Bipartite = 0,
    /// `A A^T`.
    Rows = 1,
    /// `A^T A`.
    Cols = 2,
}

/// # Safety
/// `data` must be a live incidence handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_incidence_to_matrix(
    data: *const IsoIncidence,
    mode: IsoMode,
    out: *mut *mut IsoMatrix,
) -> IsoStatus {
    guard(|| {
        let a = &handle(data, "incidence")?.0;
        let m = match mode {
            IsoMode::Bipartite => bipartite_adjacency(a),
            IsoMode::Rows => project_rows(a),
            IsoMode::Cols => project_cols(a),
        };
        put(out, IsoMatrix(m))
    })
}

/// Parses a matrix CSV whose entries are rational functions such as
/// `(1)/(x^2 - 1)`.
///
/// # Safety
/// `csv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_matrix_from_csv(
    csv: *const c_char,
    out: *mut *mut IsoMatrix,
) -> IsoStatus {
    guard(|| put(out, IsoMatrix(RfMatrix::from_csv(text(csv, "csv")?)?)))
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn iso_matrix_free(p: *mut IsoMatrix) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_matrix_dim(m: *const IsoMatrix, out: *mut usize) -> IsoStatus {
    guard(|| {
        let dim = handle(m, "matrix")?.0.dim();
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = dim;
        Ok(())
    })
}

fn check_index(m: &RfMatrix, i: usize) -> Result<(), Failure> {
    if i < m.dim() {
        Ok(())
    } else {
        Err(Failure(
            IsoStatus::InvalidArgument,
            format!("index {i} out of range for dimension {}", m.dim()),
        ))
    }
}

/// Label of node `i`. Free the result with [`iso_string_free`].
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_matrix_label(
    m: *const IsoMatrix,
    i: usize,
    out: *mut *mut c_char,
) -> IsoStatus {
    guard(|| {
        let m = &handle(m, "matrix")?.0;
        check_index(m, i)?;
        put_string(out, m.labels()[i].clone())
    })
}

/// Entry `(i, j)` in canonical text form. Free with [`iso_string_free`].
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_matrix_entry(
    m: *const IsoMatrix,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> IsoStatus {
    guard(|| {
        let m = &handle(m, "matrix")?.0;
        check_index(m, i)?;
        check_index(m, j)?;
        put_string(out, m.get(i, j).to_string())
    })
}

/// Whole matrix as CSV. Free with [`iso_string_free`].
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_matrix_to_csv(
    m: *const IsoMatrix,
    out: *mut *mut c_char,
) -> IsoStatus {
    guard(|| put_string(out, handle(m, "matrix")?.0.to_csv()))
}

/// Reduces `m` onto the `n_keep` labels in `keep`.
///
/// # Safety
/// `m` must be a live matrix handle, `keep` an array of `n_keep`
/// NUL-terminated strings, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_reduce(
    m: *const IsoMatrix,
    keep: *const *const c_char,
    n_keep: usize,
    out: *mut *mut IsoMatrix,
) -> IsoStatus {
    guard(|| {
        let m = &handle(m, "matrix")?.0;
        let keep = label_set(keep, n_keep)?;
        put(out, IsoMatrix(reduce(m, &keep)?.reduced))
    })
}

/// Sequential reduction under the minimal-degree rule.
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_hierarchy_min_degree(
    m: *const IsoMatrix,
    out: *mut *mut IsoHierarchy,
) -> IsoStatus {
    guard(|| {
        let h = sequential_reduce(&handle(m, "matrix")?.0, &MinDegreeRule)?;
        put(out, IsoHierarchy(h))
    })
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn iso_hierarchy_free(p: *mut IsoHierarchy) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of reduction steps, i.e. of peripheral levels.
///
/// # Safety
/// `h` must be a live hierarchy handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_hierarchy_step_count(
    h: *const IsoHierarchy,
    out: *mut usize,
) -> IsoStatus {
    guard(|| {
        let steps = handle(h, "hierarchy")?.0.step_count;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = steps;
        Ok(())
    })
}

/// Core, levels and per-step degree tables as JSON. Free with
/// [`iso_string_free`].
///
/// # Safety
/// `h` must be a live hierarchy handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_hierarchy_to_json(
    h: *const IsoHierarchy,
    out: *mut *mut c_char,
) -> IsoStatus {
    guard(|| put_string(out, handle(h, "hierarchy")?.0.to_json().to_string()))
}

/// Checks that reducing `m` onto `keep` preserves its spectrum. `passed`
/// receives the verdict and, when not null, `report_json` the full report
/// (free with [`iso_string_free`]).
///
/// # Safety
/// `m` must be a live matrix handle, `keep` an array of `n_keep`
/// NUL-terminated strings, `passed` writable and `report_json` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn iso_verify_spectrum(
    m: *const IsoMatrix,
    keep: *const *const c_char,
    n_keep: usize,
    tolerance: f64,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> IsoStatus {
    guard(|| {
        let m = &handle(m, "matrix")?.0;
        let keep = label_set(keep, n_keep)?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let report = verify_spectrum(m, &keep, tolerance)?;
        *passed = report.passed;
        if !report_json.is_null() {
            let json = serde_json::to_string(&report).expect("report serializes");
            put_string(report_json, json)?;
        }
        Ok(())
    })
}
