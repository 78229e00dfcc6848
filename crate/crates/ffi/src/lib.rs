//! C ABI over the `dirac-families` library.
//!
//! Every fallible function returns a [`DfStatus`]; on failure a message is
//! kept per thread and can be read with [`df_last_error_message`]. Objects
//! cross the boundary as opaque handles that must be released with the
//! matching `*_free` function. Strings returned by the library are owned
//! by the caller and released with [`df_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dirac_families::bar_homology::{bar_ranks, CupForm};
use dirac_families::char_classes::{a_hat, family_ch_torus};
use dirac_families::family_index::family_index_t2;
use dirac_families::spectral_flow::{exact_flow, ParamPath};
use dirac_families::torus_dirac::{spectrum, SpectrumSlice, TwistParameter};
use dirac_families::verify::{verify_suite, Suite, VerifyOptions};
use dirac_families::Error;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Parameters out of range or malformed (dimension, twist, path, cup form).
    InvalidInput = 3,
    /// A numerical safeguard fired (degenerate endpoint, aliasing, failed certificate).
    NumericalFailure = 4,
    /// The request is well formed but not supported at this size or in this mode.
    Unsupported = 5,
    /// An index argument was past the end of a handle.
    OutOfRange = 6,
    /// A `verify` suite ran and some check failed.
    CheckFailed = 7,
    /// The library panicked; this is a bug.
    Internal = 8,
}

impl From<&Error> for DfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::EndpointDegenerate { .. }
            | Error::NonConvergence { .. }
            | Error::Aliasing { .. }
            | Error::NearZero { .. }
            | Error::CertificateFailed { .. }
            | Error::GridTooCoarse { .. }
            | Error::NotHermitian { .. }
            | Error::NotUnitary { .. } => DfStatus::NumericalFailure,
            Error::Unsupported(_) | Error::TruncationTooLarge { .. } | Error::PathOutsideTruncation { .. } => {
                DfStatus::Unsupported
            }
            _ => DfStatus::InvalidInput,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, translating library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), DfStatus>) -> DfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            DfStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> DfStatus {
    set_error(format!("{}: {e}", e.reason()));
    DfStatus::from(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, DfStatus> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(DfStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8".into());
        DfStatus::InvalidUtf8
    })
}

fn check_out<T>(p: *mut T) -> Result<(), DfStatus> {
    if p.is_null() {
        set_error("null output pointer".into());
        return Err(DfStatus::NullArgument);
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn df_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn df_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Opaque spectrum of a truncated twisted Dirac operator.
pub struct DfSpectrum(SpectrumSlice);

/// Computes the spectrum on `T^dim` with twist `twist` (comma-separated
/// rationals such as `"1/3,-1/4"`) over modes `|k_j| <= cutoff`.
///
/// # Safety
/// `twist` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_spectrum_new(dim: usize, twist: *const c_char, cutoff: i64, out: *mut *mut DfSpectrum) -> DfStatus {
    guard(|| {
        check_out(out)?;
        let c = TwistParameter::parse(read_str(twist)?).map_err(lib_err)?;
        let s = spectrum(dim, &c, cutoff).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DfSpectrum(s)));
        Ok(())
    })
}

/// Number of distinct eigenvalues in the spectrum, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle from [`df_spectrum_new`].
#[no_mangle]
pub unsafe extern "C" fn df_spectrum_len(s: *const DfSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.entries.len())
}

/// Eigenvalue and multiplicity of entry `index` (ascending order).
///
/// # Safety
/// `s` must be a live handle; `value` and `multiplicity` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_spectrum_entry(s: *const DfSpectrum, index: usize, value: *mut f64, multiplicity: *mut u64) -> DfStatus {
    guard(|| {
        check_out(value)?;
        check_out(multiplicity)?;
        let s = s.as_ref().ok_or_else(|| {
            set_error("null spectrum handle".into());
            DfStatus::NullArgument
        })?;
        let e = s.0.entries.get(index).ok_or_else(|| {
            set_error(format!("index {index} past {} entries", s.0.entries.len()));
            DfStatus::OutOfRange
        })?;
        *value = e.value.value();
        *multiplicity = e.multiplicity;
        Ok(())
    })
}

/// The spectrum as a JSON document; free with [`df_string_free`].
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_spectrum_to_json(s: *const DfSpectrum, out: *mut *mut c_char) -> DfStatus {
    guard(|| {
        check_out(out)?;
        let s = s.as_ref().ok_or(DfStatus::NullArgument)?;
        *out = into_c_string(s.0.to_json());
        Ok(())
    })
}

/// Releases a spectrum handle.
///
/// # Safety
/// `s` must be null or a handle from [`df_spectrum_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn df_spectrum_free(s: *mut DfSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Exact spectral flow along a path given as JSON (a list of vertices, or
/// `{"vertices": [...], "closed": bool}`).
///
/// # Safety
/// `path_json` must be a valid C string; `flow` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_exact_flow(path_json: *const c_char, cutoff: i64, flow: *mut i64) -> DfStatus {
    guard(|| {
        check_out(flow)?;
        let path = ParamPath::from_json(read_str(path_json)?).map_err(lib_err)?;
        *flow = exact_flow(path.dim(), &path, cutoff).map_err(lib_err)?.flow;
        Ok(())
    })
}

/// First Chern number of the index bundle of the chiral family on `T^2`,
/// summed from local windings at the kernel jumps.
///
/// # Safety
/// `c1` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_family_index_t2(cutoff: i64, radius: f64, samples: usize, c1: *mut i64) -> DfStatus {
    guard(|| {
        check_out(c1)?;
        *c1 = family_index_t2(cutoff, radius, samples).map_err(lib_err)?.total_c1;
        Ok(())
    })
}

/// Ranks of even and odd cohomology of the twisted complex of a cup form
/// written as `"1,2,3:1; 4,5,6:-2"` (one-based indices).
///
/// # Safety
/// `cup` must be a valid C string; `even` and `odd` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_bar_ranks(betti: usize, cup: *const c_char, even: *mut usize, odd: *mut usize) -> DfStatus {
    guard(|| {
        check_out(even)?;
        check_out(odd)?;
        let form = CupForm::parse(betti, read_str(cup)?).map_err(lib_err)?;
        let r = bar_ranks(&form).map_err(lib_err)?;
        (*even, *odd) = (r.even, r.odd);
        Ok(())
    })
}

/// The A-hat class truncated at dimension `dim`, rendered as text.
///
/// # Safety
/// `out` must be writable; the result is freed with [`df_string_free`].
#[no_mangle]
pub unsafe extern "C" fn df_a_hat(dim: u32, out: *mut *mut c_char) -> DfStatus {
    guard(|| {
        check_out(out)?;
        *out = into_c_string(a_hat(dim).map_err(lib_err)?.to_string());
        Ok(())
    })
}

/// Chern character of the index bundle over the parameter torus of `T^dim`,
/// rendered as text.
///
/// # Safety
/// `out` must be writable; the result is freed with [`df_string_free`].
#[no_mangle]
pub unsafe extern "C" fn df_family_ch_torus(dim: usize, out: *mut *mut c_char) -> DfStatus {
    guard(|| {
        check_out(out)?;
        *out = into_c_string(family_ch_torus(dim).map_err(lib_err)?.class.to_string());
        Ok(())
    })
}

/// Runs the named verification suite and stores its JSON report in `report`
/// (may be null). Returns [`DfStatus::CheckFailed`] when a check fails.
///
/// # Safety
/// `suite` must be a valid C string; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn df_verify(suite: *const c_char, report: *mut *mut c_char) -> DfStatus {
    guard(|| {
        let suite: Suite = read_str(suite)?.parse().map_err(lib_err)?;
        let r = verify_suite(suite, VerifyOptions::default()).map_err(lib_err)?;
        if !report.is_null() {
            *report = into_c_string(serde_json::to_string(&r).expect("serializable"));
        }
        if r.passed {
            Ok(())
        } else {
            set_error("verification failed".into());
            Err(DfStatus::CheckFailed)
        }
    })
}
