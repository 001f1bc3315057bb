//! C ABI over `formhasse`. Forms are opaque handles; strings in and out are UTF-8 and
//! NUL-terminated; every call returns an `FhStatus` and writes results through out
//! pointers. Strings returned by the library must be released with `fh_string_free`.
//! After a failure `fh_last_error_message` describes it (per thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use formhasse::arithgroups::{in_prime_set_p, verify_all, verify_paper};
use formhasse::exact::Rat;
use formhasse::localglobal::{equivalent, hasse_k5, hasse_q, hilbert_q, PlaceQ};
use formhasse::qforms::{DiagForm, FieldTag};
use formhasse::witness::find_witness;
use formhasse::Error;

/// Opaque diagonal quadratic form.
pub struct FhForm {
    inner: DiagForm,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    FieldMismatch = 4,
    DimensionMismatch = 5,
    InvalidArgument = 6,
    /// A search finished without a result; not an error.
    NotFound = 7,
    Internal = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> FhStatus {
    match e {
        Error::Parse { .. } => FhStatus::Parse,
        Error::FieldMismatch { .. } => FhStatus::FieldMismatch,
        Error::DimensionMismatch(..) => FhStatus::DimensionMismatch,
        _ => FhStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<FhStatus, (FhStatus, String)>) -> FhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            FhStatus::Internal
        }
    }
}

fn lib(e: Error) -> (FhStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (FhStatus, String) {
    (FhStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (FhStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (FhStatus::InvalidUtf8, "argument is not UTF-8".to_string()))
}

unsafe fn form_arg<'a>(p: *const FhForm) -> Result<&'a DiagForm, (FhStatus, String)> {
    p.as_ref().map(|f| &f.inner).ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (FhStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NULs").into_raw()
}

/// Parses `entries` such as `"1,1,1,-7"` over `field` (`"Q"` or `"K5"`) into `*out`.
///
/// # Safety
/// `field` and `entries` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_form_parse(
    field: *const c_char,
    entries: *const c_char,
    out: *mut *mut FhForm,
) -> FhStatus {
    guard(|| {
        let field: FieldTag = str_arg(field)?.parse().map_err(lib)?;
        let inner = DiagForm::parse(field, str_arg(entries)?).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(FhForm { inner })))?;
        Ok(FhStatus::Ok)
    })
}

/// # Safety
/// `form` must come from `fh_form_parse` and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fh_form_free(form: *mut FhForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// # Safety
/// `form` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fh_form_dim(form: *const FhForm, out: *mut usize) -> FhStatus {
    guard(|| {
        write_out(out, form_arg(form)?.dim())?;
        Ok(FhStatus::Ok)
    })
}

/// Sets `*out` to 1 when the forms are equivalent over their common field, else 0.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fh_equivalent(
    a: *const FhForm,
    b: *const FhForm,
    out: *mut i32,
) -> FhStatus {
    guard(|| {
        let (a, b) = (form_arg(a)?, form_arg(b)?);
        if a.dim() != b.dim() {
            return Err(lib(Error::DimensionMismatch(a.dim(), b.dim())));
        }
        let eq = equivalent(&a.to_form(), &b.to_form()).map_err(lib)?;
        write_out(out, i32::from(eq))?;
        Ok(FhStatus::Ok)
    })
}

/// Ramification set of the Hasse invariant as a JSON array of place names.
///
/// # Safety
/// `form` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fh_hasse_json(form: *const FhForm, out: *mut *mut c_char) -> FhStatus {
    guard(|| {
        let f = form_arg(form)?;
        let names: Vec<String> = match f.field() {
            FieldTag::Q => hasse_q(f)
                .map_err(lib)?
                .iter()
                .map(|p| p.to_string())
                .collect(),
            FieldTag::K5 => hasse_k5(f)
                .map_err(lib)?
                .iter()
                .map(|p| p.to_string())
                .collect(),
        };
        write_out(
            out,
            into_c_string(serde_json::to_string(&names).expect("strings serialize")),
        )?;
        Ok(FhStatus::Ok)
    })
}

/// Hilbert symbol over Q of the rationals `a`, `b` (e.g. `"-3/4"`) at `place`, which is
/// `"real"` or a prime. Writes +1 or -1.
///
/// # Safety
/// String arguments must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fh_hilbert_q(
    a: *const c_char,
    b: *const c_char,
    place: *const c_char,
    out: *mut i8,
) -> FhStatus {
    guard(|| {
        let parse_rat = |s: &str| -> Result<Rat, (FhStatus, String)> {
            s.trim().parse::<Rat>().map_err(|_| {
                (
                    FhStatus::Parse,
                    format!("parse error at `{s}`: expected a rational"),
                )
            })
        };
        let (x, y) = (parse_rat(str_arg(a)?)?, parse_rat(str_arg(b)?)?);
        let place_s = str_arg(place)?;
        let place = if place_s == "real" {
            PlaceQ::Real
        } else {
            PlaceQ::Prime(place_s.parse().map_err(|_| {
                (
                    FhStatus::Parse,
                    format!("parse error at `{place_s}`: expected a place"),
                )
            })?)
        };
        write_out(out, hilbert_q(&x, &y, place).map_err(lib)?)?;
        Ok(FhStatus::Ok)
    })
}

/// Sets `*out` to 1 when the rational prime `q` is in the golden prime set.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_in_prime_set_p(q: u64, out: *mut i32) -> FhStatus {
    guard(|| {
        write_out(out, i32::from(in_prime_set_p(q).map_err(lib)?))?;
        Ok(FhStatus::Ok)
    })
}

/// Searches for `p` with `p^t source p = target` over Q. On success `*out` holds the
/// witness JSON; `NotFound` leaves `*out` null.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fh_find_witness_json(
    source: *const FhForm,
    target: *const FhForm,
    bound: u64,
    out: *mut *mut c_char,
) -> FhStatus {
    guard(|| {
        let (f, q) = (form_arg(source)?, form_arg(target)?);
        write_out(out, ptr::null_mut())?;
        match find_witness(f, q, bound).map_err(lib)? {
            Some(w) => {
                write_out(out, into_c_string(w.to_json().to_string()))?;
                Ok(FhStatus::Ok)
            }
            None => Ok(FhStatus::NotFound),
        }
    })
}

/// Verification report JSON for one section, or for all sections when `section` is null.
///
/// # Safety
/// `section` must be null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fh_verify_paper_json(
    section: *const c_char,
    dmax: u64,
    out: *mut *mut c_char,
) -> FhStatus {
    guard(|| {
        let json = if section.is_null() {
            serde_json::to_string(&verify_all(dmax).map_err(lib)?)
        } else {
            serde_json::to_string(&verify_paper(str_arg(section)?, dmax).map_err(lib)?)
        };
        write_out(out, into_c_string(json.expect("reports serialize")))?;
        Ok(FhStatus::Ok)
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
