//! C interface to the `secohom` engine.
//!
//! Triples are loaded from JSON spec text into opaque handles. Every function
//! returns a [`SecohomStatus`]; on failure the message is available from
//! [`secohom_last_error_message`] on the same thread. Strings returned by the
//! library are freed with [`secohom_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use secohom::cli::{self, AnyLoaded, Loaded, SpecError};
use secohom::complex::{phi_induced, Complex, Flavor, DEFAULT_MAX_BASIS};
use secohom::hodge::hodge_decomposition;
use secohom::linalg::{Field, FieldDescriptor, PrimeField, Rationals};
use secohom::poly::{ker_phi2_dim_1var, parse_poly, Dimension, Poly};
use secohom::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SecohomStatus {
    Ok = 0,
    /// A checked property did not hold.
    PropertyFailure = 1,
    /// Malformed input or a failed axiom.
    InvalidInput = 2,
    /// Some cochain space exceeds the basis cap.
    SizeCap = 3,
    /// A precondition of the computation failed.
    Precondition = 4,
    NullPointer = 5,
    /// The engine panicked; this is a bug.
    Panic = 6,
}

pub const SECOHOM_FLAVOR_ORDINARY: u32 = 0;
pub const SECOHOM_FLAVOR_SECONDARY: u32 = 1;

/// A validated triple with its modules.
pub struct SecohomTriple {
    loaded: AnyLoaded,
    max_basis: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(code: i32) -> SecohomStatus {
    match code {
        0 => SecohomStatus::Ok,
        1 => SecohomStatus::PropertyFailure,
        3 => SecohomStatus::SizeCap,
        4 => SecohomStatus::Precondition,
        _ => SecohomStatus::InvalidInput,
    }
}

fn fail(e: SpecError) -> SecohomStatus {
    let s = status_of(e.exit_code());
    set_error(e.to_string());
    s
}

/// Runs `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), SpecError>) -> SecohomStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SecohomStatus::Ok
        }
        Ok(Err(e)) => fail(e),
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            SecohomStatus::Panic
        }
    }
}

struct Null;

impl From<Null> for SpecError {
    fn from(_: Null) -> Self {
        SpecError::new("", Error::Parse("null pointer".into()))
    }
}

unsafe fn opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, SpecError> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|_| SpecError::new(what, Error::Parse("not valid UTF-8".into())))
}

fn flavor(f: u32) -> Result<Flavor, SpecError> {
    match f {
        SECOHOM_FLAVOR_ORDINARY => Ok(Flavor::Ordinary),
        SECOHOM_FLAVOR_SECONDARY => Ok(Flavor::Secondary),
        other => Err(SpecError::new("flavor", Error::Parse(format!("unknown flavor {other}")))),
    }
}

fn complex<F: Field>(l: &Loaded<F>, module: Option<&str>, flavor: Flavor, cap: usize) -> Result<Arc<Complex<F>>, SpecError> {
    Ok(Complex::with_max_basis(l.module(module)?.clone(), flavor, cap))
}

macro_rules! on_triple {
    ($t:expr, |$l:ident| $body:expr) => {
        match &$t.loaded {
            AnyLoaded::Rational($l) => $body,
            AnyLoaded::Prime($l) => $body,
        }
    };
}

macro_rules! check_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument".into());
            return SecohomStatus::NullPointer;
        }
    };
}

/// Parses and validates a spec document (`secohom-triple/1`). On success
/// `*out` receives a handle to release with [`secohom_triple_free`].
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn secohom_triple_from_json(json: *const c_char, out: *mut *mut SecohomTriple) -> SecohomStatus {
    check_null!(json, out);
    *out = ptr::null_mut();
    guard(|| {
        let text = opt_str(json, "json")?.ok_or(Null)?;
        let loaded = cli::spec_file::parse_triple_str(text, "spec")?;
        *out = Box::into_raw(Box::new(SecohomTriple { loaded, max_basis: DEFAULT_MAX_BASIS }));
        Ok(())
    })
}

/// # Safety
/// `triple` must come from [`secohom_triple_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn secohom_triple_free(triple: *mut SecohomTriple) {
    if !triple.is_null() {
        drop(Box::from_raw(triple));
    }
}

/// Sets the largest cochain space (in basis elements) a computation may build.
///
/// # Safety
/// `triple` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn secohom_triple_set_max_basis(triple: *mut SecohomTriple, max_basis: usize) -> SecohomStatus {
    check_null!(triple);
    (*triple).max_basis = max_basis;
    SecohomStatus::Ok
}

/// `dim H^degree` in the given flavor. `module` may be NULL for the first module.
///
/// # Safety
/// `triple` must be a live handle, `module` NULL or a NUL-terminated string,
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn secohom_cohomology_dim(
    triple: *const SecohomTriple,
    module: *const c_char,
    flavor_code: u32,
    degree: usize,
    out: *mut usize,
) -> SecohomStatus {
    check_null!(triple, out);
    let t = &*triple;
    guard(|| {
        let m = opt_str(module, "module")?;
        let fl = flavor(flavor_code)?;
        *out = on_triple!(t, |l| complex(l, m, fl, t.max_basis)?.cohomology_dim(degree)?);
        Ok(())
    })
}

/// `dim ker Φ_degree` for the secondary-to-ordinary comparison map.
///
/// # Safety
/// As for [`secohom_cohomology_dim`].
#[no_mangle]
pub unsafe extern "C" fn secohom_ker_phi_dim(
    triple: *const SecohomTriple,
    module: *const c_char,
    degree: usize,
    out: *mut usize,
) -> SecohomStatus {
    check_null!(triple, out);
    let t = &*triple;
    guard(|| {
        let m = opt_str(module, "module")?;
        *out = on_triple!(t, |l| phi_induced(&complex(l, m, Flavor::Secondary, t.max_basis)?, degree)?.kernel_dim);
        Ok(())
    })
}

/// Hodge components of secondary `H^degree`: writes up to `capacity` values
/// `dim H^(k, degree-k)` (for `k = 1..=degree`, or `k = 0` in degree 0) into
/// `dims` and their count into `*len`. Fails with `PRECONDITION` when the count
/// exceeds `capacity`.
///
/// # Safety
/// `dims` must have room for `capacity` values; other pointers as above.
#[no_mangle]
pub unsafe extern "C" fn secohom_hodge_dims(
    triple: *const SecohomTriple,
    module: *const c_char,
    degree: usize,
    dims: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> SecohomStatus {
    check_null!(triple, len);
    if capacity > 0 && dims.is_null() {
        set_error("null pointer argument".into());
        return SecohomStatus::NullPointer;
    }
    let t = &*triple;
    guard(|| {
        let m = opt_str(module, "module")?;
        let parts = on_triple!(t, |l| hodge_decomposition(&complex(l, m, Flavor::Secondary, t.max_basis)?, degree)?);
        *len = parts.len();
        if parts.len() > capacity {
            return Err(SpecError::new(
                "dims",
                Error::Precondition(format!("{} components, capacity {capacity}", parts.len())),
            ));
        }
        for (k, p) in parts.iter().enumerate() {
            *dims.add(k) = p.dim;
        }
        Ok(())
    })
}

fn kerphi<F: Field>(field: F, f: &str) -> Result<i64, Error> {
    let p: Poly<F, 1> = parse_poly(&field, f)?;
    Ok(match ker_phi2_dim_1var(&p)? {
        Dimension::Finite(n) => n as i64,
        Dimension::Infinite => -1,
    })
}

/// `dim ker Φ2 = dim k[X]/<f'>` for `T ↦ f`; `-1` when infinite. `field` is
/// `"Q"` or `"GF(p)"`; NULL means `"Q"`.
///
/// # Safety
/// `f` and (if non-NULL) `field` must be NUL-terminated strings; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn secohom_poly_kerphi(f: *const c_char, field: *const c_char, out: *mut i64) -> SecohomStatus {
    check_null!(f, out);
    guard(|| {
        let f = opt_str(f, "f")?.ok_or(Null)?;
        let desc = FieldDescriptor::parse(opt_str(field, "field")?.unwrap_or("Q"))?;
        *out = match desc {
            FieldDescriptor::Rational => kerphi(Rationals, f)?,
            FieldDescriptor::Prime(p) => kerphi(PrimeField::new(p)?, f)?,
        };
        Ok(())
    })
}

/// The JSON cohomology report for degrees `lo..=hi`, as printed by
/// `secohom cohomology --output json`.
///
/// # Safety
/// `out` receives a string to release with [`secohom_string_free`]; other
/// pointers as above.
#[no_mangle]
pub unsafe extern "C" fn secohom_cohomology_report_json(
    triple: *const SecohomTriple,
    module: *const c_char,
    flavor_code: u32,
    lo: usize,
    hi: usize,
    out: *mut *mut c_char,
) -> SecohomStatus {
    check_null!(triple, out);
    *out = ptr::null_mut();
    let t = &*triple;
    guard(|| {
        let m = opt_str(module, "module")?;
        let fl = flavor(flavor_code)?;
        if lo > hi {
            return Err(SpecError::new("degrees", Error::Parse(format!("empty range {lo}..{hi}"))));
        }
        let report = on_triple!(t, |l| cli::cohomology_report(&complex(l, m, fl, t.max_basis)?, lo, hi)?);
        *out = CString::new(report.to_json()).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn secohom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn secohom_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
