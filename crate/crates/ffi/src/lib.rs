//! C ABI over `cdiff`.
//!
//! Contexts and functions are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a `CdiffStatus`; on failure
//! `cdiff_last_error` describes the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use cdiff::ddt::{c_uniformity, CParam, CSet, Class};
use cdiff::funcs::{parse_spec, FuncSpec};
use cdiff::gf::FieldCtx;
use cdiff::predict::{verify, Verdict};
use cdiff::quadext::{make_quadext, select_t, QuadExtCtx};
use cdiff::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdiffStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidField = 4,
    InvalidT = 5,
    InvalidParams = 6,
    OutOfRange = 7,
    DomainMismatch = 8,
    DivisionByZero = 9,
    IdentityC = 10,
    NotCovered = 11,
    Internal = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdiffVerdict {
    Match = 0,
    BoundOk = 1,
    Violation = 2,
    NotCovered = 3,
}

/// Result of one c-DDT. `class_code` is 1 for PcN, 2 for APcN and 0
/// otherwise. Witness points and values are pair indices x + q*y (or
/// extension-field indices for functions on F_{q^2}).
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CdiffReport {
    pub uniformity: u32,
    pub class_code: u32,
    pub witness_a: u32,
    pub witness_b: u32,
}

/// Opaque F_{p^m}.
pub struct CdiffField(FieldCtx);

/// Opaque quadratic extension with its parameter t.
pub struct CdiffQuadExt(Arc<QuadExtCtx>);

/// Opaque function bound to the context it was parsed in.
pub struct CdiffFunc {
    qe: Arc<QuadExtCtx>,
    spec: FuncSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CdiffStatus {
    match e {
        Error::Parse { .. } => CdiffStatus::Parse,
        Error::CompositeCharacteristic(_)
        | Error::FieldTooLarge { .. }
        | Error::ReducibleModulus(_)
        | Error::InvalidModulus(_)
        | Error::NonDivisorSubfield { .. } => CdiffStatus::InvalidField,
        Error::InvalidT(_) | Error::NoRootFound => CdiffStatus::InvalidT,
        Error::InvalidParams(_) | Error::DegenerateQuartic => CdiffStatus::InvalidParams,
        Error::ElementOutOfRange { .. } => CdiffStatus::OutOfRange,
        Error::DomainMismatch | Error::ContextMismatch => CdiffStatus::DomainMismatch,
        Error::DivisionByZero => CdiffStatus::DivisionByZero,
        Error::IdentityC => CdiffStatus::IdentityC,
        Error::NotCovered(_) => CdiffStatus::NotCovered,
        Error::Io(_) => CdiffStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (CdiffStatus, String)>) -> CdiffStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CdiffStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside cdiff");
            CdiffStatus::Panic
        }
    }
}

fn lib(e: Error) -> (CdiffStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (CdiffStatus, String) {
    (CdiffStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (CdiffStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (CdiffStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), (CdiffStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn cdiff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds F_{p^m} with the default modulus.
///
/// # Safety
/// `out` must be a valid pointer to write a handle into.
#[no_mangle]
pub unsafe extern "C" fn cdiff_field_new(p: u32, m: u32, out: *mut *mut CdiffField) -> CdiffStatus {
    guard(|| {
        let f = FieldCtx::new(p, m, None).map_err(lib)?;
        put(out, Box::into_raw(Box::new(CdiffField(f))))
    })
}

/// # Safety
/// `field` must come from `cdiff_field_new` and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn cdiff_field_free(field: *mut CdiffField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field order, or 0 for a null handle.
///
/// # Safety
/// `field` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cdiff_field_order(field: *const CdiffField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.order())
}

/// `op`: 0 add, 1 sub, 2 mul, 3 div.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cdiff_field_arith(
    field: *const CdiffField,
    op: u32,
    a: u32,
    b: u32,
    out: *mut u32,
) -> CdiffStatus {
    guard(|| {
        let f = &field.as_ref().ok_or_else(|| null("field"))?.0;
        let q = f.order();
        if a >= q || b >= q {
            return Err(lib(Error::ElementOutOfRange {
                index: a.max(b) as u64,
                q,
            }));
        }
        let r = match op {
            0 => f.add(a, b),
            1 => f.sub(a, b),
            2 => f.mul(a, b),
            3 => f.div(a, b).ok_or_else(|| lib(Error::DivisionByZero))?,
            _ => return Err((CdiffStatus::InvalidParams, format!("unknown op {op}"))),
        };
        put(out, r)
    })
}

/// Absolute trace of `x`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cdiff_field_trace(field: *const CdiffField, x: u32, out: *mut u32) -> CdiffStatus {
    guard(|| {
        let f = &field.as_ref().ok_or_else(|| null("field"))?.0;
        if x >= f.order() {
            return Err(lib(Error::ElementOutOfRange {
                index: x as u64,
                q: f.order(),
            }));
        }
        put(out, f.trace(x))
    })
}

/// Builds F_{q^2} over F_{p^m}. `t` is an element string such as "w^3", or
/// null for the default choice.
///
/// # Safety
/// `t` must be null or a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdiff_quadext_new(
    p: u32,
    m: u32,
    t: *const c_char,
    out: *mut *mut CdiffQuadExt,
) -> CdiffStatus {
    guard(|| {
        let base = FieldCtx::new(p, m, None).map_err(lib)?;
        let t_override = if t.is_null() {
            None
        } else {
            Some(base.parse_elem(str_arg(t, "t")?, &['w']).map_err(lib)?)
        };
        let t = select_t(&base, t_override).map_err(lib)?;
        let qe = make_quadext(Arc::new(base), t).map_err(lib)?;
        put(out, Box::into_raw(Box::new(CdiffQuadExt(Arc::new(qe)))))
    })
}

/// # Safety
/// `qe` must come from `cdiff_quadext_new` and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn cdiff_quadext_free(qe: *mut CdiffQuadExt) {
    if !qe.is_null() {
        drop(Box::from_raw(qe));
    }
}

/// Order q of the base field, or 0 for a null handle.
///
/// # Safety
/// `qe` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cdiff_quadext_q(qe: *const CdiffQuadExt) -> u32 {
    qe.as_ref().map_or(0, |h| h.0.q())
}

/// phi(x, y) = x + beta*y as an index into F_{q^2}.
///
/// # Safety
/// `qe` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cdiff_quadext_phi(qe: *const CdiffQuadExt, x: u32, y: u32, out: *mut u32) -> CdiffStatus {
    guard(|| {
        let qe = &qe.as_ref().ok_or_else(|| null("quadext"))?.0;
        let q = qe.q();
        if x >= q || y >= q {
            return Err(lib(Error::ElementOutOfRange {
                index: x.max(y) as u64,
                q,
            }));
        }
        put(out, qe.phi(qe.pair(x, y)))
    })
}

/// Parses a function spec such as "genlinh{L=x;h=inv}" in `qe`.
///
/// # Safety
/// `qe` must be a live handle, `spec` a NUL-terminated string and `out`
/// writable. The function keeps its own reference to the context.
#[no_mangle]
pub unsafe extern "C" fn cdiff_func_parse(
    qe: *const CdiffQuadExt,
    spec: *const c_char,
    out: *mut *mut CdiffFunc,
) -> CdiffStatus {
    guard(|| {
        let qe = qe.as_ref().ok_or_else(|| null("quadext"))?.0.clone();
        let spec = parse_spec(str_arg(spec, "spec")?, &qe).map_err(lib)?;
        put(out, Box::into_raw(Box::new(CdiffFunc { qe, spec })))
    })
}

/// # Safety
/// `func` must come from `cdiff_func_parse` and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn cdiff_func_free(func: *mut CdiffFunc) {
    if !func.is_null() {
        drop(Box::from_raw(func));
    }
}

/// c-differential uniformity at c = (c1, c2).
///
/// # Safety
/// `func` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cdiff_uniformity(
    func: *const CdiffFunc,
    c1: u32,
    c2: u32,
    out: *mut CdiffReport,
) -> CdiffStatus {
    guard(|| {
        let h = func.as_ref().ok_or_else(|| null("func"))?;
        let q = h.qe.q();
        if c1 >= q || c2 >= q {
            return Err(lib(Error::ElementOutOfRange {
                index: c1.max(c2) as u64,
                q,
            }));
        }
        let c = match h.spec.shape().codomain() {
            cdiff::funcs::Domain::Biv => CParam::Biv { c1, c2 },
            cdiff::funcs::Domain::Ext => CParam::Uni(h.qe.phi(h.qe.pair(c1, c2))),
        };
        let r = c_uniformity(&h.spec, &h.qe, c).map_err(lib)?;
        let class_code = match r.class {
            Class::PcN => 1,
            Class::APcN => 2,
            Class::Uniform(_) => 0,
        };
        put(
            out,
            CdiffReport {
                uniformity: r.uniformity,
                class_code,
                witness_a: r.witness.0,
                witness_b: r.witness.1,
            },
        )
    })
}

/// Checks the closed-form prediction at c = (c1, c2) against brute force.
///
/// # Safety
/// `func` must be a live handle; `verdict` and `observed` writable.
#[no_mangle]
pub unsafe extern "C" fn cdiff_verify(
    func: *const CdiffFunc,
    c1: u32,
    c2: u32,
    verdict: *mut CdiffVerdict,
    observed: *mut u32,
) -> CdiffStatus {
    guard(|| {
        let h = func.as_ref().ok_or_else(|| null("func"))?;
        if (c1, c2) == (1, 0) {
            return Err(lib(Error::IdentityC));
        }
        let rows = verify(&h.spec, &h.qe, &CSet::List(vec![(c1, c2)])).map_err(lib)?;
        let row = rows.first().ok_or_else(|| (CdiffStatus::Internal, "no row".to_string()))?;
        let v = match row.verdict {
            Verdict::Match => CdiffVerdict::Match,
            Verdict::BoundOk => CdiffVerdict::BoundOk,
            Verdict::Violation => CdiffVerdict::Violation,
            Verdict::NotCovered => CdiffVerdict::NotCovered,
        };
        put(verdict, v)?;
        put(observed, row.observed.uniformity)
    })
}
