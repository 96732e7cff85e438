//! C ABI over `conics`. Objects are opaque handles released with the
//! matching `_free` function. Every fallible call returns a `ConicsStatus`;
//! the message of the last failure on the calling thread is available from
//! `conics_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use conics::algebra::{Field, PrimeField};
use conics::conic::{classify_vertex, VertexTag};
use conics::curves::CurveModel;
use conics::elliptic::{find_point_of_order, SearchSpace};
use conics::suite::{self, Settings};
use conics::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    InvalidField = 3,
    DegenerateCurve = 4,
    NotOnCurve = 5,
    BudgetExhausted = 6,
    ExtensionExhausted = 7,
    CertificateFailure = 8,
    GenericityFailure = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicsVertexTag {
    General = 0,
    OnCurve = 1,
    Special = 2,
}

/// A space curve over a prime field.
pub struct ConicsCurve(CurveModel<PrimeField>);

/// A finished scenario report.
pub struct ConicsReport {
    text: CString,
    passed: usize,
    failed: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConicsWitness {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub qx: u64,
    pub qy: u64,
    pub group_order: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ConicsStatus {
    match e {
        Error::InvalidField(_) | Error::IncompatibleField(..) => ConicsStatus::InvalidField,
        Error::DegenerateCurve(_) | Error::NotSmooth => ConicsStatus::DegenerateCurve,
        Error::NotOnCurve => ConicsStatus::NotOnCurve,
        Error::BudgetExhausted { .. } => ConicsStatus::BudgetExhausted,
        Error::ExtensionExhausted(..) => ConicsStatus::ExtensionExhausted,
        Error::CertificateFailure { .. } => ConicsStatus::CertificateFailure,
        Error::GenericityFailure(_) | Error::SamplingDefect(_) => ConicsStatus::GenericityFailure,
        Error::InvalidInput(_) | Error::Parse(_) | Error::AmbientMismatch(_) | Error::InvalidDirection(_) => {
            ConicsStatus::InvalidInput
        }
        _ => ConicsStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), ConicsStatus>) -> ConicsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ConicsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            ConicsStatus::Internal
        }
    }
}

fn fail(e: Error) -> ConicsStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> ConicsStatus {
    set_error("null pointer argument");
    ConicsStatus::NullPointer
}

/// Message of the last failure on this thread; empty if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn conics_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn emit_curve(out: *mut *mut ConicsCurve, c: conics::Result<CurveModel<PrimeField>>) -> Result<(), ConicsStatus> {
    if out.is_null() {
        return Err(null());
    }
    let c = c.map_err(fail)?;
    // SAFETY: `out` is non-null and the caller provides a writable slot.
    unsafe { *out = Box::into_raw(Box::new(ConicsCurve(c))) };
    Ok(())
}

/// The elliptic normal quartic of y^2 = x^3 + a x + b over F_p.
#[no_mangle]
pub extern "C" fn conics_curve_weierstrass(p: u64, a: i64, b: i64, out: *mut *mut ConicsCurve) -> ConicsStatus {
    guard(|| {
        let c = PrimeField::new(p).and_then(|f| CurveModel::weierstrass(f, f.from_i64(a), f.from_i64(b)));
        emit_curve(out, c)
    })
}

/// The twisted cubic (s^3 : s^2 t : s t^2 : t^3) over F_p.
#[no_mangle]
pub extern "C" fn conics_curve_twisted_cubic(p: u64, out: *mut *mut ConicsCurve) -> ConicsStatus {
    guard(|| emit_curve(out, PrimeField::new(p).and_then(CurveModel::twisted_cubic)))
}

/// Releases a curve; null is ignored.
///
/// # Safety
/// `curve` must be null or a handle from this library not yet released.
#[no_mangle]
pub unsafe extern "C" fn conics_curve_free(curve: *mut ConicsCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Degree of the curve, or 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conics_curve_degree(curve: *const ConicsCurve) -> u32 {
    curve.as_ref().map_or(0, |c| c.0.degree)
}

/// Genus of the curve, or 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conics_curve_genus(curve: *const ConicsCurve) -> u32 {
    curve.as_ref().map_or(0, |c| c.0.genus)
}

/// Classifies the vertex `point[0..4]` (residues mod p).
///
/// # Safety
/// `curve` must be a live handle, `point` must point to 4 values, and the
/// output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn conics_classify_vertex(
    curve: *const ConicsCurve,
    point: *const u64,
    tag: *mut ConicsVertexTag,
    witness: *mut usize,
) -> ConicsStatus {
    guard(|| {
        let (Some(c), false, false, false) = (curve.as_ref(), point.is_null(), tag.is_null(), witness.is_null()) else {
            return Err(null());
        };
        let p = c.0.field.p();
        let pt: Vec<u64> = std::slice::from_raw_parts(point, 4).to_vec();
        if pt.iter().any(|&x| x >= p) || pt.iter().all(|&x| x == 0) {
            return Err(fail(Error::InvalidInput("point must have 4 residues, not all zero".into())));
        }
        let v = classify_vertex(&c.0, &pt).map_err(fail)?;
        *tag = match v.tag {
            VertexTag::U => ConicsVertexTag::General,
            VertexTag::Cprime => ConicsVertexTag::OnCurve,
            VertexTag::S => ConicsVertexTag::Special,
        };
        *witness = v.witness;
        Ok(())
    })
}

/// First (p, a, b, q) with q of exact order 16, searching primes in
/// [min_prime, max_prime] and examining at most `budget` candidates.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn conics_find_order16(
    min_prime: u64,
    max_prime: u64,
    budget: u64,
    out: *mut ConicsWitness,
) -> ConicsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let primes: Vec<u64> = (min_prime.max(5)..=max_prime).filter(|&p| PrimeField::new(p).is_ok()).collect();
        let (e, q) = find_point_of_order(&SearchSpace::new(primes), 16, budget).map_err(fail)?;
        let g = conics::elliptic::GoldenCertificate::from_witness(&e, &q).map_err(fail)?;
        *out = ConicsWitness { p: g.p, a: g.a, b: g.b, qx: g.q.0, qy: g.q.1, group_order: g.group_order };
        Ok(())
    })
}

/// Runs a named scenario with default settings and the given seed.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn conics_run_scenario(name: *const c_char, seed: u64, out: *mut *mut ConicsReport) -> ConicsStatus {
    guard(|| {
        if name.is_null() || out.is_null() {
            return Err(null());
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| fail(Error::InvalidInput("scenario name is not UTF-8".into())))?;
        let s = Settings { seed, ..Settings::default() };
        let claims = suite::run_scenario(name, &s).map_err(fail)?;
        let r = suite::emit_report(name, &[("seed".into(), seed.to_string())], &claims);
        let text = CString::new(r.render(0)).map_err(|_| fail(Error::Internal("NUL in report".into())))?;
        *out = Box::into_raw(Box::new(ConicsReport { text, passed: r.passed, failed: r.failed }));
        Ok(())
    })
}

/// Report text; owned by the report.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conics_report_text(report: *const ConicsReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.text.as_ptr())
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conics_report_passed(report: *const ConicsReport) -> usize {
    report.as_ref().map_or(0, |r| r.passed)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conics_report_failed(report: *const ConicsReport) -> usize {
    report.as_ref().map_or(0, |r| r.failed)
}

/// Releases a report; null is ignored.
///
/// # Safety
/// `report` must be null or a handle from this library not yet released.
#[no_mangle]
pub unsafe extern "C" fn conics_report_free(report: *mut ConicsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
