use std::ffi::{CStr, CString};
use std::ptr;

use conics_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(conics_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn curve_handles() {
    let mut c = ptr::null_mut();
    assert_eq!(conics_curve_weierstrass(101, 2, 3, &mut c), ConicsStatus::Ok);
    unsafe {
        assert_eq!(conics_curve_degree(c), 4);
        assert_eq!(conics_curve_genus(c), 1);
        let (mut tag, mut w) = (ConicsVertexTag::Special, 0usize);
        let p = [1u64, 2, 3, 5];
        assert_eq!(conics_classify_vertex(c, p.as_ptr(), &mut tag, &mut w), ConicsStatus::Ok);
        assert_eq!((tag, w), (ConicsVertexTag::General, 1));
        let bad = [0u64, 0, 0, 0];
        assert_eq!(conics_classify_vertex(c, bad.as_ptr(), &mut tag, &mut w), ConicsStatus::InvalidInput);
        assert!(!last_error().is_empty());
        conics_curve_free(c);
        conics_curve_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    let mut c = ptr::null_mut();
    assert_eq!(conics_curve_weierstrass(9, 2, 3, &mut c), ConicsStatus::InvalidField);
    assert!(c.is_null());
    assert_eq!(conics_curve_weierstrass(101, 0, 0, &mut c), ConicsStatus::DegenerateCurve);
    assert_eq!(conics_curve_twisted_cubic(7, ptr::null_mut()), ConicsStatus::NullPointer);
    assert_eq!(last_error(), "null pointer argument");
    unsafe {
        assert_eq!(conics_curve_degree(ptr::null()), 0);
        let mut w = ConicsWitness::default();
        assert_eq!(conics_find_order16(17, 23, 3, &mut w), ConicsStatus::BudgetExhausted);
    }
}

#[test]
fn golden_witness() {
    let mut w = ConicsWitness::default();
    assert_eq!(unsafe { conics_find_order16(17, 1021, u64::MAX, &mut w) }, ConicsStatus::Ok);
    assert_eq!((w.p, w.a, w.b, w.qx, w.qy, w.group_order), (17, 2, 4, 2, 4, 16));
}

#[test]
fn scenario_reports() {
    let name = CString::new("twisted-cubic-3to1").unwrap();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(conics_run_scenario(name.as_ptr(), 1, &mut r), ConicsStatus::Ok);
        assert_eq!(conics_report_failed(r), 0);
        assert_eq!(conics_report_passed(r), 4);
        let text = CStr::from_ptr(conics_report_text(r)).to_str().unwrap();
        assert!(text.starts_with("scenario = twisted-cubic-3to1\n"));
        assert!(text.contains("cube-roots"));
        conics_report_free(r);
        let bogus = CString::new("bogus").unwrap();
        assert_eq!(conics_run_scenario(bogus.as_ptr(), 1, &mut r), ConicsStatus::InvalidInput);
    }
}

#[test]
fn header_declares_the_abi() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/conics.h")).unwrap();
    for sym in [
        "conics_last_error",
        "conics_curve_weierstrass",
        "conics_curve_twisted_cubic",
        "conics_curve_free",
        "conics_classify_vertex",
        "conics_find_order16",
        "conics_run_scenario",
        "conics_report_text",
        "conics_report_free",
        "typedef struct ConicsCurve ConicsCurve;",
        "CONICS_STATUS_BUDGET_EXHAUSTED = 6",
    ] {
        assert!(h.contains(sym), "{sym}");
    }
}
