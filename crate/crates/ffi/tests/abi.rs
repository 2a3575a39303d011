use std::ffi::{CStr, CString};
use std::ptr;

use curvachay_ffi::*;

fn parse(text: &str) -> (CurvachayStatus, *mut CurvachayPresentation) {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    let s = unsafe { curvachay_presentation_parse(c.as_ptr(), &mut p) };
    (s, p)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(curvachay_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn closed_form_and_brute_force_agree() {
    let (s, p) = parse("raach { a:2, b:2, c:2; }");
    assert_eq!(s, CurvachayStatus::Ok);
    unsafe {
        let mut n = 0usize;
        assert_eq!(curvachay_letter_count(p, &mut n), CurvachayStatus::Ok);
        assert_eq!(n, 3);
        let mut v = CurvachayValue::default();
        assert_eq!(curvachay_ollivier_closed_form(p, 0, &mut v), CurvachayStatus::Ok);
        assert_eq!((v.exact, v.numerator, v.denominator), (1, -2, 3));

        let mut g = ptr::null_mut();
        assert_eq!(curvachay_ball(p, 4, &mut g), CurvachayStatus::Ok);
        let y = curvachay_graph_neighbor(g, 0, 0);
        assert_ne!(y, usize::MAX);
        let mut k = CurvachayValue::default();
        assert_eq!(curvachay_kappa_lly(g, 0, y, &mut k), CurvachayStatus::Ok);
        assert_eq!((k.numerator, k.denominator), (-2, 3));
        let mut be = CurvachayValue::default();
        assert_eq!(curvachay_bakry_emery(g, 0, 0, &mut be), CurvachayStatus::Ok);
        assert!((be.value + 1.0).abs() < 1e-9);

        let mut dot = ptr::null_mut();
        assert_eq!(curvachay_graph_to_dot(g, &mut dot), CurvachayStatus::Ok);
        assert!(CStr::from_ptr(dot).to_str().unwrap().starts_with("graph"));
        curvachay_string_free(dot);
        curvachay_graph_free(g);
        curvachay_presentation_free(p);
    }
}

#[test]
fn json_round_trip() {
    let (_, p) = parse("group <a,b | a^4, b^-1 a^2>");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(curvachay_presentation_to_json(p, &mut s), CurvachayStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert!(v.is_object());
        curvachay_string_free(s);
        // general presentations have no closed form
        let mut n = 0usize;
        assert_eq!(curvachay_letter_count(p, &mut n), CurvachayStatus::InvalidInput);
        curvachay_presentation_free(p);
    }
}

#[test]
fn errors_are_reported() {
    let (s, p) = parse("raach { a:5; }");
    assert_eq!(s, CurvachayStatus::Parse);
    assert!(p.is_null());
    assert!(last_error().contains("order"));

    unsafe {
        assert_eq!(curvachay_presentation_parse(ptr::null(), &mut ptr::null_mut()), CurvachayStatus::NullPointer);
        let (_, p) = parse("raach { a:2; }");
        let mut g = ptr::null_mut();
        assert_eq!(curvachay_ball(p, 2, &mut g), CurvachayStatus::Ok);
        let mut v = CurvachayValue::default();
        assert_eq!(curvachay_kappa_lly(g, 0, 99, &mut v), CurvachayStatus::InvalidInput);
        assert_eq!(curvachay_ollivier_closed_form(p, 7, &mut v), CurvachayStatus::InvalidInput);
        curvachay_graph_free(g);
        curvachay_presentation_free(p);
        curvachay_presentation_free(ptr::null_mut());
        curvachay_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/curvachay.h");
    for f in [
        "curvachay_last_error",
        "curvachay_string_free",
        "curvachay_presentation_parse",
        "curvachay_presentation_free",
        "curvachay_presentation_to_json",
        "curvachay_letter_count",
        "curvachay_ollivier_closed_form",
        "curvachay_ball",
        "curvachay_graph_free",
        "curvachay_graph_vertex_count",
        "curvachay_graph_neighbor",
        "curvachay_graph_to_dot",
        "curvachay_bakry_emery",
        "curvachay_kappa_lly",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f}");
    }
}
