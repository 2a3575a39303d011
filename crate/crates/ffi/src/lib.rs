//! C ABI.
//!
//! Every fallible function returns a [`CurvachayStatus`]. On failure the
//! message is kept per thread and read with [`curvachay_last_error`].
//! Strings handed out by the library are freed with [`curvachay_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use curvachay::curvature::{bakry_emery, kappa_lly_transport, LaplacianKind};
use curvachay::group::ball;
use curvachay::presentation::associated_pair;
use curvachay::rational::{to_f64, Rational};
use curvachay::theorems::thm_or_raach;
use curvachay::{parse_presentation, Error, LocalGraph, Presentation};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvachayStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Budget = 5,
    Radius = 6,
    Singular = 7,
    Internal = 8,
    Overflow = 9,
    Panic = 10,
}

/// Parsed presentation.
pub struct CurvachayPresentation(Presentation);

/// Finite piece of a Cayley graph.
pub struct CurvachayGraph(LocalGraph);

/// Exact value with its float. `numerator`/`denominator` are only meaningful
/// when `exact` is nonzero.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CurvachayValue {
    pub value: f64,
    pub exact: i32,
    pub numerator: i64,
    pub denominator: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CurvachayStatus {
    match e {
        Error::Parse { .. } => CurvachayStatus::Parse,
        Error::InvalidInput(_) => CurvachayStatus::InvalidInput,
        Error::Budget(_) => CurvachayStatus::Budget,
        Error::Radius(_) => CurvachayStatus::Radius,
        Error::Singular(_) => CurvachayStatus::Singular,
        Error::Internal(_) => CurvachayStatus::Internal,
    }
}

struct Fail(CurvachayStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CurvachayStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CurvachayStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            CurvachayStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(CurvachayStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(CurvachayStatus::Utf8, "argument is not UTF-8".into()))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(null)
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

fn give_string(s: String, out: &mut *mut c_char) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(CurvachayStatus::Internal, "string holds a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn exact_value(q: &Rational) -> Result<CurvachayValue, Fail> {
    use num::ToPrimitive;
    let overflow = || Fail(CurvachayStatus::Overflow, "rational does not fit in 64 bits".into());
    Ok(CurvachayValue {
        value: to_f64(q),
        exact: 1,
        numerator: q.numer().to_i64().ok_or_else(overflow)?,
        denominator: q.denom().to_i64().ok_or_else(overflow)?,
    })
}

fn kind(normalized: i32) -> LaplacianKind {
    if normalized != 0 {
        LaplacianKind::Normalized
    } else {
        LaplacianKind::NonNormalized
    }
}

/// Message of the last failed call on this thread, or NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn curvachay_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn curvachay_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `raach { ... }` or `group <...>`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn curvachay_presentation_parse(
    text: *const c_char,
    out: *mut *mut CurvachayPresentation,
) -> CurvachayStatus {
    guard(|| {
        let out = out_arg(out)?;
        let p = parse_presentation(str_arg(text)?)?;
        *out = Box::into_raw(Box::new(CurvachayPresentation(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`curvachay_presentation_parse`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn curvachay_presentation_free(p: *mut CurvachayPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// Pointers must be valid; free the result with [`curvachay_string_free`].
#[no_mangle]
pub unsafe extern "C" fn curvachay_presentation_to_json(
    p: *const CurvachayPresentation,
    out: *mut *mut c_char,
) -> CurvachayStatus {
    guard(|| {
        let p = ref_arg(p)?;
        give_string(p.0.to_json().to_string(), out_arg(out)?)
    })
}

/// Number of letters in the symmetric generating set of a RAACH.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn curvachay_letter_count(p: *const CurvachayPresentation, out: *mut usize) -> CurvachayStatus {
    guard(|| {
        let h = ref_arg(p)?.0.require_raach()?;
        *out_arg(out)? = associated_pair(h).len();
        Ok(())
    })
}

/// Closed-form normalized Ollivier curvature of the edge from the identity
/// along letter `letter` (index into the symmetric generating set).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn curvachay_ollivier_closed_form(
    p: *const CurvachayPresentation,
    letter: usize,
    out: *mut CurvachayValue,
) -> CurvachayStatus {
    guard(|| {
        let h = ref_arg(p)?.0.require_raach()?;
        let pair = associated_pair(h);
        let s = *pair
            .letters()
            .get(letter)
            .ok_or_else(|| Fail(CurvachayStatus::InvalidInput, format!("letter index {letter} out of range")))?;
        *out_arg(out)? = exact_value(&thm_or_raach(h, s)?)?;
        Ok(())
    })
}

/// Ball of the given radius around the identity of a RAACH.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn curvachay_ball(
    p: *const CurvachayPresentation,
    radius: u32,
    out: *mut *mut CurvachayGraph,
) -> CurvachayStatus {
    guard(|| {
        let out = out_arg(out)?;
        let b = ball(&ref_arg(p)?.0, radius)?;
        *out = Box::into_raw(Box::new(CurvachayGraph(b.graph)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`curvachay_ball`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn curvachay_graph_free(g: *mut CurvachayGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be valid. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn curvachay_graph_vertex_count(g: *const CurvachayGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.len())
}

/// Index of the neighbour of `v` at position `i`, or `usize::MAX`.
///
/// # Safety
/// `g` must be valid.
#[no_mangle]
pub unsafe extern "C" fn curvachay_graph_neighbor(g: *const CurvachayGraph, v: usize, i: usize) -> usize {
    g.as_ref()
        .filter(|g| v < g.0.len())
        .and_then(|g| g.0.neighbors(v).get(i))
        .map_or(usize::MAX, |e| e.to)
}

/// # Safety
/// Pointers must be valid; free the result with [`curvachay_string_free`].
#[no_mangle]
pub unsafe extern "C" fn curvachay_graph_to_dot(g: *const CurvachayGraph, out: *mut *mut c_char) -> CurvachayStatus {
    guard(|| give_string(ref_arg(g)?.0.to_dot(), out_arg(out)?))
}

fn vertex(g: &LocalGraph, v: usize) -> Result<(), Fail> {
    if v < g.len() {
        Ok(())
    } else {
        Err(Fail(CurvachayStatus::InvalidInput, format!("vertex {v} out of range")))
    }
}

/// Bakry-Émery curvature at `v`. `normalized` selects the Laplacian.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn curvachay_bakry_emery(
    g: *const CurvachayGraph,
    v: usize,
    normalized: i32,
    out: *mut CurvachayValue,
) -> CurvachayStatus {
    guard(|| {
        let g = &ref_arg(g)?.0;
        vertex(g, v)?;
        let r = bakry_emery(g, v, &kind(normalized))?;
        *out_arg(out)? = match &r.exact {
            Some(q) => exact_value(q)?,
            None => CurvachayValue {
                value: r.value,
                ..Default::default()
            },
        };
        Ok(())
    })
}

/// Lin-Lu-Yau curvature of the edge `x ~ y`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn curvachay_kappa_lly(
    g: *const CurvachayGraph,
    x: usize,
    y: usize,
    out: *mut CurvachayValue,
) -> CurvachayStatus {
    guard(|| {
        let g = &ref_arg(g)?.0;
        vertex(g, x)?;
        vertex(g, y)?;
        let r = kappa_lly_transport(g, x, y)?;
        let q = r.exact.ok_or_else(|| Fail(CurvachayStatus::Internal, "transport value is not exact".into()))?;
        *out_arg(out)? = exact_value(&q)?;
        Ok(())
    })
}
