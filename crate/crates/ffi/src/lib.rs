//! C ABI for netforge.
//!
//! Every fallible function returns an [`NfStatus`]; on failure the message is
//! available from [`nf_last_error`] on the same thread. Handles are opaque
//! and released with their `_free` function. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! [`nf_string_free`]. JSON documents use the same schemas as the CLI.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use netforge::constructions::{Constructed, ConstructionSpec};
use netforge::cyclotomic;
use netforge::field::Field;
use netforge::io::{self, NetFile};
use netforge::net;
use netforge::search::{self, SearchOptions};
use netforge::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Field = 4,
    Geometry = 5,
    Net = 6,
    Construction = 7,
    Cyclotomic = 8,
    Format = 9,
    Search = 10,
    Panic = 11,
}

/// A finite field GF(p^r).
pub struct NfField(Field);

/// A net or dual net.
pub struct NfNet(Constructed);

/// Search limits; zero means unlimited.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct NfSearchLimits {
    pub max_nodes: u64,
    pub max_time_ms: u64,
    pub max_solutions: u64,
    /// Largest field order accepted by the from-scratch search; 0 selects 16.
    pub q_cap: u64,
    pub serial: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NfStatus {
    match e {
        Error::Field(_) => NfStatus::Field,
        Error::Geometry(_) => NfStatus::Geometry,
        Error::Form(_) | Error::Net(_) => NfStatus::Net,
        Error::Construction(_) => NfStatus::Construction,
        Error::Cyclotomic(_) => NfStatus::Cyclotomic,
        Error::Format(_) => NfStatus::Format,
        Error::Search(_) => NfStatus::Search,
    }
}

struct Fail(NfStatus, String);

impl<E: Into<Error>> From<E> for Fail {
    fn from(e: E) -> Self {
        let e = e.into();
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(NfStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            NfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NfStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(NfStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Fail(NfStatus::InvalidArgument, "interior nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &serde_json::Value) -> Result<(), Fail> {
    write_string(out, serde_json::to_string(v).expect("serializable"))
}

unsafe fn field_ref<'a>(f: *const NfField) -> Result<&'a Field, Fail> {
    f.as_ref().map(|f| &f.0).ok_or_else(|| null("field"))
}

unsafe fn net_ref<'a>(n: *const NfNet) -> Result<&'a Constructed, Fail> {
    n.as_ref().map(|n| &n.0).ok_or_else(|| null("net"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = v;
    Ok(())
}

fn as_knet(c: &Constructed) -> Result<netforge::KNet, Fail> {
    match c {
        Constructed::Net(n) => Ok(n.clone()),
        Constructed::Dual(d) => Ok(net::dualize(d)?),
    }
}

fn options(limits: *const NfSearchLimits) -> SearchOptions {
    let l = unsafe { limits.as_ref() }.copied().unwrap_or_default();
    let nz = |x: u64| (x > 0).then_some(x);
    SearchOptions {
        max_nodes: nz(l.max_nodes),
        max_time: nz(l.max_time_ms).map(Duration::from_millis),
        max_solutions: nz(l.max_solutions).map(|x| x as usize),
        parallel: !l.serial,
        q_cap: nz(l.q_cap).unwrap_or(16),
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn nf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates GF(p^r) with the canonical modulus.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_field_new(p: u64, r: u32, out: *mut *mut NfField) -> NfStatus {
    guard(|| {
        let f = Field::new(p, r, None)?;
        put(out, Box::into_raw(Box::new(NfField(f))))
    })
}

/// # Safety
/// `f` must be null or a handle from [`nf_field_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nf_field_free(f: *mut NfField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nf_field_order(f: *const NfField) -> u64 {
    f.as_ref().map_or(0, |f| f.0.order())
}

/// Field descriptor as JSON.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_field_descriptor(f: *const NfField, out: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let f = field_ref(f)?;
        write_json(out, &serde_json::to_value(f.descriptor()).expect("serializable"))
    })
}

unsafe fn binary(
    f: *const NfField,
    a: u32,
    b: u32,
    out: *mut u32,
    op: fn(&Field, netforge::FieldElement, netforge::FieldElement) -> Result<netforge::FieldElement, Fail>,
) -> NfStatus {
    guard(|| {
        let f = field_ref(f)?;
        let bad = |x| Fail(NfStatus::InvalidArgument, format!("element index {x} out of range"));
        let x = f.from_index(a).ok_or_else(|| bad(a))?;
        let y = f.from_index(b).ok_or_else(|| bad(b))?;
        put(out, op(f, x, y)?.index())
    })
}

/// `a + b` on element indices.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_field_add(f: *const NfField, a: u32, b: u32, out: *mut u32) -> NfStatus {
    binary(f, a, b, out, |f, x, y| Ok(f.add(x, y)))
}

/// `a * b` on element indices.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_field_mul(f: *const NfField, a: u32, b: u32, out: *mut u32) -> NfStatus {
    binary(f, a, b, out, |f, x, y| Ok(f.mul(x, y)))
}

/// `a / b` on element indices; fails with [`NfStatus::Field`] for `b = 0`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_field_div(f: *const NfField, a: u32, b: u32, out: *mut u32) -> NfStatus {
    binary(f, a, b, out, |f, x, y| Ok(f.div(x, y)?))
}

/// Parses a net JSON document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_net_from_json(json: *const c_char, out: *mut *mut NfNet) -> NfStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let c = NetFile::parse(text)?.into_constructed()?;
        put(out, Box::into_raw(Box::new(NfNet(c))))
    })
}

/// Builds a net from a construction spec such as
/// `{"family":"classical","p":7,"r":1}`.
///
/// # Safety
/// `spec_json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_net_construct(spec_json: *const c_char, out: *mut *mut NfNet) -> NfStatus {
    guard(|| {
        let text = read_str(spec_json, "spec")?;
        let spec: ConstructionSpec = serde_json::from_str(text)
            .map_err(|e| Fail(NfStatus::InvalidArgument, format!("bad construction spec: {e}")))?;
        put(out, Box::into_raw(Box::new(NfNet(spec.build()?))))
    })
}

/// # Safety
/// `n` must be null or a live handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nf_net_free(n: *mut NfNet) {
    if !n.is_null() {
        drop(Box::from_raw(n));
    }
}

/// Serializes a net as net JSON.
///
/// # Safety
/// `n` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_net_to_json(n: *const NfNet, out: *mut *mut c_char) -> NfStatus {
    guard(|| write_string(out, NetFile::from_constructed(net_ref(n)?).to_json()))
}

/// Checks the net axioms. `report` may be null; otherwise it receives the
/// verification report JSON.
///
/// # Safety
/// `n` must be a live handle, `pass` a valid pointer, `report` null or valid.
#[no_mangle]
pub unsafe extern "C" fn nf_net_verify(n: *const NfNet, pass: *mut bool, report: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let r = match net_ref(n)? {
            Constructed::Net(n) => n.verify(),
            Constructed::Dual(d) => d.verify(),
        };
        put(pass, r.pass)?;
        if !report.is_null() {
            write_json(report, &io::tagged(&r))?;
        }
        Ok(())
    })
}

/// Cross-ratio report of a 4-net (dual nets are dualized), including the
/// pencil value.
///
/// # Safety
/// `n` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_net_analyze(n: *const NfNet, out: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let knet = as_knet(net_ref(n)?)?;
        let report = net::constant_cross_ratio(&knet)?;
        let pencil = net::cross_ratio_via_pencil(&knet)?;
        write_json(out, &io::cross_ratio_json(knet.field(), &report, Some(pencil)))
    })
}

/// One-component extensions of a net as a search certificate. `limits` may be null.
///
/// # Safety
/// `n` must be a live handle, `limits` null or valid, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_net_extend(n: *const NfNet, limits: *const NfSearchLimits, out: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let cert = search::extend_net(&as_knet(net_ref(n)?)?, &options(limits))?;
        write_json(out, &serde_json::to_value(cert).expect("serializable"))
    })
}

/// 5-net refutation certificate for a 4-net. `limits` may be null.
///
/// # Safety
/// `n` must be a live handle, `limits` null or valid, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_net_refute(n: *const NfNet, limits: *const NfSearchLimits, out: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let cert = search::refute_5net(&as_knet(net_ref(n)?)?, &options(limits))?;
        write_json(out, &serde_json::to_value(cert).expect("serializable"))
    })
}

/// 4-nets of order 3 over the field, up to projectivity. `limits` may be null.
///
/// # Safety
/// `f` must be a live handle, `limits` null or valid, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_search_order3(f: *const NfField, limits: *const NfSearchLimits, out: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let cert = search::search_4nets_order3(field_ref(f)?, &options(limits))?;
        write_json(out, &serde_json::to_value(cert).expect("serializable"))
    })
}

/// Resultant bound report for 4-nets of order `n`; `cap` limits trial division.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nf_bound_report(n: u64, cap: u64, out: *mut *mut c_char) -> NfStatus {
    guard(|| write_json(out, &io::tagged(&cyclotomic::bound_report(n, cap, false)?)))
}

/// gcd certificate for 4-nets of order `n` in PG(2, q). `refuted` receives
/// the verdict.
///
/// # Safety
/// `refuted` and `out` must be valid pointers; `out` may be null.
#[no_mangle]
pub unsafe extern "C" fn nf_gcd_certificate(n: u64, q: u64, refuted: *mut bool, out: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let cert = cyclotomic::gcd_certificate(n, q)?;
        put(refuted, cert.verdict == cyclotomic::GcdVerdict::Refuted)?;
        if !out.is_null() {
            write_json(out, &io::tagged(&cert))?;
        }
        Ok(())
    })
}
