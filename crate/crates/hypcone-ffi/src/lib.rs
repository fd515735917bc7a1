//! C interface to `hypcone`. Representations and glued domains are opaque
//! handles freed by their `*_free` function; every call returns an
//! [`HcStatus`] and leaves a message for [`hc_last_error`] on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypcone::character_dynamics::{goldman_reduce, kappa, Character, ReductionKind};
use hypcone::cli_io::{render_svg, CliError, Model, RenderDomain, RepDocument, SvgOptions};
use hypcone::covering_group::{euler_class, SurfaceRep};
use hypcone::isometries::{IsoKind, Isometry};
use hypcone::plane_geometry::{BoundaryPoint, Vertex};
use hypcone::surface_glue::{glue_genus2, split_genus2, Genus2Rep, GlueParams, GluedDomain};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    /// A precondition of the operation failed.
    InvalidArgument = 2,
    /// A bounded search ended without a result.
    SearchExhausted = 3,
    ParseError = 4,
    /// The output buffer is too small; the needed length was written.
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcIsoKind {
    Identity = 0,
    Elliptic = 1,
    Parabolic = 2,
    Hyperbolic = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcReduction {
    Pants = 0,
    Elliptic = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcModel {
    Disk = 0,
    Halfplane = 1,
}

/// Opaque surface group representation.
pub struct HcRep(SurfaceRep);

/// Opaque glued genus-2 domain.
pub struct HcGlued(GluedDomain);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: HcStatus, msg: impl Into<String>) -> HcStatus {
    set_error(msg);
    status
}

fn from_cli(e: CliError) -> HcStatus {
    let status = match e.exit_code() {
        3 => HcStatus::SearchExhausted,
        4 => HcStatus::ParseError,
        _ => HcStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> HcStatus) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(HcStatus::Panic, "internal panic"),
    }
}

macro_rules! non_null {
    ($($p:expr),*) => {$(
        if $p.is_null() {
            return fail(HcStatus::NullPointer, concat!(stringify!($p), " is null"));
        }
    )*};
}

/// Message describing the last failure on this thread. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn hc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `x² + y² + z² − xyz − 2`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hc_kappa(x: f64, y: f64, z: f64, out: *mut f64) -> HcStatus {
    non_null!(out);
    *out = kappa(x, y, z);
    HcStatus::Ok
}

/// Classifies the isometry with row-major entries `m[0..4]`. `param`
/// receives the rotation angle, translation length or parabolic sense (±1).
///
/// # Safety
/// `m` must point to four doubles; `kind` and `param` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_classify(m: *const f64, kind: *mut HcIsoKind, param: *mut f64) -> HcStatus {
    non_null!(m, kind, param);
    let m = std::slice::from_raw_parts(m, 4);
    guard(|| {
        let a = match Isometry::new(m[0], m[1], m[2], m[3]) {
            Ok(a) => a,
            Err(e) => return fail(HcStatus::InvalidArgument, e.to_string()),
        };
        let (k, p) = match a.classify().kind {
            IsoKind::Identity => (HcIsoKind::Identity, 0.0),
            IsoKind::Elliptic { angle } => (HcIsoKind::Elliptic, angle),
            IsoKind::Parabolic { sense } => (HcIsoKind::Parabolic, sense.sign() as f64),
            IsoKind::Hyperbolic { length } => (HcIsoKind::Hyperbolic, length),
        };
        *kind = k;
        *param = p;
        HcStatus::Ok
    })
}

/// Pants-type or elliptic-type decision for a character with `κ > 2`.
///
/// # Safety
/// `kind` must be writable and `witness` must hold three doubles.
#[no_mangle]
pub unsafe extern "C" fn hc_reduce(
    x: f64,
    y: f64,
    z: f64,
    max_iter: usize,
    kind: *mut HcReduction,
    witness: *mut f64,
) -> HcStatus {
    non_null!(kind, witness);
    guard(|| match goldman_reduce(Character::new(x, y, z), max_iter) {
        Ok(r) => {
            *kind = match r.kind {
                ReductionKind::Pants => HcReduction::Pants,
                ReductionKind::Elliptic => HcReduction::Elliptic,
            };
            ptr::copy_nonoverlapping(r.witness.coords().as_ptr(), witness, 3);
            HcStatus::Ok
        }
        Err(e) => from_cli(e.into()),
    })
}

/// Builds a representation from `2·genus + boundary` row-major matrices in
/// presentation order `G0, H0, …, C0, …`.
///
/// # Safety
/// `entries` must hold `4 · count` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_rep_new(
    genus: usize,
    boundary: usize,
    entries: *const f64,
    count: usize,
    out: *mut *mut HcRep,
) -> HcStatus {
    non_null!(entries, out);
    let m = std::slice::from_raw_parts(entries, 4 * count);
    guard(|| {
        let gens: Result<Vec<_>, _> = m.chunks_exact(4).map(|c| Isometry::new(c[0], c[1], c[2], c[3])).collect();
        let rep = gens.map_err(|e| e.to_string()).and_then(|g| SurfaceRep::new(genus, boundary, g).map_err(|e| e.to_string()));
        match rep {
            Ok(rep) => {
                *out = Box::into_raw(Box::new(HcRep(rep)));
                HcStatus::Ok
            }
            Err(e) => fail(HcStatus::InvalidArgument, e),
        }
    })
}

/// Parses a representation document (the CLI's JSON format).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_rep_from_json(json: *const c_char, out: *mut *mut HcRep) -> HcStatus {
    non_null!(json, out);
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return fail(HcStatus::ParseError, "input is not UTF-8");
    };
    guard(|| {
        let rep = RepDocument::from_json(text, "<json>").and_then(|d| d.to_surface_rep(&mut Vec::new()));
        match rep {
            Ok(rep) => {
                *out = Box::into_raw(Box::new(HcRep(rep)));
                HcStatus::Ok
            }
            Err(e) => from_cli(e),
        }
    })
}

/// # Safety
/// `rep` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hc_rep_free(rep: *mut HcRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_euler_class(rep: *const HcRep, out: *mut i64) -> HcStatus {
    non_null!(rep, out);
    guard(|| match euler_class(&(*rep).0) {
        Ok(m) => {
            *out = m;
            HcStatus::Ok
        }
        Err(e) => fail(HcStatus::InvalidArgument, e.to_string()),
    })
}

/// Glues a genus-2 representation with Euler class ±1 and elliptic or
/// parabolic commutators into one octagon with a single cone point.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_glue_genus2(rep: *const HcRep, out: *mut *mut HcGlued) -> HcStatus {
    non_null!(rep, out);
    guard(|| {
        let glued = Genus2Rep::from_surface_rep(&(*rep).0)
            .and_then(|r| split_genus2(&r))
            .and_then(|s| glue_genus2(&s, &GlueParams::default()));
        match glued {
            Ok(d) => {
                *out = Box::into_raw(Box::new(HcGlued(d)));
                HcStatus::Ok
            }
            Err(e) => from_cli(e.into()),
        }
    })
}

/// # Safety
/// `glued` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hc_glued_free(glued: *mut HcGlued) {
    if !glued.is_null() {
        drop(Box::from_raw(glued));
    }
}

/// Cone angle, area and vertex orbit size of a glued domain. Any output
/// pointer may be null.
///
/// # Safety
/// `glued` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_glued_summary(
    glued: *const HcGlued,
    cone_angle: *mut f64,
    area: *mut f64,
    vertex_orbit: *mut usize,
) -> HcStatus {
    non_null!(glued);
    let d = &(*glued).0;
    if !cone_angle.is_null() {
        *cone_angle = d.cone_angle;
    }
    if !area.is_null() {
        *area = d.area;
    }
    if !vertex_orbit.is_null() {
        *vertex_orbit = d.vertex_orbit;
    }
    HcStatus::Ok
}

/// Writes the octagon vertices as `(x, y)` pairs in the upper half-plane;
/// ideal vertices have `y = 0`, or `x = NaN, y = +∞` at infinity. `len`
/// holds the capacity in pairs on entry and the vertex count on return.
///
/// # Safety
/// `glued` must be a live handle, `len` writable, and `xy` valid for
/// `2 · *len` doubles (it may be null when `*len` is 0).
#[no_mangle]
pub unsafe extern "C" fn hc_glued_vertices(glued: *const HcGlued, xy: *mut f64, len: *mut usize) -> HcStatus {
    non_null!(glued, len);
    let v = &(*glued).0.octagon.vertices;
    let cap = *len;
    *len = v.len();
    if cap < v.len() {
        return fail(HcStatus::BufferTooSmall, format!("need {} vertices", v.len()));
    }
    non_null!(xy);
    for (i, vert) in v.iter().enumerate() {
        let (x, y) = match *vert {
            Vertex::Finite(p) => (p.x(), p.y()),
            Vertex::Ideal(BoundaryPoint::Real(x)) => (x, 0.0),
            Vertex::Ideal(BoundaryPoint::Infinity) => (f64::NAN, f64::INFINITY),
        };
        *xy.add(2 * i) = x;
        *xy.add(2 * i + 1) = y;
    }
    HcStatus::Ok
}

/// SVG picture of the glued octagon. Free the string with
/// [`hc_string_free`].
///
/// # Safety
/// `glued` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_glued_svg(glued: *const HcGlued, model: HcModel, out: *mut *mut c_char) -> HcStatus {
    non_null!(glued, out);
    guard(|| {
        let d = &(*glued).0;
        let model = match model {
            HcModel::Disk => Model::Disk,
            HcModel::Halfplane => Model::Halfplane,
        };
        let domain = RenderDomain { label: "octagon".into(), polygon: d.octagon.clone(), right_angle_markers: false };
        let svg = render_svg(&[domain], &[], &SvgOptions { model, ..Default::default() });
        *out = CString::new(svg).expect("SVG has no NUL").into_raw();
        HcStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn error() -> String {
        unsafe { CStr::from_ptr(hc_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn kappa_and_classify() {
        let mut k = 0.0;
        assert_eq!(unsafe { hc_kappa(3.0, 3.0, 3.0, &mut k) }, HcStatus::Ok);
        assert_eq!(k, -2.0);
        let (mut kind, mut param) = (HcIsoKind::Identity, 0.0);
        let m = [2.0, 0.0, 0.0, 0.5];
        assert_eq!(unsafe { hc_classify(m.as_ptr(), &mut kind, &mut param) }, HcStatus::Ok);
        assert_eq!(kind, HcIsoKind::Hyperbolic);
        assert!((param - 2.0 * 2f64.ln()).abs() < 1e-12);
        assert_eq!(unsafe { hc_classify(m.as_ptr(), ptr::null_mut(), &mut param) }, HcStatus::NullPointer);
        let singular = [1.0, 1.0, 1.0, 1.0];
        assert_eq!(unsafe { hc_classify(singular.as_ptr(), &mut kind, &mut param) }, HcStatus::InvalidArgument);
        assert!(!error().is_empty());
    }

    #[test]
    fn reduce_reports_type_and_regime() {
        let (mut kind, mut w) = (HcReduction::Elliptic, [0.0; 3]);
        assert_eq!(unsafe { hc_reduce(-3.0, -3.0, -3.0, 100, &mut kind, w.as_mut_ptr()) }, HcStatus::Ok);
        assert_eq!((kind, w), (HcReduction::Pants, [-3.0; 3]));
        assert_eq!(unsafe { hc_reduce(1.0, 1.0, 1.0, 100, &mut kind, w.as_mut_ptr()) }, HcStatus::InvalidArgument);
    }

    #[test]
    fn glue_through_handles() {
        let rep = hypcone::surface_glue::models::elliptic_genus2().unwrap().surface_rep();
        let json = CString::new(RepDocument::from_surface_rep(&rep, Default::default()).to_json()).unwrap();
        let mut h: *mut HcRep = ptr::null_mut();
        assert_eq!(unsafe { hc_rep_from_json(json.as_ptr(), &mut h) }, HcStatus::Ok);
        let mut m = 0;
        assert_eq!(unsafe { hc_euler_class(h, &mut m) }, HcStatus::Ok);
        assert_eq!(m, 1);
        let mut g: *mut HcGlued = ptr::null_mut();
        assert_eq!(unsafe { hc_glue_genus2(h, &mut g) }, HcStatus::Ok);
        let (mut cone, mut area, mut orbit) = (0.0, 0.0, 0);
        assert_eq!(unsafe { hc_glued_summary(g, &mut cone, &mut area, &mut orbit) }, HcStatus::Ok);
        assert!((cone - 4.0 * PI).abs() < 1e-6 && (area - 2.0 * PI).abs() < 1e-5 && orbit == 8);
        let mut len = 0;
        assert_eq!(unsafe { hc_glued_vertices(g, ptr::null_mut(), &mut len) }, HcStatus::BufferTooSmall);
        let mut xy = vec![0.0; 2 * len];
        assert_eq!(unsafe { hc_glued_vertices(g, xy.as_mut_ptr(), &mut len) }, HcStatus::Ok);
        assert!(xy.chunks(2).all(|p| p[1] > 0.0));
        let mut svg: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { hc_glued_svg(g, HcModel::Disk, &mut svg) }, HcStatus::Ok);
        let text = unsafe { CStr::from_ptr(svg) }.to_str().unwrap().to_owned();
        assert_eq!(text.matches("class=\"side\"").count(), 8);
        unsafe {
            hc_string_free(svg);
            hc_glued_free(g);
            hc_rep_free(h);
        }
    }

    #[test]
    fn malformed_json_and_wrong_genus() {
        let mut h: *mut HcRep = ptr::null_mut();
        let bad = CString::new("{\"surface\":").unwrap();
        assert_eq!(unsafe { hc_rep_from_json(bad.as_ptr(), &mut h) }, HcStatus::ParseError);
        let id = [1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0];
        assert_eq!(unsafe { hc_rep_new(1, 1, id.as_ptr(), 3, &mut h) }, HcStatus::Ok);
        let mut g: *mut HcGlued = ptr::null_mut();
        assert_eq!(unsafe { hc_glue_genus2(h, &mut g) }, HcStatus::InvalidArgument);
        assert!(g.is_null());
        unsafe { hc_rep_free(h) };
    }
}
