// SPDX-License-Identifier: Apache-2.0

//! C ABI over `cmc_simons`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` style
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`CmcStatus`]; on failure a message is kept per thread and can
//! be read with [`cmc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cmc_simons::ambient::{Chart, ChartKind, ModelParams};
use cmc_simons::formal::{run_formal, Mutation};
use cmc_simons::hopf::{hopf_torus, perturbed_torus, HopfTorusSpec, PerturbedTorusSpec};
use cmc_simons::identities::Verdict;
use cmc_simons::pinching::{pinching_interval, rho, PinchingInput};
use cmc_simons::quadrature::{simons_functional, GridSpec};
use cmc_simons::report::{run_verify, to_json};
use cmc_simons::surface::{invariants, ParametricImmersion};
use cmc_simons::Error;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ZeroTau = 3,
    OutsideChart = 4,
    AdaptedFrameUndefined = 5,
    CmcRequired = 6,
    NonCompact = 7,
    NegativeDiscriminant = 8,
    WrongCurvatureRegime = 9,
    Config = 10,
    Degenerate = 11,
    Panic = 12,
    Internal = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmcChart {
    Berger = 0,
    Disk = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmcVerdict {
    Pass = 0,
    Fail = 1,
    Inconclusive = 2,
}

/// Opaque model `E(kappa, tau)`.
pub struct CmcModel {
    params: ModelParams,
}

/// Opaque parametrized surface.
pub struct CmcSurface {
    imm: ParametricImmersion,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CmcInvariants {
    pub mean_curvature: f64,
    pub a_norm_sq: f64,
    pub phi_norm_sq: f64,
    /// Angle function `<N, xi>`.
    pub c: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CmcSimonsValue {
    pub value: f64,
    pub doubled: f64,
    pub mean_curvature: f64,
    pub nonnegative: bool,
    pub equality: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CmcPinching {
    pub rho: f64,
    pub a: f64,
    pub b: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CmcStatus {
    match e {
        Error::ZeroTau => CmcStatus::ZeroTau,
        Error::InvalidParams(_) | Error::InvalidSurface(_) | Error::InvalidGrid(_) => {
            CmcStatus::InvalidArgument
        }
        Error::OutsideChart(_) => CmcStatus::OutsideChart,
        Error::AdaptedFrameUndefined { .. } | Error::VerticalPoint => {
            CmcStatus::AdaptedFrameUndefined
        }
        Error::CmcRequired => CmcStatus::CmcRequired,
        Error::NonCompact => CmcStatus::NonCompact,
        Error::NegativeDiscriminant(_) => CmcStatus::NegativeDiscriminant,
        Error::WrongCurvatureRegime(_) => CmcStatus::WrongCurvatureRegime,
        Error::Config(_) => CmcStatus::Config,
        Error::Degenerate { .. } | Error::ImmersionFailure { .. } => CmcStatus::Degenerate,
        Error::Jet(_) | Error::Io(_) => CmcStatus::Internal,
    }
}

/// Runs `f`, recording errors and containing panics.
fn guard(f: impl FnOnce() -> Result<(), (CmcStatus, String)>) -> CmcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CmcStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside cmc_simons".into());
            CmcStatus::Panic
        }
    }
}

fn lib<T>(r: cmc_simons::Result<T>) -> Result<T, (CmcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (CmcStatus, String) {
    (CmcStatus::NullPointer, format!("{what} is null"))
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cmc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cmc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn cmc_model_new(kappa: f64, tau: f64, out: *mut *mut CmcModel) -> CmcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = lib(ModelParams::new(kappa, tau))?;
        *out = Box::into_raw(Box::new(CmcModel { params }));
        Ok(())
    })
}

/// # Safety
/// `model` must be null or a handle from [`cmc_model_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cmc_model_free(model: *mut CmcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Largest bracket-relation residual of the canonical frame over
/// `n_points` random points of the chart.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cmc_model_bracket_residual(
    model: *const CmcModel,
    chart: CmcChart,
    n_points: u32,
    seed: u64,
    out: *mut f64,
) -> CmcStatus {
    guard(|| {
        let m = model.as_ref().ok_or_else(|| null("model"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let kind = match chart {
            CmcChart::Berger => ChartKind::BergerSphere,
            CmcChart::Disk => ChartKind::DiskModel,
        };
        let ch = lib(Chart::new(m.params, kind))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0_f64;
        for _ in 0..n_points {
            let p = ch.random_point(&mut rng);
            worst = worst.max(lib(ch.bracket_residuals(&p))?.max());
        }
        *out = worst;
        Ok(())
    })
}

fn new_surface(
    out: *mut *mut CmcSurface,
    make: impl FnOnce() -> cmc_simons::Result<ParametricImmersion>,
) -> CmcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let imm = lib(make())?;
        // SAFETY: checked non-null above; caller provides writable storage.
        unsafe { *out = Box::into_raw(Box::new(CmcSurface { imm })) };
        Ok(())
    })
}

/// Hopf torus over the latitude circle `s` in the Berger sphere.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cmc_surface_hopf_torus(
    model: *const CmcModel,
    s: f64,
    out: *mut *mut CmcSurface,
) -> CmcStatus {
    let Some(m) = model.as_ref() else {
        set_error("model is null".into());
        return CmcStatus::NullPointer;
    };
    let params = m.params;
    new_surface(out, || hopf_torus(&HopfTorusSpec { params, s }))
}

/// Hopf torus with a rippled latitude, not cmc.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cmc_surface_perturbed_torus(
    model: *const CmcModel,
    s: f64,
    amplitude: f64,
    p: i32,
    q: i32,
    out: *mut *mut CmcSurface,
) -> CmcStatus {
    let Some(m) = model.as_ref() else {
        set_error("model is null".into());
        return CmcStatus::NullPointer;
    };
    let params = m.params;
    new_surface(out, || {
        perturbed_torus(&PerturbedTorusSpec {
            params,
            s,
            amplitude,
            frequency: (p, q),
        })
    })
}

/// # Safety
/// `surface` must be null or a live surface handle.
#[no_mangle]
pub unsafe extern "C" fn cmc_surface_free(surface: *mut CmcSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Whether the surface carries a cmc tag; writes the tagged `H` if so.
///
/// # Safety
/// `surface` must be a live handle; `h` may be null.
#[no_mangle]
pub unsafe extern "C" fn cmc_surface_is_cmc(surface: *const CmcSurface, h: *mut f64) -> bool {
    match surface.as_ref().and_then(|s| s.imm.cmc_tag()) {
        Some(v) => {
            if !h.is_null() {
                *h = v;
            }
            true
        }
        None => false,
    }
}

/// `H`, `|A|^2`, `|Phi|^2` and `C` at parameter `(u, v)`.
///
/// # Safety
/// `surface` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cmc_surface_invariants(
    surface: *const CmcSurface,
    u: f64,
    v: f64,
    out: *mut CmcInvariants,
) -> CmcStatus {
    guard(|| {
        let s = surface.as_ref().ok_or_else(|| null("surface"))?;
        let o = out.as_mut().ok_or_else(|| null("out"))?;
        let inv = lib(invariants(&s.imm, u, v))?;
        *o = CmcInvariants {
            mean_curvature: inv.mean_curvature,
            a_norm_sq: inv.a_norm_sq,
            phi_norm_sq: inv.phi_norm_sq,
            c: inv.c,
        };
        Ok(())
    })
}

/// The Simons functional on an `n_u x n_v` grid.
///
/// # Safety
/// `surface` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cmc_surface_simons(
    surface: *const CmcSurface,
    n_u: u32,
    n_v: u32,
    out: *mut CmcSimonsValue,
) -> CmcStatus {
    guard(|| {
        let s = surface.as_ref().ok_or_else(|| null("surface"))?;
        let o = out.as_mut().ok_or_else(|| null("out"))?;
        let grid = lib(GridSpec::new(n_u as usize, n_v as usize))?;
        let sv = lib(simons_functional(&s.imm, &grid))?;
        *o = CmcSimonsValue {
            value: sv.integral.value,
            doubled: sv.integral.doubled,
            mean_curvature: sv.mean_curvature,
            nonnegative: sv.nonnegative,
            equality: sv.equality,
        };
        Ok(())
    })
}

/// Discriminant and roots of the Simons quadratic.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cmc_pinching_interval(
    kappa: f64,
    tau: f64,
    h: f64,
    c: f64,
    out: *mut CmcPinching,
) -> CmcStatus {
    guard(|| {
        let o = out.as_mut().ok_or_else(|| null("out"))?;
        let inp = lib(PinchingInput::new(kappa, tau, h, c))?;
        o.rho = rho(&inp);
        let (a, b) = lib(pinching_interval(&inp))?;
        o.a = a;
        o.b = b;
        Ok(())
    })
}

/// Exact check of the identity chain on `count` random rational states.
/// `exact` receives whether every residual vanished.
///
/// # Safety
/// `exact` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cmc_formal_run(
    count: u32,
    seed: u64,
    mutate: bool,
    exact: *mut bool,
) -> CmcStatus {
    guard(|| {
        let e = exact.as_mut().ok_or_else(|| null("exact"))?;
        if count == 0 {
            return Err((CmcStatus::InvalidArgument, "count must be at least 1".into()));
        }
        let m = if mutate { Mutation::FlipBeta11 } else { Mutation::None };
        *e = run_formal(count as usize, seed, m).all_exact();
        Ok(())
    })
}

/// Runs a JSON verify config. On success `report` receives a JSON string to
/// be released with [`cmc_string_free`].
///
/// # Safety
/// `config` must be a NUL-terminated string; `verdict` and `report` writable.
#[no_mangle]
pub unsafe extern "C" fn cmc_verify_json(
    config: *const c_char,
    verdict: *mut CmcVerdict,
    report: *mut *mut c_char,
) -> CmcStatus {
    guard(|| {
        if config.is_null() {
            return Err(null("config"));
        }
        let v = verdict.as_mut().ok_or_else(|| null("verdict"))?;
        if report.is_null() {
            return Err(null("report"));
        }
        let text = CStr::from_ptr(config)
            .to_str()
            .map_err(|e| (CmcStatus::Config, e.to_string()))?;
        let rep = lib(run_verify(text, None))?;
        *v = match rep.verdict {
            Verdict::Pass => CmcVerdict::Pass,
            Verdict::Fail => CmcVerdict::Fail,
            Verdict::Inconclusive => CmcVerdict::Inconclusive,
        };
        let json = lib(to_json(&rep))?;
        *report = CString::new(json)
            .map_err(|e| (CmcStatus::Internal, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cmc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
