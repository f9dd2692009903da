//! C ABI over `rsma_sinr`.
//!
//! Every function returns an [`RsmaStatus`] and writes results through out
//! pointers. Configurations and rate reports are opaque handles that must be
//! released with their `_free` function. On failure, a description of the
//! last error on the calling thread is available from [`rsma_last_error`].
//! Panics never cross the boundary; they surface as [`RsmaStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rsma_sinr::gamma_approx::{baseline_params, lemma1_params, moment_report, z_params, GammaParams};
use rsma_sinr::numerics::{bessel_j0, gamma_log_expectation};
use rsma_sinr::rates::{approx_private_rate, approx_sum_rate, mc_sum_rate, Approximation, RateReport};
use rsma_sinr::{jakes_epsilon, Error, MobilityParams, SystemConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsmaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    SingularGram = 4,
    DegenerateZ = 5,
    Numerical = 6,
    OutOfRange = 7,
    Panic = 99,
}

pub const RSMA_APPROX_LEMMA1: i32 = 0;
pub const RSMA_APPROX_BASELINE: i32 = 1;

/// Shape `D` and scale `Theta` of a Gamma law.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RsmaGammaParams {
    pub shape: f64,
    pub scale: f64,
}

/// Closed-form moments of `X` and its second-moment terms.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RsmaMoments {
    pub mean: f64,
    pub variance: f64,
    pub mu: f64,
    pub zeta1: f64,
    pub zeta2: f64,
    pub zeta3: f64,
    pub zeta4: f64,
    pub phi: f64,
}

/// Opaque scenario handle.
pub struct RsmaConfig(SystemConfig);

/// Opaque rate report handle.
pub struct RsmaRateReport(RateReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RsmaStatus {
    match e {
        Error::DimensionMismatch { .. } => RsmaStatus::DimensionMismatch,
        Error::SingularGram { .. } => RsmaStatus::SingularGram,
        Error::DegenerateZ { .. } => RsmaStatus::DegenerateZ,
        Error::InvalidParameter(_)
        | Error::NonFinite(_)
        | Error::EmptySamples
        | Error::ZeroWidthSupport(_)
        | Error::Config { .. } => RsmaStatus::InvalidArgument,
        Error::Numerical(_) | Error::Io(_) => RsmaStatus::Numerical,
    }
}

struct Failure(RsmaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RsmaStatus::NullPointer, format!("`{what}` is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RsmaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RsmaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            RsmaStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn config_ref<'a>(cfg: *const RsmaConfig) -> Result<&'a SystemConfig, Failure> {
    unsafe { cfg.as_ref() }.map(|c| &c.0).ok_or_else(|| null("config"))
}

unsafe fn report_ref<'a>(report: *const RsmaRateReport) -> Result<&'a RateReport, Failure> {
    unsafe { report.as_ref() }.map(|r| &r.0).ok_or_else(|| null("report"))
}

fn approximation(which: i32) -> Result<Approximation, Failure> {
    match which {
        RSMA_APPROX_LEMMA1 => Ok(Approximation::Lemma1),
        RSMA_APPROX_BASELINE => Ok(Approximation::Baseline),
        _ => Err(Failure(RsmaStatus::InvalidArgument, format!("unknown approximation {which}"))),
    }
}

fn to_c(p: GammaParams) -> RsmaGammaParams {
    RsmaGammaParams { shape: p.shape(), scale: p.scale() }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rsma_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rsma_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Uniform-SNR scenario. `snr_db = -INFINITY` gives zero transmit power.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn rsma_config_new(
    nt: usize,
    k: usize,
    epsilon: f64,
    tau: f64,
    snr_db: f64,
    out: *mut *mut RsmaConfig,
) -> RsmaStatus {
    guard(|| {
        let cfg = SystemConfig::new(nt, k, epsilon, tau, snr_db)?;
        unsafe { write(out, Box::into_raw(Box::new(RsmaConfig(cfg))), "out") }
    })
}

/// Scenario whose correlation follows from user speed (m/s), carrier
/// frequency (Hz) and CSI delay (s) through the Jakes model.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn rsma_config_from_mobility(
    nt: usize,
    k: usize,
    velocity: f64,
    carrier_hz: f64,
    interval_s: f64,
    tau: f64,
    snr_db: f64,
    out: *mut *mut RsmaConfig,
) -> RsmaStatus {
    guard(|| {
        let mob = MobilityParams::new(velocity, carrier_hz, interval_s)?;
        let cfg = SystemConfig::from_mobility(nt, k, &mob, tau, snr_db)?;
        unsafe { write(out, Box::into_raw(Box::new(RsmaConfig(cfg))), "out") }
    })
}

/// Replaces the per-user SNRs; `snr_db` holds `len == K` values in dB.
///
/// # Safety
/// `cfg` must be a live handle; `snr_db` must point to `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn rsma_config_set_user_snr_db(
    cfg: *mut RsmaConfig,
    snr_db: *const f64,
    len: usize,
) -> RsmaStatus {
    guard(|| {
        let handle = unsafe { cfg.as_mut() }.ok_or_else(|| null("config"))?;
        if snr_db.is_null() {
            return Err(null("snr_db"));
        }
        let values = unsafe { std::slice::from_raw_parts(snr_db, len) };
        handle.0 = handle.0.clone().with_snr_db(values)?;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsma_config_set_seed(cfg: *mut RsmaConfig, seed: u64) -> RsmaStatus {
    guard(|| {
        let handle = unsafe { cfg.as_mut() }.ok_or_else(|| null("config"))?;
        handle.0 = handle.0.clone().with_seed(seed);
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsma_config_set_trials(cfg: *mut RsmaConfig, trials: u64) -> RsmaStatus {
    guard(|| {
        let handle = unsafe { cfg.as_mut() }.ok_or_else(|| null("config"))?;
        if trials == 0 {
            return Err(Failure(RsmaStatus::InvalidArgument, "trial count must be at least 1".into()));
        }
        handle.0 = handle.0.clone().with_trials(trials);
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_config_epsilon(cfg: *const RsmaConfig, out: *mut f64) -> RsmaStatus {
    guard(|| unsafe { write(out, config_ref(cfg)?.epsilon(), "out") })
}

/// Set when the Jakes coefficient behind a mobility config was negative.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_config_epsilon_negative(cfg: *const RsmaConfig, out: *mut bool) -> RsmaStatus {
    guard(|| unsafe { write(out, config_ref(cfg)?.epsilon_negative(), "out") })
}

/// Releases a configuration. Null is ignored.
///
/// # Safety
/// `cfg` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rsma_config_free(cfg: *mut RsmaConfig) {
    if !cfg.is_null() {
        drop(unsafe { Box::from_raw(cfg) });
    }
}

/// Monte Carlo sum rate over exact SINRs.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_mc_sum_rate(cfg: *const RsmaConfig, out: *mut *mut RsmaRateReport) -> RsmaStatus {
    guard(|| {
        let report = mc_sum_rate(unsafe { config_ref(cfg)? })?;
        unsafe { write(out, Box::into_raw(Box::new(RsmaRateReport(report))), "out") }
    })
}

/// Gamma-surrogate private rates plus the Monte Carlo common rate.
/// `which` is `RSMA_APPROX_LEMMA1` or `RSMA_APPROX_BASELINE`.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_approx_sum_rate(
    cfg: *const RsmaConfig,
    which: i32,
    out: *mut *mut RsmaRateReport,
) -> RsmaStatus {
    guard(|| {
        let report = approx_sum_rate(unsafe { config_ref(cfg)? }, approximation(which)?)?;
        unsafe { write(out, Box::into_raw(Box::new(RsmaRateReport(report))), "out") }
    })
}

/// Private rate of user `k` (zero-based) for `X ~ Gamma(x)`.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_approx_private_rate(
    cfg: *const RsmaConfig,
    k: usize,
    x: RsmaGammaParams,
    out: *mut f64,
) -> RsmaStatus {
    guard(|| {
        let params = GammaParams::new(x.shape, x.scale)?;
        let rate = approx_private_rate(unsafe { config_ref(cfg)? }, k, &params)?;
        unsafe { write(out, rate, "out") }
    })
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_rate_report_sum_rate(report: *const RsmaRateReport, out: *mut f64) -> RsmaStatus {
    guard(|| unsafe { write(out, report_ref(report)?.sum_rate, "out") })
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_rate_report_common_rate(report: *const RsmaRateReport, out: *mut f64) -> RsmaStatus {
    guard(|| unsafe { write(out, report_ref(report)?.common_rate, "out") })
}

/// Standard error of the sum rate (of the common rate for approximations).
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_rate_report_sum_se(report: *const RsmaRateReport, out: *mut f64) -> RsmaStatus {
    guard(|| unsafe { write(out, report_ref(report)?.sum_se, "out") })
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_rate_report_num_users(report: *const RsmaRateReport, out: *mut usize) -> RsmaStatus {
    guard(|| unsafe { write(out, report_ref(report)?.private_rates.len(), "out") })
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_rate_report_private_rate(
    report: *const RsmaRateReport,
    k: usize,
    out: *mut f64,
) -> RsmaStatus {
    guard(|| {
        let r = unsafe { report_ref(report)? };
        let rate = *r.private_rates.get(k).ok_or_else(|| {
            Failure(RsmaStatus::OutOfRange, format!("user {k} out of range for K = {}", r.private_rates.len()))
        })?;
        unsafe { write(out, rate, "out") }
    })
}

/// Releases a rate report. Null is ignored.
///
/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rsma_rate_report_free(report: *mut RsmaRateReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Gamma surrogate for `X` including the cross-term variance.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_lemma1_params(
    nt: usize,
    k: usize,
    epsilon: f64,
    out: *mut RsmaGammaParams,
) -> RsmaStatus {
    guard(|| unsafe { write(out, to_c(lemma1_params(nt, k, epsilon)?), "out") })
}

/// Gamma surrogate for `X` without the cross-term variance.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_baseline_params(
    nt: usize,
    k: usize,
    epsilon: f64,
    out: *mut RsmaGammaParams,
) -> RsmaStatus {
    guard(|| unsafe { write(out, to_c(baseline_params(nt, k, epsilon)?), "out") })
}

/// Gamma law of `Z`; `RSMA_STATUS_DEGENERATE_Z` when `K = 1` or `epsilon = 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_z_params(k: usize, epsilon: f64, out: *mut RsmaGammaParams) -> RsmaStatus {
    guard(|| unsafe { write(out, to_c(z_params(k, epsilon)?), "out") })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_moment_report(nt: usize, k: usize, epsilon: f64, out: *mut RsmaMoments) -> RsmaStatus {
    guard(|| {
        let r = moment_report(nt, k, epsilon)?;
        let m = RsmaMoments {
            mean: r.mean,
            variance: r.variance,
            mu: r.mu,
            zeta1: r.zeta1,
            zeta2: r.zeta2,
            zeta3: r.zeta3,
            zeta4: r.zeta4,
            phi: r.phi,
        };
        unsafe { write(out, m, "out") }
    })
}

/// `E[log2(1 + s X)]` for `X ~ Gamma(params)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_gamma_log_expectation(params: RsmaGammaParams, s: f64, out: *mut f64) -> RsmaStatus {
    guard(|| {
        let p = GammaParams::new(params.shape, params.scale)?;
        unsafe { write(out, gamma_log_expectation(&p, s)?, "out") }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_bessel_j0(x: f64, out: *mut f64) -> RsmaStatus {
    guard(|| unsafe { write(out, bessel_j0(x)?, "out") })
}

/// Signed Jakes correlation `J0(2 pi f_D T)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsma_jakes_epsilon(
    velocity: f64,
    carrier_hz: f64,
    interval_s: f64,
    out: *mut f64,
) -> RsmaStatus {
    guard(|| {
        let mob = MobilityParams::new(velocity, carrier_hz, interval_s)?;
        unsafe { write(out, jakes_epsilon(&mob)?, "out") }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(rsma_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::SingularGram { pivot: 0.0 }), RsmaStatus::SingularGram);
        assert_eq!(status_of(&Error::DegenerateZ { k: 1, epsilon: 1.0 }), RsmaStatus::DegenerateZ);
        assert_eq!(status_of(&Error::Numerical("x".into())), RsmaStatus::Numerical);
        assert_eq!(status_of(&Error::EmptySamples), RsmaStatus::InvalidArgument);
    }

    #[test]
    fn panics_are_contained() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, RsmaStatus::Panic);
        assert_eq!(last_error(), "panic: boom");
    }

    #[test]
    fn null_out_pointer_is_reported() {
        let status = unsafe { rsma_bessel_j0(1.0, ptr::null_mut()) };
        assert_eq!(status, RsmaStatus::NullPointer);
        assert!(last_error().contains("out"));
    }

    #[test]
    fn version_is_nul_terminated() {
        let v = unsafe { CStr::from_ptr(rsma_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
