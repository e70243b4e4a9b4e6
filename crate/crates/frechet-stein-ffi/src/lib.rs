//! C ABI for the frechet-stein library.
//!
//! Conventions: constructors return an opaque handle through an out
//! pointer, every function reports an [`FsStatus`], results land in out
//! pointers, and each `*_new`/`fs_law_*` constructor has a matching
//! `*_free`. Handles are not thread-safe to mutate concurrently; treat an
//! `FsRng` as owned by one thread at a time. All panics are caught at the
//! boundary and surfaced as `FS_STATUS_PANIC`.

// Pointer contracts are the usual ones (valid or null handles, writable out
// pointers) and are restated per function where they deviate.
#![allow(clippy::missing_safety_doc)]

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use frechet_stein::rates::{
    delta_n_monte_carlo, delta_n_pareto_exact, delta_n_quadrature, density_sup_distance,
    kolmogorov_distance, local_limit_functional, remainder_estimate, DEFAULT_REMAINDER_PROBES,
};
use frechet_stein::stein::SteinSolution;
use frechet_stein::{
    build_report, Error, Frechet, MaxLaw, McConfig, NormedMaximum, NormingMode, QuadConfig,
    ReportConfig, RngStream, RootConfig,
};

/// Result of every call across the boundary.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NoBracket = 3,
    NonConvergence = 4,
    Panic = 5,
}

/// Opaque parent-law handle (Pareto, Burr, or Fréchet parent).
pub struct FsLaw(MaxLaw);

/// Opaque handle for the law of the renormalized maximum `W_n`.
pub struct FsNormedMax(NormedMaximum);

/// Opaque reproducible uniform random stream.
pub struct FsRng(RngStream);

/// Norming rule selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsNorming {
    /// Canonical closed-form scale (`n^{1/alpha}` where available).
    Paper = 0,
    /// Solve `-log F(a_n) = 1/n`.
    Quantile = 1,
}

/// Flat mirror of the per-n convergence record. Fields that do not apply
/// (or whose computation failed) are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FsRateReport {
    pub alpha: f64,
    pub n: u64,
    pub a_n: f64,
    pub delta_quad: f64,
    pub delta_mc: f64,
    pub delta_mc_stderr: f64,
    pub kolmogorov: f64,
    pub ks_argmax: f64,
    pub paper_bound: f64,
    pub density_sup: f64,
    pub r_n: f64,
}

fn status_of(err: &Error) -> FsStatus {
    match err {
        Error::InvalidInterval { .. } | Error::Domain(_) => FsStatus::InvalidArgument,
        Error::NoBracket { .. } => FsStatus::NoBracket,
        Error::NonConvergence { .. } => FsStatus::NonConvergence,
    }
}

fn guarded<F: FnOnce() -> FsStatus>(f: F) -> FsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(FsStatus::Panic)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FsStatus {
    if out.is_null() {
        return FsStatus::NullPointer;
    }
    unsafe { *out = value };
    FsStatus::Ok
}

unsafe fn new_law(law: Result<MaxLaw, Error>, out: *mut *mut FsLaw) -> FsStatus {
    if out.is_null() {
        return FsStatus::NullPointer;
    }
    match law {
        Ok(law) => {
            unsafe { *out = Box::into_raw(Box::new(FsLaw(law))) };
            FsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Pareto parent `F(x) = 1 - x^{-alpha}` on `x >= 1`.
#[no_mangle]
pub unsafe extern "C" fn fs_law_pareto(alpha: f64, out: *mut *mut FsLaw) -> FsStatus {
    guarded(|| unsafe { new_law(MaxLaw::pareto(alpha), out) })
}

/// Burr parent `F(x) = 1 - (1 + x^c)^{-k}`; tail index `c * k`.
#[no_mangle]
pub unsafe extern "C" fn fs_law_burr(c: f64, k: f64, out: *mut *mut FsLaw) -> FsStatus {
    guarded(|| unsafe { new_law(MaxLaw::burr(c, k), out) })
}

/// The Fréchet law as its own parent (max-stable control case).
#[no_mangle]
pub unsafe extern "C" fn fs_law_frechet(alpha: f64, out: *mut *mut FsLaw) -> FsStatus {
    guarded(|| unsafe { new_law(MaxLaw::frechet_parent(alpha), out) })
}

/// Release a law handle. A null pointer is a no-op.
#[no_mangle]
pub unsafe extern "C" fn fs_law_free(law: *mut FsLaw) {
    if !law.is_null() {
        drop(unsafe { Box::from_raw(law) });
    }
}

/// Tail index of the attracting Fréchet law.
#[no_mangle]
pub unsafe extern "C" fn fs_law_alpha(law: *const FsLaw, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(law) = (unsafe { law.as_ref() }) else { return FsStatus::NullPointer };
        unsafe { write_out(out, law.0.alpha()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fs_law_cdf(law: *const FsLaw, x: f64, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(law) = (unsafe { law.as_ref() }) else { return FsStatus::NullPointer };
        unsafe { write_out(out, law.0.cdf(x)) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fs_law_pdf(law: *const FsLaw, x: f64, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(law) = (unsafe { law.as_ref() }) else { return FsStatus::NullPointer };
        unsafe { write_out(out, law.0.pdf(x)) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fs_law_quantile(law: *const FsLaw, p: f64, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(law) = (unsafe { law.as_ref() }) else { return FsStatus::NullPointer };
        match law.0.quantile(p) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

/// Gnedenko's tail function `L(t) = -t^alpha log F(t)`.
#[no_mangle]
pub unsafe extern "C" fn fs_law_slow_variation(
    law: *const FsLaw,
    t: f64,
    out: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(law) = (unsafe { law.as_ref() }) else { return FsStatus::NullPointer };
        match law.0.slow_variation(t) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

fn norming_mode(mode: FsNorming) -> NormingMode {
    match mode {
        FsNorming::Paper => NormingMode::PaperExact,
        FsNorming::Quantile => NormingMode::QuantileRule,
    }
}

/// Build the law of `W_n = M_n / a_n` for the given parent and sample size.
#[no_mangle]
pub unsafe extern "C" fn fs_normed_new(
    law: *const FsLaw,
    n: u64,
    mode: FsNorming,
    out: *mut *mut FsNormedMax,
) -> FsStatus {
    guarded(|| {
        let Some(law) = (unsafe { law.as_ref() }) else { return FsStatus::NullPointer };
        if out.is_null() {
            return FsStatus::NullPointer;
        }
        match NormedMaximum::new(law.0, n, norming_mode(mode)) {
            Ok(nm) => {
                unsafe { *out = Box::into_raw(Box::new(FsNormedMax(nm))) };
                FsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a renormalized-maximum handle. A null pointer is a no-op.
#[no_mangle]
pub unsafe extern "C" fn fs_normed_free(nm: *mut FsNormedMax) {
    if !nm.is_null() {
        drop(unsafe { Box::from_raw(nm) });
    }
}

/// The scale constant `a_n`.
#[no_mangle]
pub unsafe extern "C" fn fs_normed_scale(nm: *const FsNormedMax, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        unsafe { write_out(out, nm.0.scale()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fs_normed_cdf(nm: *const FsNormedMax, x: f64, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        unsafe { write_out(out, nm.0.cdf(x)) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fs_normed_pdf(nm: *const FsNormedMax, x: f64, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        unsafe { write_out(out, nm.0.pdf(x)) }
    })
}

/// Score function `(log f_n)'` on the open support.
#[no_mangle]
pub unsafe extern "C" fn fs_normed_score(
    nm: *const FsNormedMax,
    x: f64,
    out: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        match nm.0.score(x) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fs_normed_quantile(
    nm: *const FsNormedMax,
    p: f64,
    out: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        match nm.0.quantile(p) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

/// One draw of `W_n` from the supplied stream.
#[no_mangle]
pub unsafe extern "C" fn fs_normed_sample(
    nm: *const FsNormedMax,
    rng: *mut FsRng,
    out: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        let Some(rng) = (unsafe { rng.as_mut() }) else { return FsStatus::NullPointer };
        unsafe { write_out(out, nm.0.sample(&mut rng.0)) }
    })
}

/// A reproducible uniform stream keyed by `(seed, stream_id)`.
#[no_mangle]
pub unsafe extern "C" fn fs_rng_new(seed: u64, stream_id: u64, out: *mut *mut FsRng) -> FsStatus {
    guarded(|| {
        if out.is_null() {
            return FsStatus::NullPointer;
        }
        unsafe { *out = Box::into_raw(Box::new(FsRng(RngStream::new(seed, stream_id)))) };
        FsStatus::Ok
    })
}

/// Release a stream handle. A null pointer is a no-op.
#[no_mangle]
pub unsafe extern "C" fn fs_rng_free(rng: *mut FsRng) {
    if !rng.is_null() {
        drop(unsafe { Box::from_raw(rng) });
    }
}

/// Uniform draw on the open interval (0, 1).
#[no_mangle]
pub unsafe extern "C" fn fs_rng_uniform(rng: *mut FsRng, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(rng) = (unsafe { rng.as_mut() }) else { return FsStatus::NullPointer };
        unsafe { write_out(out, rng.0.next_uniform()) }
    })
}

/// Fréchet target cdf `exp(-x^{-alpha})`.
#[no_mangle]
pub unsafe extern "C" fn fs_frechet_cdf(alpha: f64, x: f64, out: *mut f64) -> FsStatus {
    guarded(|| match Frechet::new(alpha) {
        Ok(law) => unsafe { write_out(out, law.cdf(x)) },
        Err(e) => status_of(&e),
    })
}

/// Fréchet target density.
#[no_mangle]
pub unsafe extern "C" fn fs_frechet_pdf(alpha: f64, x: f64, out: *mut f64) -> FsStatus {
    guarded(|| match Frechet::new(alpha) {
        Ok(law) => unsafe { write_out(out, law.pdf(x)) },
        Err(e) => status_of(&e),
    })
}

/// Fréchet target quantile `(-ln p)^{-1/alpha}`.
#[no_mangle]
pub unsafe extern "C" fn fs_frechet_quantile(alpha: f64, p: f64, out: *mut f64) -> FsStatus {
    guarded(|| match Frechet::new(alpha).and_then(|law| law.quantile(p)) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => status_of(&e),
    })
}

/// Value at `x` of the Stein-equation solution for the indicator of
/// `(-inf, t]`; bounded by `1/alpha` in absolute value.
#[no_mangle]
pub unsafe extern "C" fn fs_stein_indicator_value(
    alpha: f64,
    t: f64,
    x: f64,
    out: *mut f64,
) -> FsStatus {
    guarded(|| {
        let result = Frechet::new(alpha)
            .and_then(|law| SteinSolution::indicator(law, t))
            .and_then(|sol| sol.value(x));
        match result {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

/// The Stein bound `E|1 - W^alpha((alpha+1)/alpha + W rho_n(W)/alpha)|`
/// by adaptive quadrature at oracle tolerances.
#[no_mangle]
pub unsafe extern "C" fn fs_delta_quadrature(nm: *const FsNormedMax, out: *mut f64) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        match delta_n_quadrature(&nm.0, &QuadConfig::strict()) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

/// Closed form `2/(n-1) (1-1/n)^n` of the Stein bound for Pareto parents.
#[no_mangle]
pub unsafe extern "C" fn fs_delta_pareto_exact(n: u64, out: *mut f64) -> FsStatus {
    guarded(|| match delta_n_pareto_exact(n) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => status_of(&e),
    })
}

/// Monte Carlo estimate of the Stein bound with standard error; bitwise
/// reproducible for any worker count.
#[no_mangle]
pub unsafe extern "C" fn fs_delta_monte_carlo(
    nm: *const FsNormedMax,
    samples: u64,
    seed: u64,
    workers: u32,
    out_estimate: *mut f64,
    out_stderr: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        if out_estimate.is_null() || out_stderr.is_null() {
            return FsStatus::NullPointer;
        }
        let cfg = McConfig { samples, seed, workers: workers.max(1) as usize };
        let (est, se) = delta_n_monte_carlo(&nm.0, &cfg);
        unsafe {
            *out_estimate = est;
            *out_stderr = se;
        }
        FsStatus::Ok
    })
}

/// Kolmogorov distance between `W_n` and its Fréchet target, with argmax.
#[no_mangle]
pub unsafe extern "C" fn fs_kolmogorov_distance(
    nm: *const FsNormedMax,
    grid: usize,
    out_distance: *mut f64,
    out_argmax: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        if out_distance.is_null() || out_argmax.is_null() {
            return FsStatus::NullPointer;
        }
        match kolmogorov_distance(&nm.0, grid, &RootConfig::default()) {
            Ok((d, x)) => {
                unsafe {
                    *out_distance = d;
                    *out_argmax = x;
                }
                FsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Sup distance between the density of `W_n` and the Fréchet density.
#[no_mangle]
pub unsafe extern "C" fn fs_density_sup_distance(
    nm: *const FsNormedMax,
    grid: usize,
    out_distance: *mut f64,
    out_argmax: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        if out_distance.is_null() || out_argmax.is_null() {
            return FsStatus::NullPointer;
        }
        match density_sup_distance(&nm.0, grid) {
            Ok((d, x)) => {
                unsafe {
                    *out_distance = d;
                    *out_argmax = x;
                }
                FsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// The local-limit functional `E[phi_u(W_n)]` controlling density
/// convergence.
#[no_mangle]
pub unsafe extern "C" fn fs_local_limit_functional(
    nm: *const FsNormedMax,
    u: f64,
    out: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(nm) = (unsafe { nm.as_ref() }) else { return FsStatus::NullPointer };
        match local_limit_functional(&nm.0, u, &QuadConfig::default()) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

/// Slow-variation remainder surrogate at scale `a_n` with the default
/// probe multipliers.
#[no_mangle]
pub unsafe extern "C" fn fs_remainder_estimate(
    law: *const FsLaw,
    scale: f64,
    out: *mut f64,
) -> FsStatus {
    guarded(|| {
        let Some(law) = (unsafe { law.as_ref() }) else { return FsStatus::NullPointer };
        match remainder_estimate(&law.0, scale, &DEFAULT_REMAINDER_PROBES) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(e) => status_of(&e),
        }
    })
}

/// Run every rate quantity for one `(law, n)` and fill the flat report.
/// Failed sub-computations leave NaN in their fields; the call still
/// returns `FS_STATUS_OK` as long as the norming constant exists.
#[no_mangle]
pub unsafe extern "C" fn fs_rate_report(
    law: *const FsLaw,
    n: u64,
    mode: FsNorming,
    mc_samples: u64,
    mc_seed: u64,
    mc_workers: u32,
    out: *mut FsRateReport,
) -> FsStatus {
    guarded(|| {
        let Some(law) = (unsafe { law.as_ref() }) else { return FsStatus::NullPointer };
        if out.is_null() {
            return FsStatus::NullPointer;
        }
        let cfg = ReportConfig {
            mc: McConfig {
                samples: mc_samples,
                seed: mc_seed,
                workers: mc_workers.max(1) as usize,
            },
            ..ReportConfig::default()
        };
        match build_report(&law.0, n, norming_mode(mode), &cfg) {
            Ok(r) => {
                let flat = FsRateReport {
                    alpha: r.alpha,
                    n: r.n,
                    a_n: r.a_n,
                    delta_quad: r.delta_quad,
                    delta_mc: r.delta_mc,
                    delta_mc_stderr: r.delta_mc_stderr,
                    kolmogorov: r.kolmogorov,
                    ks_argmax: r.ks_argmax,
                    paper_bound: r.paper_bound.unwrap_or(f64::NAN),
                    density_sup: r.density_sup,
                    r_n: r.r_n,
                };
                unsafe { *out = flat };
                FsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Static name for a status code, for error messages on the C side.
#[no_mangle]
pub extern "C" fn fs_status_name(status: FsStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        FsStatus::Ok => b"ok\0",
        FsStatus::NullPointer => b"null pointer\0",
        FsStatus::InvalidArgument => b"invalid argument\0",
        FsStatus::NoBracket => b"no bracket\0",
        FsStatus::NonConvergence => b"non-convergence\0",
        FsStatus::Panic => b"panic\0",
    };
    name.as_ptr() as *const c_char
}
