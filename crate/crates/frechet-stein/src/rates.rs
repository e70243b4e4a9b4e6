//! Finite-n convergence quantities: the Stein bound on the distance between
//! `W_n` and the Fréchet target, exact sup-distances, the local-limit
//! functional, and the slow-variation remainder.

use std::thread;

use crate::error::{Error, Result};
use crate::frechet::Frechet;
use crate::laws::{MaxLaw, NormedMaximum};
use crate::numerics::{
    find_root, integrate, integrate_split, maximize_abs, QuadConfig, RngStream, RootConfig,
};

/// Probe multipliers for [`remainder_estimate`].
pub const DEFAULT_REMAINDER_PROBES: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

/// Monte Carlo sampling plan. Work is split into fixed-size batches keyed by
/// stream id, so estimates are bitwise identical for any worker count.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            samples: 1_000_000,
            seed: 0,
            workers: thread::available_parallelism().map(|p| p.get().min(8)).unwrap_or(1),
        }
    }
}

/// The Stein bound `E |1 - W_n^alpha ((alpha+1)/alpha + W_n rho_n(W_n)/alpha)|`
/// by adaptive quadrature.
///
/// The integrand's absolute value has kinks where the operator gap changes
/// sign; they are located on a probability grid, polished by root finding,
/// and the integral is split there so no panel straddles a kink.
pub fn delta_n_quadrature(nm: &NormedMaximum, cfg: &QuadConfig) -> Result<f64> {
    let (lo, _) = nm.support();
    let gap = |x: f64| nm.operator_gap_density(x);

    let mut points = vec![lo];
    points.extend(sign_change_points(nm, &gap, 256)?);
    points.push(f64::INFINITY);
    integrate_split(|x| gap(x).abs(), &points, cfg)
}

/// Roots of `f` between consecutive nodes of a probability-spaced grid.
fn sign_change_points<F: Fn(f64) -> f64>(
    nm: &NormedMaximum,
    f: &F,
    probes: usize,
) -> Result<Vec<f64>> {
    let root_cfg = RootConfig::default();
    let mut kinks = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=probes {
        let p = 1e-9 + (1.0 - 2e-9) * i as f64 / probes as f64;
        let x = nm.quantile(p)?;
        let v = f(x);
        if let Some((px, pv)) = prev {
            if pv != 0.0 && v != 0.0 && pv.signum() != v.signum() && px < x {
                let root = find_root(f, px, x, &root_cfg)?;
                if kinks.last().is_none_or(|&k: &f64| root > k) {
                    kinks.push(root);
                }
            }
        }
        prev = Some((x, v));
    }
    Ok(kinks)
}

/// Closed form of the Stein bound for Pareto parents with the canonical
/// scaling: `2/(n-1) (1 - 1/n)^n`, independent of the tail index.
pub fn delta_n_pareto_exact(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("closed form needs n >= 2 (got {n})")));
    }
    let nf = n as f64;
    Ok(2.0 / (nf - 1.0) * (nf * (-1.0 / nf).ln_1p()).exp())
}

const MC_BATCH: u64 = 4096;

/// Monte Carlo estimate of the Stein bound with its standard error.
///
/// Samples are drawn in batches of fixed size; batch `b` uses the stream
/// `(seed, b)`, workers pick up batches round-robin, and the reduction runs
/// in batch order, so the result does not depend on the worker count.
pub fn delta_n_monte_carlo(nm: &NormedMaximum, mc: &McConfig) -> (f64, f64) {
    let samples = mc.samples.max(1);
    let workers = mc.workers.max(1);
    let batches = samples.div_ceil(MC_BATCH);

    let batch_stats = |b: u64| -> (f64, f64) {
        let mut rng = RngStream::new(mc.seed, b);
        let quota = MC_BATCH.min(samples - b * MC_BATCH);
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..quota {
            // Open-interval uniforms keep draws interior; on the (measure
            // zero) event that rounding lands on the support edge, redraw.
            let mut g = f64::NAN;
            for _ in 0..100 {
                if let Ok(v) = nm.operator_gap(nm.sample(&mut rng)) {
                    g = v.abs();
                    break;
                }
            }
            if g.is_nan() {
                g = 0.0;
            }
            sum += g;
            sumsq += g * g;
        }
        (sum, sumsq)
    };

    let mut per_batch = vec![(0.0, 0.0); batches as usize];
    if workers == 1 {
        for (b, slot) in per_batch.iter_mut().enumerate() {
            *slot = batch_stats(b as u64);
        }
    } else {
        let collected: Vec<Vec<(usize, (f64, f64))>> = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let batch_stats = &batch_stats;
                    scope.spawn(move || {
                        (w as u64..batches)
                            .step_by(workers)
                            .map(|b| (b as usize, batch_stats(b)))
                            .collect()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for chunk in collected {
            for (b, stats) in chunk {
                per_batch[b] = stats;
            }
        }
    }

    // Compensated sums in batch order: deterministic for any worker count.
    let mut sum = 0.0;
    let mut sum_c = 0.0;
    let mut sumsq = 0.0;
    let mut sumsq_c = 0.0;
    for &(s, sq) in &per_batch {
        let y = s - sum_c;
        let t = sum + y;
        sum_c = (t - sum) - y;
        sum = t;
        let y = sq - sumsq_c;
        let t = sumsq + y;
        sumsq_c = (t - sumsq) - y;
        sumsq = t;
    }

    let nf = samples as f64;
    let mean = sum / nf;
    let var = ((sumsq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    (mean, (var / nf).sqrt())
}

/// Default probability window scanned by the sup-distance routines.
const SCAN_P_LO: f64 = 1e-12;
const SCAN_P_HI: f64 = 1.0 - 1e-10;

/// Kolmogorov distance between `W_n` and its Fréchet target, with the
/// location of the supremum.
///
/// The cdf difference is scanned on a grid uniform in target probability
/// (so points concentrate where mass lives), each local extremum refined by
/// golden-section search; the support edge of `W_n`, where the difference
/// has a kink, is checked explicitly.
pub fn kolmogorov_distance(
    nm: &NormedMaximum,
    grid: usize,
    cfg: &RootConfig,
) -> Result<(f64, f64)> {
    let target = Frechet::new(nm.alpha())?;
    let diff = |x: f64| nm.cdf(x) - target.cdf(x);
    sup_scan(nm, &target, &diff, grid, cfg)
}

/// Sup distance between the density of `W_n` and the Fréchet density, with
/// its location. Same scan strategy as [`kolmogorov_distance`].
pub fn density_sup_distance(nm: &NormedMaximum, grid: usize) -> Result<(f64, f64)> {
    let target = Frechet::new(nm.alpha())?;
    let diff = |x: f64| nm.pdf(x) - target.pdf(x);
    sup_scan(nm, &target, &diff, grid, &RootConfig::default())
}

fn sup_scan<F: Fn(f64) -> f64>(
    nm: &NormedMaximum,
    target: &Frechet,
    diff: &F,
    grid: usize,
    cfg: &RootConfig,
) -> Result<(f64, f64)> {
    let to_x = |p: f64| target.quantile(p).expect("p inside (0,1)");
    let (p_star, sup) = maximize_abs(|p| diff(to_x(p)), SCAN_P_LO, SCAN_P_HI, grid, cfg)?;
    let mut best = (sup, to_x(p_star));

    let edge = nm.support().0;
    if edge > 0.0 {
        for x in [edge, edge * (1.0 + 1e-9)] {
            let v = diff(x).abs();
            if v > best.0 {
                best = (v, x);
            }
        }
    }
    Ok(best)
}

/// The local-limit functional
/// `E[phi_u(W_n)] = phi_alpha(u)/alpha (∫_u^∞ e^{w^{-alpha}} f_n(w) dw - 1)`,
/// the quantity controlling uniform density convergence.
///
/// The exponential factor is folded into the density's log so the integrand
/// never overflows where it is integrable. Parents whose maxima put mass
/// near zero make the integral genuinely divergent for small `u`;
/// non-convergence then reports exactly that.
pub fn local_limit_functional(nm: &NormedMaximum, u: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::domain(format!("local limit functional needs u > 0, got {u}")));
    }
    let alpha = nm.alpha();
    let target = Frechet::new(alpha)?;
    let law = *nm.law();
    let n = nm.n() as f64;
    let a_n = nm.scale();
    let b_n = nm.shift();
    let lo = nm.support().0;

    let weighted_density = move |w: f64| {
        let y = a_n * w + b_n;
        let f = law.pdf(y);
        if f == 0.0 {
            0.0
        } else {
            n * a_n * f * (w.powf(-alpha) + (n - 1.0) * law.log_cdf(y)).exp()
        }
    };
    let integral = integrate(weighted_density, u.max(lo), f64::INFINITY, cfg)?;
    Ok(target.pdf(u) / alpha * (integral - 1.0))
}

/// Finite-probe surrogate for the slow-variation remainder: the largest
/// relative wobble `|L(a_n x) / L(a_n) - 1|` over the probe multipliers.
/// The true remainder is an asymptotic envelope; this is a measurable
/// stand-in evaluated at the norming scale.
pub fn remainder_estimate(law: &MaxLaw, a_n: f64, probes: &[f64]) -> Result<f64> {
    if probes.is_empty() {
        return Err(Error::domain("remainder estimate needs at least one probe"));
    }
    let (lo, _) = law.support();
    for &x in probes {
        if !(x > 0.0) {
            return Err(Error::domain(format!("probes must be positive (got {x})")));
        }
        if !(a_n * x > lo) {
            return Err(Error::domain(format!(
                "probe point {a_n} * {x} does not exceed the lower support {lo}"
            )));
        }
    }
    let base = law.slow_variation(a_n)?;
    let mut worst = 0.0f64;
    for &x in probes {
        worst = worst.max((law.slow_variation(a_n * x)? / base - 1.0).abs());
    }
    Ok(worst)
}

/// Least-squares slope of `ln y` against `ln x`; entries with nonpositive
/// coordinates are skipped.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = logs.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let var: f64 = logs.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum();
    cov / var
}
