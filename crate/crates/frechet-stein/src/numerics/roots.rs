//! Bracketed root finding (Brent's method with bisection fallback).

use crate::error::{Error, Result};

/// Tolerance and budget for [`find_root`] and the golden-section refinement
/// in [`super::optimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    /// Width of the enclosing bracket at which iteration stops.
    pub x_tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { x_tol: 1e-12, max_iter: 200 }
    }
}

impl RootConfig {
    fn validate(&self) -> Result<()> {
        if !(self.x_tol > 0.0) || self.max_iter == 0 {
            return Err(Error::domain(format!(
                "root config requires x_tol > 0 and max_iter >= 1 (got {self:?})"
            )));
        }
        Ok(())
    }
}

/// Find a root of `f` on `[lo, hi]`, which must bracket a sign change.
///
/// Uses Brent's method: inverse quadratic / secant steps guarded by
/// bisection, so the bracket always shrinks. Returns the best endpoint of a
/// bracket of width at most `x_tol` (widened by a few ulps for large
/// abscissae).
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &RootConfig) -> Result<f64> {
    cfg.validate()?;
    if !(lo < hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket { lo, hi, f_lo: fa, f_hi: fb });
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut bisected = true;

    for _ in 0..cfg.max_iter {
        let tol = cfg.x_tol.max(4.0 * f64::EPSILON * a.abs().max(b.abs()));
        if fb == 0.0 || (b - a).abs() <= tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            // Inverse quadratic interpolation.
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            // Secant step.
            b - fb * (b - a) / (fb - fa)
        };

        let low = 0.25 * (3.0 * a + b);
        let within = (low.min(b)..=low.max(b)).contains(&s);
        let step_ok = if bisected {
            (s - b).abs() < 0.5 * (b - c).abs() && (b - c).abs() > tol
        } else {
            (s - b).abs() < 0.5 * (c - d).abs() && (c - d).abs() > tol
        };
        if !within || !step_ok || !s.is_finite() {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }

        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }

    Err(Error::NonConvergence { estimate: b, error_bound: (b - a).abs() })
}
