//! Grid scan plus golden-section refinement for sup-norm computations.

use crate::error::{Error, Result};
use crate::numerics::RootConfig;

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

/// Maximize `|f|` on `[lo, hi]`.
///
/// Evaluates `|f|` on a uniform grid of `grid_points` points, then refines
/// around every local maximum (including the endpoints) by golden-section
/// search. Returns the best maximizer found and its value. The value is a
/// lower bound on `sup |f|`, tight whenever the grid separates the local
/// extrema of `f`. Callers that want a non-uniform scan compose `f` with
/// their own transform and map the returned abscissa back.
pub fn maximize_abs<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    grid_points: usize,
    cfg: &RootConfig,
) -> Result<(f64, f64)> {
    if !(lo < hi) || lo.is_infinite() || hi.is_infinite() {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if grid_points < 16 {
        return Err(Error::domain(format!(
            "maximize_abs needs at least 16 grid points (got {grid_points})"
        )));
    }
    let g = |x: f64| f(x).abs();
    let n = grid_points;
    let step = (hi - lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| if i == n - 1 { hi } else { lo + i as f64 * step }).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();

    let mut best_x = xs[0];
    let mut best_v = vs[0];
    for i in 0..n {
        if vs[i] > best_v {
            best_v = vs[i];
            best_x = xs[i];
        }
    }

    for i in 0..n {
        let left_le = i == 0 || vs[i - 1] <= vs[i];
        let right_le = i == n - 1 || vs[i + 1] <= vs[i];
        if !(left_le && right_le) {
            continue;
        }
        let a = xs[i.saturating_sub(1)];
        let b = xs[(i + 1).min(n - 1)];
        if a >= b {
            continue;
        }
        let (x, v) = golden_max(&g, a, b, cfg);
        if v > best_v {
            best_v = v;
            best_x = x;
        }
    }
    Ok((best_x, best_v))
}

/// Golden-section search for the maximum of `g` on `[a, b]`.
/// Returns the best point evaluated.
fn golden_max<G: Fn(f64) -> f64>(g: &G, mut a: f64, mut b: f64, cfg: &RootConfig) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    let mut best = if gc >= gd { (c, gc) } else { (d, gd) };

    for _ in 0..cfg.max_iter {
        let tol = cfg.x_tol.max(4.0 * f64::EPSILON * a.abs().max(b.abs()));
        if b - a <= tol {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
        let (x, v) = if gc >= gd { (c, gc) } else { (d, gd) };
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}
