//! Parent distributions with Fréchet-type tails and the law of the
//! renormalized maximum `W_n = (M_n - b_n) / a_n`.

use crate::error::{Error, Result};
use crate::numerics::{find_root, RngStream, RootConfig};

/// A parent distribution whose sample maxima converge to a Fréchet law.
///
/// Every analytic piece the bounds need is in closed form: cdf, log-cdf,
/// density, density derivative, quantile and inverse survival, support, and
/// the tail function `L(t) = -t^alpha log F(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaxLaw {
    /// `F(x) = 1 - x^{-alpha}` on `x >= 1`.
    Pareto { alpha: f64 },
    /// `F(x) = 1 - (1 + x^c)^{-k}` on `x > 0`; tail index `alpha = c k`.
    Burr { c: f64, k: f64 },
    /// The Fréchet law itself: max-stable, so `F(a_n x)^n` is exactly the
    /// target for `a_n = n^{1/alpha}`. The zero-remainder control case.
    FrechetParent { alpha: f64 },
}

/// How the scaling constant `a_n` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormingMode {
    /// The canonical closed-form constant: `a_n = n^{1/alpha}` for the
    /// Pareto and Fréchet parents. Burr has no closed form and falls back
    /// to the quantile rule.
    PaperExact,
    /// Solve `-log F(a_n) = 1/n` by bracketed root finding.
    QuantileRule,
}

impl MaxLaw {
    pub fn pareto(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::domain(format!("Pareto index must be positive (got {alpha})")));
        }
        Ok(MaxLaw::Pareto { alpha })
    }

    pub fn burr(c: f64, k: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 || !k.is_finite() || k <= 0.0 {
            return Err(Error::domain(format!(
                "Burr parameters must be positive (got c={c}, k={k})"
            )));
        }
        Ok(MaxLaw::Burr { c, k })
    }

    pub fn frechet_parent(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::domain(format!("Fréchet shape must be positive (got {alpha})")));
        }
        Ok(MaxLaw::FrechetParent { alpha })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MaxLaw::Pareto { .. } => "pareto",
            MaxLaw::Burr { .. } => "burr",
            MaxLaw::FrechetParent { .. } => "frechet",
        }
    }

    /// Tail index of the attracting Fréchet law.
    pub fn alpha(&self) -> f64 {
        match *self {
            MaxLaw::Pareto { alpha } => alpha,
            MaxLaw::Burr { c, k } => c * k,
            MaxLaw::FrechetParent { alpha } => alpha,
        }
    }

    /// Open interval on which the density is strictly positive.
    pub fn support(&self) -> (f64, f64) {
        match self {
            MaxLaw::Pareto { .. } => (1.0, f64::INFINITY),
            MaxLaw::Burr { .. } | MaxLaw::FrechetParent { .. } => (0.0, f64::INFINITY),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            MaxLaw::Pareto { alpha } => {
                if x <= 1.0 {
                    0.0
                } else {
                    1.0 - x.powf(-alpha)
                }
            }
            MaxLaw::Burr { c, k } => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 - (1.0 + x.powf(c)).powf(-k)
                }
            }
            MaxLaw::FrechetParent { alpha } => {
                if x <= 0.0 {
                    0.0
                } else {
                    (-x.powf(-alpha)).exp()
                }
            }
        }
    }

    /// `ln F(x)`, `-inf` where the cdf vanishes. Computed through `ln_1p`
    /// so that `F(x)^n = exp(n log F)` keeps full precision deep in the
    /// upper tail, where `1 - F` is tiny.
    pub fn log_cdf(&self, x: f64) -> f64 {
        match *self {
            MaxLaw::Pareto { alpha } => {
                if x <= 1.0 {
                    f64::NEG_INFINITY
                } else {
                    (-x.powf(-alpha)).ln_1p()
                }
            }
            MaxLaw::Burr { c, k } => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    (-(1.0 + x.powf(c)).powf(-k)).ln_1p()
                }
            }
            MaxLaw::FrechetParent { alpha } => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    -x.powf(-alpha)
                }
            }
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            MaxLaw::Pareto { alpha } => {
                if x <= 1.0 {
                    0.0
                } else {
                    alpha * x.powf(-alpha - 1.0)
                }
            }
            MaxLaw::Burr { c, k } => {
                if x <= 0.0 {
                    0.0
                } else {
                    c * k * x.powf(c - 1.0) * (1.0 + x.powf(c)).powf(-k - 1.0)
                }
            }
            MaxLaw::FrechetParent { alpha } => {
                if x <= 0.0 {
                    0.0
                } else {
                    alpha * x.powf(-alpha - 1.0) * (-x.powf(-alpha)).exp()
                }
            }
        }
    }

    /// Derivative of the density on the interior of the support, zero outside.
    pub fn pdf_deriv(&self, x: f64) -> f64 {
        match *self {
            MaxLaw::Pareto { alpha } => {
                if x <= 1.0 {
                    0.0
                } else {
                    -alpha * (alpha + 1.0) * x.powf(-alpha - 2.0)
                }
            }
            MaxLaw::Burr { c, k } => {
                if x <= 0.0 {
                    0.0
                } else {
                    let xc = x.powf(c);
                    c * k
                        * x.powf(c - 2.0)
                        * (1.0 + xc).powf(-k - 2.0)
                        * ((c - 1.0) - (1.0 + c * k) * xc)
                }
            }
            MaxLaw::FrechetParent { alpha } => {
                if x <= 0.0 {
                    0.0
                } else {
                    alpha
                        * x.powf(-alpha - 2.0)
                        * (-x.powf(-alpha)).exp()
                        * (alpha * x.powf(-alpha) - (alpha + 1.0))
                }
            }
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!("quantile needs p in (0, 1), got {p}")));
        }
        Ok(match *self {
            MaxLaw::Pareto { alpha } => (1.0 - p).powf(-1.0 / alpha),
            MaxLaw::Burr { c, k } => ((1.0 - p).powf(-1.0 / k) - 1.0).powf(1.0 / c),
            MaxLaw::FrechetParent { alpha } => (-p.ln()).powf(-1.0 / alpha),
        })
    }

    /// Inverse survival function: the `x` with `1 - F(x) = q`. Preferred
    /// over `quantile(1 - q)` when `q` is tiny.
    pub fn survival_quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(format!("survival_quantile needs q in (0, 1), got {q}")));
        }
        Ok(match *self {
            MaxLaw::Pareto { alpha } => q.powf(-1.0 / alpha),
            MaxLaw::Burr { c, k } => (q.powf(-1.0 / k) - 1.0).powf(1.0 / c),
            MaxLaw::FrechetParent { alpha } => (-(-q).ln_1p()).powf(-1.0 / alpha),
        })
    }

    /// Gnedenko's tail function `L(t) = -t^alpha log F(t)`; slowly varying
    /// at infinity exactly when the law lies in the Fréchet domain of
    /// attraction with index `alpha`.
    pub fn slow_variation(&self, t: f64) -> Result<f64> {
        // The Fréchet parent collapses to L = 1 identically.
        if let MaxLaw::FrechetParent { .. } = self {
            return if t > 0.0 {
                Ok(1.0)
            } else {
                Err(Error::domain(format!("L(t) needs t > 0 (got {t})")))
            };
        }
        let log_f = self.log_cdf(t);
        if !log_f.is_finite() {
            return Err(Error::domain(format!("L(t) undefined at t = {t}: F(t) vanishes there")));
        }
        Ok(-t.powf(self.alpha()) * log_f)
    }
}

/// Law of `W_n = (M_n - b_n) / a_n` for a given parent and sample size.
///
/// The cdf is `F(a_n x + b_n)^n`, the density
/// `n a_n f(a_n x + b_n) F(a_n x + b_n)^{n-1}`. All shipped laws use
/// `b_n = 0`; the field exists so shifted user laws stay expressible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormedMaximum {
    law: MaxLaw,
    n: u64,
    a_n: f64,
    b_n: f64,
    mode: NormingMode,
}

impl NormedMaximum {
    /// Build the renormalized-maximum law, resolving `a_n` per `mode`.
    pub fn new(law: MaxLaw, n: u64, mode: NormingMode) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("sample size must be at least 2 (got {n})")));
        }
        let a_n = match (mode, law) {
            (NormingMode::PaperExact, MaxLaw::Pareto { alpha })
            | (NormingMode::PaperExact, MaxLaw::FrechetParent { alpha }) => {
                (n as f64).powf(1.0 / alpha)
            }
            // Burr has no closed-form canonical constant; use the quantile rule.
            (NormingMode::PaperExact, MaxLaw::Burr { .. }) => quantile_rule_scale(&law, n)?,
            (NormingMode::QuantileRule, _) => quantile_rule_scale(&law, n)?,
        };
        Ok(NormedMaximum { law, n, a_n, b_n: 0.0, mode })
    }

    pub fn law(&self) -> &MaxLaw {
        &self.law
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn scale(&self) -> f64 {
        self.a_n
    }

    pub fn shift(&self) -> f64 {
        self.b_n
    }

    pub fn mode(&self) -> NormingMode {
        self.mode
    }

    pub fn alpha(&self) -> f64 {
        self.law.alpha()
    }

    /// Open support of `W_n`.
    pub fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.law.support();
        ((lo - self.b_n) / self.a_n, if hi.is_infinite() { hi } else { (hi - self.b_n) / self.a_n })
    }

    fn parent_point(&self, x: f64) -> f64 {
        self.a_n * x + self.b_n
    }

    /// `F(a_n x + b_n)^n`, clamped to `[0, 1]`.
    pub fn cdf(&self, x: f64) -> f64 {
        let y = self.parent_point(x);
        let log_f = self.law.log_cdf(y);
        if log_f == f64::NEG_INFINITY {
            return 0.0;
        }
        (self.n as f64 * log_f).exp().clamp(0.0, 1.0)
    }

    /// Density of `W_n`, zero outside the support.
    pub fn pdf(&self, x: f64) -> f64 {
        let y = self.parent_point(x);
        let f = self.law.pdf(y);
        if f == 0.0 {
            return 0.0;
        }
        let log_f = self.law.log_cdf(y);
        self.n as f64 * self.a_n * f * ((self.n - 1) as f64 * log_f).exp()
    }

    /// Derivative of the density of `W_n`. Assembled as
    /// `n a_n^2 F^{n-2} ((n-1) f^2 + f' F)`, which stays finite at the
    /// support edge where the score blows up.
    pub fn pdf_deriv(&self, x: f64) -> f64 {
        let y = self.parent_point(x);
        let f = self.law.pdf(y);
        if f == 0.0 {
            return 0.0;
        }
        let log_f = self.law.log_cdf(y);
        let cdf = log_f.exp();
        let n = self.n as f64;
        n * self.a_n
            * self.a_n
            * ((n - 2.0) * log_f).exp()
            * ((n - 1.0) * f * f + self.law.pdf_deriv(y) * cdf)
    }

    /// Score `(log f_n)'(x) = a_n ((n-1) f/F + f'/f)` at `a_n x + b_n`.
    pub fn score(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return Err(Error::domain(format!(
                "score needs x in the open support ({lo}, {hi}), got {x}"
            )));
        }
        let y = self.parent_point(x);
        let f = self.law.pdf(y);
        let cdf = self.law.cdf(y);
        if f <= 0.0 || cdf <= 0.0 {
            return Err(Error::domain(format!("score undefined at x = {x}: density vanishes")));
        }
        Ok(self.a_n * ((self.n - 1) as f64 * f / cdf + self.law.pdf_deriv(y) / f))
    }

    /// `1 - x^alpha ((alpha+1)/alpha + x rho_n(x)/alpha)`: the gap between
    /// the Fréchet Stein operator and the W_n operator, per unit test
    /// function. Its absolute expectation under `f_n` is the Stein bound.
    pub fn operator_gap(&self, x: f64) -> Result<f64> {
        let rho = self.score(x)?;
        let alpha = self.alpha();
        Ok(1.0 - x.powf(alpha) * ((alpha + 1.0) / alpha + x * rho / alpha))
    }

    /// `operator_gap(x) * pdf(x)` assembled without dividing by the
    /// density, so it stays finite right up to the support edge (where the
    /// score alone diverges). Zero outside the support.
    pub fn operator_gap_density(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return 0.0;
        }
        let alpha = self.alpha();
        let f = self.pdf(x);
        let df = self.pdf_deriv(x);
        f - x.powf(alpha) * ((alpha + 1.0) / alpha) * f - x.powf(alpha + 1.0) * df / alpha
    }

    /// Quantile of `W_n`: `F_n(x) = p` solved through the parent's inverse
    /// survival function for tail accuracy.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!("quantile needs p in (0, 1), got {p}")));
        }
        let q = -(p.ln() / self.n as f64).exp_m1(); // 1 - p^{1/n}
        Ok((self.law.survival_quantile(q)? - self.b_n) / self.a_n)
    }

    /// One draw of `W_n` via `F_{M_n} = F^n`: the maximum of `n` parent
    /// variables is `quantile(U^{1/n})` for a single uniform `U`.
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let u = rng.next_uniform();
        let q = -(u.ln() / self.n as f64).exp_m1();
        let x = self.law.survival_quantile(q).expect("q in (0,1) by construction");
        (x - self.b_n) / self.a_n
    }
}

/// Solve `-log F(a) = 1/n` for the scale constant, growing the bracket
/// geometrically from the lower support endpoint.
fn quantile_rule_scale(law: &MaxLaw, n: u64) -> Result<f64> {
    let (lo_support, _) = law.support();
    let target = 1.0 / n as f64;
    let g = |a: f64| -law.log_cdf(a) - target;

    let mut step = 1.0;
    let mut lo = lo_support + 1e-8 * lo_support.abs().max(1.0);
    let mut hi = lo_support + step;
    let mut doublings = 0;
    while g(hi) > 0.0 {
        doublings += 1;
        if doublings > 200 {
            return Err(Error::NoBracket { lo, hi, f_lo: g(lo), f_hi: g(hi) });
        }
        lo = hi;
        step *= 2.0;
        hi = lo_support + step;
    }
    // g(lo) must be finite and positive for the solver; near the support
    // edge F can round to zero, so step inward if needed.
    while !g(lo).is_finite() || g(lo) <= 0.0 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
    }
    find_root(g, lo, hi, &RootConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frechet::Frechet;
    use crate::numerics::{integrate, QuadConfig};

    #[test]
    fn pareto_closed_forms() {
        let law = MaxLaw::pareto(1.0).unwrap();
        assert!((law.cdf(2.0) - 0.5).abs() < 1e-15);
        assert!((law.quantile(0.5).unwrap() - 2.0).abs() < 1e-13);
        let law2 = MaxLaw::pareto(2.0).unwrap();
        assert!((law2.pdf(1.0 + 1e-14) - 2.0).abs() < 1e-10);
        assert!(MaxLaw::pareto(0.0).is_err());
        assert!(MaxLaw::pareto(-2.0).is_err());
    }

    #[test]
    fn burr_closed_forms() {
        let law = MaxLaw::burr(1.0, 1.0).unwrap();
        assert!((law.cdf(1.0) - 0.5).abs() < 1e-15);
        assert!((MaxLaw::burr(2.0, 1.0).unwrap().alpha() - 2.0).abs() < 1e-15);
        let law12 = MaxLaw::burr(1.0, 2.0).unwrap();
        assert!((law12.cdf(3.0) - 0.9375).abs() < 1e-15);
        assert!(MaxLaw::burr(0.0, 1.0).is_err());
        assert!(MaxLaw::burr(1.0, -1.0).is_err());
    }

    #[test]
    fn densities_normalize_and_differentiate() {
        let cfg = QuadConfig::default();
        for law in [
            MaxLaw::pareto(0.5).unwrap(),
            MaxLaw::pareto(2.0).unwrap(),
            MaxLaw::burr(1.0, 1.0).unwrap(),
            MaxLaw::burr(2.0, 1.5).unwrap(),
            MaxLaw::frechet_parent(1.0).unwrap(),
        ] {
            let (lo, _) = law.support();
            let mass = integrate(|x| law.pdf(x), lo, f64::INFINITY, &cfg).unwrap();
            assert!((mass - 1.0).abs() < 1e-8, "{}: mass {mass}", law.name());

            // cdf' = pdf and pdf' matches a central difference.
            let mut x = lo + 0.25;
            while x < lo + 8.0 {
                let h = 1e-5 * x.max(1.0);
                let cdf_fd = (law.cdf(x + h) - law.cdf(x - h)) / (2.0 * h);
                assert!((cdf_fd - law.pdf(x)).abs() < 1e-6, "{} x={x}", law.name());
                let pdf_fd = (law.pdf(x + h) - law.pdf(x - h)) / (2.0 * h);
                assert!((pdf_fd - law.pdf_deriv(x)).abs() < 1e-6, "{} x={x}", law.name());
                x += 0.5;
            }
        }
    }

    #[test]
    fn slow_variation_values() {
        let frechet = MaxLaw::frechet_parent(1.5).unwrap();
        for t in [0.3, 1.0, 7.0, 1e9] {
            assert_eq!(frechet.slow_variation(t).unwrap(), 1.0);
        }
        let pareto = MaxLaw::pareto(1.0).unwrap();
        let l2 = pareto.slow_variation(2.0).unwrap();
        assert!((l2 - 2.0 * std::f64::consts::LN_2).abs() < 1e-14);
        // L(t) = 1 + t^{-alpha}/2 + O(t^{-2 alpha})
        let l = pareto.slow_variation(1e6).unwrap();
        assert!((l - 1.0 - 5e-7).abs() < 1e-12, "L {l}");
        assert!(pareto.slow_variation(0.5).is_err());
    }

    #[test]
    fn norming_constants() {
        let nm =
            NormedMaximum::new(MaxLaw::pareto(2.0).unwrap(), 100, NormingMode::PaperExact).unwrap();
        assert!((nm.scale() - 10.0).abs() < 1e-12);

        let nm =
            NormedMaximum::new(MaxLaw::pareto(1.0).unwrap(), 2, NormingMode::QuantileRule).unwrap();
        let exact = 1.0 / (1.0 - (-0.5f64).exp()); // 2.5414940825367984
        assert!((nm.scale() - exact).abs() < 1e-10, "a_2 {}", nm.scale());

        let nm =
            NormedMaximum::new(MaxLaw::frechet_parent(1.0).unwrap(), 5, NormingMode::QuantileRule)
                .unwrap();
        assert!((nm.scale() - 5.0).abs() < 1e-9);

        assert!(
            NormedMaximum::new(MaxLaw::pareto(1.0).unwrap(), 1, NormingMode::PaperExact).is_err()
        );
    }

    #[test]
    fn quantile_rule_satisfies_defining_equation() {
        for law in [
            MaxLaw::pareto(0.5).unwrap(),
            MaxLaw::burr(1.0, 1.0).unwrap(),
            MaxLaw::burr(3.0, 2.0).unwrap(),
        ] {
            for n in [2u64, 17, 400] {
                let nm = NormedMaximum::new(law, n, NormingMode::QuantileRule).unwrap();
                let resid = -law.log_cdf(nm.scale()) - 1.0 / n as f64;
                assert!(resid.abs() < 1e-10, "{} n={n}: residual {resid}", law.name());
            }
        }
    }

    #[test]
    fn wn_cdf_pareto_example() {
        let nm =
            NormedMaximum::new(MaxLaw::pareto(1.0).unwrap(), 2, NormingMode::PaperExact).unwrap();
        assert!((nm.cdf(1.0) - 0.25).abs() < 1e-14);
        assert_eq!(nm.cdf(0.3), 0.0); // below the support of W_2
        assert!((nm.cdf(1e9) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn wn_pdf_matches_pareto_closed_form() {
        let alpha = 1.0;
        let nm =
            NormedMaximum::new(MaxLaw::pareto(alpha).unwrap(), 2, NormingMode::PaperExact).unwrap();
        assert!((nm.pdf(1.0) - 0.5).abs() < 1e-14);

        let mut rng = RngStream::new(3, 0);
        for &(alpha, n) in &[(0.5, 3u64), (1.0, 10), (2.0, 50)] {
            let nm = NormedMaximum::new(MaxLaw::pareto(alpha).unwrap(), n, NormingMode::PaperExact)
                .unwrap();
            for _ in 0..50 {
                let x = nm.support().0 + 6.0 * rng.next_uniform();
                let closed = if x.powf(-alpha) / n as f64 >= 1.0 {
                    0.0
                } else {
                    alpha
                        * x.powf(-alpha - 1.0)
                        * (1.0 - x.powf(-alpha) / n as f64).powi(n as i32 - 1)
                };
                assert!(
                    (nm.pdf(x) - closed).abs() <= 1e-12 * closed.max(1.0),
                    "alpha={alpha} n={n} x={x}: {} vs {closed}",
                    nm.pdf(x)
                );
            }
        }
    }

    #[test]
    fn wn_pdf_normalizes_and_integrates_to_cdf() {
        let cfg = QuadConfig::default();
        let mut rng = RngStream::new(8, 1);
        for law in [MaxLaw::pareto(1.0).unwrap(), MaxLaw::burr(1.0, 1.0).unwrap()] {
            for n in [2u64, 10] {
                let nm = NormedMaximum::new(law, n, NormingMode::PaperExact).unwrap();
                let (lo, _) = nm.support();
                let mass = integrate(|x| nm.pdf(x), lo, f64::INFINITY, &cfg).unwrap();
                assert!((mass - 1.0).abs() < 1e-8, "{} n={n} mass {mass}", law.name());
                for _ in 0..20 {
                    let x = lo + 8.0 * rng.next_uniform();
                    let by_quad = integrate(|s| nm.pdf(s), lo, x, &cfg).unwrap();
                    assert!(
                        (by_quad - nm.cdf(x)).abs() < 1e-8,
                        "{} n={n} x={x}: {by_quad} vs {}",
                        law.name(),
                        nm.cdf(x)
                    );
                }
            }
        }
    }

    #[test]
    fn score_examples_and_finite_differences() {
        let nm =
            NormedMaximum::new(MaxLaw::pareto(1.0).unwrap(), 2, NormingMode::PaperExact).unwrap();
        assert!((nm.score(1.0).unwrap() - (-1.0)).abs() < 1e-12);

        // Example closed form: rho_n(x) = -(alpha+1)/x + ((n-1)/n) alpha x^{-alpha-1} (1 - x^{-alpha}/n)^{-1}
        let mut rng = RngStream::new(21, 0);
        for &(alpha, n) in &[(0.5, 4u64), (1.0, 10), (2.0, 100)] {
            let nm = NormedMaximum::new(MaxLaw::pareto(alpha).unwrap(), n, NormingMode::PaperExact)
                .unwrap();
            for _ in 0..30 {
                let x = nm.support().0 * (1.0 + 0.05) + 5.0 * rng.next_uniform();
                let nf = n as f64;
                let closed = -(alpha + 1.0) / x
                    + (nf - 1.0) / nf * alpha * x.powf(-alpha - 1.0) / (1.0 - x.powf(-alpha) / nf);
                let got = nm.score(x).unwrap();
                assert!(
                    (got - closed).abs() <= 1e-9 * closed.abs().max(1.0),
                    "alpha={alpha} n={n} x={x}: {got} vs {closed}"
                );
                // matches d/dx log f_n
                let h = 1e-6 * x.max(1.0);
                let fd = (nm.pdf(x + h).ln() - nm.pdf(x - h).ln()) / (2.0 * h);
                assert!((got - fd).abs() < 1e-5 * got.abs().max(1.0), "fd {fd} vs {got}");
            }
        }

        // outside the support
        assert!(nm.score(0.4).is_err());
    }

    #[test]
    fn frechet_parent_score_is_free_of_n() {
        let alpha = 1.3;
        let law = MaxLaw::frechet_parent(alpha).unwrap();
        for n in [2u64, 7, 50] {
            let nm = NormedMaximum::new(law, n, NormingMode::PaperExact).unwrap();
            for x in [0.4f64, 1.0, 2.5, 9.0] {
                let expected = alpha * x.powf(-alpha - 1.0) - (alpha + 1.0) / x;
                let got = nm.score(x).unwrap();
                assert!(
                    (got - expected).abs() < 1e-9 * expected.abs().max(1.0),
                    "n={n} x={x}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn frechet_parent_is_exactly_stable() {
        for n in [2u64, 7, 100] {
            let nm = NormedMaximum::new(
                MaxLaw::frechet_parent(1.0).unwrap(),
                n,
                NormingMode::PaperExact,
            )
            .unwrap();
            let target = Frechet::new(1.0).unwrap();
            let mut worst = 0.0f64;
            for i in 1..400 {
                let x = i as f64 * 0.05;
                worst = worst.max((nm.cdf(x) - target.cdf(x)).abs());
            }
            assert!(worst < 1e-14, "n={n}: sup {worst}");
        }
    }

    #[test]
    fn sampling_respects_support_and_dkw() {
        let nm =
            NormedMaximum::new(MaxLaw::pareto(1.0).unwrap(), 10, NormingMode::PaperExact).unwrap();
        let mut rng = RngStream::new(99, 0);
        let n = 100_000;
        let lo = nm.support().0;
        let mut draws: Vec<f64> = (0..n).map(|_| nm.sample(&mut rng)).collect();
        assert!(draws.iter().all(|&x| x >= lo));
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ks = 0.0f64;
        for (i, &x) in draws.iter().enumerate() {
            let p = nm.cdf(x);
            ks = ks.max((p - i as f64 / n as f64).abs());
            ks = ks.max(((i + 1) as f64 / n as f64 - p).abs());
        }
        assert!(ks < 0.0061, "KS {ks}");

        // determinism
        let mut r1 = RngStream::new(4, 4);
        let mut r2 = RngStream::new(4, 4);
        for _ in 0..50 {
            assert_eq!(nm.sample(&mut r1).to_bits(), nm.sample(&mut r2).to_bits());
        }
    }

    #[test]
    fn wn_quantile_inverts_cdf() {
        let mut rng = RngStream::new(31, 0);
        for law in [MaxLaw::pareto(1.5).unwrap(), MaxLaw::burr(2.0, 1.0).unwrap()] {
            let nm = NormedMaximum::new(law, 25, NormingMode::PaperExact).unwrap();
            for _ in 0..40 {
                let p = rng.next_uniform();
                let x = nm.quantile(p).unwrap();
                assert!((nm.cdf(x) - p).abs() < 1e-11, "{} p={p}", law.name());
            }
        }
    }
}
