//! The Fréchet target law: cdf `exp(-x^{-alpha})` on `x >= 0`.

use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadConfig, RngStream};

/// Fréchet distribution with shape index `alpha > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frechet {
    alpha: f64,
}

impl Frechet {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::domain(format!("Fréchet shape must be positive (got {alpha})")));
        }
        Ok(Frechet { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `exp(-x^{-alpha})` for `x > 0`, zero otherwise.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            (-x.powf(-self.alpha)).exp()
        }
    }

    /// `alpha x^{-alpha-1} exp(-x^{-alpha})` for `x > 0`, zero otherwise.
    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            self.alpha * x.powf(-self.alpha - 1.0) * (-x.powf(-self.alpha)).exp()
        }
    }

    /// `(-ln p)^{-1/alpha}` for `p` in (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!("quantile needs p in (0, 1), got {p}")));
        }
        Ok((-p.ln()).powf(-1.0 / self.alpha))
    }

    /// The median `(ln 2)^{-1/alpha}`.
    pub fn median(&self) -> f64 {
        std::f64::consts::LN_2.powf(-1.0 / self.alpha)
    }

    /// Inverse-transform draw.
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        // next_uniform is strictly inside (0, 1), so the quantile is finite.
        (-rng.next_uniform().ln()).powf(-1.0 / self.alpha)
    }

    /// `E h(G)` through the substitution `y = x^{-alpha}`, which turns the
    /// expectation into `∫_0^∞ h(y^{-1/alpha}) e^{-y} dy` and removes the
    /// essential singularity of the density at zero.
    pub fn expect<H: Fn(f64) -> f64>(&self, h: H, cfg: &QuadConfig) -> Result<f64> {
        let inv_alpha = 1.0 / self.alpha;
        integrate(move |y: f64| h(y.powf(-inv_alpha)) * (-y).exp(), 0.0, f64::INFINITY, cfg)
    }

    /// `E h(G)` by direct integration of `h * pdf` over `(0, inf)`.
    /// Slower and less robust than [`Frechet::expect`]; kept for
    /// cross-validation of the substituted route.
    pub fn expect_direct<H: Fn(f64) -> f64>(&self, h: H, cfg: &QuadConfig) -> Result<f64> {
        let law = *self;
        integrate(move |x: f64| h(x) * law.pdf(x), 0.0, f64::INFINITY, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const E_INV: f64 = 0.367_879_441_171_442_33;
    /// Gamma(2/3), the mean of the alpha = 3 law.
    const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_4;

    #[test]
    fn cdf_reference_points() {
        let f1 = Frechet::new(1.0).unwrap();
        assert!((f1.cdf(1.0) - E_INV).abs() < 1e-15);
        assert_eq!(f1.cdf(0.0), 0.0);
        assert_eq!(f1.cdf(-3.0), 0.0);
        let f2 = Frechet::new(2.0).unwrap();
        assert!((f2.cdf(1e12) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pdf_reference_points() {
        let f1 = Frechet::new(1.0).unwrap();
        assert!((f1.pdf(1.0) - E_INV).abs() < 1e-15);
        assert_eq!(f1.pdf(1e-12), 0.0); // essential singularity decays
        assert_eq!(f1.pdf(0.0), 0.0);
    }

    #[test]
    fn pdf_normalizes() {
        for alpha in [0.5, 1.0, 2.0, 3.0] {
            let law = Frechet::new(alpha).unwrap();
            let mass =
                integrate(|x| law.pdf(x), 0.0, f64::INFINITY, &QuadConfig::default()).unwrap();
            assert!((mass - 1.0).abs() < 1e-9, "alpha {alpha}: mass {mass}");
        }
    }

    #[test]
    fn quantile_reference_points() {
        let f1 = Frechet::new(1.0).unwrap();
        assert!((f1.quantile(E_INV).unwrap() - 1.0).abs() < 1e-15);
        // quantile(1/2) = 1/ln 2
        assert!((f1.quantile(0.5).unwrap() - std::f64::consts::LOG2_E).abs() < 1e-14);
        let f2 = Frechet::new(2.0).unwrap();
        assert!((f2.quantile(E_INV).unwrap() - 1.0).abs() < 1e-15);
        assert!(f1.quantile(0.0).is_err());
        assert!(f1.quantile(1.0).is_err());
    }

    #[test]
    fn pdf_is_derivative_of_cdf() {
        for alpha in [0.5, 1.0, 2.0] {
            let law = Frechet::new(alpha).unwrap();
            let mut x: f64 = 0.1;
            while x <= 20.0 {
                let h = 1e-5 * x.max(1.0);
                let fd = (law.cdf(x + h) - law.cdf(x - h)) / (2.0 * h);
                assert!(
                    (fd - law.pdf(x)).abs() < 1e-6,
                    "alpha {alpha} x {x}: fd {fd} pdf {}",
                    law.pdf(x)
                );
                x += 0.37;
            }
        }
    }

    #[test]
    fn expectation_reference_values() {
        let cfg = QuadConfig::default();
        let f1 = Frechet::new(1.0).unwrap();
        assert!((f1.expect(|_| 1.0, &cfg).unwrap() - 1.0).abs() < 1e-10);
        // E I(G <= t) = cdf(t)
        let t = 1.7;
        let p = f1.expect(|x| if x <= t { 1.0 } else { 0.0 }, &cfg).unwrap();
        assert!((p - f1.cdf(t)).abs() < 1e-9);
        // E G for alpha = 3 is Gamma(2/3)
        let f3 = Frechet::new(3.0).unwrap();
        let mean = f3.expect(|x| x, &cfg).unwrap();
        assert!((mean - GAMMA_TWO_THIRDS).abs() < 1e-9, "mean {mean}");
    }

    #[test]
    fn substituted_and_direct_expectations_agree() {
        let cfg = QuadConfig::default();
        for alpha in [0.7, 1.0, 2.5] {
            let law = Frechet::new(alpha).unwrap();
            let a = law.expect(|x| (-x).exp(), &cfg).unwrap();
            let b = law.expect_direct(|x| (-x).exp(), &cfg).unwrap();
            assert!((a - b).abs() < 1e-8, "alpha {alpha}: {a} vs {b}");
        }
    }

    #[test]
    fn indicator_expectation_matches_cdf_on_random_thresholds() {
        let cfg = QuadConfig::default();
        let mut rng = RngStream::new(5, 0);
        for _ in 0..50 {
            let alpha = 0.4 + 2.6 * rng.next_uniform();
            let t = 0.1 + 5.0 * rng.next_uniform();
            let law = Frechet::new(alpha).unwrap();
            let p = law.expect(|x| if x <= t { 1.0 } else { 0.0 }, &cfg).unwrap();
            assert!((p - law.cdf(t)).abs() < 1e-8, "alpha {alpha} t {t}");
        }
    }

    #[test]
    fn fixed_seed_draws_reproduce() {
        let law = Frechet::new(1.3).unwrap();
        let mut a = RngStream::new(9, 2);
        let mut b = RngStream::new(9, 2);
        for _ in 0..100 {
            assert_eq!(law.sample(&mut a).to_bits(), law.sample(&mut b).to_bits());
        }
    }

    #[test]
    fn empirical_cdf_within_dkw_band() {
        let law = Frechet::new(1.0).unwrap();
        let mut rng = RngStream::new(123, 0);
        let n = 100_000;
        let mut draws: Vec<f64> = (0..n).map(|_| law.sample(&mut rng)).collect();
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ks = 0.0f64;
        for (i, &x) in draws.iter().enumerate() {
            let p = law.cdf(x);
            ks = ks.max((p - i as f64 / n as f64).abs());
            ks = ks.max(((i + 1) as f64 / n as f64 - p).abs());
        }
        assert!(ks < 0.0061, "KS statistic {ks}");
    }

    #[test]
    fn sample_mean_alpha3_matches_gamma() {
        let law = Frechet::new(3.0).unwrap();
        let mut rng = RngStream::new(77, 0);
        let n = 100_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let x = law.sample(&mut rng);
            sum += x;
            sumsq += x * x;
        }
        let mean = sum / n as f64;
        let sd = ((sumsq - n as f64 * mean * mean) / (n as f64 - 1.0)).sqrt();
        let se = sd / (n as f64).sqrt();
        assert!(
            (mean - GAMMA_TWO_THIRDS).abs() < 3.0 * se,
            "mean {mean} vs {GAMMA_TWO_THIRDS} (se {se})"
        );
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(Frechet::new(0.0).is_err());
        assert!(Frechet::new(-1.0).is_err());
        assert!(Frechet::new(f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn cdf_is_monotone_and_bounded(
            alpha in 0.2f64..5.0,
            mut xs in proptest::collection::vec(-1.0f64..30.0, 2..40)
        ) {
            let law = Frechet::new(alpha).unwrap();
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut prev = 0.0;
            for x in xs {
                let p = law.cdf(x);
                prop_assert!((0.0..=1.0).contains(&p));
                prop_assert!(p >= prev);
                prev = p;
            }
        }

        #[test]
        fn quantile_inverts_cdf(alpha in 0.2f64..5.0, x in 0.05f64..50.0) {
            let law = Frechet::new(alpha).unwrap();
            // keep p away from 1, where cdf itself destroys the
            // information the round trip would need
            prop_assume!(x.powf(-alpha) > 1e-4);
            let p = law.cdf(x);
            prop_assume!(p > 1e-300);
            let back = law.quantile(p).unwrap();
            prop_assert!((back - x).abs() <= 1e-10 * x.max(1.0));
        }
    }
}
