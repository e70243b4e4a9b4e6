//! Stein calculus for the Fréchet law: the characterizing operator, the
//! Stein equation `h - E h(G) = T phi` and its inverse, and the analogous
//! operator for renormalized maxima.

use crate::error::{Error, Result};
use crate::frechet::Frechet;
use crate::laws::NormedMaximum;
use crate::numerics::{integrate, integrate_split, QuadConfig};

/// Apply the Fréchet Stein operator `phi'(x) x^{alpha+1} + alpha phi(x)`.
///
/// Characterizes the target: the expectation under the Fréchet law vanishes
/// for every differentiable `phi` with `phi(x) e^{-x^{-alpha}} -> 0` at both
/// ends of the half-line.
pub fn operator<P, D>(law: &Frechet, phi: P, dphi: D, x: f64) -> Result<f64>
where
    P: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if x <= 0.0 {
        return Err(Error::domain(format!("Stein operator needs x > 0, got {x}")));
    }
    let alpha = law.alpha();
    Ok(dphi(x) * x.powf(alpha + 1.0) + alpha * phi(x))
}

enum Kind {
    /// `h = I(. <= t)`; evaluated by closed form.
    Indicator { t: f64 },
    /// General integrable `h`; evaluated by quadrature.
    General { h: Box<dyn Fn(f64) -> f64 + Send + Sync> },
}

/// The solution `phi_h = T^{-1} h` of the Stein equation.
///
/// Two equivalent integral representations exist: one integrating from the
/// origin, one from infinity. Evaluation switches between them at a
/// configurable point (the Fréchet median by default): the lower form is
/// well conditioned toward zero, the upper form toward infinity. Both are
/// computed under the substitution `y = x^{-alpha}`, with the `e^{x^{-alpha}}`
/// prefactor folded into the integrand so nothing overflows.
pub struct SteinSolution {
    law: Frechet,
    kind: Kind,
    expected_h: f64,
    cfg: QuadConfig,
    switch_x: f64,
}

impl SteinSolution {
    /// Closed-form solution for the indicator `h = I(. <= t)`, `t > 0`.
    pub fn indicator(law: Frechet, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::domain(format!("indicator threshold must be positive, got {t}")));
        }
        let expected_h = law.cdf(t);
        Ok(SteinSolution {
            law,
            kind: Kind::Indicator { t },
            expected_h,
            cfg: QuadConfig::default(),
            switch_x: law.median(),
        })
    }

    /// Quadrature-backed solution for a general `h` with `E|h(G)| < inf`.
    pub fn solve<H>(law: Frechet, h: H, cfg: &QuadConfig) -> Result<Self>
    where
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let expected_h = law.expect(&h, cfg)?;
        Ok(SteinSolution {
            law,
            kind: Kind::General { h: Box::new(h) },
            expected_h,
            cfg: *cfg,
            switch_x: law.median(),
        })
    }

    /// Move the representation switch point away from the median.
    pub fn with_switch_point(mut self, x: f64) -> Self {
        self.switch_x = x;
        self
    }

    pub fn law(&self) -> &Frechet {
        &self.law
    }

    /// `E h(G)`, fixed at construction.
    pub fn expected_h(&self) -> f64 {
        self.expected_h
    }

    /// For the indicator kind, the exact sup norm `(1 - e^{-t^{-alpha}})/alpha`,
    /// which never exceeds `1/alpha`.
    pub fn sup_norm(&self) -> Option<f64> {
        match self.kind {
            Kind::Indicator { t } => {
                Some(-(-t.powf(-self.law.alpha())).exp_m1() / self.law.alpha())
            }
            Kind::General { .. } => None,
        }
    }

    fn h_at(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Indicator { t } => {
                if x <= *t {
                    1.0
                } else {
                    0.0
                }
            }
            Kind::General { h } => h(x),
        }
    }

    /// `phi_h(x)` for `x > 0`.
    pub fn value(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain(format!("phi_h is defined on x > 0, got {x}")));
        }
        match self.kind {
            Kind::Indicator { t } => {
                let alpha = self.law.alpha();
                if x <= t {
                    Ok(-(-t.powf(-alpha)).exp_m1() / alpha)
                } else {
                    Ok((-t.powf(-alpha)).exp() * x.powf(-alpha).exp_m1() / alpha)
                }
            }
            Kind::General { .. } => {
                if x <= self.switch_x {
                    self.value_lower_rep(x)
                } else {
                    self.value_upper_rep(x)
                }
            }
        }
    }

    /// For the indicator kind, where the transformed integrand jumps inside
    /// `(0, hi)`: split there so no quadrature panel straddles it.
    fn jump_aware_points(&self, jump: Option<f64>, hi: f64) -> Vec<f64> {
        let mut points = vec![0.0];
        if let Some(w) = jump {
            if w > 0.0 && w < hi {
                points.push(w);
            }
        }
        points.push(hi);
        points
    }

    /// The representation integrating `(h - E h) d Phi` from the origin,
    /// evaluated as `(1/alpha) ∫_0^∞ (h((v+w)^{-1/alpha}) - E h) e^{-w} dw`
    /// with `v = x^{-alpha}`. Well conditioned for small `x`.
    pub fn value_lower_rep(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain(format!("phi_h is defined on x > 0, got {x}")));
        }
        let alpha = self.law.alpha();
        let v = x.powf(-alpha);
        let eh = self.expected_h;
        let jump = match self.kind {
            Kind::Indicator { t } => Some(t.powf(-alpha) - v),
            Kind::General { .. } => None,
        };
        let inner = integrate_split(
            |w: f64| (self.h_at((v + w).powf(-1.0 / alpha)) - eh) * (-w).exp(),
            &self.jump_aware_points(jump, f64::INFINITY),
            &self.cfg,
        )?;
        Ok(inner / alpha)
    }

    /// The representation integrating `(E h - h) d Phi` from infinity,
    /// evaluated as `(1/alpha) ∫_0^v (E h - h((v-w)^{-1/alpha})) e^{w} dw`.
    /// Well conditioned for `x` past the median; the `e^w` factor caps at
    /// `e^v`, so keep `v = x^{-alpha}` moderate.
    pub fn value_upper_rep(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain(format!("phi_h is defined on x > 0, got {x}")));
        }
        let alpha = self.law.alpha();
        let v = x.powf(-alpha);
        if v == 0.0 {
            return Ok(0.0);
        }
        let eh = self.expected_h;
        let jump = match self.kind {
            Kind::Indicator { t } => Some(v - t.powf(-alpha)),
            Kind::General { .. } => None,
        };
        let inner = integrate_split(
            |w: f64| (eh - self.h_at((v - w).powf(-1.0 / alpha))) * w.exp(),
            &self.jump_aware_points(jump, v),
            &self.cfg,
        )?;
        Ok(inner / alpha)
    }
}

/// Residual of the integration-by-parts identity
/// `E[f(G) T phi(G)] = -E[G^{alpha+1} f'(G) phi(G)]`.
///
/// Both sides are computed by quadrature; the return value is LHS minus RHS
/// and should vanish for `phi` with the required decay and bounded `f`.
pub fn check_ibp<F, DF, P, DP>(
    law: &Frechet,
    f: F,
    df: DF,
    phi: P,
    dphi: DP,
    cfg: &QuadConfig,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
    DF: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
    DP: Fn(f64) -> f64,
{
    let alpha = law.alpha();
    let lhs = law.expect(|x| f(x) * (dphi(x) * x.powf(alpha + 1.0) + alpha * phi(x)), cfg)?;
    let rhs = -law.expect(|x| x.powf(alpha + 1.0) * df(x) * phi(x), cfg)?;
    Ok(lhs - rhs)
}

/// The Stein operator of `W_n`, driven by its score function.
#[derive(Clone, Copy)]
pub struct ScoreModel<'a> {
    normed: &'a NormedMaximum,
}

impl<'a> ScoreModel<'a> {
    pub fn new(normed: &'a NormedMaximum) -> Self {
        ScoreModel { normed }
    }

    pub fn alpha(&self) -> f64 {
        self.normed.alpha()
    }

    pub fn normed(&self) -> &NormedMaximum {
        self.normed
    }

    /// `T_n phi(x) = phi'(x) x^{alpha+1} + phi(x) x^alpha (alpha+1 + x rho_n(x))`.
    pub fn operator_n<P, D>(&self, phi: P, dphi: D, x: f64) -> Result<f64>
    where
        P: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        let rho = self.normed.score(x)?;
        let alpha = self.alpha();
        Ok(dphi(x) * x.powf(alpha + 1.0) + phi(x) * x.powf(alpha) * (alpha + 1.0 + x * rho))
    }

    /// `E[T_n phi(W_n)]` by quadrature. The integrand is assembled with the
    /// density derivative instead of the score so the support edge (where
    /// the score diverges but the density vanishes) stays finite.
    pub fn expect_operator_n<P, D>(&self, phi: P, dphi: D, cfg: &QuadConfig) -> Result<f64>
    where
        P: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        let alpha = self.alpha();
        let nm = self.normed;
        let (lo, _) = nm.support();
        integrate(
            |x: f64| {
                let f = nm.pdf(x);
                let df = nm.pdf_deriv(x);
                dphi(x) * x.powf(alpha + 1.0) * f
                    + phi(x) * x.powf(alpha) * ((alpha + 1.0) * f + x * df)
            },
            lo,
            f64::INFINITY,
            cfg,
        )
    }

    /// Right-hand side of the comparison identity:
    /// `alpha E[phi_h(W_n) (1 - W_n^alpha ((alpha+1)/alpha + W_n rho_n(W_n)/alpha))]`,
    /// which equals `E h(W_n) - E h(G)` whenever `phi_h` has the decay the
    /// operator pair requires.
    pub fn comparison_rhs(&self, sol: &SteinSolution, cfg: &QuadConfig) -> Result<f64> {
        let alpha = self.alpha();
        let nm = self.normed;
        let (lo, _) = nm.support();
        let integrand =
            |x: f64| alpha * sol.value(x).unwrap_or(f64::NAN) * nm.operator_gap_density(x);

        // The indicator solution has a kink at its threshold; keep panels
        // off it.
        let mut points = vec![lo];
        if let Kind::Indicator { t } = sol.kind {
            if t > lo {
                points.push(t);
            }
        }
        points.push(f64::INFINITY);
        integrate_split(integrand, &points, cfg)
    }
}
