//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantity next to its pinned tolerance. Run with
//! `cargo test --test acceptance -- --nocapture` to see the table.

use std::sync::OnceLock;

use frechet_stein::checks::{run_identity_checks, CheckConfig, CheckOutcome};
use frechet_stein::numerics::RootConfig;
use frechet_stein::rates::{
    delta_n_monte_carlo, delta_n_pareto_exact, delta_n_quadrature, density_sup_distance,
    kolmogorov_distance, local_limit_functional, log_log_slope, remainder_estimate,
    DEFAULT_REMAINDER_PROBES,
};
use frechet_stein::{Frechet, MaxLaw, McConfig, NormedMaximum, NormingMode, QuadConfig};

const TWO_OVER_E: f64 = 0.735_758_882_342_884_6;

fn pareto(alpha: f64, n: u64) -> NormedMaximum {
    NormedMaximum::new(MaxLaw::pareto(alpha).unwrap(), n, NormingMode::PaperExact).unwrap()
}

fn identity_outcomes() -> &'static Vec<CheckOutcome> {
    static OUTCOMES: OnceLock<Vec<CheckOutcome>> = OnceLock::new();
    OUTCOMES.get_or_init(|| run_identity_checks(&CheckConfig::default()))
}

fn outcome(name: &str) -> &'static CheckOutcome {
    identity_outcomes()
        .iter()
        .find(|o| o.name == name)
        .unwrap_or_else(|| panic!("missing identity check {name}"))
}

#[test]
fn criterion_1_pareto_stein_bound_matches_closed_form() {
    let cfg = QuadConfig::strict();
    let mut worst = 0.0f64;
    for &alpha in &[0.5, 1.0, 2.0] {
        for &n in &[2u64, 10, 100, 1000] {
            let nm = pareto(alpha, n);
            let quad = delta_n_quadrature(&nm, &cfg).unwrap();
            let exact = delta_n_pareto_exact(n).unwrap();
            let rel = (quad / exact - 1.0).abs();
            worst = worst.max(rel);
            assert!(
                rel <= 1e-7,
                "alpha {alpha} n {n}: quadrature {quad} vs closed form {exact} (rel {rel:.3e})"
            );
        }
    }
    println!(
        "criterion 1 (Stein bound = 2/(n-1)(1-1/n)^n on the Pareto grid): PASS \
         (worst rel dev {worst:.3e} <= 1e-7)"
    );
}

#[test]
fn criterion_2_kolmogorov_bound_chain() {
    let cfg = QuadConfig::strict();
    let root = RootConfig::default();
    let mut worst_bound = f64::NEG_INFINITY;
    let mut worst_delta = f64::NEG_INFINITY;
    for &alpha in &[0.5, 1.0, 2.0] {
        for &n in &[2u64, 10, 100, 1000] {
            let nm = pareto(alpha, n);
            let (ks, _) = kolmogorov_distance(&nm, 512, &root).unwrap();
            let bound = TWO_OVER_E / (n as f64 - 1.0);
            let delta = delta_n_quadrature(&nm, &cfg).unwrap();
            worst_bound = worst_bound.max(ks - bound);
            worst_delta = worst_delta.max(ks - delta);
            assert!(ks <= bound + 1e-9, "alpha {alpha} n {n}: ks {ks} > bound {bound}");
            assert!(ks <= delta + 1e-7, "alpha {alpha} n {n}: ks {ks} > delta {delta}");
        }
    }
    println!(
        "criterion 2 (kolmogorov <= 2e^-1/(n-1) and <= Stein bound): PASS \
         (worst slack {worst_bound:.3e} / {worst_delta:.3e})"
    );
}

#[test]
fn criterion_3_operator_identity_suite() {
    for name in ["zero_mean_target", "integration_by_parts", "zero_mean_maxima"] {
        let o = outcome(name);
        assert!(o.passed(), "{name}: residual {} > {}", o.max_residual, o.tolerance);
        println!(
            "criterion 3 ({name}): PASS (max residual {:.3e} <= {:.0e})",
            o.max_residual, o.tolerance
        );
    }
}

#[test]
fn criterion_4_comparison_identity_reproduces_cdf_differences() {
    let o = outcome("comparison_identity");
    assert!(o.passed(), "residual {} > {}", o.max_residual, o.tolerance);
    println!(
        "criterion 4 (identity RHS = F_n(t) - Phi(t) on the (alpha, n, t) grid): PASS \
         (max residual {:.3e} <= {:.0e})",
        o.max_residual, o.tolerance
    );
}

#[test]
fn criterion_5_indicator_solutions() {
    let sup = outcome("indicator_sup_norm");
    assert!(sup.passed(), "sup-norm exceedance {} > {}", sup.max_residual, sup.tolerance);
    let reps = outcome("representation_agreement");
    assert!(reps.passed(), "representations disagree by {}", reps.max_residual);
    println!(
        "criterion 5 (sup |phi_h| <= 1/alpha over 100 random (alpha, t); reps agree): PASS \
         (exceedance {:.3e} <= 1e-12, rep gap {:.3e} <= 1e-8)",
        sup.max_residual, reps.max_residual
    );
}

#[test]
fn criterion_6_rate_slopes() {
    let ns = [10u64, 100, 1000, 10_000];
    let root = RootConfig::default();

    let ks_points: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| {
            let (ks, _) = kolmogorov_distance(&pareto(1.0, n), 512, &root).unwrap();
            (n as f64, ks)
        })
        .collect();
    let ks_slope = log_log_slope(&ks_points);
    assert!(
        (-1.05..=-0.95).contains(&ks_slope),
        "kolmogorov log-log slope {ks_slope} outside [-1.05, -0.95]; points {ks_points:?}"
    );

    let law = MaxLaw::pareto(1.0).unwrap();
    let r_points: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| {
            let nm = pareto(1.0, n);
            let r = remainder_estimate(&law, nm.scale(), &DEFAULT_REMAINDER_PROBES).unwrap();
            (n as f64, r)
        })
        .collect();
    let r_slope = log_log_slope(&r_points);
    assert!(
        (-1.1..=-0.9).contains(&r_slope),
        "remainder log-log slope {r_slope} outside [-1.1, -0.9]; points {r_points:?}"
    );

    println!(
        "criterion 6 (rate slopes over n in 10..10^4): PASS \
         (kolmogorov slope {ks_slope:.4} in [-1.05, -0.95]; remainder slope {r_slope:.4} in [-1.1, -0.9])"
    );
}

#[test]
fn criterion_7_max_stable_control_is_exact() {
    let quad = QuadConfig::default();
    let root = RootConfig::default();
    let mut worst = 0.0f64;
    for &alpha in &[0.5, 1.0, 2.0] {
        for &n in &[2u64, 7, 100] {
            let law = MaxLaw::frechet_parent(alpha).unwrap();
            let nm = NormedMaximum::new(law, n, NormingMode::PaperExact).unwrap();
            let delta = delta_n_quadrature(&nm, &quad).unwrap();
            let (mc, _) =
                delta_n_monte_carlo(&nm, &McConfig { samples: 20_000, seed: 0, workers: 2 });
            let (ks, _) = kolmogorov_distance(&nm, 512, &root).unwrap();
            let (ds, _) = density_sup_distance(&nm, 512).unwrap();
            let r = remainder_estimate(&law, nm.scale(), &DEFAULT_REMAINDER_PROBES).unwrap();
            for (label, v) in [
                ("delta_quad", delta),
                ("delta_mc", mc),
                ("kolmogorov", ks),
                ("density_sup", ds),
                ("r_n", r),
            ] {
                worst = worst.max(v.abs());
                assert!(v.abs() <= 1e-12, "alpha {alpha} n {n} {label}: {v}");
            }
        }
    }
    println!(
        "criterion 7 (max-stable parent: every distance vanishes): PASS \
         (largest magnitude {worst:.3e} <= 1e-12)"
    );
}

#[test]
fn criterion_8_monte_carlo_consistency() {
    let nm = pareto(1.0, 10);
    let exact = delta_n_pareto_exact(10).unwrap();

    let mut covered = 0;
    for seed in 0..40u64 {
        let (est, se) = delta_n_monte_carlo(&nm, &McConfig { samples: 100_000, seed, workers: 4 });
        if (est - exact).abs() <= 4.0 * se {
            covered += 1;
        }
    }
    assert!(covered >= 38, "only {covered}/40 trials within 4 standard errors");

    let reference = delta_n_monte_carlo(&nm, &McConfig { samples: 100_000, seed: 0, workers: 1 });
    for workers in [2usize, 3, 8] {
        let run = delta_n_monte_carlo(&nm, &McConfig { samples: 100_000, seed: 0, workers });
        assert_eq!(reference.0.to_bits(), run.0.to_bits(), "estimate changed at {workers} workers");
        assert_eq!(reference.1.to_bits(), run.1.to_bits(), "stderr changed at {workers} workers");
    }
    println!(
        "criterion 8 (Monte Carlo consistency): PASS \
         ({covered}/40 trials within 4 se; bitwise identical for 1/2/3/8 workers)"
    );
}

#[test]
fn criterion_9_local_limit_bound_and_density_oracle() {
    // The finite-n indicator bound |E phi_u(W_n)| <= |u^{-alpha} - 1| phi(u) / alpha
    // holds on the documented grid u = v^{-1/alpha}, v in [0.05, 0.85]
    // (near u = 1 the bound degenerates faster than any finite n decays).
    let quad = QuadConfig::default();
    let mut worst = f64::NEG_INFINITY;
    for &alpha in &[0.5, 1.0, 2.0] {
        let target = Frechet::new(alpha).unwrap();
        for &n in &[2u64, 10, 100] {
            let nm = pareto(alpha, n);
            let mut v: f64 = 0.05;
            while v <= 0.85 + 1e-12 {
                let u = v.powf(-1.0 / alpha);
                let value = local_limit_functional(&nm, u, &quad).unwrap();
                let bound = (u.powf(-alpha) - 1.0).abs() * target.pdf(u) / alpha;
                worst = worst.max(value.abs() - bound);
                assert!(
                    value.abs() <= bound + 1e-10,
                    "alpha {alpha} n {n} u {u}: |{value}| > bound {bound}"
                );
                v += 0.05;
            }
        }
    }

    // Density sup-distance against a 10^7-point brute-force scan.
    let nm = pareto(1.0, 10);
    let (dist, _) = density_sup_distance(&nm, 512).unwrap();
    let target = Frechet::new(1.0).unwrap();
    let lo = nm.support().0;
    let hi = 500.0;
    let steps = 10_000_000u64;
    let mut dense = 0.0f64;
    for i in 0..=steps {
        let x = lo + (hi - lo) * i as f64 / steps as f64;
        dense = dense.max((nm.pdf(x) - target.pdf(x)).abs());
    }
    assert!((dist - dense).abs() <= 1e-7, "refined {dist} vs dense {dense}");

    println!(
        "criterion 9 (local-limit bound on the documented grid; density oracle): PASS \
         (worst bound slack {worst:.3e}; |refined - dense| = {:.3e} <= 1e-7)",
        (dist - dense).abs()
    );
}
