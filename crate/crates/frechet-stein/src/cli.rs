//! Command-line front end: convergence tables, identity suites, and Stein
//! solution evaluation.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 numerical
//! non-convergence in a mandatory field, 3 identity-suite failure.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::checks::{run_identity_checks, CheckConfig};
use crate::frechet::Frechet;
use crate::laws::{MaxLaw, NormingMode};
use crate::numerics::QuadConfig;
use crate::rates::McConfig;
use crate::report::{build_report, to_csv, RateReport, ReportConfig};
use crate::stein::SteinSolution;
use crate::svg::{log_log_chart, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_IDENTITY: i32 = 3;

#[derive(Parser)]
#[command(
    name = "frechet-stein",
    about = "Stein-method convergence bounds for renormalized sample maxima",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute per-n convergence reports and emit them as CSV (and SVG).
    Rates(RatesArgs),
    /// Run the operator identity suites and report max residuals.
    Check(CheckArgs),
    /// Evaluate the indicator Stein solution phi_h at given points.
    Solution(SolutionArgs),
}

#[derive(Args, Default)]
struct RatesArgs {
    /// Parent law: pareto | burr | frechet
    #[arg(long)]
    law: Option<String>,
    /// Tail index for pareto/frechet
    #[arg(long)]
    alpha: Option<f64>,
    /// Burr first parameter
    #[arg(long)]
    c: Option<f64>,
    /// Burr second parameter
    #[arg(long)]
    k: Option<f64>,
    /// Comma-separated sample sizes, strictly increasing, each >= 2
    #[arg(long)]
    n: Option<String>,
    /// Norming rule: paper | quantile
    #[arg(long)]
    norming: Option<String>,
    /// Monte Carlo sample count
    #[arg(long)]
    samples: Option<u64>,
    /// Monte Carlo master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo worker threads (does not affect results)
    #[arg(long)]
    workers: Option<usize>,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a log-log convergence chart next to the CSV
    #[arg(long)]
    svg: bool,
    /// key=value file supplying any of the above; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Comma-separated tail indices for the identity grid
    #[arg(long, default_value = "0.5,1,2")]
    alpha: String,
    /// Test hook: corrupt the operator sign; the suite must then fail
    #[arg(long, hide = true)]
    inject_sign_bug: bool,
}

#[derive(Args)]
struct SolutionArgs {
    /// Tail index of the Fréchet target
    #[arg(long)]
    alpha: f64,
    /// Indicator threshold
    #[arg(long)]
    t: f64,
    /// Comma-separated evaluation points
    #[arg(long)]
    x: String,
    /// Optional CSV output path (full precision)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse arguments and dispatch; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return EXIT_OK;
        }
        Err(e) => {
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Rates(args) => cmd_rates(args),
        Command::Check(args) => cmd_check(args),
        Command::Solution(args) => cmd_solution(args),
    }
}

/// A fully resolved rates experiment.
pub struct ExperimentSpec {
    pub law: MaxLaw,
    pub n_list: Vec<u64>,
    pub norming: NormingMode,
    pub mc: McConfig,
    pub quad: QuadConfig,
    pub output_path: PathBuf,
    pub emit_svg: bool,
}

fn read_config_file(path: &PathBuf) -> Result<HashMap<String, String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    let mut map = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("{path:?} line {}: expected key=value, got {line:?}", idx + 1));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn merged<T, F>(
    flag: Option<T>,
    cfg: &HashMap<String, String>,
    key: &str,
    parse: F,
) -> Result<Option<T>, String>
where
    F: Fn(&str) -> Result<T, String>,
{
    if flag.is_some() {
        return Ok(flag);
    }
    match cfg.get(key) {
        Some(raw) => parse(raw).map(Some).map_err(|e| format!("config key {key}: {e}")),
        None => Ok(None),
    }
}

impl ExperimentSpec {
    /// Merge flags over the optional config file and validate.
    fn resolve(args: RatesArgs) -> Result<ExperimentSpec, String> {
        let cfg = match &args.config {
            Some(path) => read_config_file(path)?,
            None => HashMap::new(),
        };
        let parse_f64 = |s: &str| s.parse::<f64>().map_err(|e| e.to_string());
        let parse_u64 = |s: &str| s.parse::<u64>().map_err(|e| e.to_string());

        let law_name = merged(args.law, &cfg, "law", |s| Ok(s.to_string()))?
            .ok_or("missing --law (pareto | burr | frechet)")?;
        let alpha = merged(args.alpha, &cfg, "alpha", parse_f64)?;
        let c = merged(args.c, &cfg, "c", parse_f64)?;
        let k = merged(args.k, &cfg, "k", parse_f64)?;
        let law = match law_name.as_str() {
            "pareto" => MaxLaw::pareto(alpha.ok_or("pareto needs --alpha")?),
            "frechet" => MaxLaw::frechet_parent(alpha.ok_or("frechet needs --alpha")?),
            "burr" => MaxLaw::burr(c.ok_or("burr needs --c")?, k.ok_or("burr needs --k")?),
            other => return Err(format!("unknown law {other:?} (pareto | burr | frechet)")),
        }
        .map_err(|e| e.to_string())?;

        let n_raw = merged(args.n, &cfg, "n", |s| Ok(s.to_string()))?
            .ok_or("missing --n (comma-separated sample sizes)")?;
        let mut n_list = Vec::new();
        for piece in n_raw.split(',') {
            let n = parse_u64(piece.trim()).map_err(|e| format!("bad n {piece:?}: {e}"))?;
            if n < 2 {
                return Err(format!("n must be >= 2 (got {n})"));
            }
            if let Some(&last) = n_list.last() {
                if n <= last {
                    return Err("n list must be strictly increasing".to_string());
                }
            }
            n_list.push(n);
        }
        if n_list.is_empty() {
            return Err("n list must be nonempty".to_string());
        }

        let norming = match merged(args.norming, &cfg, "norming", |s| Ok(s.to_string()))?
            .as_deref()
            .unwrap_or("paper")
        {
            "paper" => NormingMode::PaperExact,
            "quantile" => NormingMode::QuantileRule,
            other => return Err(format!("unknown norming {other:?} (paper | quantile)")),
        };

        let defaults = McConfig::default();
        let mc = McConfig {
            samples: merged(args.samples, &cfg, "samples", parse_u64)?.unwrap_or(defaults.samples),
            seed: merged(args.seed, &cfg, "seed", parse_u64)?.unwrap_or(0),
            workers: merged(args.workers, &cfg, "workers", |s| {
                s.parse::<usize>().map_err(|e| e.to_string())
            })?
            .unwrap_or(defaults.workers)
            .max(1),
        };
        let output_path = merged(args.out, &cfg, "out", |s| Ok(PathBuf::from(s)))?
            .unwrap_or_else(|| PathBuf::from("rates.csv"));
        let emit_svg = args.svg || cfg.get("svg").map(|v| v == "true" || v == "1").unwrap_or(false);

        Ok(ExperimentSpec {
            law,
            n_list,
            norming,
            mc,
            quad: QuadConfig::strict(),
            output_path,
            emit_svg,
        })
    }
}

fn cmd_rates(args: RatesArgs) -> i32 {
    let spec = match ExperimentSpec::resolve(args) {
        Ok(spec) => spec,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };

    let report_cfg =
        ReportConfig { quad: spec.quad, mc: spec.mc.clone(), ..ReportConfig::default() };
    let mut reports = Vec::new();
    for &n in &spec.n_list {
        match build_report(&spec.law, n, spec.norming, &report_cfg) {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("error: report for n = {n} failed: {e}");
                return EXIT_NUMERIC;
            }
        }
    }

    let csv = to_csv(&reports);
    if let Err(e) = fs::write(&spec.output_path, &csv) {
        eprintln!("error: cannot write {:?}: {e}", spec.output_path);
        return EXIT_NUMERIC;
    }

    if spec.emit_svg {
        let svg_path = spec.output_path.with_extension("svg");
        let svg = convergence_chart(&reports);
        if let Err(e) = fs::write(&svg_path, svg) {
            eprintln!("error: cannot write {svg_path:?}: {e}");
            return EXIT_NUMERIC;
        }
        println!("chart written to {}", svg_path.display());
    }

    print_summary(&reports);
    println!("csv written to {}", spec.output_path.display());

    // Mandatory fields must have converged.
    let mut numeric_failure = false;
    for r in &reports {
        for f in &r.failures {
            let mandatory = f.starts_with("delta_quad")
                || f.starts_with("kolmogorov")
                || f.starts_with("density_sup");
            if mandatory {
                eprintln!("error: n = {}: {f}", r.n);
                numeric_failure = true;
            } else {
                eprintln!("note: n = {}: {f} (field left as NaN)", r.n);
            }
        }
    }
    if numeric_failure {
        EXIT_NUMERIC
    } else {
        EXIT_OK
    }
}

fn print_summary(reports: &[RateReport]) {
    println!(
        "{:>8} {:>12} {:>13} {:>13} {:>10} {:>13} {:>13} {:>13} {:>13}",
        "n",
        "a_n",
        "delta_quad",
        "delta_mc",
        "mc_stderr",
        "kolmogorov",
        "paper_bound",
        "density_sup",
        "r_n"
    );
    for r in reports {
        println!(
            "{:>8} {:>12.6} {:>13.6e} {:>13.6e} {:>10.2e} {:>13.6e} {:>13} {:>13.6e} {:>13.6e}",
            r.n,
            r.a_n,
            r.delta_quad,
            r.delta_mc,
            r.delta_mc_stderr,
            r.kolmogorov,
            r.paper_bound.map_or(String::from("-"), |b| format!("{b:.6e}")),
            r.density_sup,
            r.r_n,
        );
    }
}

fn convergence_chart(reports: &[RateReport]) -> String {
    let take = |f: &dyn Fn(&RateReport) -> f64| -> Vec<(f64, f64)> {
        reports.iter().map(|r| (r.n as f64, f(r))).collect()
    };
    let series = vec![
        Series { name: "delta_quad", color: "#d62728", points: take(&|r| r.delta_quad) },
        Series { name: "kolmogorov", color: "#1f77b4", points: take(&|r| r.kolmogorov) },
        Series {
            name: "paper_bound",
            color: "#2ca02c",
            points: take(&|r| r.paper_bound.unwrap_or(f64::NAN)),
        },
    ];
    let title = reports
        .first()
        .map(|r| format!("{} (alpha = {}): distance to the Fréchet law", r.law_name, r.alpha))
        .unwrap_or_default();
    log_log_chart(&title, "n", "distance", &series)
}

fn cmd_check(args: CheckArgs) -> i32 {
    let mut alphas = Vec::new();
    for piece in args.alpha.split(',') {
        match piece.trim().parse::<f64>() {
            Ok(a) if a > 0.0 => alphas.push(a),
            _ => {
                eprintln!("error: bad alpha {piece:?}");
                return EXIT_USAGE;
            }
        }
    }
    let cfg =
        CheckConfig { alphas, flip_operator_sign: args.inject_sign_bug, ..CheckConfig::default() };
    let outcomes = run_identity_checks(&cfg);

    println!("{:<28} {:>14} {:>10} {:>8}", "identity", "max residual", "tolerance", "status");
    let mut failed = Vec::new();
    for o in &outcomes {
        println!(
            "{:<28} {:>14.3e} {:>10.0e} {:>8}",
            o.name,
            o.max_residual,
            o.tolerance,
            if o.passed() { "ok" } else { "FAIL" }
        );
        if !o.passed() {
            failed.push(o.name.clone());
        }
    }
    if failed.is_empty() {
        EXIT_OK
    } else {
        eprintln!("failed identities: {}", failed.join(", "));
        EXIT_IDENTITY
    }
}

fn cmd_solution(args: SolutionArgs) -> i32 {
    let law = match Frechet::new(args.alpha) {
        Ok(law) => law,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let sol = match SteinSolution::indicator(law, args.t) {
        Ok(sol) => sol,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut xs = Vec::new();
    for piece in args.x.split(',') {
        match piece.trim().parse::<f64>() {
            Ok(x) if x > 0.0 => xs.push(x),
            _ => {
                eprintln!("error: evaluation points must be positive (got {piece:?})");
                return EXIT_USAGE;
            }
        }
    }

    println!("x,phi_h");
    let mut rows = String::from("x,phi_h\n");
    for &x in &xs {
        let v = sol.value(x).expect("x > 0");
        println!("{x},{v:.8}");
        rows.push_str(&format!("{x},{v}\n"));
    }
    println!("sup bound 1/alpha = {:.8}", 1.0 / args.alpha);

    if let Some(path) = args.out {
        if let Err(e) = fs::write(&path, rows) {
            eprintln!("error: cannot write {path:?}: {e}");
            return EXIT_NUMERIC;
        }
    }
    EXIT_OK
}
