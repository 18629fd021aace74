//! Command-line interface: simulate stable samples, fit index/scale to
//! data, run bias/MSE benchmarks and emit diagnostic plot data.

mod config;
mod dataio;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use stable_ecf::diagnostics::{
    k_sensitivity_curve, residual_acf, residual_variance_profile, ResidualLine,
};
use stable_ecf::estimators::{
    estimate_kogon_williams_with, estimate_koutrouvelis, estimate_lad_with,
    estimate_ls_mid_interval, Estimate, KSelection, LadGridEndpoint,
};
use stable_ecf::{
    ols_fit, run_benchmark, sample_stable, standardize, transform_grid, with_threads,
    BenchmarkConfig, MethodSpec, StableParams, StandardizeMethod, TGrid,
};

use crate::config::parse_config;
use crate::dataio::{read_sample, render_sample, render_tsv, write_output};
use crate::manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "stable-ecf",
    version,
    about = "Stable-distribution index and scale estimation from the empirical characteristic function"
)]
struct Cli {
    /// Master seed for subcommands that draw randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path for the data product; fit and benchmark default to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for replication fan-out (default: all cores).
    /// Results are identical for any thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw i.i.d. stable variates, one decimal value per line.
    Simulate(SimulateArgs),
    /// Estimate the index and scale of a sample file (JSON report).
    Fit(FitArgs),
    /// Bias/MSE benchmark over index values and estimators (CSV report).
    Benchmark(BenchmarkArgs),
    /// Diagnostic plot data (TSV): residual variance, residual ACF or
    /// K-sensitivity.
    Diagnose(DiagnoseArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Index alpha, in (0, 2].
    #[arg(long)]
    alpha: f64,
    /// Scale sigma, > 0.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Skewness beta, in [-1, 1].
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Location mu.
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    /// Number of variates.
    #[arg(short, long)]
    n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Lad,
    Kw,
    #[value(name = "ls-mid")]
    LsMid,
    Koutrouvelis,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LadGridArg {
    /// t_k = 0.1 + 0.05 (k - 1), k = 1..20 (ends at 1.05).
    Formula,
    /// 20 uniform points on [0.1, 1.0].
    Capped,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StandardizeArg {
    /// McCulloch quantile location/scale.
    Mcculloch,
    /// 25% trimmed mean and quantile-spread scale.
    #[value(name = "fama-roll")]
    FamaRoll,
}

#[derive(Args)]
struct FitArgs {
    /// Sample file: one decimal value per line, '#' comments allowed.
    #[arg(long)]
    input: PathBuf,
    /// Estimator to apply.
    #[arg(long, value_enum)]
    method: MethodArg,
    /// K selection for --method koutrouvelis:
    /// fixed:<K>, oracle:<alpha> or mcculloch.
    #[arg(long)]
    k_mode: Option<String>,
    /// Endpoint convention of the 20-point LAD grid.
    #[arg(long, value_enum, default_value_t = LadGridArg::Formula)]
    lad_grid: LadGridArg,
    /// Standardization for the kw method.
    #[arg(long, value_enum, default_value_t = StandardizeArg::Mcculloch)]
    kw_standardize: StandardizeArg,
}

#[derive(Args)]
struct BenchmarkArgs {
    /// Flat key = value config file; flags override file entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated index values.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Skewness of the simulated data.
    #[arg(long)]
    beta: Option<f64>,
    /// Sample size per replication.
    #[arg(long)]
    n: Option<usize>,
    /// Replications per (alpha, estimator) cell.
    #[arg(short = 'M', long)]
    replications: Option<usize>,
    /// Comma-separated methods: lad, kw, ls-mid, koutrouvelis[:oracle|
    /// :mcculloch|:fixed:<K>].
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Scale of the simulated data.
    #[arg(long)]
    sigma: Option<f64>,
    /// Location of the simulated data.
    #[arg(long)]
    mu: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagnoseKind {
    #[value(name = "residual-variance")]
    ResidualVariance,
    Acf,
    #[value(name = "k-sensitivity")]
    KSensitivity,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LineArg {
    /// Residuals against the true-parameter line on raw data.
    True,
    /// Residuals against per-sample fitted lines on standardized data.
    Estimated,
}

#[derive(Args)]
struct DiagnoseArgs {
    /// Which diagnostic to compute.
    #[arg(long, value_enum)]
    kind: DiagnoseKind,
    /// Index of the simulated data.
    #[arg(long)]
    alpha: f64,
    /// Scale of the simulated data.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Skewness of the simulated data.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Sample size per replication.
    #[arg(long, default_value_t = 200)]
    n: usize,
    /// Replications (residual-variance and k-sensitivity).
    #[arg(short = 'M', long)]
    replications: Option<usize>,
    /// Grid start (residual-variance sweep and acf grid).
    #[arg(long, default_value_t = 0.1)]
    t_min: f64,
    /// Grid end; defaults to 2.0 for residual-variance, 1.0 for acf.
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of grid points in the residual-variance sweep.
    #[arg(long, default_value_t = 20)]
    t_count: usize,
    /// Residual definition for residual-variance.
    #[arg(long, value_enum, default_value_t = LineArg::True)]
    line: LineArg,
    /// Grid length for the acf diagnostic.
    #[arg(long, default_value_t = 28)]
    k: usize,
    /// Largest lag for the acf diagnostic.
    #[arg(long, default_value_t = 20)]
    max_lag: usize,
    /// Smallest K in the k-sensitivity sweep.
    #[arg(long, default_value_t = 10)]
    k_min: usize,
    /// Largest K in the k-sensitivity sweep.
    #[arg(long, default_value_t = 40)]
    k_max: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let threads = cli.threads;
    with_threads(threads, || match cli.command {
        Command::Simulate(ref args) => cmd_simulate(&cli, args),
        Command::Fit(ref args) => cmd_fit(&cli, args),
        Command::Benchmark(ref args) => cmd_benchmark(&cli, args),
        Command::Diagnose(ref args) => cmd_diagnose(&cli, args),
    })
}

fn num(v: f64) -> serde_json::Value {
    json!(v)
}

fn cmd_simulate(cli: &Cli, args: &SimulateArgs) -> Result<()> {
    let Some(out) = cli.out.as_deref() else {
        bail!("simulate requires --out <path> for the sample file");
    };
    let params = StableParams::new(args.alpha, args.sigma, args.beta, args.mu)?;
    let seed = cli.seed.unwrap_or(0);
    let sample = sample_stable(&params, args.n, seed)?;
    write_output(Some(out), &render_sample(&sample))?;

    let mut m = RunManifest::new("simulate", Some(seed));
    m.record("alpha", num(args.alpha));
    m.record("sigma", num(args.sigma));
    m.record("beta", num(args.beta));
    m.record("mu", num(args.mu));
    m.record("n", args.n);
    m.argv = vec![
        "simulate".into(),
        "--alpha".into(),
        args.alpha.to_string(),
        "--sigma".into(),
        args.sigma.to_string(),
        "--beta".into(),
        args.beta.to_string(),
        "--mu".into(),
        args.mu.to_string(),
        "--n".into(),
        args.n.to_string(),
        "--seed".into(),
        seed.to_string(),
        "--out".into(),
        out.display().to_string(),
    ];
    m.outputs = vec![out.display().to_string()];
    m.emit(Some(out))?;
    eprintln!("manifest: {}", manifest::manifest_path(out).display());
    Ok(())
}

fn parse_k_mode(raw: &str) -> Result<KSelection> {
    if raw == "mcculloch" {
        return Ok(KSelection::McCullochInitial);
    }
    if let Some(rest) = raw.strip_prefix("fixed:") {
        let k: usize = rest.parse().with_context(|| format!("bad K in --k-mode '{raw}'"))?;
        if k < 2 {
            bail!("--k-mode fixed K must be >= 2, got {k}");
        }
        return Ok(KSelection::Fixed(k));
    }
    if let Some(rest) = raw.strip_prefix("oracle:") {
        let alpha: f64 =
            rest.parse().with_context(|| format!("bad alpha in --k-mode '{raw}'"))?;
        return Ok(KSelection::OracleTrueAlpha(alpha));
    }
    bail!("--k-mode must be fixed:<K>, oracle:<alpha> or mcculloch, got '{raw}'")
}

fn cmd_fit(cli: &Cli, args: &FitArgs) -> Result<()> {
    if args.k_mode.is_some() && args.method != MethodArg::Koutrouvelis {
        bail!("--k-mode is only valid with --method koutrouvelis");
    }
    let loaded = read_sample(&args.input)?;
    let sample = &loaded.sample;

    let (estimate, method_name, extra): (Estimate, &str, serde_json::Value) = match args.method {
        MethodArg::Lad => {
            let endpoint = match args.lad_grid {
                LadGridArg::Formula => LadGridEndpoint::Formula,
                LadGridArg::Capped => LadGridEndpoint::Capped,
            };
            let grid_name = match args.lad_grid {
                LadGridArg::Formula => "formula",
                LadGridArg::Capped => "capped",
            };
            (estimate_lad_with(sample, endpoint)?, "lad", json!({ "lad_grid": grid_name }))
        }
        MethodArg::Kw => {
            let std_method = match args.kw_standardize {
                StandardizeArg::Mcculloch => StandardizeMethod::McCulloch,
                StandardizeArg::FamaRoll => StandardizeMethod::TrimmedMeanFamaRoll,
            };
            (
                estimate_kogon_williams_with(sample, std_method)?,
                "kw",
                json!({ "kw_standardize": std_method.name() }),
            )
        }
        MethodArg::LsMid => (estimate_ls_mid_interval(sample)?, "ls-mid", json!({})),
        MethodArg::Koutrouvelis => {
            let raw = args.k_mode.as_deref().unwrap_or("mcculloch");
            let k_sel = parse_k_mode(raw)?;
            (
                estimate_koutrouvelis(sample, &k_sel)?,
                "koutrouvelis",
                json!({ "k_mode": raw, "k_resolved": 0 }),
            )
        }
    };

    let mut extra = extra;
    if let Some(obj) = extra.as_object_mut() {
        if obj.contains_key("k_resolved") {
            obj.insert("k_resolved".into(), json!(estimate.grid_used.len()));
        }
    }

    let report = json!({
        "method": method_name,
        "alpha_hat": estimate.alpha_hat,
        "sigma_hat": estimate.sigma_hat,
        "grid": estimate.grid_used.points(),
        "standardization": {
            "location": estimate.standardization.location,
            "scale": estimate.standardization.scale,
            "method": estimate.standardization.method.name(),
        },
        "fit": {
            "intercept": estimate.fit.m,
            "slope": estimate.fit.slope,
            "iterations": estimate.fit.iterations,
            "converged": estimate.fit.converged,
            "objective": estimate.fit.objective,
        },
        "table_clamped": estimate.table_clamped,
        "options": extra,
        "input": {
            "path": args.input.display().to_string(),
            "n": sample.len(),
            "sha256": loaded.sha256,
        },
    });
    let text = serde_json::to_string_pretty(&report)? + "\n";
    write_output(cli.out.as_deref(), &text)?;

    if !estimate.fit.converged {
        eprintln!("warning: the reweighting iteration hit its cap before converging");
    }
    if estimate.table_clamped {
        eprintln!("warning: a lookup fell outside the quantile or K tables and was clamped");
    }

    let mut man = RunManifest::new("fit", None);
    man.record("input", args.input.display().to_string());
    man.record("method", method_name);
    man.record("input_sha256", loaded.sha256.clone());
    let mut argv = vec![
        "fit".to_string(),
        "--input".into(),
        args.input.display().to_string(),
        "--method".into(),
        method_name.into(),
    ];
    if args.method == MethodArg::Koutrouvelis {
        argv.push("--k-mode".into());
        argv.push(args.k_mode.as_deref().unwrap_or("mcculloch").into());
    }
    if args.method == MethodArg::Lad {
        argv.push("--lad-grid".into());
        argv.push(
            match args.lad_grid {
                LadGridArg::Formula => "formula",
                LadGridArg::Capped => "capped",
            }
            .into(),
        );
    }
    if args.method == MethodArg::Kw {
        argv.push("--kw-standardize".into());
        argv.push(
            match args.kw_standardize {
                StandardizeArg::Mcculloch => "mcculloch",
                StandardizeArg::FamaRoll => "fama-roll",
            }
            .into(),
        );
    }
    if let Some(out) = cli.out.as_deref() {
        argv.push("--out".into());
        argv.push(out.display().to_string());
        man.outputs = vec![out.display().to_string()];
    }
    man.argv = argv;
    man.emit(cli.out.as_deref())?;
    Ok(())
}

fn cmd_benchmark(cli: &Cli, args: &BenchmarkArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => parse_config(path)?,
        None => config::FileConfig::default(),
    };
    let method_names: Vec<String> = args
        .methods
        .clone()
        .or(file.methods)
        .unwrap_or_else(|| vec!["lad".into(), "ls-mid".into(), "kw".into()]);
    let methods: Vec<MethodSpec> = method_names
        .iter()
        .map(|s| s.parse::<MethodSpec>().map_err(anyhow::Error::msg))
        .collect::<Result<_>>()?;
    let seed = cli.seed.or(file.seed).unwrap_or(0);

    let config = BenchmarkConfig {
        alphas: args
            .alphas
            .clone()
            .or(file.alphas)
            .unwrap_or_else(|| vec![1.9, 1.5, 1.3, 1.1, 0.9, 0.7]),
        beta: args.beta.or(file.beta).unwrap_or(0.0),
        n: args.n.or(file.n).unwrap_or(100),
        replications: args.replications.or(file.replications).unwrap_or(10_000),
        methods,
        master_seed: seed,
        sigma: args.sigma.or(file.sigma).unwrap_or(1.0),
        mu: args.mu.or(file.mu).unwrap_or(0.0),
    };

    let report = run_benchmark(&config)?;
    write_output(cli.out.as_deref(), &report.to_csv())?;
    for w in report.warnings() {
        eprintln!("warning: {w}");
    }

    let mut man = RunManifest::new("benchmark", Some(seed));
    let alphas_str =
        config.alphas.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
    let methods_str =
        config.methods.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
    man.record("alphas", serde_json::Value::from(config.alphas.clone()));
    man.record("beta", num(config.beta));
    man.record("n", config.n);
    man.record("replications", config.replications);
    man.record(
        "methods",
        serde_json::Value::from(
            config.methods.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        ),
    );
    man.record("sigma", num(config.sigma));
    man.record("mu", num(config.mu));
    let mut argv = vec![
        "benchmark".to_string(),
        "--alphas".into(),
        alphas_str,
        "--beta".into(),
        config.beta.to_string(),
        "--n".into(),
        config.n.to_string(),
        "--replications".into(),
        config.replications.to_string(),
        "--methods".into(),
        methods_str,
        "--sigma".into(),
        config.sigma.to_string(),
        "--mu".into(),
        config.mu.to_string(),
        "--seed".into(),
        seed.to_string(),
    ];
    if let Some(out) = cli.out.as_deref() {
        argv.push("--out".into());
        argv.push(out.display().to_string());
        man.outputs = vec![out.display().to_string()];
    }
    man.argv = argv;
    man.emit(cli.out.as_deref())?;
    Ok(())
}

fn cmd_diagnose(cli: &Cli, args: &DiagnoseArgs) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    let params = StableParams::new(args.alpha, args.sigma, args.beta, 0.0)?;

    let (rows, header, resolved): (Vec<Vec<String>>, Vec<&str>, serde_json::Value) =
        match args.kind {
            DiagnoseKind::ResidualVariance => {
                let m = args.replications.unwrap_or(1000);
                let t_max = args.t_max.unwrap_or(2.0);
                let grid = TGrid::uniform(args.t_min, t_max, args.t_count)?;
                let line = match args.line {
                    LineArg::True => ResidualLine::True,
                    LineArg::Estimated => ResidualLine::Estimated,
                };
                let profile =
                    residual_variance_profile(&params, args.n, m, &grid, line, seed)?;
                let dropped: usize = profile.iter().map(|p| p.dropped).sum();
                if dropped > 0 {
                    eprintln!("warning: {dropped} degenerate replication-points dropped");
                }
                (
                    profile
                        .iter()
                        .map(|p| vec![p.t.to_string(), p.variance.to_string()])
                        .collect(),
                    vec!["t", "variance"],
                    json!({
                        "m": m, "t_min": args.t_min, "t_max": t_max,
                        "t_count": args.t_count,
                        "line": if args.line == LineArg::True { "true" } else { "estimated" },
                    }),
                )
            }
            DiagnoseKind::Acf => {
                let t_max = args.t_max.unwrap_or(1.0);
                let grid = TGrid::uniform(args.t_min, t_max, args.k)?;
                let sample = sample_stable(&params, args.n, seed)?;
                let (z, _) = standardize(&sample)?;
                let data = transform_grid(&z, &grid)?;
                let fit = ols_fit(&data)?;
                let residuals: Vec<f64> = data
                    .y()
                    .iter()
                    .zip(data.omega())
                    .map(|(y, om)| y - fit.m - fit.slope * om)
                    .collect();
                let acf = residual_acf(&residuals, args.max_lag)?;
                (
                    acf.iter()
                        .enumerate()
                        .map(|(lag, r)| vec![lag.to_string(), r.to_string()])
                        .collect(),
                    vec!["lag", "acf"],
                    json!({
                        "k": args.k, "t_min": args.t_min, "t_max": t_max,
                        "max_lag": args.max_lag,
                    }),
                )
            }
            DiagnoseKind::KSensitivity => {
                let m = args.replications.unwrap_or(500);
                if args.k_min < 2 || args.k_min > args.k_max {
                    bail!("need 2 <= k-min <= k-max, got {} and {}", args.k_min, args.k_max);
                }
                let k_values: Vec<usize> = (args.k_min..=args.k_max).collect();
                let curves = k_sensitivity_curve(&params, args.n, m, &k_values, seed)?;
                let fails: usize = curves
                    .koutrouvelis_failures
                    .iter()
                    .chain(&curves.lad_failures)
                    .sum();
                if fails > 0 {
                    eprintln!("warning: {fails} replication-fits failed across the K sweep");
                }
                (
                    (0..k_values.len())
                        .map(|i| {
                            vec![
                                curves.k_values[i].to_string(),
                                curves.koutrouvelis_mean[i].to_string(),
                                curves.lad_mean[i].to_string(),
                            ]
                        })
                        .collect(),
                    vec!["K", "mean_alpha_koutrouvelis", "mean_alpha_lad"],
                    json!({ "m": m, "k_min": args.k_min, "k_max": args.k_max }),
                )
            }
        };

    write_output(cli.out.as_deref(), &render_tsv(&header, &rows))?;

    let kind_name = match args.kind {
        DiagnoseKind::ResidualVariance => "residual-variance",
        DiagnoseKind::Acf => "acf",
        DiagnoseKind::KSensitivity => "k-sensitivity",
    };
    let mut man = RunManifest::new("diagnose", Some(seed));
    man.record("kind", kind_name);
    man.record("alpha", num(args.alpha));
    man.record("sigma", num(args.sigma));
    man.record("beta", num(args.beta));
    man.record("n", args.n);
    man.record("options", resolved.clone());
    let mut argv = vec![
        "diagnose".to_string(),
        "--kind".into(),
        kind_name.into(),
        "--alpha".into(),
        args.alpha.to_string(),
        "--sigma".into(),
        args.sigma.to_string(),
        "--beta".into(),
        args.beta.to_string(),
        "--n".into(),
        args.n.to_string(),
        "--seed".into(),
        seed.to_string(),
    ];
    match args.kind {
        DiagnoseKind::ResidualVariance => {
            argv.extend([
                "--replications".into(),
                args.replications.unwrap_or(1000).to_string(),
                "--t-min".into(),
                args.t_min.to_string(),
                "--t-max".into(),
                args.t_max.unwrap_or(2.0).to_string(),
                "--t-count".into(),
                args.t_count.to_string(),
                "--line".into(),
                if args.line == LineArg::True { "true".into() } else { "estimated".into() },
            ]);
        }
        DiagnoseKind::Acf => {
            argv.extend([
                "--k".into(),
                args.k.to_string(),
                "--t-min".into(),
                args.t_min.to_string(),
                "--t-max".into(),
                args.t_max.unwrap_or(1.0).to_string(),
                "--max-lag".into(),
                args.max_lag.to_string(),
            ]);
        }
        DiagnoseKind::KSensitivity => {
            argv.extend([
                "--replications".into(),
                args.replications.unwrap_or(500).to_string(),
                "--k-min".into(),
                args.k_min.to_string(),
                "--k-max".into(),
                args.k_max.to_string(),
            ]);
        }
    }
    if let Some(out) = cli.out.as_deref() {
        argv.push("--out".into());
        argv.push(out.display().to_string());
        man.outputs = vec![out.display().to_string()];
    }
    man.argv = argv;
    man.emit(cli.out.as_deref())?;
    Ok(())
}

