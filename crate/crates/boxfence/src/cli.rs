//! Command-line front end: argument types and the four subcommand
//! implementations. Each `cmd_*` returns the full output as a string so the
//! binary stays a thin print-and-exit shell and tests can drive commands
//! in-process.

use crate::datasets;
use crate::detect::classify;
use crate::dist::{fit_chi_square_mom, fit_gamma_mom, fit_t_mom, DistributionModel};
use crate::error::{Error, Result};
use crate::fences::{compute_fences, fences_from_quartiles, FenceMethod, FencePair};
use crate::ingest::{parse_inline, read_column, Column};
use crate::render::{render_boxplots, PlotPanel, PlotSpec};
use crate::sample::{build_sample, Sample};
use crate::sim::{method_name, run_simulation, Family, SimConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "boxfence",
    version,
    about = "Boxplot fences with sample-size-aware coefficients: \
             outlier detection, Monte Carlo rate studies, and SVG boxplots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute fence coefficients and fence positions for one data column
    Fences(FencesArgs),
    /// Label every observation of a column against one fence method
    Detect(DetectArgs),
    /// Monte Carlo study of flagging rates under a known family
    Simulate(SimulateArgs),
    /// Render side-by-side boxplots (one panel per method) as SVG
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV file to read (use --column to pick a column; default index 0)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Inline observations, separated by commas and/or spaces
    #[arg(long, allow_hyphen_values = true)]
    pub data: Option<String>,
    /// Bundled dataset: hk-pay (requires --column junior or senior)
    #[arg(long)]
    pub dataset: Option<String>,
    /// Column name or zero-based index
    #[arg(long)]
    pub column: Option<String>,
}

#[derive(Debug, Args)]
pub struct MethodArgs {
    /// Fence method, repeatable: tukey, chauvenet_type, exact_rate,
    /// tolerance_limit, asymptotic, empirical, chauvenet_interval,
    /// chauvenet_type_non_normal
    #[arg(long = "method")]
    pub methods: Vec<String>,
    /// Coefficient for the tukey method [default: 1.5]
    #[arg(long)]
    pub k: Option<f64>,
    /// Per-sample error rate for the asymptotic method [default: 0.05]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Confidence level for the tolerance-limit method (only 0.9 is tabulated)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Model family fitted by chauvenet_type_non_normal:
    /// normal, gamma, chi_square, student_t
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Args)]
pub struct FencesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub methods: MethodArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub methods: MethodArgs,
    /// Also classify far-out points against Tukey fences with this k
    #[arg(long)]
    pub outer_k: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Generating family: name[:params], e.g. normal, normal:1,2,
    /// chi_square:8, student_t:8, gamma:3,2, beta:2,3, exponential:2.5,
    /// log_normal:0,0.5
    #[arg(long, default_value = "normal")]
    pub family: String,
    /// Observations per replicate, contamination included
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub replicates: usize,
    /// RNG seed; echoed in the output
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Contamination as value:count, repeatable
    #[arg(long = "contaminate", allow_hyphen_values = true)]
    pub contaminate: Vec<String>,
    /// Fence method, repeatable; chauvenet_type_non_normal fits the
    /// generating family's model on every replicate
    #[arg(long = "method")]
    pub methods: Vec<String>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub methods: MethodArgs,
    /// Value-axis override as lo:hi [default: data range padded 5%]
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Dispatches a parsed command line and returns the complete output text.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Fences(args) => {
            let text = cmd_fences(&args)?;
            deliver(text, args.out.as_deref())
        }
        Command::Detect(args) => {
            let text = cmd_detect(&args)?;
            deliver(text, args.out.as_deref())
        }
        Command::Simulate(args) => {
            let text = cmd_simulate(&args)?;
            deliver(text, args.out.as_deref())
        }
        Command::Plot(args) => {
            let text = cmd_plot(&args)?;
            deliver(text, args.out.as_deref())
        }
    }
}

fn deliver(text: String, out: Option<&std::path::Path>) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn load_values(input: &InputArgs) -> Result<Vec<f64>> {
    let sources =
        input.input.is_some() as u8 + input.data.is_some() as u8 + input.dataset.is_some() as u8;
    if sources != 1 {
        return Err(Error::invalid_config(
            "exactly one of --input, --data, --dataset is required",
        ));
    }
    if let Some(path) = &input.input {
        let text = std::fs::read_to_string(path)?;
        let column = match &input.column {
            Some(sel) => Column::parse(sel),
            None => Column::Index(0),
        };
        return read_column(&text, &column);
    }
    if let Some(data) = &input.data {
        if input.column.is_some() {
            return Err(Error::invalid_config("--column does not apply to --data"));
        }
        return parse_inline(data);
    }
    let dataset = input.dataset.as_deref().unwrap();
    if dataset != "hk-pay" {
        return Err(Error::invalid_config(format!(
            "unknown dataset {dataset:?}: the bundled dataset is hk-pay"
        )));
    }
    match input.column.as_deref() {
        Some(sel) => read_column(datasets::HK_PAY_CSV, &Column::parse(sel)),
        None => Err(Error::invalid_config(
            "--dataset hk-pay needs --column junior or --column senior",
        )),
    }
}

/// A validated method request; fitting (when needed) is deferred until the
/// sample exists.
enum MethodSpec {
    Ready(FenceMethod),
    FitNonNormal(ModelKind),
}

#[derive(Clone, Copy)]
enum ModelKind {
    Normal,
    Gamma,
    ChiSquare,
    StudentT,
}

fn parse_model_kind(name: &str) -> Result<ModelKind> {
    match name {
        "normal" => Ok(ModelKind::Normal),
        "gamma" => Ok(ModelKind::Gamma),
        "chi_square" => Ok(ModelKind::ChiSquare),
        "student_t" => Ok(ModelKind::StudentT),
        other => Err(Error::invalid_config(format!(
            "unknown model family {other:?}: expected normal, gamma, chi_square, or student_t"
        ))),
    }
}

fn parse_method(name: &str, args: &MethodArgs) -> Result<MethodSpec> {
    let method = match name {
        "tukey" => FenceMethod::Tukey {
            k: args.k.unwrap_or(1.5),
        },
        "chauvenet_type" => FenceMethod::ChauvenetType,
        "exact_rate" => FenceMethod::ExactRate,
        "tolerance_limit" => FenceMethod::ToleranceLimit {
            gamma: args.gamma.unwrap_or(0.9),
        },
        "asymptotic" => FenceMethod::Asymptotic {
            alpha: args.alpha.unwrap_or(0.05),
        },
        "empirical" => FenceMethod::Empirical,
        "chauvenet_interval" => FenceMethod::ChauvenetInterval,
        "chauvenet_type_non_normal" => {
            let family = args.family.as_deref().ok_or_else(|| {
                Error::invalid_config("chauvenet_type_non_normal needs --family")
            })?;
            return Ok(MethodSpec::FitNonNormal(parse_model_kind(family)?));
        }
        other => {
            return Err(Error::invalid_config(format!(
                "unknown method {other:?}: expected tukey, chauvenet_type, exact_rate, \
                 tolerance_limit, asymptotic, empirical, chauvenet_interval, or \
                 chauvenet_type_non_normal"
            )));
        }
    };
    Ok(MethodSpec::Ready(method))
}

fn parse_methods(args: &MethodArgs) -> Result<Vec<MethodSpec>> {
    if args.methods.is_empty() {
        return Err(Error::invalid_config(
            "at least one --method is required",
        ));
    }
    args.methods.iter().map(|m| parse_method(m, args)).collect()
}

impl MethodSpec {
    fn realize(&self, sample: &Sample) -> Result<FenceMethod> {
        let model = match self {
            MethodSpec::Ready(m) => return Ok(*m),
            MethodSpec::FitNonNormal(ModelKind::Normal) => DistributionModel::Normal {
                mean: sample.mean(),
                sd: sample.sd(),
            },
            MethodSpec::FitNonNormal(ModelKind::Gamma) => fit_gamma_mom(sample)?,
            MethodSpec::FitNonNormal(ModelKind::ChiSquare) => fit_chi_square_mom(sample)?,
            MethodSpec::FitNonNormal(ModelKind::StudentT) => fit_t_mom(sample)?,
        };
        Ok(FenceMethod::ChauvenetTypeNonNormal { model })
    }
}

pub fn cmd_fences(args: &FencesArgs) -> Result<String> {
    let values = load_values(&args.input)?;
    let sample = build_sample(&values)?;
    let specs = parse_methods(&args.methods)?;
    let mut pairs: Vec<FencePair> = Vec::with_capacity(specs.len());
    for spec in &specs {
        let method = spec.realize(&sample)?;
        pairs.push(compute_fences(&sample, &method)?);
    }
    match args.format {
        Format::Json => {
            let doc = json!({ "n": sample.n(), "results": pairs });
            Ok(format!("{:#}\n", doc))
        }
        Format::Table => {
            let mut rows = vec![[
                "method".to_string(),
                "coeff_lower".to_string(),
                "coeff_upper".to_string(),
                "lower".to_string(),
                "upper".to_string(),
            ]];
            for p in &pairs {
                rows.push([
                    method_name(&p.method),
                    format!("{:.4}", p.coefficient_lower),
                    format!("{:.4}", p.coefficient_upper),
                    format!("{:.4}", p.lower),
                    format!("{:.4}", p.upper),
                ]);
            }
            Ok(format!("n = {}\n{}", sample.n(), align(&rows)))
        }
    }
}

pub fn cmd_detect(args: &DetectArgs) -> Result<String> {
    let values = load_values(&args.input)?;
    let sample = build_sample(&values)?;
    let specs = parse_methods(&args.methods)?;
    if specs.len() != 1 {
        return Err(Error::invalid_config(
            "detect takes exactly one --method",
        ));
    }
    let method = specs[0].realize(&sample)?;
    let fences = compute_fences(&sample, &method)?;
    let outer = match args.outer_k {
        Some(k) => Some(fences_from_quartiles(
            sample.q1(),
            sample.q3(),
            sample.n(),
            &FenceMethod::Tukey { k },
        )?),
        None => None,
    };
    let report = classify(&sample, &fences, outer.as_ref())?;

    match args.format {
        Format::Json => {
            let labels: Vec<serde_json::Value> = sample
                .original()
                .iter()
                .zip(&report.labels)
                .enumerate()
                .map(|(i, (&v, l))| json!({ "index": i, "value": v, "label": l }))
                .collect();
            let doc = json!({
                "method": fences.method,
                "n": sample.n(),
                "coefficients": {
                    "lower": fences.coefficient_lower,
                    "upper": fences.coefficient_upper,
                },
                "fences": { "lower": fences.lower, "upper": fences.upper },
                "whiskers": { "low": report.whisker_low, "high": report.whisker_high },
                "labels": labels,
                "summary": {
                    "n_flagged": report.n_flagged,
                    "degenerate_whiskers": report.degenerate_whiskers,
                    "outer_fences": report.outer,
                    "notes": report.notes,
                },
            });
            Ok(format!("{:#}\n", doc))
        }
        Format::Table => {
            let mut rows = vec![[
                "index".to_string(),
                "value".to_string(),
                "label".to_string(),
            ]];
            for (i, (&v, l)) in sample.original().iter().zip(&report.labels).enumerate() {
                rows.push([i.to_string(), format!("{v:.4}"), l.to_string()]);
            }
            let mut out = align(&rows);
            let _ = writeln!(
                out,
                "method: {}\nfences: [{:.4}, {:.4}]\nwhiskers: [{:.4}, {:.4}]\nn_flagged: {}",
                method_name(&fences.method),
                fences.lower,
                fences.upper,
                report.whisker_low,
                report.whisker_high,
                report.n_flagged
            );
            if let Some(o) = &report.outer {
                let _ = writeln!(out, "outer fences: [{:.4}, {:.4}]", o.lower, o.upper);
            }
            for note in &report.notes {
                let _ = writeln!(out, "note: {note}");
            }
            Ok(out)
        }
    }
}

fn parse_family(text: &str) -> Result<Family> {
    let (name, params) = match text.split_once(':') {
        Some((n, p)) => (n, p),
        None => (text, ""),
    };
    let params: Vec<f64> = if params.is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|p| {
                p.trim().parse::<f64>().map_err(|_| {
                    Error::invalid_config(format!("bad family parameter {p:?} in {text:?}"))
                })
            })
            .collect::<Result<_>>()?
    };
    let wrong_arity = |expect: &str| {
        Err(Error::invalid_config(format!(
            "family {name:?} takes {expect}, got {} in {text:?}",
            params.len()
        )))
    };
    match (name, params.as_slice()) {
        ("normal", []) => Ok(Family::Normal { mean: 0.0, sd: 1.0 }),
        ("normal", &[mean, sd]) => Ok(Family::Normal { mean, sd }),
        ("normal", _) => wrong_arity("0 or 2 parameters (mean, sd)"),
        ("chi_square", &[dof]) => Ok(Family::ChiSquare { dof }),
        ("chi_square", _) => wrong_arity("1 parameter (dof)"),
        ("student_t", &[dof]) => Ok(Family::StudentT { dof }),
        ("student_t", _) => wrong_arity("1 parameter (dof)"),
        ("gamma", &[shape, scale]) => Ok(Family::Gamma { shape, scale }),
        ("gamma", _) => wrong_arity("2 parameters (shape, scale)"),
        ("beta", &[alpha, beta]) => Ok(Family::Beta { alpha, beta }),
        ("beta", _) => wrong_arity("2 parameters (alpha, beta)"),
        ("exponential", &[mean]) => Ok(Family::Exponential { mean }),
        ("exponential", _) => wrong_arity("1 parameter (mean)"),
        ("log_normal", &[mu, sigma]) => Ok(Family::LogNormal { mu, sigma }),
        ("log_normal", _) => wrong_arity("2 parameters (mu, sigma)"),
        (other, _) => Err(Error::invalid_config(format!(
            "unknown family {other:?}: expected normal, chi_square, student_t, gamma, \
             beta, exponential, or log_normal"
        ))),
    }
}

fn parse_contamination(specs: &[String]) -> Result<Vec<(f64, usize)>> {
    specs
        .iter()
        .map(|s| {
            let bad =
                || Error::invalid_config(format!("bad --contaminate {s:?}: expected value:count"));
            let (v, c) = s.split_once(':').ok_or_else(bad)?;
            let value: f64 = v.trim().parse().map_err(|_| bad())?;
            let count: usize = c.trim().parse().map_err(|_| bad())?;
            Ok((value, count))
        })
        .collect()
}

// the model family a generator's draws should be re-fitted under
fn model_template(family: &Family) -> Result<DistributionModel> {
    match *family {
        Family::Normal { .. } => Ok(DistributionModel::Normal { mean: 0.0, sd: 1.0 }),
        Family::ChiSquare { dof } => Ok(DistributionModel::ChiSquare { dof }),
        Family::StudentT { dof } => Ok(DistributionModel::StudentT { dof }),
        Family::Gamma { shape, scale } => Ok(DistributionModel::Gamma { shape, scale }),
        _ => Err(Error::invalid_config(format!(
            "chauvenet_type_non_normal has no moment fitter for family {family}"
        ))),
    }
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<String> {
    let family = parse_family(&args.family)?;
    if args.methods.is_empty() {
        return Err(Error::invalid_config("at least one --method is required"));
    }
    let shim = MethodArgs {
        methods: args.methods.clone(),
        k: args.k,
        alpha: args.alpha,
        gamma: args.gamma,
        family: None,
    };
    let mut methods = Vec::with_capacity(args.methods.len());
    for name in &args.methods {
        // non_normal fits the generating family itself per replicate
        // (the correctly-specified case), so no --family is taken here
        if name == "chauvenet_type_non_normal" {
            methods.push(FenceMethod::ChauvenetTypeNonNormal {
                model: model_template(&family)?,
            });
            continue;
        }
        match parse_method(name, &shim)? {
            MethodSpec::Ready(m) => methods.push(m),
            MethodSpec::FitNonNormal(_) => unreachable!("handled above"),
        }
    }
    let config = SimConfig {
        family,
        n: args.n,
        contamination: parse_contamination(&args.contaminate)?,
        replicates: args.replicates,
        seed: args.seed,
        methods,
    };
    let result = run_simulation(&config)?;
    match args.format {
        Format::Json => Ok(format!("{}\n", result.to_json())),
        Format::Table => Ok(format!(
            "family = {}  n = {}  replicates = {}  seed = {}\n{}",
            result.family, result.n, result.replicates, result.seed,
            result.to_table()
        )),
    }
}

pub fn cmd_plot(args: &PlotArgs) -> Result<String> {
    let values = load_values(&args.input)?;
    let sample = build_sample(&values)?;
    let specs = if args.methods.methods.is_empty() {
        Vec::new() // render reports EmptySpec
    } else {
        parse_methods(&args.methods)?
    };
    let mut panels = Vec::with_capacity(specs.len());
    for spec in &specs {
        let method = spec.realize(&sample)?;
        let fences = compute_fences(&sample, &method)?;
        let report = classify(&sample, &fences, None)?;
        panels.push(PlotPanel::new(
            method_name(&fences.method),
            sample.clone(),
            report,
        ));
    }
    let mut plot = PlotSpec::new(panels);
    if let Some(range) = &args.range {
        let bad = || Error::invalid_config(format!("bad --range {range:?}: expected lo:hi"));
        let (lo, hi) = range.split_once(':').ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        plot = plot.with_range(lo, hi);
    }
    render_boxplots(&plot)
}

// wobble-free two-space column alignment
fn align<const W: usize>(rows: &[[String; W]]) -> String {
    let mut widths = [0usize; W];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        for (i, (w, cell)) in widths.iter().zip(row).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            out.push_str(&" ".repeat(w - cell.len()));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}
