//! Command-line surface: `edgeworth-lab <summary|pdf|compare|moment|mc> [flags]`.
//!
//! Every command renders to a string so the binary only decides where the
//! bytes go. JSON output is a single object that echoes the resolved config.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::delta::{pearson_summary, SummaryStats, Transform};
use crate::edgeworth::{build_model, ApproxModel};
use crate::error::{Error, Result};
use crate::exact::{hotelling_pdf_r, mc_sample_r, McConfig};
use crate::metrics::{
    cdf_on_grid, ks_distance, max_interval_error, uniform_grid, DEFAULT_CLIP, DEFAULT_POINTS,
};
use crate::moments::{
    cumulants_from_moments, pearson_central_moments, sample_mean_moment, MomentTable,
};
use crate::series::MultiIndex;

#[derive(Debug, Parser)]
#[command(
    name = "edgeworth-lab",
    version,
    about = "Edgeworth approximations to the distribution of Pearson's r"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the truncated mean, variance, skewness and kurtosis coefficients.
    Summary(RunArgs),
    /// Tabulate the approximate and exact densities of r.
    Pdf(RunArgs),
    /// Largest interval-probability error of a model against the exact density.
    Compare(RunArgs),
    /// Moment of the Pearson sample means as a polynomial in 1/n.
    Moment(MomentArgs),
    /// Monte Carlo validation of the exact density.
    Mc(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformName {
    Identity,
    Arctanh,
    BasicFisher,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Sample size.
    #[arg(long, default_value_t = 35)]
    pub n: u32,
    /// Population correlation.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub rho: f64,
    #[arg(long, value_enum, default_value_t = TransformName::Identity)]
    pub transform: TransformName,
    /// Drop the skewness term.
    #[arg(long)]
    pub no_gamma3: bool,
    /// Drop the excess-kurtosis term.
    #[arg(long)]
    pub no_gamma4: bool,
    /// Number of grid points on (-1, 1).
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub grid: usize,
    /// Distance kept from the endpoints of (-1, 1).
    #[arg(long, default_value_t = DEFAULT_CLIP)]
    pub clip: f64,
    /// Monte Carlo replicates.
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    /// Output format; `pdf` defaults to csv, everything else to json.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct MomentArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Exponents over (X, Y, X²-1, Y²-1, XY-ρ), e.g. `2,1,1,0,0`.
    #[arg(long)]
    pub index: String,
}

/// Fully resolved settings of one invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub n: u32,
    pub rho: f64,
    pub transform: TransformName,
    pub gamma3: bool,
    pub gamma4: bool,
    pub grid: usize,
    pub clip: f64,
    pub reps: usize,
    pub seed: u64,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<u32>>,
}

impl RunConfig {
    pub fn resolve(command: &str, args: &RunArgs, index: Option<&MultiIndex>) -> Result<Self> {
        if !(args.rho.is_finite() && args.rho.abs() < 1.0) {
            return Err(Error::Usage(format!(
                "--rho must lie in (-1, 1), got {}",
                args.rho
            )));
        }
        if args.n < 5 {
            return Err(Error::Usage(format!(
                "--n must be at least 5, got {}",
                args.n
            )));
        }
        if args.reps == 0 {
            return Err(Error::Usage("--reps must be positive".into()));
        }
        let default_format = if command == "pdf" {
            Format::Csv
        } else {
            Format::Json
        };
        Ok(RunConfig {
            command: command.into(),
            n: args.n,
            rho: args.rho,
            transform: args.transform,
            gamma3: !args.no_gamma3,
            gamma4: !args.no_gamma4,
            grid: args.grid,
            clip: args.clip,
            reps: args.reps,
            seed: args.seed,
            format: args.format.unwrap_or(default_format),
            index: index.map(|i| i.exponents().to_vec()),
        })
    }
}

/// Rendered output plus any warnings destined for standard error.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub body: String,
    pub warnings: Vec<String>,
}

/// Runs a parsed command line; also returns the requested output path.
pub fn run(cli: &Cli) -> Result<(Output, Option<PathBuf>)> {
    let (cfg, out) = match &cli.command {
        Command::Summary(a) => (RunConfig::resolve("summary", a, None)?, a.out.clone()),
        Command::Pdf(a) => (RunConfig::resolve("pdf", a, None)?, a.out.clone()),
        Command::Compare(a) => (RunConfig::resolve("compare", a, None)?, a.out.clone()),
        Command::Mc(a) => (RunConfig::resolve("mc", a, None)?, a.out.clone()),
        Command::Moment(m) => {
            let idx: MultiIndex = m.index.parse()?;
            (
                RunConfig::resolve("moment", &m.run, Some(&idx))?,
                m.run.out.clone(),
            )
        }
    };
    let output = match cfg.command.as_str() {
        "summary" => cmd_summary(&cfg)?,
        "pdf" => cmd_pdf(&cfg)?,
        "compare" => cmd_compare(&cfg)?,
        "moment" => cmd_moment(&cfg)?,
        "mc" => cmd_mc(&cfg)?,
        other => unreachable!("unknown command {other}"),
    };
    Ok((output, out))
}

fn transform_of(name: TransformName) -> Transform {
    match name {
        TransformName::Arctanh | TransformName::BasicFisher => Transform::Arctanh,
        TransformName::Identity => Transform::Identity,
    }
}

/// The approximate model selected by `cfg`, with any flag warnings.
pub fn select_model(cfg: &RunConfig) -> Result<(ApproxModel, Vec<String>)> {
    let mut warnings = Vec::new();
    if cfg.transform == TransformName::BasicFisher {
        if !cfg.gamma3 || !cfg.gamma4 {
            warnings.push(
                "basic-fisher has no Edgeworth terms; --no-gamma3/--no-gamma4 ignored".into(),
            );
        }
        return Ok((
            ApproxModel::BasicFisher {
                n: cfg.n,
                rho: cfg.rho,
            },
            warnings,
        ));
    }
    let transform = transform_of(cfg.transform);
    let stats = pearson_summary(&transform, cfg.rho)?;
    let model = build_model(&stats, cfg.n, transform, cfg.gamma3, cfg.gamma4)?;
    Ok((ApproxModel::Edgeworth(model), warnings))
}

/// Full double precision, 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(num).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn json_body(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Evaluated {
    pub m: f64,
    pub variance: f64,
    pub gamma3: f64,
    pub gamma4: f64,
}

pub fn cmd_summary(cfg: &RunConfig) -> Result<Output> {
    let (model, warnings) = select_model(cfg)?;
    let (stats, eval): (Option<SummaryStats>, Evaluated) = match &model {
        ApproxModel::Edgeworth(m) => (
            Some(pearson_summary(&m.transform, cfg.rho)?),
            Evaluated {
                m: m.mean,
                variance: m.variance,
                gamma3: m.gamma3,
                gamma4: m.gamma4,
            },
        ),
        ApproxModel::BasicFisher { n, rho } => (
            None,
            Evaluated {
                m: rho.atanh(),
                variance: 1.0 / (*n as f64 - 3.0),
                gamma3: 0.0,
                gamma4: 0.0,
            },
        ),
    };
    let body = match cfg.format {
        Format::Json => json_body(json!({
            "config": cfg,
            "model": model.label(),
            "coefficients": stats,
            "evaluated": eval,
        })),
        Format::Csv => {
            let c = stats.map_or([f64::NAN; 6], |s| s.coefficients());
            csv(
                &[
                    "m0", "m1", "v1", "v2", "g3coef", "g4coef", "m", "V", "gamma3", "gamma4",
                ],
                [c.iter()
                    .copied()
                    .chain([eval.m, eval.variance, eval.gamma3, eval.gamma4])
                    .collect()],
            )
        }
    };
    Ok(Output { body, warnings })
}

pub fn cmd_pdf(cfg: &RunConfig) -> Result<Output> {
    let (model, warnings) = select_model(cfg)?;
    check_grid(cfg)?;
    let xs = uniform_grid(cfg.grid, cfg.clip);
    let mut rows = Vec::with_capacity(xs.len());
    for &r in &xs {
        rows.push(vec![
            r,
            model.pdf_r(r)?,
            hotelling_pdf_r(cfg.n, cfg.rho, r)?,
        ]);
    }
    let body = match cfg.format {
        Format::Csv => csv(&["r", "approx_pdf", "exact_pdf"], rows),
        Format::Json => {
            let col = |j: usize| rows.iter().map(|row| row[j]).collect::<Vec<_>>();
            json_body(json!({
                "config": cfg,
                "model": model.label(),
                "r": col(0),
                "approx_pdf": col(1),
                "exact_pdf": col(2),
            }))
        }
    };
    Ok(Output { body, warnings })
}

fn check_grid(cfg: &RunConfig) -> Result<()> {
    if cfg.grid < 1001 {
        return Err(Error::Usage(format!(
            "--grid must be at least 1001, got {}",
            cfg.grid
        )));
    }
    if !(cfg.clip > 0.0 && cfg.clip <= 1e-4) {
        return Err(Error::Usage(format!(
            "--clip must lie in (0, 1e-4], got {}",
            cfg.clip
        )));
    }
    Ok(())
}

/// Maximum interval error of `model` against the exact density on the config grid.
pub fn compare_model(
    model: &ApproxModel,
    n: u32,
    rho: f64,
    grid: usize,
    clip: f64,
) -> Result<crate::metrics::IntervalError> {
    let approx = cdf_on_grid(|r| model.pdf_r(r).unwrap_or(f64::NAN), grid, clip)?;
    let exact = cdf_on_grid(
        |r| hotelling_pdf_r(n, rho, r).unwrap_or(f64::NAN),
        grid,
        clip,
    )?;
    max_interval_error(&approx, &exact)
}

pub fn cmd_compare(cfg: &RunConfig) -> Result<Output> {
    let (model, warnings) = select_model(cfg)?;
    let e = compare_model(&model, cfg.n, cfg.rho, cfg.grid, cfg.clip)?;
    let body = match cfg.format {
        Format::Json => json_body(json!({
            "config": cfg,
            "model": model.label(),
            "max_interval_error": e.error,
            "a": e.a,
            "b": e.b,
        })),
        Format::Csv => csv(&["max_interval_error", "a", "b"], [vec![e.error, e.a, e.b]]),
    };
    Ok(Output { body, warnings })
}

/// Sample-mean moment of `idx` keyed by the whole power of `1/n`.
pub fn moment_polynomial(table: &MomentTable, idx: &MultiIndex) -> Result<BTreeMap<u32, f64>> {
    if idx.dim() != table.dim() {
        return Err(Error::Usage(format!(
            "index {idx} needs {} entries",
            table.dim()
        )));
    }
    if idx.order() > table.max_order() {
        return Err(Error::Usage(format!(
            "index {idx} has order {}, maximum is {}",
            idx.order(),
            table.max_order()
        )));
    }
    let ct = cumulants_from_moments(table)?;
    let poly = sample_mean_moment(&ct, idx)?;
    poly.terms()
        .map(|(p, c)| {
            if p % 2 == 0 {
                Ok((p / 2, c))
            } else {
                Err(Error::Numeric(format!(
                    "half-integer power n^(-{p}/2) in a mean moment"
                )))
            }
        })
        .collect()
}

pub fn cmd_moment(cfg: &RunConfig) -> Result<Output> {
    let idx = MultiIndex::new(cfg.index.clone().unwrap_or_default());
    let table = pearson_central_moments(cfg.rho)?;
    let poly = moment_polynomial(&table, &idx)?;
    let body = match cfg.format {
        Format::Json => {
            let keyed: BTreeMap<String, f64> =
                poly.iter().map(|(k, v)| (k.to_string(), *v)).collect();
            json_body(json!({ "config": cfg, "index": idx, "polynomial": keyed }))
        }
        Format::Csv => {
            let mut s = String::from("power_of_inv_n,coefficient\n");
            for (k, v) in &poly {
                let _ = writeln!(s, "{k},{}", num(*v));
            }
            s
        }
    };
    Ok(Output {
        body,
        warnings: Vec::new(),
    })
}

/// KS distance between Monte Carlo draws of `r` and the exact CDF.
pub fn mc_ks(cfg: &McConfig, grid: usize, clip: f64) -> Result<f64> {
    let mut sample = mc_sample_r(cfg)?;
    sample.sort_by(f64::total_cmp);
    let exact = cdf_on_grid(
        |r| hotelling_pdf_r(cfg.n, cfg.rho, r).unwrap_or(f64::NAN),
        grid,
        clip,
    )?;
    ks_distance(&sample, |x| exact.value_at(x))
}

pub fn cmd_mc(cfg: &RunConfig) -> Result<Output> {
    let mc = McConfig {
        n: cfg.n,
        rho: cfg.rho,
        replicates: cfg.reps,
        seed: cfg.seed,
    };
    let ks = mc_ks(&mc, cfg.grid, cfg.clip)?;
    let body = match cfg.format {
        Format::Json => json_body(json!({
            "config": cfg,
            "ks_distance": ks,
            "replicates": cfg.reps,
            "seed": cfg.seed,
        })),
        Format::Csv => format!(
            "ks_distance,replicates,seed\n{},{},{}\n",
            num(ks),
            cfg.reps,
            cfg.seed
        ),
    };
    Ok(Output {
        body,
        warnings: Vec::new(),
    })
}
