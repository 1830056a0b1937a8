use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use isokernel::kernelmodel::{product_expand, CoefficientSeq, Kernel, Space};
use isokernel::numverify::{
    cosine_build, dimension_bound, falsify_spd, gram, sample_points, spacetime_check, CoeffFunc, Expr, Falsification,
    GramReport, SpacetimeKernel, SpacetimeReport,
};
use isokernel::spdlaw::{decide_product, decide_single, explain, Decision, SpdVerdict};

/// Exit status of a strict verdict or a consistent space-time check.
pub const EXIT_STRICT: u8 = 0;
/// Exit status of a positive-only verdict or an inconsistent space-time check.
pub const EXIT_POSITIVE_ONLY: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] isokernel::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
}

type CliResult<T> = Result<T, CliError>;

pub struct Outcome {
    pub exit: u8,
}

#[derive(Debug, Parser)]
#[command(
    name = "isokernel",
    version,
    about = "Strict positive definiteness of isotropic kernels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide strict positive definiteness of f, or of the product fg.
    Decide(DecideArgs),
    /// Tabulate the coefficients of the product fg.
    Expand(ExpandArgs),
    /// Sample points, report the Gram matrix and search for null vectors.
    Verify(VerifyArgs),
    /// Sampled check of a product kernel on a group times a sphere.
    Spacetime(SpacetimeArgs),
    /// Decision and verification in one document.
    Report(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Kernel spec document for f.
    #[arg(long = "f")]
    pub f: PathBuf,
    /// Kernel spec document for g.
    #[arg(long = "g")]
    pub g: Option<PathBuf>,
    /// Space document; defaults to the space of f.
    #[arg(long)]
    pub space_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Print the plain-text explanation instead of JSON.
    #[arg(long)]
    pub explain: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Largest index tabulated.
    #[arg(short = 'N', default_value_t = 20)]
    pub n_max: usize,
    /// Accuracy of every coefficient.
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Number of sampled points.
    #[arg(long, default_value_t = 40)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Truncation accuracy of kernel evaluations.
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    /// Configurations tried by the falsifier.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SpacetimeArgs {
    /// Space-time kernel document for F (with --lambda: a sphereInf kernel spec for f).
    #[arg(long = "f")]
    pub f: PathBuf,
    /// Space-time kernel document for G (with --lambda: a sphereInf kernel spec for g).
    /// Defaults to the constant 1.
    #[arg(long = "g")]
    pub g: Option<PathBuf>,
    /// Space document of kind "spacetime" naming the group; defaults to the
    /// real line.
    #[arg(long)]
    pub space_file: Option<PathBuf>,
    /// Build F(u,t) = f(t cos(lambda u)) and G(u,t) = g(t cos(theta u)).
    #[arg(long, requires = "theta")]
    pub lambda: Option<f64>,
    #[arg(long, requires = "lambda")]
    pub theta: Option<f64>,
    /// Number of distinct group elements per trial.
    #[arg(long, default_value_t = 3)]
    pub p: usize,
    #[arg(long, default_value_t = 32)]
    pub trials: usize,
    /// Largest k + l examined.
    #[arg(short = 'N', default_value_t = 40)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_kernel(path: &Path) -> CliResult<Kernel> {
    Kernel::from_json(&read(path)?).map_err(|e| with_file(path, e))
}

fn load_space(path: &Path) -> CliResult<Space> {
    let space: Space =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(space)
}

fn with_file(path: &Path, e: isokernel::Error) -> CliError {
    match e {
        isokernel::Error::Validation { path: field, message } => CliError::Core(isokernel::Error::Validation {
            path: format!("{}: {field}", path.display()),
            message,
        }),
        other => CliError::Core(other),
    }
}

struct Loaded {
    f: Kernel,
    g: Option<Kernel>,
    space: Space,
}

impl Loaded {
    fn factors(&self) -> Vec<&Kernel> {
        std::iter::once(&self.f).chain(self.g.as_ref()).collect()
    }

    fn decide(&self) -> CliResult<SpdVerdict> {
        let space = self.f.space();
        Ok(match &self.g {
            Some(g) => decide_product(&self.f, g, &space)?,
            None => decide_single(&self.f, &space)?,
        })
    }
}

fn load(inputs: &Inputs) -> CliResult<Loaded> {
    let f = load_kernel(&inputs.f)?;
    let g = inputs.g.as_deref().map(load_kernel).transpose()?;
    let space = match &inputs.space_file {
        Some(p) => load_space(p)?,
        None => f.space(),
    };
    space.validate()?;
    Ok(Loaded { f, g, space })
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn json_only(output: &Output, what: &str) -> CliResult<()> {
    if output.format == Format::Csv {
        return Err(CliError::Usage(format!(
            "{what} documents are JSON only; CSV is for tables"
        )));
    }
    Ok(())
}

fn to_csv<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

fn exit_for(decision: Decision) -> u8 {
    match decision {
        Decision::Strict => EXIT_STRICT,
        Decision::PositiveOnly => EXIT_POSITIVE_ONLY,
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Decide(args) => run_decide(args),
        Command::Expand(args) => run_expand(args),
        Command::Verify(args) => run_verify(args),
        Command::Spacetime(args) => run_spacetime(args),
        Command::Report(args) => run_report(args),
    }
}

fn run_decide(args: &DecideArgs) -> CliResult<Outcome> {
    json_only(&args.output, "verdict")?;
    let loaded = load(&args.inputs)?;
    let space = loaded.space.clone();
    let verdict = match &loaded.g {
        Some(g) => decide_product(&loaded.f, g, &space)?,
        None => decide_single(&loaded.f, &space)?,
    };
    let text = if args.explain {
        explain(&verdict)
    } else {
        pretty(&verdict)
    };
    emit(&args.output, &text)?;
    Ok(Outcome {
        exit: exit_for(verdict.decision),
    })
}

#[derive(Debug, Serialize)]
struct ExpansionRow {
    m: usize,
    coefficient: f64,
}

#[derive(Debug, Serialize)]
struct Expansion {
    space: Space,
    n_max: usize,
    eps: f64,
    rows: Vec<ExpansionRow>,
}

fn series<'a>(k: &'a Kernel, name: &str) -> CliResult<&'a CoefficientSeq> {
    k.as_series().ok_or_else(|| {
        CliError::Usage(format!(
            "{name}: expansions are tabulated for single-index series, not for kernels on {}",
            k.space()
        ))
    })
}

fn run_expand(args: &ExpandArgs) -> CliResult<Outcome> {
    if args.eps.is_nan() || args.eps <= 0.0 {
        return Err(CliError::Usage(format!("--eps must be positive, got {}", args.eps)));
    }
    let loaded = load(&args.inputs)?;
    let f = series(&loaded.f, "f")?;
    let one;
    let g = match &loaded.g {
        Some(g) => series(g, "g")?,
        None => {
            one = CoefficientSeq::polynomial(f.space().clone(), [(0, 1.0)])?;
            &one
        }
    };
    let rows: Vec<ExpansionRow> = product_expand(f, g, args.n_max, args.eps)?
        .into_iter()
        .map(|(m, coefficient)| ExpansionRow { m, coefficient })
        .collect();
    let text = match args.output.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => pretty(&Expansion {
            space: f.space().clone(),
            n_max: args.n_max,
            eps: args.eps,
            rows,
        }),
    };
    emit(&args.output, &text)?;
    Ok(Outcome { exit: 0 })
}

#[derive(Debug, Serialize)]
struct Verification {
    #[serde(flatten)]
    gram: GramReport,
    decision: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    falsifier_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    falsification: Option<Falsification>,
}

fn check_verify_args(args: &VerifyArgs) -> CliResult<()> {
    if args.points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    if args.eps.is_nan() || args.eps <= 0.0 {
        return Err(CliError::Usage(format!("--eps must be positive, got {}", args.eps)));
    }
    Ok(())
}

fn verify(args: &VerifyArgs, loaded: &Loaded, verdict: &SpdVerdict) -> CliResult<Verification> {
    let factors = loaded.factors();
    let points = sample_points(&loaded.space, args.points, args.seed)?;
    let report = gram(&points, &factors, args.eps)?;
    let (falsifier_points, falsification) = if verdict.decision == Decision::PositiveOnly {
        let n = dimension_bound(&loaded.space, &factors)?.map_or(args.points, |b| b.saturating_add(2));
        (
            Some(n),
            falsify_spd(&loaded.space, &factors, n, args.trials, args.seed, args.eps)?,
        )
    } else {
        (None, None)
    };
    Ok(Verification {
        gram: report,
        decision: verdict.decision,
        falsifier_points,
        falsification,
    })
}

fn run_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    json_only(&args.output, "verification")?;
    check_verify_args(args)?;
    let loaded = load(&args.inputs)?;
    let verdict = loaded.decide()?;
    let verification = verify(args, &loaded, &verdict)?;
    emit(&args.output, &pretty(&verification))?;
    Ok(Outcome { exit: 0 })
}

#[derive(Debug, Serialize)]
struct FullReport {
    verdict: SpdVerdict,
    explanation: Vec<String>,
    verification: Verification,
}

fn run_report(args: &VerifyArgs) -> CliResult<Outcome> {
    json_only(&args.output, "report")?;
    check_verify_args(args)?;
    let loaded = load(&args.inputs)?;
    let verdict = loaded.decide()?;
    let verification = verify(args, &loaded, &verdict)?;
    let exit = exit_for(verdict.decision);
    let report = FullReport {
        explanation: explain(&verdict).lines().map(str::to_owned).collect(),
        verdict,
        verification,
    };
    emit(&args.output, &pretty(&report))?;
    Ok(Outcome { exit })
}

fn constant_one() -> CliResult<SpacetimeKernel> {
    Ok(SpacetimeKernel::new(
        None,
        [(0, CoeffFunc::Expr(Expr::Const { value: 1.0 }))].into_iter().collect(),
    )?)
}

fn load_spacetime_kernel(path: &Path) -> CliResult<SpacetimeKernel> {
    SpacetimeKernel::from_json(&read(path)?).map_err(|e| with_file(path, e))
}

fn run_spacetime(args: &SpacetimeArgs) -> CliResult<Outcome> {
    let group = match &args.space_file {
        Some(path) => match load_space(path)? {
            Space::Spacetime { group, .. } => group,
            other => {
                return Err(CliError::Usage(format!(
                    "{}: expected a space of kind \"spacetime\", got {other}",
                    path.display()
                )))
            }
        },
        None => isokernel::numverify::GroupDescriptor::RealLine,
    };
    let (f, g) = match (args.lambda, args.theta) {
        (Some(lambda), Some(theta)) => {
            let f = load_kernel(&args.f)?;
            let f = series(&f, "f")?.clone();
            let g = match &args.g {
                Some(path) => series(&load_kernel(path)?, "g")?.clone(),
                None => f.clone(),
            };
            cosine_build(lambda, theta, &f, &g, args.n_max)?
        }
        _ => {
            let f = load_spacetime_kernel(&args.f)?;
            let g = match &args.g {
                Some(path) => load_spacetime_kernel(path)?,
                None => constant_one()?,
            };
            (f, g)
        }
    };
    let report: SpacetimeReport = spacetime_check(&f, &g, &group, args.p, args.trials, args.n_max, args.seed)?;
    let text = match args.output.format {
        Format::Csv => to_csv(&report.rows)?,
        Format::Json => pretty(&report),
    };
    emit(&args.output, &text)?;
    Ok(Outcome {
        exit: if report.consistent {
            EXIT_STRICT
        } else {
            EXIT_POSITIVE_ONLY
        },
    })
}
