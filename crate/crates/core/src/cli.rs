//! The `qschur` command-line front end.
//!
//! Every subcommand reads one JSON file and writes one JSON report, to
//! `--out` (atomically) or to stdout. Input files may carry a `"config"`
//! object with the same keys as the flags; flags win over the file, the
//! file wins over `QSCHUR_SEED`, which wins over the built-in defaults.
//!
//! Exit codes: 0 pass, 1 failure with a witness, 2 input or runtime error,
//! 3 inconclusive.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::pick::{
    dual_certify, hindmarsh_certify, pick_matrix, pick_stein_residual, HarnessConfig, LeftEvaluation,
    OffSliceCorruption, PickProblem, PickSide, RightEvaluation, SampledFunction,
};
use crate::qlinalg::{psd_check, psd_check_complex};
use crate::quaternion::Quaternion;
use crate::report::{CertReport, Verdict};
use crate::sampling::{disc_point, trial_rng, DEFAULT_MARGIN};
use crate::series::{block_criterion, certify_schur, ComplexSeries, GrowthBound, QPowerSeries};
use crate::QMatrix;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

pub const SEED_ENV: &str = "QSCHUR_SEED";

const DECOMPOSE_STAGE: u64 = 0x5d;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] crate::Error),
}

#[derive(Parser, Debug)]
#[command(name = "qschur", version, about = "Quaternionic Schur-class and Pick-matrix checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check contractivity of the Toeplitz sections T_n(g), n <= --order.
    CertifySeries(CommonArgs),
    /// Compute the Pick matrix of a finite problem and test it for positivity.
    Pick(CommonArgs),
    /// Sample Pick matrices of a (possibly corrupted) series evaluation and rebuild the series.
    Hindmarsh {
        #[command(flatten)]
        common: CommonArgs,
        /// Use right evaluation and dual Pick matrices.
        #[arg(long)]
        dual: bool,
    },
    /// Split a series on the complex slice as s + h j and check the block criterion.
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
        /// Write s as a complex series file.
        #[arg(long)]
        s_out: Option<PathBuf>,
        /// Write h as a complex series file.
        #[arg(long)]
        h_out: Option<PathBuf>,
    },
    /// Evaluate a series at quaternion points.
    Eval {
        /// Series file; may list extra points under "points".
        input: PathBuf,
        /// Point as w,x,y,z. Repeatable.
        #[arg(long = "point", value_parser = parse_point)]
        points: Vec<Quaternion>,
        /// Right evaluation sum g_k z^k instead of sum z^k g_k.
        #[arg(long)]
        right: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Input JSON file.
    pub input: PathBuf,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigOverrides,
}

/// Optional settings, from flags or from the `"config"` object of a file.
#[derive(Args, Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    /// Relative PSD tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Highest Toeplitz order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Trials per harness stage.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Reconstruction radius.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Sample points on the reconstruction circle.
    #[arg(long)]
    pub dft_points: Option<usize>,
    /// Sampled points satisfy |z| < 1 - margin.
    #[arg(long)]
    pub margin: Option<f64>,
    /// Degree of the reconstructed series.
    #[arg(long)]
    pub recon_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub tol: f64,
    pub order: usize,
    pub samples: usize,
    pub seed: u64,
    pub radius: f64,
    pub dft_points: usize,
    pub margin: f64,
    pub recon_degree: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let h = HarnessConfig::default();
        RunConfig {
            tol: h.tol,
            order: 64,
            samples: h.samples,
            seed: h.seed,
            radius: h.radius,
            dft_points: h.dft_points,
            margin: DEFAULT_MARGIN,
            recon_degree: h.recon_degree,
        }
    }
}

impl RunConfig {
    pub fn resolve(flags: &ConfigOverrides, file: &ConfigOverrides, env_seed: Option<u64>) -> Result<Self, CliError> {
        let d = RunConfig::default();
        let cfg = RunConfig {
            tol: flags.tol.or(file.tol).unwrap_or(d.tol),
            order: flags.order.or(file.order).unwrap_or(d.order),
            samples: flags.samples.or(file.samples).unwrap_or(d.samples),
            seed: flags.seed.or(file.seed).or(env_seed).unwrap_or(d.seed),
            radius: flags.radius.or(file.radius).unwrap_or(d.radius),
            dft_points: flags.dft_points.or(file.dft_points).unwrap_or(d.dft_points),
            margin: flags.margin.or(file.margin).unwrap_or(d.margin),
            recon_degree: flags.recon_degree.or(file.recon_degree).unwrap_or(d.recon_degree),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.order == 0 || self.samples == 0 || self.recon_degree == 0 {
            return bad("order, samples and recon_degree must be positive".into());
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return bad(format!("radius must lie in (0, 1), got {}", self.radius));
        }
        if !(self.margin > 0.0 && self.margin < 1.0) {
            return bad(format!("margin must lie in (0, 1), got {}", self.margin));
        }
        if self.dft_points <= 2 * self.order {
            return bad(format!("dft_points ({}) must exceed 2 * order ({})", self.dft_points, 2 * self.order));
        }
        Ok(())
    }

    pub fn harness(&self) -> HarnessConfig {
        HarnessConfig {
            samples: self.samples,
            seed: self.seed,
            tol: self.tol,
            margin: self.margin,
            radius: self.radius,
            dft_points: self.dft_points,
            recon_degree: self.recon_degree,
            agreement_radius: self.radius,
            ..HarnessConfig::default()
        }
    }
}

fn parse_point(s: &str) -> Result<Quaternion, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [w, x, y, z] => Ok(Quaternion::new(w, x, y, z)),
        _ => Err(format!("expected four components w,x,y,z, got {}", parts.len())),
    }
}

fn env_seed() -> Result<Option<u64>, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|e| CliError::Config(format!("{SEED_ENV}={v:?}: {e}"))),
        Err(_) => Ok(None),
    }
}

struct Input {
    path: PathBuf,
    body: Value,
    config: ConfigOverrides,
}

impl Input {
    fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        let mut body: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse { path: path.into(), message: format!("malformed JSON: {e}") })?;
        if !body.is_object() {
            return Err(CliError::Parse { path: path.into(), message: "expected a JSON object at the top level".into() });
        }
        let config = match body.as_object_mut().and_then(|m| m.remove("config")) {
            Some(c) => decode(path, c, Some("config"))?,
            None => ConfigOverrides::default(),
        };
        Ok(Input { path: path.into(), body, config })
    }

    fn take<T: DeserializeOwned>(&mut self, key: &str) -> Result<Option<T>, CliError> {
        match self.body.as_object_mut().and_then(|m| m.remove(key)) {
            Some(v) => decode(&self.path, v, Some(key)).map(Some),
            None => Ok(None),
        }
    }

    fn parse<T: DeserializeOwned>(self) -> Result<T, CliError> {
        decode(&self.path, self.body, None)
    }

    fn series(self) -> Result<QPowerSeries, CliError> {
        let g: QPowerSeries = self.parse()?;
        g.check_growth(GrowthBound::default())?;
        Ok(g)
    }
}

fn decode<T: DeserializeOwned>(path: &Path, value: Value, prefix: Option<&str>) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let field = match (prefix, inner.as_str()) {
            (Some(p), ".") => p.to_string(),
            (Some(p), i) if i.starts_with('[') => format!("{p}{i}"),
            (Some(p), i) => format!("{p}.{i}"),
            (None, i) => i.to_string(),
        };
        let message = if field == "." {
            e.into_inner().to_string()
        } else {
            format!("field `{field}`: {}", e.into_inner())
        };
        CliError::Parse { path: path.into(), message }
    })
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.into(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn finish(report: &CertReport, out: Option<&Path>) -> Result<i32, CliError> {
    emit(report, out)?;
    eprintln!("{:?}: {}", report.verdict, report.statement);
    Ok(exit_code(report.verdict))
}

fn resolve(args: &CommonArgs, input: &Input) -> Result<RunConfig, CliError> {
    RunConfig::resolve(&args.config, &input.config, env_seed()?)
}

pub fn cmd_certify_series(args: &CommonArgs) -> Result<i32, CliError> {
    let input = Input::load(&args.input)?;
    let cfg = resolve(args, &input)?;
    let g = input.series()?;
    finish(&certify_schur(&g, cfg.order, cfg.tol), args.out.as_deref())
}

#[derive(Debug, Serialize)]
pub struct PickReport {
    pub side: PickSide,
    pub verdict: Verdict,
    pub statement: String,
    pub matrix: QMatrix,
    pub min_eigenvalue: f64,
    pub eigenvalue_scale: f64,
    pub psd: bool,
    pub residuals: BTreeMap<String, f64>,
    pub tol: f64,
}

pub fn cmd_pick(args: &CommonArgs) -> Result<i32, CliError> {
    let input = Input::load(&args.input)?;
    let cfg = resolve(args, &input)?;
    let problem: PickProblem = input.parse()?;
    let p = pick_matrix(&problem)?;
    let check = psd_check(&p, cfg.tol)?;
    let residuals = BTreeMap::from([
        ("hermitian".to_string(), p.hermitian_defect()?),
        ("stein".to_string(), pick_stein_residual(&problem, &p)?),
    ]);
    let (verdict, statement) = if check.psd {
        (Verdict::Pass, format!("the {}x{} Pick matrix is positive semidefinite", p.rows(), p.rows()))
    } else {
        (
            Verdict::Fail,
            format!("the Pick matrix has a negative eigenvalue {:e} on its complex embedding", check.min_eigenvalue),
        )
    };
    let report = PickReport {
        side: problem.side(),
        verdict,
        statement,
        matrix: p,
        min_eigenvalue: check.min_eigenvalue,
        eigenvalue_scale: check.scale,
        psd: check.psd,
        residuals,
        tol: cfg.tol,
    };
    emit(&report, args.out.as_deref())?;
    eprintln!("{:?}: {}", report.verdict, report.statement);
    Ok(exit_code(verdict))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HindmarshSpec {
    series: QPowerSeries,
    #[serde(default)]
    corruption: Option<Corruption>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Corruption {
    #[serde(default)]
    offslice_offset: Option<Quaternion>,
    #[serde(default = "unit_scale")]
    scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

pub fn cmd_hindmarsh(args: &CommonArgs, dual: bool) -> Result<i32, CliError> {
    let input = Input::load(&args.input)?;
    let cfg = resolve(args, &input)?;
    let has_series_key = input.body.get("series").is_some();
    let spec = if has_series_key {
        input.parse::<HindmarshSpec>()?
    } else {
        HindmarshSpec { series: input.parse()?, corruption: None }
    };
    spec.series.check_growth(GrowthBound::default())?;

    let base: Box<dyn SampledFunction> = if dual {
        Box::new(RightEvaluation(spec.series))
    } else {
        Box::new(LeftEvaluation(spec.series))
    };
    let f: Box<dyn SampledFunction> = match spec.corruption {
        Some(c) if !c.scale.is_finite() => {
            return Err(CliError::Config(format!("corruption.scale must be finite, got {}", c.scale)))
        }
        Some(c) => Box::new(OffSliceCorruption {
            base,
            offset: c.offslice_offset.unwrap_or(Quaternion::ZERO),
            scale: c.scale,
        }),
        None => base,
    };
    let harness = cfg.harness();
    let report = if dual { dual_certify(&f, &harness)? } else { hindmarsh_certify(&f, &harness)? };
    finish(&report, args.out.as_deref())
}

#[derive(Debug, Serialize)]
pub struct BlockCheck {
    pub order: usize,
    pub psd: bool,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub verdict: Verdict,
    pub statement: String,
    pub s: ComplexSeries,
    pub h: ComplexSeries,
    /// max |g(z) - s(z) - h(z) j| over the sampled slice points.
    pub slice_residual: f64,
    pub slice_points: usize,
    pub block_criterion: BlockCheck,
    pub seed: u64,
    pub tol: f64,
}

pub fn cmd_decompose(args: &CommonArgs, s_out: Option<&Path>, h_out: Option<&Path>) -> Result<i32, CliError> {
    let input = Input::load(&args.input)?;
    let cfg = resolve(args, &input)?;
    let g = input.series()?;
    let (s, h) = g.slice_decompose();

    let slice_residual = (0..cfg.samples)
        .map(|t| {
            let z = disc_point(&mut trial_rng(cfg.seed, DECOMPOSE_STAGE, t as u64), 1.0 - cfg.margin);
            let joined = Quaternion::join(s.eval(z), h.eval(z));
            (g.eval_left(Quaternion::from_complex(z)) - joined).norm()
        })
        .fold(0.0, f64::max);

    let check = psd_check_complex(&block_criterion(&s, &h, cfg.order), cfg.tol)?;
    let (verdict, statement) = if check.psd {
        (Verdict::Pass, format!("block criterion is PSD at order {}", cfg.order))
    } else {
        (
            Verdict::Fail,
            format!("block criterion has eigenvalue {:e} at order {}: g is not in the Schur class", check.min_eigenvalue, cfg.order),
        )
    };
    if let Some(p) = s_out {
        emit(&s, Some(p))?;
    }
    if let Some(p) = h_out {
        emit(&h, Some(p))?;
    }
    let report = DecomposeReport {
        verdict,
        statement,
        s,
        h,
        slice_residual,
        slice_points: cfg.samples,
        block_criterion: BlockCheck { order: cfg.order, psd: check.psd, min_eigenvalue: check.min_eigenvalue },
        seed: cfg.seed,
        tol: cfg.tol,
    };
    emit(&report, args.out.as_deref())?;
    eprintln!("{:?}: {}", report.verdict, report.statement);
    Ok(exit_code(verdict))
}

#[derive(Debug, Serialize)]
pub struct Evaluation {
    pub point: Quaternion,
    pub value: Quaternion,
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub side: &'static str,
    pub evaluations: Vec<Evaluation>,
}

pub fn cmd_eval(input: &Path, points: &[Quaternion], right: bool, out: Option<&Path>) -> Result<i32, CliError> {
    let mut input = Input::load(input)?;
    let mut all: Vec<Quaternion> = input.take("points")?.unwrap_or_default();
    all.extend_from_slice(points);
    let g = input.series()?;
    let evaluations = all
        .into_iter()
        .map(|z| Evaluation { point: z, value: if right { g.eval_right(z) } else { g.eval_left(z) } })
        .collect();
    emit(&EvalReport { side: if right { "right" } else { "left" }, evaluations }, out)?;
    Ok(EXIT_PASS)
}

pub fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::CertifySeries(a) => cmd_certify_series(a),
        Command::Pick(a) => cmd_pick(a),
        Command::Hindmarsh { common, dual } => cmd_hindmarsh(common, *dual),
        Command::Decompose { common, s_out, h_out } => cmd_decompose(common, s_out.as_deref(), h_out.as_deref()),
        Command::Eval { input, points, right, out } => cmd_eval(input, points, *right, out.as_deref()),
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn run_from_env() -> i32 {
    run(std::env::args_os())
}
