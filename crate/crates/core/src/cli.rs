//! Command-line front end: graph ingestion, mode dispatch and reporting.
//!
//! Exit codes: 0 on success, 2 on malformed input or guard violations,
//! 3 when a solver fails.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Parser, ValueEnum};
use thiserror::Error;

use crate::functional::rayleigh;
use crate::generators::family;
use crate::graph::{Graph, GraphError};
use crate::ipm::{cluster2, cluster3, IpmConfig, IpmError};
use crate::nodal::SignClasses;
use crate::oracle::{cheeger_h, cheeger_rho, OracleError};
use crate::report::{ExactValue, Format, Report, Results, TraceSummary};
use crate::scalar::Rational;
use crate::verify::{inequality_chain, verify_eigenpair, verify_eigenpair_exact, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Cluster2,
    Cluster3,
    Oracle,
    Verify,
    Chain,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Cluster2 => "cluster2",
            Mode::Cluster3 => "cluster3",
            Mode::Oracle => "oracle",
            Mode::Verify => "verify",
            Mode::Chain => "chain",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Text => Format::Text,
        }
    }
}

/// Spectral clustering with the graph 1-Laplacian.
#[derive(Clone, Debug, Parser)]
#[command(name = "graph1lap", version, about)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "family"])))]
pub struct RunConfig {
    /// Edge list file: one `i j [w]` per line, 1-based ids, `#` comments.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Named family: path:N, cycle:N, complete:N, star:N, grid:R,C, random:N,P,SEED.
    #[arg(long, value_name = "NAME:ARGS")]
    pub family: Option<String>,
    #[arg(long, value_enum, default_value = "cluster2")]
    pub mode: Mode,
    /// Restrict oracle mode to one k.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub k: Option<u8>,
    /// Relative stopping tolerance on the eigenvalue estimate.
    #[arg(long, default_value_t = 1e-9)]
    pub eps: f64,
    /// Maximum outer iterations per initialization.
    #[arg(long = "max-iter", default_value_t = 500)]
    pub max_iter: usize,
    /// Number of random initializations.
    #[arg(long, default_value_t = 10)]
    pub inits: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Primal-dual gap target of the inner problem.
    #[arg(long = "inner-tol", default_value_t = 1e-10)]
    pub inner_tol: f64,
    /// Iteration cap of the inner problem.
    #[arg(long = "inner-max", default_value_t = 10_000)]
    pub inner_max: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Print per-iteration traces to stderr.
    #[arg(long)]
    pub verbose: bool,
    /// Vector for verify mode, comma separated; entries such as `1/3` or
    /// integers select exact arithmetic.
    #[arg(long, allow_hyphen_values = true)]
    pub vector: Option<String>,
    /// Eigenvalue for verify mode; defaults to the Rayleigh quotient.
    #[arg(long)]
    pub mu: Option<String>,
    /// Absolute balance tolerance for floating-point verification.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

impl RunConfig {
    pub fn ipm(&self) -> IpmConfig {
        IpmConfig {
            eps: self.eps,
            max_outer: self.max_iter,
            inner_tol: self.inner_tol,
            inner_max: self.inner_max,
            n_inits: self.inits,
            seed: self.seed,
            ..IpmConfig::default()
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Ipm(#[from] IpmError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) | CliError::Graph(_) | CliError::Oracle(_) => {
                EXIT_INPUT
            }
            CliError::Ipm(e) => ipm_code(e),
            CliError::Verify(e) => match e {
                VerifyError::Precondition(_) | VerifyError::Graph(_) | VerifyError::Oracle(_) => {
                    EXIT_INPUT
                }
                VerifyError::Ipm(e) => ipm_code(e),
                VerifyError::NotConverged(_) => EXIT_SOLVER,
            },
        }
    }
}

fn ipm_code(e: &IpmError) -> i32 {
    match e {
        IpmError::Config(_) | IpmError::Graph(_) | IpmError::Oracle(_) => EXIT_INPUT,
        _ => EXIT_SOLVER,
    }
}

pub fn load_graph(cfg: &RunConfig) -> Result<Graph, CliError> {
    match (&cfg.input, &cfg.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(Graph::parse_edge_list(&text)?)
        }
        (None, Some(spec)) => Ok(family(spec)?),
        _ => Err(CliError::Usage("exactly one of --input or --family is required".into())),
    }
}

/// Run one configuration, writing the report to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match build_report(cfg, err) {
        Ok(report) => {
            if out.write_all(report.render(cfg.format.into()).as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn build_report(cfg: &RunConfig, err: &mut dyn Write) -> Result<Report, CliError> {
    let g = load_graph(cfg)?;
    report_for_graph(&g, cfg, err)
}

/// Run the configured mode on `g`; the input source fields are ignored.
pub fn report_for_graph(g: &Graph, cfg: &RunConfig, err: &mut dyn Write) -> Result<Report, CliError> {
    if cfg.k.is_some() && cfg.mode != Mode::Oracle {
        return Err(CliError::Usage("--k applies to oracle mode only".into()));
    }
    if (cfg.vector.is_some() || cfg.mu.is_some()) && cfg.mode != Mode::Verify {
        return Err(CliError::Usage("--vector and --mu apply to verify mode only".into()));
    }
    let ipm = cfg.ipm();
    let mut r = Results::default();
    match cfg.mode {
        Mode::Oracle => {
            let ks: Vec<usize> = match cfg.k {
                Some(k) => vec![k as usize],
                None => vec![2, 3],
            };
            for k in ks {
                let h = cheeger_h(g, k)?;
                let rho = cheeger_rho(g, k)?;
                r.value(&format!("h{k}"), ExactValue::ratio(&h.value))
                    .partition(&format!("h{k}"), &h.parts)
                    .value(&format!("rho{k}"), ExactValue::ratio(&rho.value))
                    .partition(&format!("rho{k}"), &rho.parts);
            }
        }
        Mode::Cluster2 => {
            let c = cluster2(g, &ipm)?;
            verbose(cfg, err, "second", &c.estimate.trace.lines());
            r.value("mu2", ExactValue::approximate(c.estimate.value))
                .value("ncc2", ExactValue::ratio(&c.partition.value))
                .partition("ncc2", &c.partition.parts)
                .vector("f2", approx(&c.estimate.vector))
                .trace("second", TraceSummary::of(&c.estimate, ipm.inner_tol));
        }
        Mode::Cluster3 => {
            let c = cluster3(g, &ipm)?;
            verbose(cfg, err, "second", &c.second.trace.lines());
            verbose(cfg, err, "third", &c.third.trace.lines());
            r.value("mu2", ExactValue::approximate(c.second.value))
                .value("mu3", ExactValue::approximate(c.third.value))
                .value("ncc2", ExactValue::ratio(&c.partition2.value))
                .value("ncc3", ExactValue::ratio(&c.partition.value))
                .partition("ncc2", &c.partition2.parts)
                .partition("ncc3", &c.partition.parts)
                .vector("f2", approx(&c.second.vector))
                .vector("f3", approx(&c.third.vector))
                .trace("second", TraceSummary::of(&c.second, ipm.inner_tol))
                .trace("third", TraceSummary::of(&c.third, ipm.inner_tol));
        }
        Mode::Verify => verify_mode(cfg, g, &mut r)?,
        Mode::Chain => {
            let c = inequality_chain(g, &ipm)?;
            r.value("rho2", ExactValue::ratio(&c.rho2))
                .value("h2", ExactValue::ratio(&c.h2))
                .value("rho3", ExactValue::ratio(&c.rho3))
                .value("h3", ExactValue::ratio(&c.h3))
                .value("m2_hat", ExactValue::approximate(c.m2))
                .value("m3_hat", ExactValue::approximate(c.m3))
                .value("ncc2", ExactValue::ratio(&c.ncc2))
                .value("ncc3", ExactValue::ratio(&c.ncc3))
                .partition("h3", &c.h3_parts)
                .partition("ncc2", &c.ncc2_parts)
                .partition("ncc3", &c.ncc3_parts)
                .flag("rho2_eq_h2", c.rho2_eq_h2)
                .flag("rho3_le_h3", c.rho3_le_h3)
                .flag("h3_le_m3_hat", c.h3_le_m3)
                .flag("ncc2_eq_h2", c.ncc2_is_h2)
                .flag("ncc3_eq_h3", c.ncc3_is_h3);
            r.unevaluated = vec!["c3".into(), "m3".into()];
        }
    }
    Ok(Report::new(g, cfg.mode.name(), r))
}

fn verbose(cfg: &RunConfig, err: &mut dyn Write, name: &str, lines: &[String]) {
    if cfg.verbose {
        for l in lines {
            let _ = writeln!(err, "{name} {l}");
        }
    }
}

fn approx(v: &[f64]) -> Vec<ExactValue> {
    v.iter().copied().map(ExactValue::approximate).collect()
}

fn tokens(s: &str) -> Vec<&str> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect()
}

fn parse_exact(t: &str) -> Option<Rational> {
    Rational::from_str(t.trim_start_matches('+')).ok()
}

fn parse_float(t: &str) -> Result<f64, CliError> {
    match t.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => match parse_exact(t).and_then(|r| num::ToPrimitive::to_f64(&r)) {
            Some(x) => Ok(x),
            None => Err(CliError::Usage(format!("invalid number '{t}'"))),
        },
    }
}

fn verify_mode(cfg: &RunConfig, g: &Graph, r: &mut Results) -> Result<(), CliError> {
    let spec = cfg
        .vector
        .as_deref()
        .ok_or_else(|| CliError::Usage("verify mode requires --vector".into()))?;
    let toks = tokens(spec);
    let mu_tok = cfg.mu.as_deref();
    let exact: Option<Vec<Rational>> = toks.iter().map(|t| parse_exact(t)).collect();
    let exact_mu = mu_tok.map(parse_exact);
    match (exact, exact_mu) {
        (Some(f), None | Some(Some(_))) => {
            g.check_len(f.len())?;
            let mu = match mu_tok.and_then(parse_exact) {
                Some(m) => m,
                None => rayleigh(g, &f)?,
            };
            let c = verify_eigenpair_exact(g, &f, &mu)?;
            let sc = SignClasses::of(g, &f)?;
            r.value("mu", ExactValue::rational(&mu))
                .value("residual", ExactValue::rational(&c.residual))
                .value("rayleigh", ExactValue::rational(&rayleigh(g, &f)?))
                .flag("feasible", c.feasible)
                .flag("exact", true)
                .flag("zero_median", sc.is_balanced())
                .vector("f", f.iter().map(ExactValue::rational).collect());
            if let Some(z) = &c.witness {
                r.vector("witness", z.iter().map(ExactValue::rational).collect());
            }
        }
        _ => {
            let f: Vec<f64> = toks.iter().map(|t| parse_float(t)).collect::<Result<_, _>>()?;
            g.check_len(f.len())?;
            let ray = rayleigh(g, &f)?;
            let mu = match mu_tok {
                Some(t) => parse_float(t)?,
                None => ray,
            };
            let c = verify_eigenpair(g, &f, mu, cfg.tol)?;
            let sc = SignClasses::of(g, &f)?;
            r.value("mu", ExactValue::approximate(mu))
                .value("residual", ExactValue::approximate(c.residual))
                .value("rayleigh", ExactValue::approximate(ray))
                .flag("feasible", c.feasible)
                .flag("exact", false)
                .flag("zero_median", sc.is_balanced())
                .vector("f", approx(&f));
            if let Some(z) = &c.witness {
                r.vector("witness", approx(z));
            }
        }
    }
    Ok(())
}

/// Parse `args`, run, and return the exit code.
pub fn main_with<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(&cfg, &mut stdout.lock(), &mut stderr.lock())
}
