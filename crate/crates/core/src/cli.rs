//! Command-line front end: `pi`, `weyl`, `sim` and `jacobi` subcommands
//! with reproducible seeds and machine-readable CSV or JSON-lines output.
//!
//! The CLI measures and reports; it never asserts statistical success.
//! Exit codes: 0 on success, 2 for usage or parameter errors, 1 for
//! internal numeric failures.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use crate::combinatorics::{
    self, pi_closed_form, pi_convolution, pi_enumerate, pi_linear_step, CombinatoricsError,
    IntPolynomial,
};
use crate::randmat::{
    build_secular, complex_outlier, eval_weyl_n, jacobi_resolvent, measure_moments,
    monte_carlo_moments, permutation_similarity_check, real_outliers, sample_wigner,
    ComplexOutlierOutcome, EnsembleConfig, EntryDistribution, RandmatError,
};
use crate::weyl::{limit_outliers, neg_inv_q_series, q_limit, WeylError};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or parameter domain violations (exit code 2).
    Usage(String),
    /// Internal numeric failure (exit code 1).
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<CombinatoricsError> for CliError {
    fn from(e: CombinatoricsError) -> Self {
        match e {
            CombinatoricsError::InexactDivision | CombinatoricsError::DivisionByZeroPolynomial => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<RandmatError> for CliError {
    fn from(e: RandmatError) -> Self {
        match e {
            RandmatError::InvalidConfig(_)
            | RandmatError::ParameterSign(_)
            | RandmatError::PositionOutOfRange { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numeric(format!("output error: {e}"))
    }
}

/// `re,im` pair on the command line, e.g. `--z 3,0` or `--z 0,-2`.
#[derive(Debug, Clone, Copy)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = String;
    fn from_str(text: &str) -> Result<Self, String> {
        let (re, im) = text
            .split_once(',')
            .ok_or_else(|| format!("expected re,im pair, got `{text}`"))?;
        let re: f64 = re.trim().parse().map_err(|_| format!("bad real part `{re}`"))?;
        let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part `{im}`"))?;
        Ok(ComplexArg(Complex64::new(re, im)))
    }
}

#[derive(Parser)]
#[command(
    name = "gencat",
    version,
    about = "Generalized Catalan polynomials, the limit Weyl function, and Wigner-product Monte Carlo"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficients of the generalized Catalan polynomial pi_n(d)
    Pi(PiArgs),
    /// Limit Weyl function Q_d: evaluation, series, outlier roots
    Weyl {
        #[command(subcommand)]
        sub: WeylCommand,
    },
    /// Monte Carlo simulation of X = H_d W
    Sim {
        #[command(subcommand)]
        sub: SimCommand,
    },
    /// Jacobi-operator continued fraction against -1/Q_d
    Jacobi(JacobiArgs),
}

#[derive(clap::Args)]
struct PiArgs {
    /// Polynomial index n
    #[arg(long)]
    n: usize,
    /// Computation method
    #[arg(long, value_enum)]
    method: PiMethod,
    /// Optional integer evaluation point
    #[arg(long, allow_negative_numbers = true)]
    d: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PiMethod {
    /// Exhaustive Dyck-path enumeration (capped)
    Enum,
    /// First-return convolution recurrence
    Conv,
    /// Short linear recurrence via exact division
    Linear,
    /// Catalan-triangle closed form
    Closed,
    /// All four methods plus an agreement verdict
    All,
}

#[derive(Subcommand)]
enum WeylCommand {
    /// Evaluate Q_d(z)
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: ComplexArg,
    },
    /// Odd Laurent coefficients of -1/Q_d at infinity
    Series {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        /// Number of coefficients
        #[arg(long)]
        k: usize,
    },
    /// Outlier roots of Q_d
    Roots {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct SimCommonArgs {
    /// Bulk size N; the matrix is (N+1) x (N+1)
    #[arg(long)]
    size: usize,
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
    /// Entry distribution: rademacher, gaussian or uniform
    #[arg(long, default_value = "rademacher")]
    dist: String,
    /// Master seed; per-trial streams are derived from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

impl SimCommonArgs {
    fn config(&self) -> Result<EnsembleConfig, CliError> {
        let dist = EntryDistribution::parse(&self.dist)
            .ok_or_else(|| CliError::Usage(format!("unknown distribution `{}`", self.dist)))?;
        Ok(EnsembleConfig::new(self.size, self.d, dist, self.seed)?)
    }
}

#[derive(Subcommand)]
enum SimCommand {
    /// Sample means of e_0^T X^n e_0 against their limits
    Moments {
        #[command(flatten)]
        common: SimCommonArgs,
        #[arg(long = "n-max", default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        trials: u64,
    },
    /// Per-trial outlier roots of the secular function
    Outliers {
        #[command(flatten)]
        common: SimCommonArgs,
        #[arg(long, default_value_t = 10)]
        trials: u64,
    },
    /// Per-trial corner and coupling-measure moments
    Measure {
        #[command(flatten)]
        common: SimCommonArgs,
        #[arg(long = "n-max", default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        trials: u64,
    },
    /// Permutation-similarity determinant identity
    Permsim {
        #[command(flatten)]
        common: SimCommonArgs,
        /// Diagonal position for the scaled entry
        #[arg(long)]
        k: usize,
        /// Sample points (repeatable); defaults to a fixed spread
        #[arg(long = "z", allow_hyphen_values = true)]
        zs: Vec<ComplexArg>,
    },
}

#[derive(clap::Args)]
struct JacobiArgs {
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
    #[arg(long, allow_hyphen_values = true)]
    z: ComplexArg,
    #[arg(long, default_value_t = 400)]
    depth: usize,
}

/// Full-precision float formatting: 17 significant digits round-trip
/// exactly through `f64`.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", fmt_f64(z.re), sign, fmt_f64(z.im.abs()))
}

/// Parameter echo plus wall time for one invocation; rerunning with an
/// identical echo reproduces identical numeric rows.
struct RunRecord {
    command: &'static str,
    params: Vec<(&'static str, String)>,
    started: Instant,
}

impl RunRecord {
    fn new(command: &'static str) -> Self {
        RunRecord {
            command,
            params: Vec::new(),
            started: Instant::now(),
        }
    }

    fn param(mut self, key: &'static str, value: impl ToString) -> Self {
        self.params.push((key, value.to_string()));
        self
    }

    fn header_comment(&self) -> String {
        let mut line = format!("# command={}", self.command);
        for (k, v) in &self.params {
            line.push_str(&format!(" {k}={v}"));
        }
        line
    }

    fn header_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), json!(self.command));
        for (k, v) in &self.params {
            map.insert((*k).into(), json!(v));
        }
        serde_json::Value::Object(map)
    }

    fn footer_comment(&self) -> String {
        format!("# wall_time_s={:.3}", self.started.elapsed().as_secs_f64())
    }

    fn footer_json(&self) -> serde_json::Value {
        json!({ "wall_time_s": format!("{:.3}", self.started.elapsed().as_secs_f64()) })
    }
}

/// Parse and execute one invocation, writing all output to `out`.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            write!(out, "{e}")?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    match cli.command {
        Command::Pi(args) => run_pi(args, out),
        Command::Weyl { sub } => run_weyl(sub, out),
        Command::Sim { sub } => run_sim(sub, out),
        Command::Jacobi(args) => run_jacobi(args, out),
    }
}

fn coeff_list(p: &IntPolynomial) -> String {
    let coeffs: Vec<String> = p.coeffs().iter().map(BigInt::to_string).collect();
    format!("[{}]", coeffs.join(","))
}

fn pi_by(method: PiMethod, n: usize) -> Result<IntPolynomial, CliError> {
    Ok(match method {
        PiMethod::Enum => pi_enumerate(n)?,
        PiMethod::Conv => pi_convolution(n).pop().expect("nonempty sequence"),
        PiMethod::Linear => {
            let mut pi = IntPolynomial::one();
            for step in 1..=n {
                pi = pi_linear_step(&pi, step)?;
            }
            pi
        }
        PiMethod::Closed => pi_closed_form(n),
        PiMethod::All => unreachable!("handled by the caller"),
    })
}

fn run_pi(args: PiArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let record = RunRecord::new("pi")
        .param("n", args.n)
        .param("method", format!("{:?}", args.method).to_lowercase());
    writeln!(out, "{}", record.header_comment())?;
    if args.method == PiMethod::All {
        let variants = [
            (PiMethod::Enum, "enum"),
            (PiMethod::Conv, "conv"),
            (PiMethod::Linear, "linear"),
            (PiMethod::Closed, "closed"),
        ];
        let mut polys = Vec::new();
        for (method, label) in variants {
            let p = pi_by(method, args.n)?;
            writeln!(out, "{label} {}", coeff_list(&p))?;
            polys.push(p);
        }
        let agree = polys.windows(2).all(|w| w[0] == w[1]);
        writeln!(out, "{}", if agree { "AGREE" } else { "DISAGREE" })?;
        if let Some(d) = args.d {
            writeln!(out, "value_at({d}) = {}", polys[0].eval(&BigInt::from(d)))?;
        }
    } else {
        let p = pi_by(args.method, args.n)?;
        writeln!(out, "coefficients {}", coeff_list(&p))?;
        if let Some(d) = args.d {
            writeln!(out, "value_at({d}) = {}", p.eval(&BigInt::from(d)))?;
        }
    }
    writeln!(out, "{}", record.footer_comment())?;
    Ok(())
}

fn run_weyl(sub: WeylCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match sub {
        WeylCommand::Eval { d, z } => {
            let record = RunRecord::new("weyl-eval")
                .param("d", d)
                .param("z", format!("{},{}", z.0.re, z.0.im));
            writeln!(out, "{}", record.header_comment())?;
            let q = q_limit(d, z.0)?;
            writeln!(out, "Q = {},{}", fmt_f64(q.re), fmt_f64(q.im))?;
            writeln!(out, "{}", record.footer_comment())?;
        }
        WeylCommand::Series { d, k } => {
            if d == 0.0 {
                return Err(CliError::Usage("parameter d must be nonzero".into()));
            }
            if k == 0 {
                return Err(CliError::Usage("need at least one coefficient".into()));
            }
            let record = RunRecord::new("weyl-series").param("d", d).param("k", k);
            writeln!(out, "{}", record.header_comment())?;
            writeln!(out, "k,power,coefficient")?;
            for (i, c) in neg_inv_q_series(d, k).iter().enumerate() {
                writeln!(out, "{i},{},{}", -(2 * i as i64 + 1), fmt_f64(*c))?;
            }
            writeln!(out, "{}", record.footer_comment())?;
        }
        WeylCommand::Roots { d } => {
            let record = RunRecord::new("weyl-roots").param("d", d);
            writeln!(out, "{}", record.header_comment())?;
            let set = limit_outliers(d)?;
            writeln!(out, "kind {}", set.kind())?;
            if let [plus, minus] = set.values()[..] {
                writeln!(out, "root_plus = {}", fmt_complex(plus))?;
                writeln!(out, "root_minus = {}", fmt_complex(minus))?;
            }
            writeln!(out, "{}", record.footer_comment())?;
        }
    }
    Ok(())
}

fn run_jacobi(args: JacobiArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let record = RunRecord::new("jacobi")
        .param("d", args.d)
        .param("z", format!("{},{}", args.z.0.re, args.z.0.im))
        .param("depth", args.depth);
    writeln!(out, "{}", record.header_comment())?;
    let g = jacobi_resolvent(args.d, args.z.0, args.depth)?;
    let reference = -q_limit(args.d, args.z.0)?.inv();
    writeln!(out, "g_depth = {},{}", fmt_f64(g.re), fmt_f64(g.im))?;
    writeln!(
        out,
        "neg_inv_q = {},{}",
        fmt_f64(reference.re),
        fmt_f64(reference.im)
    )?;
    writeln!(out, "abs_diff = {}", fmt_f64((g - reference).norm()))?;
    writeln!(out, "{}", record.footer_comment())?;
    Ok(())
}

fn run_sim(sub: SimCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match sub {
        SimCommand::Moments {
            common,
            n_max,
            trials,
        } => sim_moments(common, n_max, trials, out),
        SimCommand::Outliers { common, trials } => sim_outliers(common, trials, out),
        SimCommand::Measure {
            common,
            n_max,
            trials,
        } => sim_measure(common, n_max, trials, out),
        SimCommand::Permsim { common, k, zs } => sim_permsim(common, k, zs, out),
    }
}

fn sim_record(name: &'static str, common: &SimCommonArgs) -> RunRecord {
    RunRecord::new(name)
        .param("size", common.size)
        .param("d", common.d)
        .param("dist", &common.dist)
        .param("seed", common.seed)
        .param(
            "format",
            match common.format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            },
        )
}

fn emit_header(
    record: &RunRecord,
    format: OutputFormat,
    csv_columns: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{}", record.header_comment())?;
            writeln!(out, "{csv_columns}")?;
        }
        OutputFormat::Json => writeln!(out, "{}", record.header_json())?,
    }
    Ok(())
}

fn emit_footer(
    record: &RunRecord,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => writeln!(out, "{}", record.footer_comment())?,
        OutputFormat::Json => writeln!(out, "{}", record.footer_json())?,
    }
    Ok(())
}

/// Theoretical limit of `e_0^T X^n e_0`: zero for odd `n`, `pi_{n/2}(d)`
/// for even `n`.
fn moment_limit(pis: &[IntPolynomial], n: usize, d: f64) -> f64 {
    if n % 2 == 1 {
        0.0
    } else {
        pis[n / 2].eval_f64(d)
    }
}

fn sim_moments(
    common: SimCommonArgs,
    n_max: usize,
    trials: u64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if n_max < 1 {
        return Err(CliError::Usage("n-max must be at least 1".into()));
    }
    if trials < 2 {
        return Err(CliError::Usage("need at least 2 trials".into()));
    }
    let cfg = common.config()?;
    let record = sim_record("sim-moments", &common)
        .param("trials", trials)
        .param("n_max", n_max);
    emit_header(&record, common.format, "n,mean,stderr,limit", out)?;
    let rows = monte_carlo_moments(&cfg, n_max, trials);
    let pis = pi_convolution(n_max / 2);
    for row in &rows {
        let limit = moment_limit(&pis, row.n, cfg.d);
        match common.format {
            OutputFormat::Csv => writeln!(
                out,
                "{},{},{},{}",
                row.n,
                fmt_f64(row.mean),
                fmt_f64(row.std_error),
                fmt_f64(limit)
            )?,
            OutputFormat::Json => writeln!(
                out,
                "{}",
                json!({
                    "n": row.n,
                    "mean": row.mean,
                    "stderr": row.std_error,
                    "limit": limit,
                })
            )?,
        }
    }
    emit_footer(&record, common.format, out)?;
    Ok(())
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    Some(values[values.len() / 2])
}

fn sim_outliers(
    common: SimCommonArgs,
    trials: u64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let cfg = common.config()?;
    let record = sim_record("sim-outliers", &common).param("trials", trials);
    emit_header(
        &record,
        common.format,
        "trial,root_minus,root_plus,residual",
        out,
    )?;

    // fan the expensive per-trial builds out; emit in ascending trial order
    let models: Vec<_> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let w = sample_wigner(&cfg, trial);
            build_secular(&w)
        })
        .collect::<Result<_, _>>()?;

    let mut upper_roots = Vec::new();
    let mut lower_roots = Vec::new();
    for (trial, model) in models.iter().enumerate() {
        let (minus, plus, residual) = if cfg.d > 0.0 {
            let roots = real_outliers(model, cfg.d)?;
            let residual = [roots.lower, roots.upper]
                .iter()
                .flatten()
                .map(|&r| {
                    eval_weyl_n(model, cfg.d, Complex64::new(r, 0.0))
                        .map(|q| q.norm())
                        .unwrap_or(f64::NAN)
                })
                .fold(None::<f64>, |acc, r| Some(acc.map_or(r, |a| a.max(r))));
            (
                roots.lower.map(|r| Complex64::new(r, 0.0)),
                roots.upper.map(|r| Complex64::new(r, 0.0)),
                residual,
            )
        } else {
            match complex_outlier(model, cfg.d)? {
                ComplexOutlierOutcome::Converged(z) => {
                    let residual = eval_weyl_n(model, cfg.d, z)?.norm();
                    (Some(z.conj()), Some(z), Some(residual))
                }
                _ => (None, None, None),
            }
        };
        if let Some(z) = plus {
            upper_roots.push(z);
        }
        if let Some(z) = minus {
            lower_roots.push(z);
        }
        let fmt_opt = |v: Option<Complex64>| v.map(fmt_complex).unwrap_or_default();
        match common.format {
            OutputFormat::Csv => writeln!(
                out,
                "{trial},{},{},{}",
                fmt_opt(minus),
                fmt_opt(plus),
                residual.map(fmt_f64).unwrap_or_default()
            )?,
            OutputFormat::Json => writeln!(
                out,
                "{}",
                json!({
                    "trial": trial,
                    "root_minus": minus.map(|z| json!({"re": z.re, "im": z.im})),
                    "root_plus": plus.map(|z| json!({"re": z.re, "im": z.im})),
                    "residual": residual,
                })
            )?,
        }
    }

    let limits = limit_outliers(cfg.d)?;
    let limit_values = limits.values();
    let (limit_plus, limit_minus) = match limit_values[..] {
        [plus, minus] => (Some(plus), Some(minus)),
        _ => (None, None),
    };
    // component-wise medians over the found roots
    let median_of = |roots: &[Complex64]| -> Option<Complex64> {
        let mut res: Vec<f64> = roots.iter().map(|z| z.re).collect();
        let mut ims: Vec<f64> = roots.iter().map(|z| z.im).collect();
        Some(Complex64::new(median(&mut res)?, median(&mut ims)?))
    };
    let summary_fields = [
        ("found_minus", format!("{}/{trials}", lower_roots.len())),
        ("found_plus", format!("{}/{trials}", upper_roots.len())),
        (
            "median_minus",
            median_of(&lower_roots).map(fmt_complex).unwrap_or_default(),
        ),
        (
            "median_plus",
            median_of(&upper_roots).map(fmt_complex).unwrap_or_default(),
        ),
        (
            "limit_minus",
            limit_minus.map(fmt_complex).unwrap_or_default(),
        ),
        (
            "limit_plus",
            limit_plus.map(fmt_complex).unwrap_or_default(),
        ),
    ];
    match common.format {
        OutputFormat::Csv => {
            let body: Vec<String> = summary_fields
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            writeln!(out, "# summary {}", body.join(" "))?;
        }
        OutputFormat::Json => {
            let mut map = serde_json::Map::new();
            for (k, v) in &summary_fields {
                map.insert((*k).into(), json!(v));
            }
            writeln!(out, "{}", serde_json::Value::Object(map))?;
        }
    }
    emit_footer(&record, common.format, out)?;
    Ok(())
}

fn sim_measure(
    common: SimCommonArgs,
    n_max: usize,
    trials: u64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let cfg = common.config()?;
    let record = sim_record("sim-measure", &common)
        .param("trials", trials)
        .param("n_max", n_max);
    let columns = {
        let mut cols = vec!["trial".to_string(), "a".to_string()];
        cols.extend((0..=n_max).map(|k| format!("m{k}")));
        cols.join(",")
    };
    emit_header(&record, common.format, &columns, out)?;

    let models: Vec<_> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let w = sample_wigner(&cfg, trial);
            build_secular(&w)
        })
        .collect::<Result<_, _>>()?;

    let mut sums = vec![0.0; n_max + 2]; // a, m0..m_nmax
    for (trial, model) in models.iter().enumerate() {
        let mut values = vec![model.corner()];
        values.extend((0..=n_max).map(|k| measure_moments(model, k)));
        for (sum, v) in sums.iter_mut().zip(&values) {
            *sum += v;
        }
        match common.format {
            OutputFormat::Csv => {
                let body: Vec<String> = values.iter().map(|&v| fmt_f64(v)).collect();
                writeln!(out, "{trial},{}", body.join(","))?;
            }
            OutputFormat::Json => {
                let mut map = serde_json::Map::new();
                map.insert("trial".into(), json!(trial));
                map.insert("a".into(), json!(values[0]));
                for (k, v) in values[1..].iter().enumerate() {
                    map.insert(format!("m{k}"), json!(v));
                }
                writeln!(out, "{}", serde_json::Value::Object(map))?;
            }
        }
    }

    let catalans = combinatorics::catalan_prefix(n_max / 2 + 1);
    let limit_for = |k: usize| -> f64 {
        if k % 2 == 1 {
            0.0
        } else {
            num_traits::ToPrimitive::to_f64(&catalans[k / 2]).unwrap_or(f64::NAN)
        }
    };
    match common.format {
        OutputFormat::Csv => {
            let means: Vec<String> = sums
                .iter()
                .map(|s| fmt_f64(s / trials as f64))
                .collect();
            writeln!(out, "mean,{}", means.join(","))?;
            let limits: Vec<String> = (0..=n_max).map(|k| fmt_f64(limit_for(k))).collect();
            writeln!(out, "# limit a=0 moments={}", limits.join(","))?;
        }
        OutputFormat::Json => {
            let mut map = serde_json::Map::new();
            map.insert("mean_a".into(), json!(sums[0] / trials as f64));
            for k in 0..=n_max {
                map.insert(format!("mean_m{k}"), json!(sums[k + 1] / trials as f64));
                map.insert(format!("limit_m{k}"), json!(limit_for(k)));
            }
            writeln!(out, "{}", serde_json::Value::Object(map))?;
        }
    }
    emit_footer(&record, common.format, out)?;
    Ok(())
}

fn sim_permsim(
    common: SimCommonArgs,
    k: usize,
    zs: Vec<ComplexArg>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let cfg = common.config()?;
    let record = sim_record("sim-permsim", &common).param("k", k);
    writeln!(out, "{}", record.header_comment())?;
    let points: Vec<Complex64> = if zs.is_empty() {
        vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, 2.0),
            Complex64::new(-4.0, 0.0),
            Complex64::new(1.0, 2.0),
            Complex64::new(-2.0, -3.0),
        ]
    } else {
        zs.into_iter().map(|z| z.0).collect()
    };
    let w = sample_wigner(&cfg, 0);
    let verdict = permutation_similarity_check(&w, cfg.d, k, &points)?;
    writeln!(out, "{verdict}")?;
    writeln!(out, "{}", record.footer_comment())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> Result<String, CliError> {
        let mut buf = Vec::new();
        let full: Vec<String> = std::iter::once("gencat".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        run(full, &mut buf).map(|()| String::from_utf8(buf).unwrap())
    }

    #[test]
    fn pi_closed_coefficients() {
        let out = run_capture(&["pi", "--n", "3", "--method", "closed"]).unwrap();
        assert!(out.contains("coefficients [0,2,2,1]"), "{out}");
    }

    #[test]
    fn pi_all_agrees() {
        let out = run_capture(&["pi", "--n", "6", "--method", "all"]).unwrap();
        assert!(out.contains("AGREE"), "{out}");
        assert!(!out.contains("DISAGREE"), "{out}");
    }

    #[test]
    fn pi_enum_value_at_minus_one() {
        let out =
            run_capture(&["pi", "--n", "1", "--method", "enum", "--d", "-1"]).unwrap();
        assert!(out.contains("value_at(-1) = -1"), "{out}");
    }

    #[test]
    fn pi_cap_violation_is_usage_error() {
        let err = run_capture(&["pi", "--n", "40", "--method", "enum"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn weyl_roots_kinds() {
        let out = run_capture(&["weyl", "roots", "--d", "3"]).unwrap();
        assert!(out.contains("kind real-pair"), "{out}");
        assert!(out.contains("2.1213203435596424e0"), "{out}");
        let out = run_capture(&["weyl", "roots", "--d", "-1"]).unwrap();
        assert!(out.contains("kind complex-pair"), "{out}");
        assert!(out.contains("7.0710678118654746e-1"), "{out}");
        let out = run_capture(&["weyl", "roots", "--d", "1.5"]).unwrap();
        assert!(out.contains("kind none"), "{out}");
    }

    #[test]
    fn weyl_eval_value() {
        let out = run_capture(&["weyl", "eval", "--d", "1", "--z", "3,0"]).unwrap();
        assert!(out.contains("2.6180339887498949e0"), "{out}");
    }

    #[test]
    fn weyl_series_rows() {
        let out = run_capture(&["weyl", "series", "--d", "1", "--k", "3"]).unwrap();
        assert!(out.contains("k,power,coefficient"), "{out}");
        assert!(out.contains("0,-1,-1.0000000000000000e0"), "{out}");
        assert!(out.contains("2,-5,-2.0000000000000000e0"), "{out}");
    }

    #[test]
    fn jacobi_two_level() {
        let out = run_capture(&["jacobi", "--d", "4", "--z", "4,0", "--depth", "2"]).unwrap();
        assert!(out.contains("g_depth = -1.3333333333333333e0"), "{out}");
        let err = run_capture(&["jacobi", "--d", "-1", "--z", "3,0"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn sim_moments_csv_schema_and_determinism() {
        let args = [
            "sim", "moments", "--n-max", "4", "--size", "60", "--trials", "4", "--d", "-1",
            "--dist", "rademacher", "--seed", "7", "--format", "csv",
        ];
        let a = run_capture(&args).unwrap();
        assert!(a.contains("# command=sim-moments"), "{a}");
        assert!(a.contains("seed=7"), "{a}");
        assert!(a.contains("n,mean,stderr,limit"), "{a}");
        // limit column for n = 2 at d = -1 is pi_1(-1) = -1
        assert!(a.lines().any(|l| l.starts_with("2,") && l.ends_with(",-1.0000000000000000e0")), "{a}");
        let b = run_capture(&args).unwrap();
        let strip = |s: &str| -> Vec<String> {
            s.lines()
                .filter(|l| !l.starts_with("# wall_time"))
                .map(str::to_string)
                .collect()
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn sim_moments_json_rows_parse() {
        let out = run_capture(&[
            "sim", "moments", "--n-max", "2", "--size", "40", "--trials", "3", "--d", "1",
            "--seed", "3", "--format", "json",
        ])
        .unwrap();
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.is_object());
        }
    }

    #[test]
    fn sim_outliers_runs_small() {
        let out = run_capture(&[
            "sim", "outliers", "--size", "120", "--trials", "3", "--d", "3", "--seed", "1",
        ])
        .unwrap();
        assert!(out.contains("trial,root_minus,root_plus,residual"), "{out}");
        assert!(out.contains("# summary"), "{out}");
        assert!(out.contains("limit_plus=2.1213203435596424e0"), "{out}");
    }

    #[test]
    fn sim_permsim_reports_true() {
        let out = run_capture(&[
            "sim", "permsim", "--size", "30", "--d", "-1", "--k", "3", "--seed", "1",
        ])
        .unwrap();
        assert!(out.lines().any(|l| l == "true"), "{out}");
    }

    #[test]
    fn sim_measure_has_mean_row() {
        let out = run_capture(&[
            "sim", "measure", "--size", "50", "--trials", "3", "--d", "-1", "--seed", "2",
            "--n-max", "2",
        ])
        .unwrap();
        assert!(out.contains("trial,a,m0,m1,m2"), "{out}");
        assert!(out.lines().any(|l| l.starts_with("mean,")), "{out}");
    }

    #[test]
    fn invalid_distribution_is_usage_error() {
        let err = run_capture(&[
            "sim", "moments", "--size", "10", "--d", "1", "--dist", "cauchy", "--trials", "2",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn complex_arg_parsing() {
        assert!(ComplexArg::from_str("3,0").is_ok());
        assert!(ComplexArg::from_str("-2,-3").is_ok());
        assert!(ComplexArg::from_str("3").is_err());
        assert!(ComplexArg::from_str("a,b").is_err());
    }
}
