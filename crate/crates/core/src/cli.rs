//! Command-line front end.
//!
//! Every command accepts its parameters as flags, from a JSON file given by
//! `--config`, or both (flags win). Parameters are validated before any work
//! starts; output files are written through a temporary file in the target
//! directory and renamed into place, so a failed command leaves none behind.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codes::{pure_noise_summary, y_code_structure_for, CheckKind, Layout, StabilizerCode};
use crate::noise::{format_eta, hashing_bound, parse_eta, BiasedNoiseModel};
use crate::sim::{
    build_decoder, convergence_study, estimate_failure_rate, fit_threshold, write_csv, DecoderKind,
    RateRow, ThresholdPoint,
};
use crate::Error;

/// Environment variable read when `--workers` is absent.
pub const WORKERS_ENV: &str = "TAILSURF_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidDimensions(_)
            | Error::InvalidArgument(_)
            | Error::LengthMismatch { .. }
            | Error::SizeGuard(_) => CliError::Validation(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "tailsurf",
    version,
    about = "Surface codes under Y-biased noise"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print size, distances, logical counts and block structure of a code.
    CodeInfo(CodeArgs),
    /// Estimate logical failure rates over a sweep of p.
    Run(RunArgs),
    /// Sweep several distances and fit the threshold.
    Threshold(ThresholdArgs),
    /// Print the hashing bound for a list of biases.
    HashingBound(HashingArgs),
    /// Compare MPS failure rates across bond dimensions on identical errors.
    Convergence(ConvergenceArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON file with parameters; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// standard or rotated.
    #[arg(long)]
    pub layout: Option<String>,
    #[arg(short = 'j')]
    pub j: Option<usize>,
    #[arg(short = 'k')]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Bias p_Y / (p_X + p_Z); a number or "inf".
    #[arg(long)]
    pub eta: Option<String>,
    /// Physical error rates, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub p: Option<Vec<f64>>,
    /// exact-y, concatenated, mps or brute-force.
    #[arg(long)]
    pub decoder: Option<String>,
    /// MPS bond dimension.
    #[arg(long)]
    pub chi: Option<usize>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Code distances; each gives a d×d code.
    #[arg(long, value_delimiter = ',')]
    pub distances: Option<Vec<usize>>,
    /// Starting critical exponent.
    #[arg(long)]
    pub nu_init: Option<f64>,
    /// Starting threshold.
    #[arg(long)]
    pub pc_init: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HashingArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Biases, comma separated; numbers or "inf".
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub eta: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Bond dimensions, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub chis: Option<Vec<usize>>,
}

/// Parameters after merging the config file and flags.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub layout: Option<String>,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub eta: Option<EtaValue>,
    pub etas: Option<Vec<EtaValue>>,
    pub p: Option<Vec<f64>>,
    pub decoder: Option<String>,
    pub chi: Option<usize>,
    pub chis: Option<Vec<usize>>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub distances: Option<Vec<usize>>,
    pub nu_init: Option<f64>,
    pub pc_init: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Option<String>,
}

/// Bias as written in configuration: a number or the string "inf".
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum EtaValue {
    Number(f64),
    Text(String),
}

impl EtaValue {
    fn value(&self) -> CliResult<f64> {
        match self {
            EtaValue::Number(x) => Ok(*x),
            EtaValue::Text(s) => Ok(parse_eta(s)?),
        }
    }
}

fn overlay<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

fn load_config(path: Option<&Path>) -> CliResult<Config> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| invalid(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| invalid(format!("bad config {}: {e}", p.display())))
        }
    }
}

impl Config {
    fn with_common(mut self, c: &CommonArgs) -> Self {
        self.output = overlay(c.output.clone(), self.output);
        self.format = overlay(c.format.clone(), self.format);
        self
    }

    fn with_code(mut self, a: &CodeArgs) -> Self {
        self = self.with_common(&a.common);
        self.layout = overlay(a.layout.clone(), self.layout);
        self.j = overlay(a.j, self.j);
        self.k = overlay(a.k, self.k);
        self
    }

    fn with_run(mut self, a: &RunArgs) -> Self {
        self = self.with_code(&a.code);
        self.eta = overlay(a.eta.clone().map(EtaValue::Text), self.eta);
        self.p = overlay(a.p.clone(), self.p);
        self.decoder = overlay(a.decoder.clone(), self.decoder);
        self.chi = overlay(a.chi, self.chi);
        self.trials = overlay(a.trials, self.trials);
        self.seed = overlay(a.seed, self.seed);
        self
    }

    fn layout(&self) -> CliResult<Layout> {
        self.layout
            .as_deref()
            .ok_or_else(|| invalid("missing layout"))?
            .parse()
            .map_err(CliError::from)
    }

    fn code(&self) -> CliResult<StabilizerCode> {
        let j = self.j.ok_or_else(|| invalid("missing j"))?;
        let k = self.k.ok_or_else(|| invalid("missing k"))?;
        Ok(StabilizerCode::new(self.layout()?, j, k)?)
    }

    fn eta(&self) -> CliResult<f64> {
        self.eta
            .as_ref()
            .ok_or_else(|| invalid("missing eta"))?
            .value()
    }

    fn decoder(&self) -> CliResult<DecoderKind> {
        Ok(self
            .decoder
            .as_deref()
            .ok_or_else(|| invalid("missing decoder"))?
            .parse()?)
    }

    fn trials(&self) -> CliResult<u64> {
        match self.trials {
            Some(0) => Err(invalid("trials must be at least 1")),
            Some(t) => Ok(t),
            None => Err(invalid("missing trials")),
        }
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    fn format(&self, allowed: &[&str], default: &str) -> CliResult<String> {
        let f = self.format.clone().unwrap_or_else(|| default.to_string());
        if allowed.contains(&f.as_str()) {
            Ok(f)
        } else {
            Err(invalid(format!(
                "format must be one of {allowed:?} (got {f:?})"
            )))
        }
    }

    fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

fn metadata(command: &str, cfg: &Config) -> Vec<(String, String)> {
    vec![
        (
            "tool".into(),
            format!("tailsurf {}", env!("CARGO_PKG_VERSION")),
        ),
        ("command".into(), command.into()),
        ("config".into(), cfg.echo()),
        ("seed".into(), cfg.seed().to_string()),
    ]
}

fn metadata_json(command: &str, cfg: &Config) -> Value {
    json!({
        "tool": format!("tailsurf {}", env!("CARGO_PKG_VERSION")),
        "command": command,
        "config": cfg,
        "seed": cfg.seed(),
    })
}

/// Writes `bytes` to `path` atomically, or to standard output.
fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Runtime(format!("cannot write output: {e}")))
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
                _ => PathBuf::from("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(&dir)
                .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", p.display())))?;
            tmp.write_all(bytes)
                .and_then(|_| tmp.flush())
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display())))?;
            tmp.persist(p)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display())))?;
            Ok(())
        }
    }
}

fn check_output_dir(path: Option<&Path>) -> CliResult<()> {
    if let Some(p) = path {
        let dir = p.parent().filter(|d| !d.as_os_str().is_empty());
        if let Some(d) = dir {
            if !d.is_dir() {
                return Err(invalid(format!(
                    "output directory {} does not exist",
                    d.display()
                )));
            }
        }
    }
    Ok(())
}

fn to_json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s.into_bytes()
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(invalid("workers must be at least 1"));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Runtime(format!("cannot start workers: {e}")))?;
    pool.install(|| match &cli.command {
        Command::CodeInfo(a) => cmd_code_info(a),
        Command::Run(a) => cmd_run(a),
        Command::Threshold(a) => cmd_threshold(a),
        Command::HashingBound(a) => cmd_hashing_bound(a),
        Command::Convergence(a) => cmd_convergence(a),
    })
}

/// Report for `code-info`.
pub fn code_info(code: &StabilizerCode) -> crate::Result<Value> {
    let summary = pure_noise_summary(code)?;
    let checks = (0..code.num_checks()).map(|i| code.check_kind(i));
    let x_checks = checks.clone().filter(|&k| k == CheckKind::X).count();
    let mut report = json!({
        "code": code.id(),
        "layout": code.layout().to_string(),
        "j": code.j(),
        "k": code.k(),
        "n": code.n(),
        "x_checks": x_checks,
        "z_checks": code.num_checks() - x_checks,
        "d_x": summary.d_x,
        "d_y": summary.d_y,
        "d_z": summary.d_z,
        "c_x": format!("2^{}", summary.c_x_log2),
        "c_y": 1u64 << summary.c_y_log2,
        "c_z": format!("2^{}", summary.c_z_log2),
    });
    if code.layout() == Layout::Standard {
        let s = y_code_structure_for(code)?;
        report["g"] = json!(s.g);
        report["t"] = json!(s.t);
        report["blocks"] = json!(s
            .block_multiset()
            .into_iter()
            .map(|(len, count)| json!({"length": len, "count": count}))
            .collect::<Vec<_>>());
    }
    Ok(report)
}

fn code_info_text(r: &Value) -> String {
    let mut s = String::new();
    for key in [
        "code", "n", "x_checks", "z_checks", "d_x", "d_y", "d_z", "c_x", "c_y", "c_z", "g", "t",
    ] {
        if let Some(v) = r.get(key) {
            let v = v
                .as_str()
                .map(str::to_string)
                .unwrap_or_else(|| v.to_string());
            s.push_str(&format!("{key}: {v}\n"));
        }
    }
    if let Some(blocks) = r.get("blocks").and_then(Value::as_array) {
        let parts: Vec<String> = blocks
            .iter()
            .map(|b| format!("REP({})x{}", b["length"], b["count"]))
            .collect();
        s.push_str(&format!("blocks: {}\n", parts.join(", ")));
    }
    s
}

fn cmd_code_info(a: &CodeArgs) -> CliResult<()> {
    let cfg = load_config(a.common.config.as_deref())?.with_code(a);
    let format = cfg.format(&["text", "json"], "text")?;
    check_output_dir(cfg.output.as_deref())?;
    let code = cfg.code()?;
    let report = code_info(&code)?;
    let bytes = if format == "json" {
        to_json_bytes(&report)
    } else {
        code_info_text(&report).into_bytes()
    };
    emit(cfg.output.as_deref(), &bytes)
}

/// A validated failure-rate sweep.
struct Sweep {
    code: StabilizerCode,
    eta: f64,
    ps: Vec<f64>,
    decoder: DecoderKind,
    chi: Option<usize>,
    trials: u64,
    seed: u64,
}

impl Sweep {
    fn from_config(cfg: &Config, code: StabilizerCode) -> CliResult<Self> {
        let sweep = Sweep {
            eta: cfg.eta()?,
            ps: cfg.p.clone().unwrap_or_default(),
            decoder: cfg.decoder()?,
            chi: cfg.chi,
            trials: cfg.trials()?,
            seed: cfg.seed(),
            code,
        };
        // build every model and decoder once so all errors surface up front
        for &p in &sweep.ps {
            let model = BiasedNoiseModel::new(p, sweep.eta)?;
            build_decoder(sweep.decoder, &sweep.code, &model, sweep.chi)?;
        }
        if sweep.ps.is_empty() {
            BiasedNoiseModel::new(0.0, sweep.eta)?;
        }
        Ok(sweep)
    }

    fn run(&self) -> CliResult<Vec<RateRow>> {
        self.ps
            .iter()
            .map(|&p| {
                let model = BiasedNoiseModel::new(p, self.eta)?;
                let dec = build_decoder(self.decoder, &self.code, &model, self.chi)?;
                let est = estimate_failure_rate(
                    &self.code,
                    dec.as_ref(),
                    &model,
                    self.trials,
                    self.seed,
                )?;
                if est.tally.decoder_errors > 0 {
                    return Err(CliError::Runtime(format!(
                        "{} of {} trials at p = {p} could not be decoded by {}",
                        est.tally.decoder_errors, est.tally.trials, self.decoder
                    )));
                }
                Ok(RateRow::new(
                    &self.code,
                    &model,
                    self.decoder,
                    self.chi,
                    self.seed,
                    &est,
                ))
            })
            .collect()
    }
}

fn rows_bytes(format: &str, command: &str, cfg: &Config, rows: &[RateRow]) -> CliResult<Vec<u8>> {
    if format == "json" {
        Ok(to_json_bytes(&json!({
            "metadata": metadata_json(command, cfg),
            "rows": rows,
        })))
    } else {
        let mut buf = Vec::new();
        write_csv(&mut buf, &metadata(command, cfg), rows)?;
        Ok(buf)
    }
}

fn cmd_run(a: &RunArgs) -> CliResult<()> {
    let cfg = load_config(a.code.common.config.as_deref())?.with_run(a);
    let format = cfg.format(&["csv", "json"], "csv")?;
    check_output_dir(cfg.output.as_deref())?;
    let sweep = Sweep::from_config(&cfg, cfg.code()?)?;
    let rows = sweep.run()?;
    emit(
        cfg.output.as_deref(),
        &rows_bytes(&format, "run", &cfg, &rows)?,
    )
}

fn cmd_threshold(a: &ThresholdArgs) -> CliResult<()> {
    let mut cfg = load_config(a.run.code.common.config.as_deref())?.with_run(&a.run);
    cfg.distances = overlay(a.distances.clone(), cfg.distances);
    cfg.nu_init = overlay(a.nu_init, cfg.nu_init);
    cfg.pc_init = overlay(a.pc_init, cfg.pc_init);
    cfg.format(&["json"], "json")?;
    check_output_dir(cfg.output.as_deref())?;
    let layout = cfg.layout()?;
    let distances = cfg.distances.clone().unwrap_or_default();
    if distances.len() < 3 {
        return Err(invalid(format!(
            "need at least 3 distances (got {})",
            distances.len()
        )));
    }
    if cfg.p.as_ref().map_or(0, Vec::len) < 3 {
        return Err(invalid("need at least 3 values of p"));
    }
    let sweeps = distances
        .iter()
        .map(|&d| Sweep::from_config(&cfg, StabilizerCode::new(layout, d, d)?))
        .collect::<CliResult<Vec<_>>>()?;
    let mut rows = Vec::new();
    for s in &sweeps {
        rows.extend(s.run()?);
    }
    let points: Vec<ThresholdPoint> = rows
        .iter()
        .map(|r| ThresholdPoint {
            distance: r.j,
            p: r.p,
            rate: r.rate,
            stderr: r.stderr,
            trials: r.trials,
        })
        .collect();
    let ps = cfg.p.clone().unwrap_or_default();
    let mid = 0.5
        * (ps.iter().cloned().fold(f64::INFINITY, f64::min)
            + ps.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let fit = fit_threshold(
        &points,
        cfg.nu_init.unwrap_or(1.0),
        cfg.pc_init.unwrap_or(mid),
    );
    let mut out = json!({
        "metadata": metadata_json("threshold", &cfg),
        "fit_model": "f = A + B x + C x^2, x = (p - p_c) d^(1/nu), weights 1/stderr^2, jackknife over distances",
        "rows": rows,
    });
    let result = match fit {
        Ok(f) => {
            out["fit"] = json!({
                "p_c": f.p_c,
                "p_c_stderr": f.p_c_stderr,
                "nu": f.nu,
                "nu_stderr": f.nu_stderr,
                "coefficients": f.coefficients,
                "residual": f.residual,
                "jackknife": f.jackknife,
                "window": [f.window.0, f.window.1],
            });
            Ok(())
        }
        Err(e) => {
            out["fit_error"] = json!(e.to_string());
            Err(CliError::Runtime(format!("threshold fit failed: {e}")))
        }
    };
    emit(cfg.output.as_deref(), &to_json_bytes(&out))?;
    result
}

fn cmd_hashing_bound(a: &HashingArgs) -> CliResult<()> {
    let mut cfg = load_config(a.common.config.as_deref())?.with_common(&a.common);
    cfg.etas = overlay(
        a.eta
            .clone()
            .map(|v| v.into_iter().map(EtaValue::Text).collect()),
        cfg.etas,
    );
    let format = cfg.format(&["csv", "json"], "csv")?;
    check_output_dir(cfg.output.as_deref())?;
    let etas = cfg
        .etas
        .clone()
        .unwrap_or_default()
        .iter()
        .map(EtaValue::value)
        .collect::<CliResult<Vec<f64>>>()?;
    let rows = etas
        .iter()
        .map(|&eta| Ok((eta, hashing_bound(eta)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let bytes = if format == "json" {
        to_json_bytes(&json!({
            "metadata": metadata_json("hashing-bound", &cfg),
            "rows": rows.iter().map(|&(e, p)| json!({"eta": format_eta(e), "p_c": p})).collect::<Vec<_>>(),
        }))
    } else {
        let mut s = String::new();
        for (k, v) in metadata("hashing-bound", &cfg) {
            s.push_str(&format!("# {k}: {v}\n"));
        }
        s.push_str("eta,p_c\n");
        for (e, p) in rows {
            s.push_str(&format!("{},{:.6}\n", format_eta(e), p));
        }
        s.into_bytes()
    };
    emit(cfg.output.as_deref(), &bytes)
}

fn cmd_convergence(a: &ConvergenceArgs) -> CliResult<()> {
    let mut cfg = load_config(a.run.code.common.config.as_deref())?.with_run(&a.run);
    cfg.chis = overlay(a.chis.clone(), cfg.chis);
    cfg.decoder.get_or_insert_with(|| "mps".into());
    let format = cfg.format(&["csv", "json"], "csv")?;
    check_output_dir(cfg.output.as_deref())?;
    if cfg.decoder()? != DecoderKind::Mps {
        return Err(invalid("convergence studies use the mps decoder"));
    }
    let code = cfg.code()?;
    let eta = cfg.eta()?;
    let ps = cfg.p.clone().unwrap_or_default();
    let chis = cfg.chis.clone().unwrap_or_default();
    if chis.len() < 2 || chis.contains(&0) {
        return Err(invalid("need at least two chi values, each at least 1"));
    }
    let trials = cfg.trials()?;
    for &p in &ps {
        let model = BiasedNoiseModel::new(p, eta)?;
        build_decoder(DecoderKind::Mps, &code, &model, Some(chis[0]))?;
    }
    let mut rows = Vec::new();
    for &p in &ps {
        let model = BiasedNoiseModel::new(p, eta)?;
        for r in convergence_study(&code, &model, &chis, trials, cfg.seed())? {
            rows.push((p, r));
        }
    }
    let bytes = if format == "json" {
        to_json_bytes(&json!({
            "metadata": metadata_json("convergence", &cfg),
            "rows": rows.iter().map(|(p, r)| json!({"p": p, "chi": r.chi, "trials": r.estimate.tally.trials, "failures": r.estimate.tally.failures, "rate": r.estimate.rate, "stderr": r.estimate.stderr, "shifted": r.shifted, "converged": r.converged})).collect::<Vec<_>>(),
        }))
    } else {
        let mut s = String::new();
        for (k, v) in metadata("convergence", &cfg) {
            s.push_str(&format!("# {k}: {v}\n"));
        }
        s.push_str("layout,j,k,eta,p,chi,trials,failures,rate,stderr,shifted,converged,seed\n");
        for (p, r) in &rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                code.layout(),
                code.j(),
                code.k(),
                format_eta(eta),
                p,
                r.chi,
                r.estimate.tally.trials,
                r.estimate.tally.failures,
                r.estimate.rate,
                r.estimate.stderr,
                r.shifted,
                r.converged,
                cfg.seed()
            ));
        }
        s.into_bytes()
    };
    emit(cfg.output.as_deref(), &bytes)
}
