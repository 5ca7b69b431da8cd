//! Instance files, reports, and the `triform` command line.
//!
//! # Instance file
//!
//! ```text
//! triform/1
//! complex          (optional)
//! dim N
//! T
//! <N rows of N reals, or 2N reals "re im" interleaved when complex>
//! A
//! <N rows>
//! B
//! <N rows>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Values are written
//! back in shortest round-trip decimal.
//!
//! # Exit codes
//!
//! `certify`: 0 certified, 1 refuted, 2 inconclusive, 3 input or usage
//! error. `trace` and `hs` use the same codes for the hypothesis and 4 if the
//! corollary inequality itself fails. `fuzz` exits 0 iff every property held,
//! 1 otherwise.

use std::fmt::Write as _;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::certify::{self, CertifyConfig, Verdict, VerdictTag};
use crate::corollaries::{self, CorollaryError};
use crate::forms::{self, FormError, HermitianInstance, HermitianMatrix, Instance};
use crate::linalg::{LinalgError, Matrix, SymmetricMatrix};
use crate::oracle::{self, Family, GeneratorSpec, OracleError};
use crate::rng::SplitMix64;

pub const MAGIC: &str = "triform/1";

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_COROLLARY_FAILED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: expected magic '{MAGIC}'")]
    BadMagic { line: usize },
    #[error("line {line}: bad dimension: {msg}")]
    BadDimension { line: usize, msg: String },
    #[error("line {line}: bad matrix block: {msg}")]
    BadMatrixBlock { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Validation(#[from] FormError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Corollary(#[from] CorollaryError),
    #[error(transparent)]
    Certify(#[from] certify::CertifyError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

/// A parsed but not yet validated instance file.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub dim: usize,
    pub complex: bool,
    /// Row-major rows; `2 · dim` values per row (re, im interleaved) when
    /// `complex`.
    pub t: Vec<Vec<f64>>,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.inner.next();
        if let Some((n, _)) = item {
            self.last = n;
        }
        item
    }

    fn peek(&mut self) -> Option<&(usize, &'a str)> {
        self.inner.peek()
    }
}

fn parse_row(line: usize, text: &str, width: usize) -> Result<Vec<f64>, CliError> {
    let mut row = Vec::with_capacity(width);
    for tok in text.split_whitespace() {
        let v: f64 =
            tok.parse().map_err(|_| CliError::BadMatrixBlock { line, msg: format!("'{tok}' is not a number") })?;
        if !v.is_finite() {
            return Err(CliError::BadMatrixBlock { line, msg: format!("non-finite value '{tok}'") });
        }
        row.push(v);
    }
    if row.len() != width {
        return Err(CliError::BadMatrixBlock { line, msg: format!("expected {width} values, found {}", row.len()) });
    }
    Ok(row)
}

fn parse_block(lines: &mut Lines<'_>, label: &str, rows: usize, width: usize) -> Result<Vec<Vec<f64>>, CliError> {
    match lines.next() {
        Some((_, l)) if l == label => {}
        Some((n, l)) => {
            return Err(CliError::BadMatrixBlock {
                line: n,
                msg: format!("expected block label '{label}', found '{l}'"),
            })
        }
        None => return Err(CliError::BadMatrixBlock { line: lines.last + 1, msg: format!("missing block '{label}'") }),
    }
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        match lines.next() {
            Some((n, l)) => out.push(parse_row(n, l, width)?),
            None => {
                return Err(CliError::BadMatrixBlock {
                    line: lines.last + 1,
                    msg: format!("block '{label}' ends after {} of {rows} rows", out.len()),
                })
            }
        }
    }
    Ok(out)
}

/// Parses the text of an instance file. Syntax only; see
/// [`InstanceFile::to_instance`] for validation.
pub fn parse_instance_file(text: &str) -> Result<InstanceFile, CliError> {
    let mut lines = Lines::new(text);
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        Some((n, _)) => return Err(CliError::BadMagic { line: n }),
        None => return Err(CliError::BadMagic { line: 1 }),
    }
    let complex = matches!(lines.peek(), Some((_, "complex")));
    if complex {
        lines.next();
    }
    let dim = match lines.next() {
        Some((n, l)) => {
            let mut parts = l.split_whitespace();
            if parts.next() != Some("dim") {
                return Err(CliError::BadDimension { line: n, msg: format!("expected 'dim N', found '{l}'") });
            }
            let value = parts.next().ok_or_else(|| CliError::BadDimension { line: n, msg: "missing N".into() })?;
            if parts.next().is_some() {
                return Err(CliError::BadDimension { line: n, msg: "trailing tokens".into() });
            }
            match value.parse::<usize>() {
                Ok(d) if d > 0 => d,
                _ => {
                    return Err(CliError::BadDimension { line: n, msg: format!("'{value}' is not a positive integer") })
                }
            }
        }
        None => return Err(CliError::BadDimension { line: lines.last + 1, msg: "missing 'dim N'".into() }),
    };
    let width = if complex { 2 * dim } else { dim };
    let t = parse_block(&mut lines, "T", dim, width)?;
    let a = parse_block(&mut lines, "A", dim, width)?;
    let b = parse_block(&mut lines, "B", dim, width)?;
    if let Some((n, l)) = lines.next() {
        return Err(CliError::BadMatrixBlock { line: n, msg: format!("trailing content '{l}'") });
    }
    Ok(InstanceFile { dim, complex, t, a, b })
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let rows = |m: &SymmetricMatrix| (0..m.dim()).map(|i| m.row(i).to_vec()).collect();
        InstanceFile { dim: inst.dim(), complex: false, t: rows(inst.t()), a: rows(inst.a()), b: rows(inst.b()) }
    }

    pub fn from_hermitian(h: &HermitianInstance) -> Self {
        let rows = |m: &HermitianMatrix| {
            (0..m.dim()).map(|i| (0..m.dim()).flat_map(|j| [m.get(i, j).re, m.get(i, j).im]).collect()).collect()
        };
        InstanceFile { dim: h.dim(), complex: true, t: rows(&h.t), a: rows(&h.a), b: rows(&h.b) }
    }

    /// Canonical text form.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        if self.complex {
            out.push_str("complex\n");
        }
        let _ = writeln!(out, "dim {}", self.dim);
        for (label, block) in [("T", &self.t), ("A", &self.a), ("B", &self.b)] {
            out.push_str(label);
            out.push('\n');
            for row in block {
                let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        out
    }

    fn real_matrix(&self, rows: &[Vec<f64>]) -> Result<SymmetricMatrix, CliError> {
        Ok(SymmetricMatrix::from_rows(rows)?)
    }

    fn hermitian_matrix(&self, rows: &[Vec<f64>]) -> Result<HermitianMatrix, CliError> {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect()).collect();
        Ok(HermitianMatrix::from_rows(&rows)?)
    }

    pub fn hermitian(&self) -> Result<HermitianInstance, CliError> {
        Ok(HermitianInstance::new(
            self.hermitian_matrix(&self.t)?,
            self.hermitian_matrix(&self.a)?,
            self.hermitian_matrix(&self.b)?,
        )?)
    }

    /// Validates the forms; complex files are realified to dimension `2N`.
    pub fn to_instance(&self) -> Result<Instance, CliError> {
        if self.complex {
            return Ok(forms::realify(&self.hermitian()?)?);
        }
        Ok(forms::validate_instance(
            self.real_matrix(&self.t)?,
            self.real_matrix(&self.a)?,
            self.real_matrix(&self.b)?,
        )?)
    }
}

/// Parses and validates an instance from any reader.
pub fn parse_instance<R: Read>(mut reader: R) -> Result<Instance, CliError> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|source| CliError::Io { path: "<input>".into(), source })?;
    parse_instance_file(&text)?.to_instance()
}

/// Parses a general `R x C` matrix file: a `matrix R C` header then `R` rows.
pub fn parse_matrix_file(text: &str) -> Result<Matrix, CliError> {
    let mut lines = Lines::new(text);
    let (n, header) = lines.next().ok_or(CliError::BadDimension { line: 1, msg: "missing 'matrix R C'".into() })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let dims = match parts.as_slice() {
        ["matrix", r, c] => r.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
        _ => None,
    };
    let (r, c) = match dims {
        Some((r, c)) if r > 0 && c > 0 => (r, c),
        _ => return Err(CliError::BadDimension { line: n, msg: format!("expected 'matrix R C', found '{header}'") }),
    };
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let (n, l) = lines.next().ok_or(CliError::BadMatrixBlock {
            line: lines.last + 1,
            msg: format!("matrix ends after {} of {r} rows", rows.len()),
        })?;
        rows.push(parse_row(n, l, c)?);
    }
    if let Some((n, l)) = lines.next() {
        return Err(CliError::BadMatrixBlock { line: n, msg: format!("trailing content '{l}'") });
    }
    Ok(Matrix::from_rows(&rows)?)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConfigEcho {
    pub tol_s: f64,
    pub eps_cert: f64,
    pub eps_ref: f64,
    pub max_iter: usize,
    pub cluster_tol: f64,
}

impl From<&CertifyConfig> for ConfigEcho {
    fn from(c: &CertifyConfig) -> Self {
        ConfigEcho {
            tol_s: c.tol_s,
            eps_cert: c.eps_cert,
            eps_ref: c.eps_ref,
            max_iter: c.max_iter,
            cluster_tol: c.cluster_tol,
        }
    }
}

/// Outcome of `certify`. Enough to re-verify the verdict from the instance
/// file alone: certificates through the pencil at `alpha`, refutations by
/// evaluating the forms at `witness`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub verdict: &'static str,
    pub dim: usize,
    pub scale: f64,
    pub alpha: Option<f64>,
    pub slack: Option<f64>,
    pub bracket: Option<(f64, f64)>,
    pub iterations: Option<usize>,
    pub witness: Option<Vec<f64>>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub gap: Option<f64>,
    pub alpha_star: Option<f64>,
    pub tau_mismatch: Option<f64>,
    pub f_star: Option<f64>,
    pub band: Option<(f64, f64)>,
    pub reason: Option<&'static str>,
    pub config: ConfigEcho,
}

impl Report {
    pub fn new(inst: &Instance, verdict: &Verdict, config: &CertifyConfig) -> Self {
        let mut r = Report {
            verdict: verdict.tag().as_str(),
            dim: inst.dim(),
            scale: inst.scale(),
            alpha: None,
            slack: None,
            bracket: None,
            iterations: None,
            witness: None,
            lhs: None,
            rhs: None,
            gap: None,
            alpha_star: None,
            tau_mismatch: None,
            f_star: None,
            band: None,
            reason: None,
            config: config.into(),
        };
        match verdict {
            Verdict::Certified(c) => {
                r.alpha = Some(c.alpha);
                r.slack = Some(c.slack);
                r.bracket = Some(c.bracket);
                r.iterations = Some(c.iterations);
            }
            Verdict::Refuted(x) => {
                r.witness = Some(x.witness.clone());
                r.lhs = Some(x.lhs);
                r.rhs = Some(x.rhs);
                r.gap = Some(x.gap);
                r.alpha_star = Some(x.alpha_star);
                r.tau_mismatch = Some(x.tau_mismatch);
            }
            Verdict::Inconclusive(i) => {
                r.alpha_star = Some(i.alpha_star);
                r.f_star = Some(i.f_star);
                r.band = Some(i.band);
                r.reason = Some(i.reason.as_str());
            }
        }
        r
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => "-".into(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(render_scalar).collect();
            format!("[{}]", inner.join(" "))
        }
        Value::Object(_) => v.to_string(),
    }
}

fn render_human(value: &Value, prefix: &str, out: &mut String) {
    if let Value::Object(map) = value {
        for (k, v) in map {
            match v {
                Value::Object(_) => render_human(v, &format!("{prefix}{k}."), out),
                Value::Null => {}
                _ => {
                    let _ = writeln!(out, "{prefix}{k}: {}", render_scalar(v));
                }
            }
        }
    }
}

/// Renders a report either as pretty JSON or as `key: value` lines with
/// reals at 17 significant digits. Both come from the same serialized value.
pub fn render<T: Serialize>(report: &T, json: bool) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        render_human(&value, "", &mut s);
        s
    }
}

#[derive(Debug, Parser)]
#[command(name = "triform", version, about = "Certify or refute T[x] >= 2 sqrt(A[x] B[x]) for quadratic forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct EngineFlags {
    #[arg(long, default_value_t = 1e-9)]
    pub tol_s: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub eps_cert: f64,
    #[arg(long, default_value_t = 1e-7)]
    pub eps_ref: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    /// Emit JSON instead of key: value lines.
    #[arg(long)]
    pub json: bool,
}

impl EngineFlags {
    fn config(&self) -> CertifyConfig {
        CertifyConfig {
            tol_s: self.tol_s,
            eps_cert: self.eps_cert,
            eps_ref: self.eps_ref,
            max_iter: self.max_iter,
            ..CertifyConfig::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorFlags {
    #[arg(long, default_value = "certified")]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub shrink: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the pointwise inequality for an instance file ("-" for stdin).
    Certify {
        file: String,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Brute-force scan of the unit circle or sphere (dimension 2 or 3).
    Oracle {
        file: String,
        #[arg(long, default_value_t = 0.005)]
        resolution: f64,
        #[arg(long)]
        json: bool,
    },
    /// Trace inequality tr T >= 2 sqrt(tr A tr B) for a certified instance.
    Trace {
        file: String,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Hilbert-Schmidt inequality; the file's A and B blocks are P1 and P2.
    Hs {
        file: String,
        /// Matrix file for L ("matrix R C" header); identity when omitted.
        #[arg(long)]
        l_matrix: Option<String>,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Generate, certify and cross-check seeded instances.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Fixed dimension; random in 2..=6 when omitted.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0.01)]
        resolution: f64,
        #[command(flatten)]
        generator: GeneratorFlags,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Write an instance file for a generator spec.
    Gen {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[command(flatten)]
        generator: GeneratorFlags,
        /// Output path; standard output when omitted.
        #[arg(long)]
        output: Option<String>,
    },
}

/// I/O handles for [`run_with`].
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|source| CliError::Io { path: "-".into(), source })?;
    } else {
        text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    }
    Ok(text)
}

fn load(path: &str, stdin: &mut dyn Read) -> Result<Instance, CliError> {
    parse_instance_file(&read_source(path, stdin)?)?.to_instance()
}

fn verdict_exit(v: &Verdict) -> i32 {
    match v.tag() {
        VerdictTag::Certified => EXIT_CERTIFIED,
        VerdictTag::Refuted => EXIT_REFUTED,
        VerdictTag::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut io = Io { stdin: &mut stdin.lock(), stdout: &mut stdout.lock(), stderr: &mut stderr.lock() };
    run_with(args, &mut io)
}

pub fn run_with<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io.stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(io.stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, CliError> {
    match command {
        Command::Certify { file, engine } => {
            let inst = load(&file, io.stdin)?;
            let config = engine.config();
            let verdict = certify::certify(&inst, &config)?;
            emit(io, &render(&Report::new(&inst, &verdict, &config), engine.json));
            Ok(verdict_exit(&verdict))
        }
        Command::Oracle { file, resolution, json } => {
            let inst = load(&file, io.stdin)?;
            let scan = oracle::sphere_scan(&inst, resolution)?;
            let (best_s, best_f) = oracle::grid_alpha(&inst, 100, (-6.0, 6.0))?;
            let report = OracleReport {
                dim: inst.dim(),
                scale: inst.scale(),
                min_value: scan.min_value,
                argmin: scan.argmin,
                resolution: scan.resolution,
                error_bound: scan.error_bound,
                grid_best_s: best_s,
                grid_best_f: best_f,
            };
            emit(io, &render(&report, json));
            Ok(0)
        }
        Command::Trace { file, engine } => {
            let inst = load(&file, io.stdin)?;
            let config = engine.config();
            let verdict = certify::certify(&inst, &config)?;
            let base = Report::new(&inst, &verdict, &config);
            let (trace, code) = match corollaries::trace_check(&inst, &verdict) {
                Ok(t) => {
                    let ok = t.margin >= -config.eps_cert * inst.scale();
                    (Some(t), if ok { 0 } else { EXIT_COROLLARY_FAILED })
                }
                Err(CorollaryError::PreconditionNotCertified) => (None, verdict_exit(&verdict)),
                Err(e) => return Err(e.into()),
            };
            let report = TraceCommandReport {
                trace_t: trace.map(|t| t.trace_t),
                bound: trace.map(|t| t.bound),
                margin: trace.map(|t| t.margin),
                hypothesis: base,
            };
            emit(io, &render(&report, engine.json));
            Ok(code)
        }
        Command::Hs { file, l_matrix, engine } => {
            let parsed = parse_instance_file(&read_source(&file, io.stdin)?)?;
            if parsed.complex {
                return Err(CliError::BadMatrixBlock { line: 2, msg: "hs expects a real instance".into() });
            }
            let t = parsed.real_matrix(&parsed.t)?;
            let p1 = parsed.real_matrix(&parsed.a)?;
            let p2 = parsed.real_matrix(&parsed.b)?;
            let l = match l_matrix {
                Some(path) => parse_matrix_file(&read_source(&path, io.stdin)?)?,
                None => Matrix::identity(t.dim()),
            };
            let config = engine.config();
            match corollaries::hs_check(&t, &p1, &p2, &l, &config) {
                Ok(r) => {
                    let ok = r.margin >= -config.eps_cert * r.scale;
                    let report = HsCommandReport {
                        lhs: r.lhs,
                        rhs: r.rhs,
                        margin: r.margin,
                        alpha: r.hypothesis.alpha,
                        slack: r.hypothesis.slack,
                        transferred_slack: r.transferred_slack,
                        reduced_verdict: r.reduced_verdict.as_ref().map(|v| v.tag().as_str()),
                        reduced_alpha: r.reduced_verdict.as_ref().and_then(|v| v.certificate()).map(|c| c.alpha),
                        scale: r.scale,
                    };
                    emit(io, &render(&report, engine.json));
                    Ok(if ok { 0 } else { EXIT_COROLLARY_FAILED })
                }
                Err(CorollaryError::HypothesisRefuted(w)) => {
                    let inst = forms::validate_instance(t, p1, p2)?;
                    let verdict = Verdict::Refuted(*w);
                    emit(io, &render(&Report::new(&inst, &verdict, &config), engine.json));
                    Ok(EXIT_REFUTED)
                }
                Err(CorollaryError::HypothesisInconclusive { f_star }) => {
                    let _ = writeln!(io.stderr, "hypothesis inconclusive (max f = {f_star:.16e})");
                    Ok(EXIT_INCONCLUSIVE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Fuzz { count, dim, resolution, generator, engine } => {
            let config = engine.config();
            config.validate()?;
            let summary = fuzz(count, dim, resolution, &generator, &config)?;
            let ok = summary.property_failures == 0;
            emit(io, &render(&summary, engine.json));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Gen { dim, generator, output } => {
            let spec = GeneratorSpec::new(generator.family, dim, generator.seed)
                .alpha(generator.alpha)
                .shrink(generator.shrink);
            let g = oracle::generate(&spec)?;
            let text = InstanceFile::from_instance(&g.instance).render();
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })?,
                None => emit(io, &text),
            }
            if let Some(w) = g.witness {
                let cells: Vec<String> = w.iter().map(|v| format!("{v:.16e}")).collect();
                let _ = writeln!(io.stderr, "known witness: {}", cells.join(" "));
            }
            Ok(0)
        }
    }
}

fn emit(io: &mut Io<'_>, text: &str) {
    let _ = io.stdout.write_all(text.as_bytes());
    let _ = io.stdout.flush();
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub dim: usize,
    pub scale: f64,
    pub min_value: f64,
    pub argmin: Vec<f64>,
    pub resolution: f64,
    pub error_bound: f64,
    pub grid_best_s: f64,
    pub grid_best_f: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceCommandReport {
    pub trace_t: Option<f64>,
    pub bound: Option<f64>,
    pub margin: Option<f64>,
    pub hypothesis: Report,
}

#[derive(Debug, Clone, Serialize)]
pub struct HsCommandReport {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub alpha: f64,
    pub slack: f64,
    pub transferred_slack: f64,
    pub reduced_verdict: Option<&'static str>,
    pub reduced_alpha: Option<f64>,
    pub scale: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzSummary {
    pub family: &'static str,
    pub count: usize,
    pub seed: u64,
    pub certified: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub oracle_scanned: usize,
    pub oracle_agreed: usize,
    pub property_failures: usize,
    /// Indices of the rounds that broke a property, in order.
    pub failed_rounds: Vec<usize>,
    pub tally: String,
}

/// `count` rounds of generate, certify, and (for dimension <= 3) scan.
///
/// Per-round seeds and dimensions come from one SplitMix64 stream seeded
/// with the base seed, so the summary is a pure function of the flags.
pub fn fuzz(
    count: usize,
    dim: Option<usize>,
    resolution: f64,
    generator: &GeneratorFlags,
    config: &CertifyConfig,
) -> Result<FuzzSummary, CliError> {
    let mut rng = SplitMix64::new(generator.seed);
    let mut s = FuzzSummary {
        family: generator.family.as_str(),
        count,
        seed: generator.seed,
        certified: 0,
        refuted: 0,
        inconclusive: 0,
        oracle_scanned: 0,
        oracle_agreed: 0,
        property_failures: 0,
        failed_rounds: Vec::new(),
        tally: String::new(),
    };
    for round in 0..count {
        let round_seed = rng.next_u64();
        let round_dim = dim.unwrap_or_else(|| rng.range_inclusive(2, 6));
        let spec =
            GeneratorSpec::new(generator.family, round_dim, round_seed).alpha(generator.alpha).shrink(generator.shrink);
        let inst = oracle::generate(&spec)?.instance;
        let verdict = certify::certify(&inst, config)?;
        let mut ok = match (&verdict, generator.family) {
            (Verdict::Certified(c), _) => {
                s.certified += 1;
                generator.family != Family::Violating && certify::verify_certificate(&inst, c, config.eps_ref)?
            }
            (Verdict::Refuted(r), _) => {
                s.refuted += 1;
                generator.family == Family::Violating && certify::verify_refutation(&inst, r, config.eps_ref)
            }
            (Verdict::Inconclusive(_), Family::Certified) => {
                s.inconclusive += 1;
                false
            }
            (Verdict::Inconclusive(_), _) => {
                s.inconclusive += 1;
                true
            }
        };
        if inst.dim() <= 3 {
            let scan = oracle::sphere_scan(&inst, resolution)?;
            if scan.min_value.abs() > 10.0 * config.eps_ref * inst.scale() {
                s.oracle_scanned += 1;
                let expected = if scan.min_value > 0.0 { VerdictTag::Certified } else { VerdictTag::Refuted };
                if verdict.tag() == expected {
                    s.oracle_agreed += 1;
                } else {
                    ok = false;
                }
            }
        }
        if !ok {
            s.property_failures += 1;
            s.failed_rounds.push(round);
        }
    }
    if generator.family == Family::Violating && generator.shrink <= 0.9 && count > 0 {
        // at least 99% of violating rounds must end Refuted
        if (s.refuted as f64) < 0.99 * count as f64 {
            s.property_failures += 1;
        }
    }
    let (hits, word) = match generator.family {
        Family::Certified => (s.certified, "certified"),
        Family::Tight => (s.count - s.refuted, "not refuted"),
        Family::Violating => (s.refuted, "refuted"),
    };
    s.tally = format!("{hits}/{count} {word}");
    Ok(s)
}
