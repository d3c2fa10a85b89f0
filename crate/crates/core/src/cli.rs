//! Command-line front end of `hankel-lab`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};

use crate::elliptic::EllipticContext;
use crate::error::{LabError, Result};
use crate::operators::{build_hankel, build_jacobi, Tag};
use crate::spectral::{closed_eigvec, verify, SpectralReport, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "hankel-lab", version, about = "Build, diagonalize and verify the elliptic Hankel operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elliptic context: K, K', E and the nome q
    Ctx(Opts),
    /// Truncated weighted Hankel matrix
    Hankel(Opts),
    /// Truncated Jacobi matrix commuting with the Hankel matrix
    Jacobi(Opts),
    /// Spectral points, masses and eigenvector entries P̂_n(λ_m)
    Poly(Opts),
    /// Closed-form against numerical eigenvalues
    Spectrum(Opts),
    /// Full verification suite; exit status 0 iff every report passes
    Verify(Opts),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Comma-separated moduli in (0,1)
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<f64>,
    /// p|q|r|s|f|g|qp|sp|fp|fpp|gp|all
    #[arg(long)]
    pub tag: Option<String>,
    /// Truncation order N
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of eigenvalues / spectral points
    #[arg(long = "m-max")]
    pub m_max: Option<usize>,
    /// Relative eigenvalue tolerance
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file (standard output when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Validated form of [`Opts`] for one command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub k_values: Vec<f64>,
    pub tags: Vec<Tag>,
    pub n: Option<usize>,
    pub m_max: usize,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Result of a command: the rendered text and the failures to report.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub text: String,
    pub failures: Vec<String>,
}

fn usage(msg: impl Into<String>) -> LabError {
    LabError::Domain(msg.into())
}

fn parse_tags(s: Option<&str>, default_all: bool) -> Result<Vec<Tag>> {
    match s {
        None if default_all => Ok(Tag::ALL.to_vec()),
        None => Ok(vec![Tag::P]),
        Some("all") => Ok(Tag::ALL.to_vec()),
        Some(list) => list.split(',').map(Tag::from_str).collect(),
    }
}

impl RunConfig {
    pub fn from_opts(cmd: &Command) -> Result<Self> {
        let (o, verifying) = match cmd {
            Command::Verify(o) => (o, true),
            Command::Ctx(o) | Command::Hankel(o) | Command::Jacobi(o) | Command::Poly(o) | Command::Spectrum(o) => (o, false),
        };
        let k_values = if o.k.is_empty() {
            if verifying {
                vec![0.3, 0.5, 0.8]
            } else {
                vec![0.5]
            }
        } else {
            o.k.clone()
        };
        if let Some(&k) = k_values.iter().find(|k| !(**k > 0.0 && **k < 1.0)) {
            return Err(usage(format!("--k values must lie in (0,1), got {k}")));
        }
        if !(o.tol > 0.0) {
            return Err(usage("--tol must be positive"));
        }
        if matches!(o.n, Some(n) if n < 2) {
            return Err(usage("--n must be at least 2"));
        }
        let m_max = o.m_max.unwrap_or(match cmd {
            Command::Verify(_) => 6,
            Command::Poly(_) => 4,
            _ => 8,
        });
        if m_max == 0 {
            return Err(usage("--m-max must be at least 1"));
        }
        Ok(Self {
            k_values,
            tags: parse_tags(o.tag.as_deref(), verifying)?,
            n: o.n,
            m_max,
            tol: o.tol,
            format: o.format,
            out: o.out.clone(),
        })
    }

    fn pairs(&self) -> Vec<(Tag, f64)> {
        self.tags.iter().flat_map(|&t| self.k_values.iter().map(move |&k| (t, k))).collect()
    }
}

/// 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt_num(x)).expect("formatted float parses"))
    } else {
        Value::Null
    }
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn matrix_csv(out: &mut String, tag: Tag, k: f64, rows: &[Vec<f64>]) {
    let _ = writeln!(out, "# tag={tag} k={} N={}", fmt_num(k), rows.len());
    for r in rows {
        let line: Vec<String> = r.iter().map(|&x| fmt_num(x)).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
}

fn matrix_json(tag: Tag, k: f64, rows: &[Vec<f64>]) -> Value {
    json!({
        "tag": tag.as_str(),
        "k": num(k),
        "N": rows.len(),
        "matrix": rows.iter().map(|r| r.iter().map(|&x| num(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn json_lines(values: &[Value]) -> String {
    let mut s = String::new();
    for v in values {
        s.push_str(&serde_json::to_string(v).expect("json values serialize"));
        s.push('\n');
    }
    s
}

fn cmd_ctx(cfg: &RunConfig) -> Result<Output> {
    let ctxs = cfg.k_values.iter().map(|&k| EllipticContext::new(k)).collect::<Result<Vec<_>>>()?;
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::from("k,K,Kp,E,q\n");
            for c in &ctxs {
                let _ = writeln!(s, "{},{},{},{},{}", fmt_num(c.k), fmt_num(c.big_k), fmt_num(c.big_k_prime), fmt_num(c.big_e), fmt_num(c.q));
            }
            s
        }
        Format::Json => json_lines(
            &ctxs
                .iter()
                .map(|c| json!({"k": num(c.k), "K": num(c.big_k), "Kp": num(c.big_k_prime), "E": num(c.big_e), "q": num(c.q)}))
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Output { text, failures: Vec::new() })
}

fn cmd_matrix(cfg: &RunConfig, jacobi: bool) -> Result<Output> {
    let n = cfg.n.unwrap_or(8);
    let mut csv = String::new();
    let mut js = Vec::new();
    for (tag, k) in cfg.pairs() {
        let m = if jacobi { build_jacobi(tag, k, n)?.to_mat() } else { build_hankel(tag, k, n)?.to_mat() };
        let rows: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
        match cfg.format {
            Format::Csv => matrix_csv(&mut csv, tag, k, &rows),
            Format::Json => js.push(matrix_json(tag, k, &rows)),
        }
    }
    let text = if cfg.format == Format::Csv { csv } else { json_lines(&js) };
    Ok(Output { text, failures: Vec::new() })
}

fn cmd_poly(cfg: &RunConfig) -> Result<Output> {
    let n = cfg.n.unwrap_or(8);
    let mut csv = String::new();
    let mut js = Vec::new();
    for (tag, k) in cfg.pairs() {
        let ctx = EllipticContext::new(k)?;
        let fam = tag.family();
        let mut rows = Vec::new();
        let mut points = Vec::new();
        for m in tag.m_start()..tag.m_start() + cfg.m_max {
            let (lam, mass) = fam.spectral_point(m, &ctx)?;
            let v = closed_eigvec(tag, &ctx, m, n)?;
            rows.push(v.entries.clone());
            points.push(json!({
                "m": m,
                "lambda": num(lam),
                "mass": num(mass),
                "forward_trusted": v.forward_trusted,
                "values": v.entries.iter().map(|&x| num(x)).collect::<Vec<_>>(),
            }));
        }
        match cfg.format {
            Format::Csv => matrix_csv(&mut csv, tag, k, &rows),
            Format::Json => js.push(json!({"tag": tag.as_str(), "family": fam.letter().to_string(), "k": num(k), "N": n, "points": points})),
        }
    }
    let text = if cfg.format == Format::Csv { csv } else { json_lines(&js) };
    Ok(Output { text, failures: Vec::new() })
}

/// JSON form of a report; the keys tag, k, truncation, eigenvalues,
/// commutator_residual, trace_gap and pass are always present.
pub fn report_json(rep: &SpectralReport, with_vectors: bool) -> Value {
    let eig: Vec<Value> = rep
        .records
        .iter()
        .map(|r| {
            let mut o = Map::new();
            o.insert("m".into(), json!(r.m));
            o.insert("closed_form".into(), num(r.closed_form));
            o.insert("numeric".into(), num(r.numeric));
            o.insert("rel_err".into(), num(r.rel_err));
            if with_vectors {
                o.insert("eigvec_residual".into(), opt_num(r.eigvec_residual));
                o.insert("norm_gap".into(), opt_num(r.norm_gap));
            }
            Value::Object(o)
        })
        .collect();
    json!({
        "tag": rep.tag.as_str(),
        "k": num(rep.k),
        "truncation": rep.truncation,
        "m_start": rep.m_start,
        "eigenvalues": eig,
        "commutator_residual": num(rep.commutator_residual),
        "trace_gap": num(rep.trace_gap),
        "pass": rep.pass,
        "failures": rep.failures,
    })
}

fn report_csv(out: &mut String, rep: &SpectralReport, with_vectors: bool) {
    let _ = writeln!(out, "# tag={} k={} N={}", rep.tag, fmt_num(rep.k), rep.truncation);
    let _ = writeln!(out, "m,closed_form,numeric,rel_err{}", if with_vectors { ",eigvec_residual,norm_gap" } else { "" });
    for r in &rep.records {
        let _ = write!(out, "{},{},{},{}", r.m, fmt_num(r.closed_form), fmt_num(r.numeric), fmt_num(r.rel_err));
        if with_vectors {
            let o = |x: Option<f64>| x.map_or(String::new(), fmt_num);
            let _ = write!(out, ",{},{}", o(r.eigvec_residual), o(r.norm_gap));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "# commutator_residual={} trace_gap={} pass={}", fmt_num(rep.commutator_residual), fmt_num(rep.trace_gap), rep.pass);
}

/// Reports for every (tag, k) pair, computed in parallel, in tag order.
pub fn run_reports(cfg: &RunConfig, with_vectors: bool) -> Vec<SpectralReport> {
    let vc = VerifyConfig {
        n: cfg.n,
        m_max: cfg.m_max,
        tol: cfg.tol,
        eigvec_count: if with_vectors { cfg.m_max.min(6) } else { 0 },
        ..VerifyConfig::default()
    };
    cfg.pairs().par_iter().map(|&(t, k)| verify(t, k, &vc)).collect()
}

fn cmd_reports(cfg: &RunConfig, with_vectors: bool) -> Output {
    let reps = run_reports(cfg, with_vectors);
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::new();
            reps.iter().for_each(|r| report_csv(&mut s, r, with_vectors));
            s
        }
        Format::Json => json_lines(&reps.iter().map(|r| report_json(r, with_vectors)).collect::<Vec<_>>()),
    };
    let failures = reps
        .iter()
        .flat_map(|r| r.failures.iter().map(move |f| format!("tag={} k={}: {f}", r.tag, r.k)))
        .collect();
    Output { text, failures }
}

/// Execute a parsed command line.
pub fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Output> {
    match cmd {
        Command::Ctx(_) => cmd_ctx(cfg),
        Command::Hankel(_) => cmd_matrix(cfg, false),
        Command::Jacobi(_) => cmd_matrix(cfg, true),
        Command::Poly(_) => cmd_poly(cfg),
        Command::Spectrum(_) => {
            let mut o = cmd_reports(cfg, false);
            // tolerance misses are part of the printed report; only hard errors fail
            o.failures.retain(|f| f.contains("error:"));
            Ok(o)
        }
        Command::Verify(_) => Ok(cmd_reports(cfg, true)),
    }
}

/// Entry point used by the binary. Exit codes: 0 pass, 1 computation or
/// verification failure, 2 usage error.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = match RunConfig::from_opts(&cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("usage error: {e}");
            return ExitCode::from(2);
        }
    };
    let out = match execute(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("computation failed: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cfg.out {
        Some(p) => std::fs::write(p, &out.text).map_err(|e| e.to_string()),
        None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(1);
    }
    for f in &out.failures {
        eprintln!("FAIL {f}");
    }
    if out.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
