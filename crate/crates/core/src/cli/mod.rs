//! Command-line front end. [`run`] parses arguments and returns the captured
//! output and exit code, so the binary only has to print them.
//!
//! Exit codes: 0 covered or success, 1 refuted or a failed check, 2 usage or
//! invalid input.

mod examples;
mod scan;

pub use examples::{
    alpha_beta, example_blue_lemma, example_root_family, example_root_order, example_sharpness, verdict_of,
    Checklist, Verdict,
};
pub use scan::{render_csv, render_svg, scan_grid, OutputFormat, ScanCell, ScanConfig};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::Signed;
use thiserror::Error;

use crate::decompose::{decompose, verify_certificate, CertificateRecord, DecomposeError};
use crate::ifs::{param_violation, IfsError, IfsParams};
use crate::numerics::{fmt_rational, parse_rational, NumericsError, Rational};
use crate::product::Certificate;
use crate::region::{
    certify_blue_lemma_with, replay_certificate, verify_theorem, BlueLemmaOptions, CertificateFile, RegionError,
    DEFAULT_BLUE_DEPTH,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Ifs(#[from] IfsError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Numerics(_) | CliError::Ifs(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "selfsim-mult", version, about = "Exact checks for products of overlapping self-similar sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExampleName {
    Ex1,
    Ex2,
    Prop,
    BlueLemma,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether K·K = [0, 1] and audit the route that proves it.
    Verify {
        #[arg(long, value_parser = rational_arg)]
        lambda: Rational,
        #[arg(long, value_parser = rational_arg)]
        c: Rational,
        /// Deepest level used by the depth audit and the gap check.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Classify a grid over the parameter square.
    Scan {
        /// key = value file; flags given on the command line override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_parser = rational_arg)]
        step: Option<Rational>,
        #[arg(long)]
        lambda_range: Option<String>,
        #[arg(long)]
        c_range: Option<String>,
        #[arg(long)]
        depth_audit: Option<usize>,
        #[arg(long)]
        format: Option<String>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write u = x·y with x, y in K.
    Decompose {
        #[arg(long, value_parser = rational_arg)]
        lambda: Rational,
        #[arg(long, value_parser = rational_arg)]
        c: Rational,
        #[arg(long, value_parser = rational_arg)]
        u: Rational,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a worked example and report each check.
    Examples {
        #[arg(value_enum)]
        which: ExampleName,
    },
    /// Produce the box certificate for the blue-region bound c ≥ 1/2.
    Certify {
        #[arg(long, default_value_t = DEFAULT_BLUE_DEPTH)]
        depth: usize,
        /// Interval verdicts only, without multiplier certificates.
        #[arg(long)]
        pure: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a box certificate file independently of the prover.
    Replay { file: PathBuf },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String, code: i32) -> Self {
        Self { code, stdout, stderr: String::new() }
    }
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CliOutput::ok(text, 0)
            };
        }
    };
    let result = match cli.command {
        Command::Verify { lambda, c, depth } => cmd_verify(&lambda, &c, depth),
        Command::Scan { config, step, lambda_range, c_range, depth_audit, format, out } => {
            scan_config(config, step, lambda_range, c_range, depth_audit, format).and_then(|cfg| cmd_scan(&cfg, out))
        }
        Command::Decompose { lambda, c, u, depth, out } => cmd_decompose(&lambda, &c, &u, depth, out),
        Command::Examples { which } => cmd_examples(which),
        Command::Certify { depth, pure, out } => cmd_certify(depth, !pure, out),
        Command::Replay { file } => cmd_replay(&file),
    };
    match result {
        Ok(out) => out,
        Err(e) => CliOutput { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn line(out: &mut String, text: impl AsRef<str>) {
    writeln!(out, "{}", text.as_ref()).expect("writing to a String");
}

pub fn cmd_verify(lambda: &Rational, c: &Rational, depth: usize) -> Result<CliOutput, CliError> {
    let mut out = String::new();
    line(&mut out, format!("lambda = {}, c = {}", fmt_rational(lambda), fmt_rational(c)));
    if let Some(v) = param_violation(lambda, c) {
        line(&mut out, format!("verdict: INVALID ({v})"));
        return Ok(CliOutput::ok(out, 2));
    }
    let p = IfsParams::new(lambda.clone(), c.clone())?;
    let report = match verify_theorem(&p, depth) {
        Ok(r) => r,
        Err(e) => {
            line(&mut out, format!("verdict: FAILED ({e})"));
            return Ok(CliOutput::ok(out, 1));
        }
    };
    let covered = report.verdict.covered;
    line(&mut out, format!("verdict: {}", if covered { "COVERED" } else { "NOT-COVERED" }));
    line(&mut out, format!("route: {}", report.label));
    line(
        &mut out,
        format!(
            "(1-lambda)^2 <= c: {}",
            if report.necessary.holds { "holds" } else { "fails" }
        ),
    );
    if let Some(route) = &report.route {
        let windows: Vec<String> = route.windows.iter().map(ToString::to_string).collect();
        line(&mut out, format!("window: {}", windows.join(" u ")));
        line(&mut out, format!("m: {} (closed form {})", fmt_rational(&report.verdict.m), fmt_rational(&route.formula_m)));
        for g in &route.guards {
            line(&mut out, format!("guard {}: {}", g.name, if g.holds { "ok" } else { "violated" }));
        }
    }
    if let Some(s) = &report.stability {
        line(
            &mut out,
            format!("stability: {} pairs at level {}, {}", s.pairs, s.level, if s.passed() { "all stable" } else { "UNSTABLE" }),
        );
    }
    match &report.verdict.certificate {
        Certificate::Renormalized => line(&mut out, format!("base product: {}", report.verdict.base_product)),
        Certificate::ScalingGap { gap } => line(&mut out, format!("gap: ({}, {})", fmt_rational(gap.lo()), fmt_rational(gap.hi()))),
        Certificate::Gap { gap, outer_level } => line(
            &mut out,
            format!("gap: ({}, {}) misses the level-{outer_level} outer product", fmt_rational(gap.lo()), fmt_rational(gap.hi())),
        ),
    }
    if let Some(d) = &report.depth {
        let status = match d.first_change {
            None => "invariant".to_string(),
            Some(n) => format!("changes at level {n}"),
        };
        line(&mut out, format!("depth audit: levels {}..={} {status}", d.base_level, d.n_max));
    }
    Ok(CliOutput::ok(out, if covered { 0 } else { 1 }))
}

fn scan_config(
    config: Option<PathBuf>,
    step: Option<Rational>,
    lambda_range: Option<String>,
    c_range: Option<String>,
    depth_audit: Option<usize>,
    format: Option<String>,
) -> Result<ScanConfig, CliError> {
    let mut cfg = match config {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            ScanConfig::from_config_text(&text)?
        }
        None => ScanConfig::default(),
    };
    if let Some(s) = step {
        cfg.grid_step = s;
    }
    if let Some(r) = lambda_range {
        cfg.set("lambda_range", &r)?;
    }
    if let Some(r) = c_range {
        cfg.set("c_range", &r)?;
    }
    if let Some(d) = depth_audit {
        cfg.depth_audit = d;
    }
    if let Some(f) = format {
        cfg.set("output_format", &f)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_scan(cfg: &ScanConfig, out: Option<PathBuf>) -> Result<CliOutput, CliError> {
    let cells = scan_grid(cfg)?;
    let body = match cfg.output_format {
        OutputFormat::Csv => render_csv(&cells),
        OutputFormat::Svg => render_svg(cfg, &cells),
    };
    match out {
        Some(path) => {
            scan::write_output(&path, &body)?;
            Ok(CliOutput::ok(format!("wrote {} cells to {}\n", cells.len(), path.display()), 0))
        }
        None => Ok(CliOutput::ok(body, 0)),
    }
}

pub fn cmd_decompose(
    lambda: &Rational,
    c: &Rational,
    u: &Rational,
    depth: usize,
    out: Option<PathBuf>,
) -> Result<CliOutput, CliError> {
    let p = IfsParams::new(lambda.clone(), c.clone())?;
    let cert = decompose(&p, u, depth)?;
    let record = CertificateRecord::new(&p, u, &cert);
    let json = serde_json::to_string_pretty(&record).expect("certificate serializes") + "\n";
    let (rp, ru, rc) = CertificateRecord::decode(&serde_json::from_str(&json).map_err(|e| DecomposeError::Parse(e.to_string()))?)?;
    let replayed = verify_certificate(&rp, &ru, &rc);
    let mut text = String::new();
    line(&mut text, format!("x = {} (word {})", fmt_rational(&cert.x), cert.word_x));
    line(&mut text, format!("y = {} (word {})", fmt_rational(&cert.y), cert.word_y));
    let err = (&cert.x * &cert.y - u).abs();
    line(&mut text, format!("|xy - u| = {}", fmt_rational(&err)));
    line(&mut text, format!("bound = {}", fmt_rational(&cert.error_bound)));
    line(&mut text, format!("replay: {}", if replayed { "ok" } else { "FAILED" }));
    match out {
        Some(path) => {
            scan::write_output(&path, &json)?;
            line(&mut text, format!("certificate written to {}", path.display()));
        }
        None => text.push_str(&json),
    }
    Ok(CliOutput::ok(text, if replayed { 0 } else { 1 }))
}

fn cmd_examples(which: ExampleName) -> Result<CliOutput, CliError> {
    let list = match which {
        ExampleName::Ex1 => example_sharpness()?,
        ExampleName::Ex2 => example_root_family(10)?,
        ExampleName::Prop => example_root_order(20)?,
        ExampleName::BlueLemma => example_blue_lemma(DEFAULT_BLUE_DEPTH)?,
    };
    let mut out = list.lines.clone();
    line(&mut out, format!("{}/{} checks pass", list.passed, list.total()));
    if list.failed.is_empty() {
        Ok(CliOutput::ok(out, 0))
    } else {
        Ok(CliOutput {
            code: 1,
            stdout: out,
            stderr: format!("failed checks: {}\n", list.failed.join(", ")),
        })
    }
}

fn cmd_certify(depth: usize, dual: bool, out: Option<PathBuf>) -> Result<CliOutput, CliError> {
    let cert = certify_blue_lemma_with(BlueLemmaOptions { depth, dual })?;
    let json = cert.to_json();
    let mut text = String::new();
    line(
        &mut text,
        format!(
            "certified c >= 1/2 on {} leaves (holds {}, infeasible {}, multiplier {}), deepest leaf {}",
            cert.leaves.len(),
            cert.holds_count(),
            cert.infeasible_count(),
            cert.dual_count(),
            cert.max_leaf_depth()
        ),
    );
    match out {
        Some(path) => {
            scan::write_output(&path, &json)?;
            line(&mut text, format!("certificate written to {}", path.display()));
        }
        None => text.push_str(&json),
    }
    Ok(CliOutput::ok(text, 0))
}

fn cmd_replay(file: &std::path::Path) -> Result<CliOutput, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
    let parsed = match CertificateFile::from_json(&text) {
        Ok(f) => f,
        Err(e) => return Ok(CliOutput { code: 1, stdout: String::new(), stderr: format!("rejected: {e}\n") }),
    };
    match replay_certificate(&parsed) {
        Ok(r) => Ok(CliOutput::ok(
            format!(
                "accepted: {} leaves (holds {}, infeasible {}, multiplier {}, bisected {})\n",
                r.leaves, r.holds, r.infeasible, r.dual, r.bisected
            ),
            0,
        )),
        Err(e) => Ok(CliOutput { code: 1, stdout: String::new(), stderr: format!("rejected: {e}\n") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> CliOutput {
        run(std::iter::once("selfsim-mult").chain(args.iter().copied()))
    }

    #[test]
    fn verify_reports_the_three_outcomes() {
        let covered = go(&["verify", "--lambda", "1/3", "--c", "4/9", "--depth", "4"]);
        assert_eq!(covered.code, 0, "{}{}", covered.stdout, covered.stderr);
        assert!(covered.stdout.contains("COVERED") && covered.stdout.contains("route: gray"));
        let refuted = go(&["verify", "--lambda", "1/3", "--c", "0.43", "--depth", "4"]);
        assert_eq!(refuted.code, 1);
        assert!(refuted.stdout.contains("NOT-COVERED") && refuted.stdout.contains("gap: (43/100, 4/9)"));
        let invalid = go(&["verify", "--lambda", "1/3", "--c", "1/4"]);
        assert_eq!(invalid.code, 2);
        assert!(invalid.stdout.contains("INVALID"));
    }

    #[test]
    fn parse_errors_exit_2() {
        assert_eq!(go(&["verify", "--lambda", "one third", "--c", "4/9"]).code, 2);
        assert_eq!(go(&["frobnicate"]).code, 2);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn decompose_outside_covered_region_exits_1() {
        let out = go(&["decompose", "--lambda", "1/3", "--c", "2/5", "--u", "1/2"]);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn decompose_prints_replayed_certificate() {
        let out = go(&["decompose", "--lambda", "1/3", "--c", "4/9", "--u", "1/2", "--depth", "6"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("replay: ok"));
    }
}
