use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use super::CliError;
use crate::ifs::validate_params;
use crate::numerics::{fmt_rational, parse_rational, rat, Interval, Rational};
use crate::region::{classify, verify_theorem, RegionLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(CliError::Config(format!("unknown output format {other:?}"))),
        }
    }
}

/// Grid sweep over the parameter square. Grid points are the multiples of
/// `grid_step` strictly inside each range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub grid_step: Rational,
    pub lambda_range: Interval,
    pub c_range: Interval,
    /// When positive, every covered cell is also run through the full theorem
    /// check with this depth.
    pub depth_audit: usize,
    pub output_format: OutputFormat,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            grid_step: rat(1, 200),
            lambda_range: Interval::unit(),
            c_range: Interval::unit(),
            depth_audit: 0,
            output_format: OutputFormat::Csv,
        }
    }
}

fn parse_range(s: &str) -> Result<Interval, CliError> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| CliError::Config(format!("range {s:?} must look like lo,hi")))?;
    let a = parse_rational(a.trim())?;
    let b = parse_rational(b.trim())?;
    Interval::new(a, b).map_err(CliError::from)
}

impl ScanConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key.trim() {
            "grid_step" => self.grid_step = parse_rational(value.trim())?,
            "lambda_range" => self.lambda_range = parse_range(value)?,
            "c_range" => self.c_range = parse_range(value)?,
            "depth_audit" => {
                self.depth_audit = value
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Config(format!("depth_audit {value:?} is not an integer")))?
            }
            "output_format" => self.output_format = value.parse()?,
            other => return Err(CliError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines; blank lines and `#` comments are skipped.
    pub fn from_config_text(text: &str) -> Result<Self, CliError> {
        let mut cfg = ScanConfig::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("expected key = value, got {line:?}")))?;
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let zero = rat(0, 1);
        let one = rat(1, 1);
        if self.grid_step <= zero {
            return Err(CliError::Config("grid_step must be positive".into()));
        }
        for r in [&self.lambda_range, &self.c_range] {
            if r.lo() < &zero || r.hi() > &one {
                return Err(CliError::Config(format!("range {r} must lie within [0, 1]")));
            }
        }
        Ok(())
    }

    fn axis(&self, range: &Interval) -> Vec<Rational> {
        let step = &self.grid_step;
        let first = (range.lo() / step).floor() + rat(1, 1);
        let mut out = Vec::new();
        let mut k = first;
        loop {
            let v = &k * step;
            if &v >= range.hi() {
                break;
            }
            if &v > range.lo() {
                out.push(v);
            }
            k += rat(1, 1);
        }
        out
    }

    pub fn lambda_axis(&self) -> Vec<Rational> {
        self.axis(&self.lambda_range)
    }

    pub fn c_axis(&self) -> Vec<Rational> {
        self.axis(&self.c_range)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanCell {
    pub lambda: Rational,
    pub c: Rational,
    pub label: RegionLabel,
}

/// Classifies every grid point, λ-major with both axes ascending.
pub fn scan_grid(cfg: &ScanConfig) -> Result<Vec<ScanCell>, CliError> {
    cfg.validate()?;
    let lambdas = cfg.lambda_axis();
    let cs = cfg.c_axis();
    let points: Vec<(Rational, Rational)> = lambdas
        .iter()
        .flat_map(|l| cs.iter().map(move |c| (l.clone(), c.clone())))
        .collect();
    let cells: Vec<ScanCell> = points
        .into_par_iter()
        .map(|(lambda, c)| {
            let label = classify(&lambda, &c);
            ScanCell { lambda, c, label }
        })
        .collect();
    if cfg.depth_audit > 0 {
        let failures: Vec<String> = cells
            .par_iter()
            .filter(|cell| cell.label.is_covered())
            .filter_map(|cell| {
                let p = validate_params(&cell.lambda, &cell.c).ok()?;
                match verify_theorem(&p, cfg.depth_audit) {
                    Ok(r) if r.verdict.covered => None,
                    Ok(_) => Some(format!("{p}: not covered")),
                    Err(e) => Some(format!("{p}: {e}")),
                }
            })
            .collect();
        if let Some(first) = failures.first() {
            return Err(CliError::Audit(format!("{} cells failed the audit; first: {first}", failures.len())));
        }
    }
    Ok(cells)
}

pub fn render_csv(cells: &[ScanCell]) -> String {
    let mut out = String::from("lambda,c,label\n");
    for cell in cells {
        writeln!(out, "{},{},{}", fmt_rational(&cell.lambda), fmt_rational(&cell.c), cell.label)
            .expect("writing to a String");
    }
    out
}

fn color(label: RegionLabel) -> &'static str {
    match label {
        RegionLabel::Brown => "#8b5a2b",
        RegionLabel::Gray => "#9a9a9a",
        RegionLabel::Orange => "#f28c28",
        RegionLabel::Blue => "#3a6fd8",
        RegionLabel::InvalidParams | RegionLabel::NecessaryFails => "#ffffff",
    }
}

/// One square per grid cell, λ to the right and c upwards.
pub fn render_svg(cfg: &ScanConfig, cells: &[ScanCell]) -> String {
    const CELL: usize = 4;
    let cols = cfg.lambda_axis().len();
    let rows = cfg.c_axis().len();
    let (w, h) = (cols * CELL, rows * CELL);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" shape-rendering="crispEdges">"#
    )
    .expect("writing to a String");
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="{}"/>"#, color(RegionLabel::InvalidParams))
        .expect("writing to a String");
    for (k, cell) in cells.iter().enumerate() {
        let (i, j) = (k / rows.max(1), k % rows.max(1));
        let x = i * CELL;
        let y = h - (j + 1) * CELL;
        writeln!(
            out,
            r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"><title>{} {} {}</title></rect>"#,
            color(cell.label),
            fmt_rational(&cell.lambda),
            fmt_rational(&cell.c),
            cell.label
        )
        .expect("writing to a String");
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
