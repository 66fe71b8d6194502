//! Classifies a grid over the parameter square and draws it as text, one
//! character per cell, with λ across and c upwards. Pass an output path to
//! also write the SVG map.
//!
//! `cargo run --release --example region_scan -- map.svg`

use std::collections::BTreeMap;

use selfsim_mult::cli::{render_svg, scan_grid, ScanConfig};
use selfsim_mult::numerics::rat;
use selfsim_mult::region::RegionLabel;

fn glyph(label: RegionLabel) -> char {
    match label {
        RegionLabel::InvalidParams => ' ',
        RegionLabel::NecessaryFails => '.',
        RegionLabel::Brown => 'B',
        RegionLabel::Gray => 'g',
        RegionLabel::Orange => 'o',
        RegionLabel::Blue => 'b',
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ScanConfig {
        grid_step: rat(1, 60),
        ..ScanConfig::default()
    };
    let cells = scan_grid(&cfg)?;
    let rows = cfg.c_axis().len();
    let cols = cfg.lambda_axis().len();
    for j in (0..rows).rev() {
        let line: String = (0..cols).map(|i| glyph(cells[i * rows + j].label)).collect();
        if line.trim().is_empty() {
            continue;
        }
        println!("|{line}|");
    }
    let mut counts = BTreeMap::new();
    for cell in &cells {
        *counts.entry(cell.label.as_str()).or_insert(0usize) += 1;
    }
    for (label, n) in counts {
        println!("{label:>16} {n}");
    }
    if let Some(path) = std::env::args().nth(1) {
        let fine = ScanConfig::default();
        std::fs::write(&path, render_svg(&fine, &scan_grid(&fine)?))?;
        println!("wrote {path}");
    }
    Ok(())
}
