//! Runs the coverage check on one parameter pair per route and prints the
//! evidence: window, base product, `m`, stability and depth audits.
//!
//! `cargo run --example verify_theorem -- 1/3 4/9` checks a single pair.

use selfsim_mult::ifs::validate_params;
use selfsim_mult::numerics::{fmt_rational, parse_rational};
use selfsim_mult::region::verify_theorem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs: Vec<(String, String)> = if args.len() == 2 {
        vec![(args[0].clone(), args[1].clone())]
    } else {
        [("1/3", "4/9"), ("0.45", "0.5"), ("0.3", "0.58"), ("0.3", "0.597"), ("1/3", "0.43")]
            .iter()
            .map(|(l, c)| (l.to_string(), c.to_string()))
            .collect()
    };
    for (l, c) in pairs {
        let p = validate_params(&parse_rational(&l)?, &parse_rational(&c)?)?;
        let report = verify_theorem(&p, 6)?;
        println!("{p}");
        println!("  label     {}", report.label);
        println!("  covered   {}", report.verdict.covered);
        println!("  m         {}", fmt_rational(&report.verdict.m));
        println!("  product   {}", report.verdict.base_product);
        if let Some(route) = &report.route {
            for w in &route.windows {
                println!("  window    {w}");
            }
        }
        if let Some(s) = &report.stability {
            println!("  stability {} pairs, {} unstable", s.pairs, s.unstable.len());
        }
        if let Some(d) = &report.depth {
            println!("  depth     {}..={} invariant={}", d.base_level, d.n_max, d.invariant);
        }
        println!("  evidence  {:?}", report.verdict.certificate);
    }
    Ok(())
}
