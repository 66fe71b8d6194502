//! Certifies `c ≥ 1/2` on the blue region by box subdivision, then checks the
//! certificate with the independent replayer.

use selfsim_mult::region::{certify_blue_lemma_with, replay_certificate, BlueLemmaOptions, BoxVerdict};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cert = certify_blue_lemma_with(BlueLemmaOptions::default())?;
    println!("lambda range {}", cert.lambda_range);
    println!("leaves {}  deepest {}", cert.leaves.len(), cert.max_leaf_depth());
    for leaf in &cert.leaves {
        let kind = match &leaf.verdict {
            BoxVerdict::Holds => "c_lo >= 1/2".to_string(),
            BoxVerdict::Infeasible { constraint } => format!("g{constraint} < 0"),
            BoxVerdict::Dual { multipliers } => format!("{} multipliers", multipliers.len()),
            BoxVerdict::Undecided => "undecided".to_string(),
        };
        println!("  {:<22} {kind}", if leaf.path.is_empty() { "(root)" } else { &leaf.path });
    }
    let report = replay_certificate(&cert.to_file())?;
    println!("replay accepted {} leaves", report.leaves);
    Ok(())
}
