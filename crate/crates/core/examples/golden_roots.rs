//! Tabulates the certified enclosures of `α_n` (root of `xⁿ + x² − 4x + 1`)
//! and `β_n` (root of `xⁿ − 3x + 1`). Along `c = 2λ − λⁿ` the set is covered
//! exactly for `α_n ≤ λ < β_n`.

use selfsim_mult::cli::{alpha_beta, example_root_family};
use selfsim_mult::numerics::{rat, to_f64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let precision = rat(1, 1_000_000_000);
    println!("{:>3} {:>14} {:>14}", "n", "alpha", "beta");
    for n in 2..=20 {
        let (a, b) = alpha_beta(n, &precision)?;
        let mid = |lo, hi| (to_f64(lo) + to_f64(hi)) / 2.0;
        println!("{n:>3} {:>14.10} {:>14.10}", mid(a.lo(), a.hi()), mid(b.lo(), b.hi()));
    }
    let list = example_root_family(10)?;
    println!("{}/{} verdicts along c = 2λ − λⁿ agree", list.passed, list.total());
    Ok(())
}
