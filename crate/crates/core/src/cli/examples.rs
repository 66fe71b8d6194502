use std::fmt::Write as _;

use super::CliError;
use crate::ifs::validate_params;
use crate::numerics::{fmt_rational, pow, rat, to_f64, Interval, IntegerPolynomial, Rational};
use crate::region::{
    certify_blue_lemma, classify, replay_certificate, verify_theorem, RegionLabel,
};

/// Accumulates `PASS`/`FAIL` lines.
#[derive(Debug, Default)]
pub struct Checklist {
    pub lines: String,
    pub passed: usize,
    pub failed: Vec<String>,
}

impl Checklist {
    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl AsRef<str>) {
        let name = name.into();
        let tag = if ok { "PASS" } else { "FAIL" };
        writeln!(self.lines, "{tag} {name}: {}", detail.as_ref()).expect("writing to a String");
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(name);
        }
    }

    pub fn note(&mut self, text: impl AsRef<str>) {
        writeln!(self.lines, "  {}", text.as_ref()).expect("writing to a String");
    }

    pub fn total(&self) -> usize {
        self.passed + self.failed.len()
    }
}

/// Coverage verdict for raw parameters, as used by the example reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Covered,
    NotCovered,
    Invalid,
}

pub fn verdict_of(lambda: &Rational, c: &Rational, n_check: usize) -> Result<(Verdict, RegionLabel), CliError> {
    let Ok(p) = validate_params(lambda, c) else {
        return Ok((Verdict::Invalid, RegionLabel::InvalidParams));
    };
    let report = verify_theorem(&p, n_check)?;
    let v = if report.verdict.covered { Verdict::Covered } else { Verdict::NotCovered };
    Ok((v, report.label))
}

/// `λ = 1/3`: covered for `c ∈ {4/9, 1/2, 3/5}`, not covered for
/// `c ∈ {1/3, 2/5, 43/100}`.
pub fn example_sharpness() -> Result<Checklist, CliError> {
    let mut list = Checklist::default();
    let lambda = rat(1, 3);
    let cases = [
        (rat(4, 9), Verdict::Covered),
        (rat(1, 2), Verdict::Covered),
        (rat(3, 5), Verdict::Covered),
        (rat(1, 3), Verdict::NotCovered),
        (rat(2, 5), Verdict::NotCovered),
        (rat(43, 100), Verdict::NotCovered),
    ];
    for (c, want) in cases {
        let (got, label) = verdict_of(&lambda, &c, 4)?;
        list.check(
            format!("lambda=1/3 c={}", fmt_rational(&c)),
            got == want,
            format!("{got:?} via {label} (expected {want:?})"),
        );
    }
    Ok(list)
}

/// Enclosures of the smallest roots in `(0, 1)` of `xⁿ + x² − 4x + 1` and
/// `xⁿ − 3x + 1`.
pub fn alpha_beta(n: usize, precision: &Rational) -> Result<(Interval, Interval), CliError> {
    let a = IntegerPolynomial::alpha_family(n).isolate_smallest_root(&Interval::unit(), precision)?;
    let b = IntegerPolynomial::beta_family(n).isolate_smallest_root(&Interval::unit(), precision)?;
    Ok((a, b))
}

/// For `c = 2λ − λⁿ` the set is covered exactly when `α ≤ λ < β`.
pub fn example_root_family(max_n: usize) -> Result<Checklist, CliError> {
    let mut list = Checklist::default();
    let precision = rat(1, 1_000_000_000);
    for n in 2..=max_n {
        let (a, b) = alpha_beta(n, &precision)?;
        list.check(
            format!("n={n} alpha<beta"),
            a.hi() < b.lo(),
            format!("alpha in {a}, beta in {b}"),
        );
        let below = a.lo() * rat(99, 100);
        let inside = (a.hi() + b.lo()) / rat(2, 1);
        let above = (b.hi() + rat(1, 1)) / rat(2, 1);
        let above = if above > rat(1, 2) { b.hi() + (rat(1, 2) - b.hi()) / rat(2, 1) } else { above };
        for (lambda, want) in [(below, Verdict::NotCovered), (inside, Verdict::Covered), (above, Verdict::Invalid)] {
            let c = &lambda * rat(2, 1) - pow(&lambda, n);
            let (got, label) = verdict_of(&lambda, &c, 3)?;
            list.check(
                format!("n={n} lambda~{:.6}", to_f64(&lambda)),
                got == want,
                format!("{got:?} via {label} (expected {want:?})"),
            );
        }
    }
    // the worked point n = 2, λ = 0.35
    let lambda = rat(35, 100);
    let c = &lambda * rat(2, 1) - pow(&lambda, 2);
    let (got, label) = verdict_of(&lambda, &c, 3)?;
    list.check(
        "n=2 lambda=0.35",
        c == rat(5775, 10000) && got == Verdict::Covered,
        format!("c={} {got:?} via {label}", fmt_rational(&c)),
    );
    Ok(list)
}

/// `α < β` with disjoint enclosures for `n = 2..=max_n`; for `n = 2` the
/// `β`-enclosure brackets `(3 − √5)/2` by the sign of `λ² − 3λ + 1`.
pub fn example_root_order(max_n: usize) -> Result<Checklist, CliError> {
    let mut list = Checklist::default();
    let precision = rat(1, 1_000_000_000);
    for n in 2..=max_n {
        let (a, b) = alpha_beta(n, &precision)?;
        list.check(
            format!("n={n}"),
            a.hi() < b.lo() && a.width() <= precision && b.width() <= precision,
            format!("alpha in {a}, beta in {b}"),
        );
    }
    let (_, b) = alpha_beta(2, &precision)?;
    let q = |x: &Rational| x * x - rat(3, 1) * x + rat(1, 1);
    list.check(
        "n=2 beta encloses (3-sqrt5)/2",
        q(b.lo()) >= rat(0, 1) && q(b.hi()) <= rat(0, 1),
        format!("signs {} / {} at {b}", q(b.lo()) >= rat(0, 1), q(b.hi()) <= rat(0, 1)),
    );
    Ok(list)
}

pub fn example_blue_lemma(depth: usize) -> Result<Checklist, CliError> {
    let mut list = Checklist::default();
    let cert = certify_blue_lemma(depth)?;
    list.note(format!(
        "leaves={} holds={} infeasible={} multiplier={} max_depth={}",
        cert.leaves.len(),
        cert.holds_count(),
        cert.infeasible_count(),
        cert.dual_count(),
        cert.max_leaf_depth()
    ));
    let replay = replay_certificate(&cert.to_file());
    list.check(
        "certificate replays",
        replay.is_ok(),
        match &replay {
            Ok(r) => format!("{} leaves checked, {} needed extra bisection", r.leaves, r.bisected),
            Err(e) => e.to_string(),
        },
    );
    let sample = classify(&rat(3, 10), &rat(29, 50));
    list.check(
        "blue sample has c >= 1/2",
        sample == RegionLabel::Blue && rat(29, 50) >= rat(1, 2),
        format!("(3/10, 29/50) is {sample}"),
    );
    Ok(list)
}
