use num::Signed;
use proptest::prelude::*;

use selfsim_mult::decompose::{decompose, verify_certificate};
use selfsim_mult::ifs::{build_cover, child_intervals, validate_params, IfsParams, Window};
use selfsim_mult::numerics::{fmt_rational, parse_rational, rat, union_normalize, Interval, Rational};
use selfsim_mult::product::{interval_product, product_union, refine_product, stability_margins};
use selfsim_mult::region::{classify_params, necessary_condition, verify_theorem};

/// Admissible `(λ, c)` on a 1/1000 grid.
fn params() -> impl Strategy<Value = IfsParams> {
    (1i64..500, 0i64..=1000).prop_filter_map("c + λ must stay below 1", |(l, s)| {
        let lambda = rat(l, 1000);
        let hi = if 2 * l < 1000 - l { rat(2 * l, 1000) } else { rat(1000 - l, 1000) };
        let c = &lambda + (&hi - &lambda) * rat(s, 1000);
        validate_params(&lambda, &c).ok()
    })
}

fn covered_params() -> impl Strategy<Value = IfsParams> {
    params().prop_filter("inside the covered region", |p| necessary_condition(p).holds)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdict_matches_threshold(p in params()) {
        let report = verify_theorem(&p, 3).unwrap();
        prop_assert_eq!(report.verdict.covered, (rat(1, 1) - p.lambda()).pow(2) <= *p.c());
    }

    #[test]
    fn decompositions_replay(p in covered_params(), k in 0i64..=997) {
        let u = rat(k, 997);
        let cert = decompose(&p, &u, 6).unwrap();
        prop_assert!(verify_certificate(&p, &u, &cert));
        let err = (&cert.x * &cert.y - &u).abs();
        prop_assert!(err <= cert.error_bound);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closed_form_margins_match_refinement(p in params(), a in 0i64..1000, b in 0i64..1000, t in 1i64..1000) {
        let (a, b) = if a >= b { (a, b) } else { (b, a) };
        let (a, b, t) = (rat(a, 1000), rat(b, 1000), rat(t, 1000));
        let i1 = Interval::new(a.clone(), &a + &t).unwrap();
        let i2 = Interval::new(b.clone(), &b + &t).unwrap();
        let r = refine_product(&p, &i1, &i2).unwrap();
        prop_assert_eq!(r.margins(), stability_margins(&p, &a, &b, &t));
    }

    #[test]
    fn stable_pairs_fill_their_product(p in params(), a in 0i64..1000, b in 0i64..1000, t in 1i64..1000) {
        let (a, b) = if a >= b { (a, b) } else { (b, a) };
        let (a, b, t) = (rat(a, 1000), rat(b, 1000), rat(t, 1000));
        let i1 = Interval::new(a.clone(), &a + &t).unwrap();
        let i2 = Interval::new(b.clone(), &b + &t).unwrap();
        prop_assume!(stability_margins(&p, &a, &b, &t).iter().all(|m| m >= &rat(0, 1)));
        let mut pieces = Vec::new();
        for x in child_intervals(&p, &i1) {
            for y in child_intervals(&p, &i2) {
                pieces.push(interval_product(&x, &y).unwrap());
            }
        }
        let whole = union_normalize(pieces);
        prop_assert_eq!(whole.parts(), &[interval_product(&i1, &i2).unwrap()][..]);
    }

    #[test]
    fn covers_shrink_and_stay_in_window(p in params(), n in 2usize..6) {
        let w = Window::unit();
        let coarse = build_cover(&p, std::slice::from_ref(&w), n - 1).unwrap();
        let fine = build_cover(&p, &[w], n).unwrap();
        prop_assert!(fine.union.is_subset_of(&coarse.union));
        prop_assert!(fine.union.is_subset_of(&union_normalize([Interval::unit()])));
        prop_assert_eq!(fine.piece_count, 3u64.pow(n as u32));
    }

    #[test]
    fn products_are_symmetric(p in params(), n in 1usize..4) {
        let g = build_cover(&p, &[Window::unit()], n).unwrap();
        let h = build_cover(&p, &[Window::unit()], n + 1).unwrap();
        prop_assert_eq!(product_union(&g.union, &h.union).unwrap(), product_union(&h.union, &g.union).unwrap());
    }

    #[test]
    fn rational_text_round_trips(num in -100_000i64..100_000, den in 1i64..100_000) {
        let r: Rational = rat(num, den);
        prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
    }

    #[test]
    fn decimal_literals_are_exact(k in 0i64..10_000) {
        let text = format!("0.{k:04}");
        prop_assert_eq!(parse_rational(&text).unwrap(), rat(k, 10_000));
    }

    #[test]
    fn covered_labels_agree_with_threshold(p in params()) {
        prop_assert_eq!(classify_params(&p).is_covered(), necessary_condition(&p).holds);
    }
}
