mod common;

use swknot::classify::{self, classify_alexander, dolgachev_series, Outcome, Rule, Verdict};
use swknot::knots::{self, KnotInput, KnotSource};

#[test]
fn builtin_verdicts() {
    let expect = [
        ("unknot", "RATIONAL_OR_RULED"),
        ("trefoil", "DOLGACHEV(2, 3)"),
        ("figure-eight", "MINIMAL_NON_COMPLEX"),
        ("T(2,5)", "DOLGACHEV(2, 5)"),
        ("T(2,7)", "DOLGACHEV(2, 7)"),
        ("T(3,4)", "DOLGACHEV(3, 4)"),
        ("T(3,5)", "DOLGACHEV(3, 5)"),
    ];
    let table = knots::builtin_table();
    for (name, outcome) in expect {
        let v = classify::classify(&knots::lookup(&table, name).unwrap().to_input().unwrap()).unwrap();
        assert_eq!(v.outcome.to_string(), outcome);
    }
    let v = classify::classify(&knots::lookup(&table, "5_2").unwrap().to_input().unwrap()).unwrap();
    assert!(matches!(v.outcome, Outcome::NotApplicable { .. }));
}

#[test]
fn only_trivial_delta_is_rational_or_ruled() {
    for (name, d) in common::builtin_fibered() {
        let v = classify_alexander(&name, &d).unwrap();
        assert_eq!(v.outcome == Outcome::RationalOrRuled, d.is_one(), "{name}");
        assert_eq!(v.sw.is_empty(), d.is_one(), "{name}");
    }
    for d in common::random_suite() {
        let v = classify_alexander("random", &d).unwrap();
        assert_ne!(v.outcome, Outcome::RationalOrRuled);
        assert!(v.minimal);
        if v.outcome == Outcome::MinimalNonComplex {
            assert_eq!(knots::match_torus(&d), None);
        }
    }
}

#[test]
fn torus_braids_classify_as_dolgachev() {
    for p in 2..=7i64 {
        for q in 2..=7i64 {
            if knots::gcd(p, q) != 1 {
                continue;
            }
            let b = knots::torus_braid(p as usize, q as usize).unwrap();
            let v = classify::classify(&KnotInput::new("torus", KnotSource::Braid(b))).unwrap();
            assert_eq!(v.outcome, Outcome::Dolgachev { p: p.min(q), q: p.max(q) });
            assert!(v.minimal);
            assert_eq!(v.sw, dolgachev_series(p, q).unwrap());
        }
    }
}

#[test]
fn minimal_non_complex_only_for_figure_eight_in_table() {
    let hits: Vec<String> = common::builtin_fibered()
        .into_iter()
        .filter(|(n, d)| classify_alexander(n, d).unwrap().outcome == Outcome::MinimalNonComplex)
        .map(|(n, _)| n)
        .collect();
    assert_eq!(hits, vec!["figure-eight".to_string()]);
}

#[test]
fn verdict_invariants_and_round_trip() {
    let mut all = common::builtin_deltas();
    all.extend(common::random_suite().into_iter().map(|d| ("random".to_string(), d)));
    for (name, d) in all {
        let v = classify_alexander(&name, &d).unwrap();
        assert!(!v.evidence.is_empty());
        if matches!(v.outcome, Outcome::Dolgachev { .. } | Outcome::MinimalNonComplex) {
            assert!(v.minimal);
            assert!(v.evidence.contains(&Rule::Minimality));
        }
        let back = Verdict::from_json_str(&v.to_json_string()).unwrap();
        assert_eq!(back, v);
    }
}
