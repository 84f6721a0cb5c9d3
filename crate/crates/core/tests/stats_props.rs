mod common;

use common::{close, fix1, trie_for};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rule_trie::bench::{summarize, time_lookup_suite, RuleTiming};
use rule_trie::stats::{critical_value_05, mean, paired_t_test};
use rule_trie::{FlatRuleTable, MiningMode};
use statrs::distribution::{ContinuousCDF, StudentsT};

fn non_degenerate() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3f64..1e3, 2..60).prop_filter("needs spread", |v| {
        let m = mean(v);
        v.iter().any(|x| (x - m).abs() > 1e-6)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn t_sign_follows_mean_difference(diffs in non_degenerate()) {
        let t = paired_t_test(&diffs).unwrap().t_statistic;
        let m = mean(&diffs);
        if m.abs() > 1e-9 {
            prop_assert_eq!(t.signum(), m.signum());
        }
        let negated: Vec<f64> = diffs.iter().map(|d| -d).collect();
        prop_assert!(close(paired_t_test(&negated).unwrap().t_statistic, -t, 1e-9 * t.abs().max(1.0)));
    }

    #[test]
    fn t_is_scale_invariant(diffs in non_degenerate(), k in 1e-3f64..1e3) {
        let t = paired_t_test(&diffs).unwrap().t_statistic;
        let scaled: Vec<f64> = diffs.iter().map(|d| d * k).collect();
        let ts = paired_t_test(&scaled).unwrap().t_statistic;
        prop_assert!(close(ts, t, 1e-9 * t.abs().max(1.0)), "{} vs {}", ts, t);
    }

    #[test]
    fn shuffling_rules_keeps_summary(trie_ns in prop::collection::vec(1.0f64..1e4, 2..50), seed in any::<u64>()) {
        let rules: Vec<RuleTiming> = trie_ns
            .iter()
            .enumerate()
            .map(|(i, &t)| RuleTiming {
                antecedent: vec![],
                consequent: vec![],
                trie_ns: t,
                flat_ns: t * 3.0 + i as f64,
                trie_probes: 1,
                flat_probes: i + 1,
            })
            .collect();
        let mut shuffled = rules.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let (a, b) = (summarize(rules, 1, 0), summarize(shuffled, 1, 0));
        prop_assert!(close(a.trie_mean_ns, b.trie_mean_ns, 1e-9 * a.trie_mean_ns));
        prop_assert!(close(a.flat_mean_ns, b.flat_mean_ns, 1e-9 * a.flat_mean_ns));
        let (ta, tb) = (a.t_test.unwrap().t_statistic, b.t_test.unwrap().t_statistic);
        prop_assert!(close(ta, tb, 1e-9 * ta.abs().max(1.0)));
        let sorted = |r: &[RuleTiming]| {
            let mut v: Vec<(u64, u64)> = r.iter().map(|x| (x.trie_ns.to_bits(), x.flat_ns.to_bits())).collect();
            v.sort_unstable();
            v
        };
        prop_assert_eq!(sorted(&a.rules), sorted(&b.rules));
    }
}

#[test]
fn critical_values_match_students_t_quantiles() {
    for df in 1..=30 {
        let exact = StudentsT::new(0.0, 1.0, df as f64).unwrap().inverse_cdf(0.975);
        assert!(close(critical_value_05(df), exact, 1e-3), "df {df}: {} vs {exact}", critical_value_05(df));
    }
    let normal = StudentsT::new(0.0, 1.0, 1e6).unwrap().inverse_cdf(0.975);
    assert!(close(critical_value_05(5000), normal, 1e-2));
}

#[test]
fn probe_totals_are_run_invariant() {
    let db = fix1();
    let trie = trie_for(&db, 0.3, MiningMode::All);
    let table = FlatRuleTable::from_trie(&trie, 2);
    let a = time_lookup_suite(&trie, &table, 2, 0).unwrap();
    let b = time_lookup_suite(&trie, &table, 3, 1).unwrap();
    assert_eq!(a.total_trie_probes(), b.total_trie_probes());
    assert_eq!(a.total_flat_probes(), b.total_flat_probes());
    // A hit on row k costs k probes.
    let n = table.len();
    assert_eq!(a.total_flat_probes(), n * (n + 1) / 2);
}
