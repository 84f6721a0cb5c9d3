//! Flat array-of-rows ruleset, the tabular representation the trie is
//! measured against.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ItemId, MetricSet, Rule};
use crate::trie::RuleTrie;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Support,
    Confidence,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlatRow {
    /// Sorted ascending; compared as a set.
    antecedent: Vec<ItemId>,
    consequent: Vec<ItemId>,
    metrics: MetricSet,
}

impl FlatRow {
    fn to_rule(&self) -> Rule {
        Rule {
            antecedent: self.antecedent.clone(),
            consequent: self.consequent.clone(),
            metrics: self.metrics,
        }
    }
}

/// One row per rule, in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlatRuleTable {
    rows: Vec<FlatRow>,
}

impl FlatRuleTable {
    /// Copies every rule `enumerate_rules(max_consequent_len, 0)` yields.
    pub fn from_trie(trie: &RuleTrie, max_consequent_len: usize) -> Self {
        Self::from_rules(trie.enumerate_rules(max_consequent_len, 0))
    }

    /// Duplicate (antecedent set, consequent list) pairs keep the first row.
    pub fn from_rules<I: IntoIterator<Item = Rule>>(rules: I) -> Self {
        let mut seen = HashSet::new();
        let mut rows = Vec::new();
        for r in rules {
            let mut antecedent = r.antecedent;
            antecedent.sort_unstable();
            if seen.insert((antecedent.clone(), r.consequent.clone())) {
                rows.push(FlatRow {
                    antecedent,
                    consequent: r.consequent,
                    metrics: r.metrics,
                });
            }
        }
        Self { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.rows.iter().map(FlatRow::to_rule)
    }

    pub fn scan_lookup(&self, antecedent: &[ItemId], consequent: &[ItemId]) -> Result<Rule> {
        self.scan_lookup_probed(antecedent, consequent, &mut 0)
    }

    /// Linear scan; `probes` grows by one per row examined, so a hit on row
    /// `k` (1-based) costs `k` and a miss costs the row count.
    pub fn scan_lookup_probed(&self, antecedent: &[ItemId], consequent: &[ItemId], probes: &mut usize) -> Result<Rule> {
        let mut ante = antecedent.to_vec();
        ante.sort_unstable();
        ante.dedup();
        for row in &self.rows {
            *probes += 1;
            if row.antecedent == ante && row.consequent == consequent {
                return Ok(row.to_rule());
            }
        }
        Err(Error::NotFound {
            item: consequent.first().copied().unwrap_or(ItemId(u32::MAX)),
        })
    }

    /// Stable sort by `metric` descending, first `n` rows.
    pub fn sort_top_n(&self, metric: Metric, n: usize) -> Vec<Rule> {
        let key = |r: &FlatRow| match metric {
            Metric::Support => r.metrics.support,
            Metric::Confidence => r.metrics.confidence,
        };
        let mut sorted: Vec<&FlatRow> = self.rows.iter().collect();
        sorted.sort_by(|a, b| key(b).total_cmp(&key(a)));
        sorted.into_iter().take(n).map(FlatRow::to_rule).collect()
    }
}

/// Order-insensitive rule equality: antecedents compare as sets and
/// metrics compare exactly.
pub fn same_rule_multiset(a: &[Rule], b: &[Rule]) -> bool {
    let key = |rules: &[Rule]| {
        let mut keys: Vec<(Vec<ItemId>, Vec<ItemId>, [u64; 3])> = rules
            .iter()
            .map(|r| {
                let mut ante = r.antecedent.clone();
                ante.sort_unstable();
                let m = r.metrics;
                let lift = m.lift.map_or(u64::MAX, f64::to_bits);
                (ante, r.consequent.clone(), [m.support.to_bits(), m.confidence.to_bits(), lift])
            })
            .collect();
        keys.sort_unstable();
        keys
    };
    a.len() == b.len() && key(a) == key(b)
}
