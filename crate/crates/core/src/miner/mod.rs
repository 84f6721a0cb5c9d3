//! Frequent-itemset mining: FP-growth for production use and an exhaustive
//! enumerator as the test oracle.

mod brute;
mod fpgrowth;

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FrequencyTable, FrequentItemset, ItemId, TransactionDatabase};

pub use brute::{brute_force_frequent, BRUTE_FORCE_ITEM_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MiningMode {
    #[default]
    All,
    Maximal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiningConfig {
    min_support: f64,
    mode: MiningMode,
}

// Absorbs representation error in `min_support * n` (0.3 * 10 must admit 3).
const THRESHOLD_SLACK: f64 = 1e-9;

impl MiningConfig {
    pub fn new(min_support: f64, mode: MiningMode) -> Result<Self> {
        if !(min_support > 0.0 && min_support <= 1.0) {
            return Err(Error::MinSupportOutOfRange(min_support));
        }
        Ok(Self { min_support, mode })
    }

    pub fn min_support(&self) -> f64 {
        self.min_support
    }

    pub fn mode(&self) -> MiningMode {
        self.mode
    }

    /// Smallest transaction count `c` with `c / n >= min_support`.
    pub fn min_count(&self, n_transactions: usize) -> u64 {
        let exact = self.min_support * n_transactions as f64;
        ((exact - THRESHOLD_SLACK).ceil() as u64).max(1)
    }
}

/// Mines frequent itemsets with FP-growth.
///
/// Itemsets come back with items in canonical order, sorted by descending
/// support, then ascending length, then lexicographic id sequence.
pub fn mine_frequent(db: &TransactionDatabase, config: &MiningConfig) -> Result<Vec<FrequentItemset>> {
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let freq = FrequencyTable::from_database(db);
    let min_count = config.min_count(db.n_transactions());
    let n = db.n_transactions() as u64;
    let mut out: Vec<FrequentItemset> = fpgrowth::mine(db, &freq, min_count)
        .into_iter()
        .map(|(items, count)| FrequentItemset {
            items,
            count,
            n_transactions: n,
        })
        .collect();
    if config.mode == MiningMode::Maximal {
        out = maximal_filter(out);
    }
    sort_itemsets(&mut out);
    Ok(out)
}

pub(crate) fn sort_itemsets(itemsets: &mut [FrequentItemset]) {
    itemsets.sort_by(compare_itemsets);
}

fn compare_itemsets(a: &FrequentItemset, b: &FrequentItemset) -> Ordering {
    b.count
        .cmp(&a.count)
        .then(a.items.len().cmp(&b.items.len()))
        .then_with(|| a.items.cmp(&b.items))
}

/// Keeps the itemsets that have no proper superset in `itemsets`.
/// Relative input order is preserved.
pub fn maximal_filter(itemsets: Vec<FrequentItemset>) -> Vec<FrequentItemset> {
    let sorted: Vec<Vec<ItemId>> = itemsets
        .iter()
        .map(|s| {
            let mut v = s.items.clone();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    // item -> indices of itemsets containing it
    let mut postings: HashMap<ItemId, Vec<usize>> = HashMap::new();
    for (i, s) in sorted.iter().enumerate() {
        for &item in s {
            postings.entry(item).or_default().push(i);
        }
    }
    let keep: Vec<bool> = sorted
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let Some(shortest) = s.iter().map(|it| &postings[it]).min_by_key(|p| p.len()) else {
                // The empty set is a proper subset of any other itemset.
                return sorted.iter().all(|o| o.is_empty());
            };
            !shortest.iter().any(|&j| {
                j != i
                    && sorted[j].len() > s.len()
                    && crate::model::contains_sorted(&sorted[j], s)
            })
        })
        .collect();
    itemsets
        .into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect()
}
