//! Exhaustive reference miner. Enumerates every subset of the frequent
//! single items and counts each one against every transaction.

use super::{sort_itemsets, MiningConfig, MiningMode};
use crate::error::{Error, Result};
use crate::model::{FrequencyTable, FrequentItemset, ItemId, TransactionDatabase};
use crate::parallel;

pub const BRUTE_FORCE_ITEM_LIMIT: usize = 20;

pub fn brute_force_frequent(db: &TransactionDatabase, config: &MiningConfig) -> Result<Vec<FrequentItemset>> {
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let n = db.n_transactions();
    let min_count = config.min_count(n);
    let freq = FrequencyTable::from_database(db);
    let singles: Vec<ItemId> = freq
        .canonical_items()
        .iter()
        .copied()
        .filter(|&id| freq.count(id).unwrap_or(0) >= min_count)
        .collect();
    if singles.len() > BRUTE_FORCE_ITEM_LIMIT {
        return Err(Error::BruteForceLimit {
            found: singles.len(),
            limit: BRUTE_FORCE_ITEM_LIMIT,
        });
    }

    let masks: Vec<u32> = db
        .transactions()
        .iter()
        .map(|t| {
            singles
                .iter()
                .enumerate()
                .filter(|(_, id)| t.binary_search(id).is_ok())
                .fold(0u32, |m, (bit, _)| m | (1 << bit))
        })
        .collect();

    let n_subsets = 1usize << singles.len();
    let counts: Vec<u64> = parallel::map_range(n_subsets, |subset| {
        let s = subset as u32;
        masks.iter().filter(|&&t| t & s == s).count() as u64
    });

    let frequent = |s: usize| s != 0 && counts[s] >= min_count;
    let mut out = Vec::new();
    for (subset, &count) in counts.iter().enumerate().skip(1) {
        if !frequent(subset) {
            continue;
        }
        if config.mode() == MiningMode::Maximal {
            let extendable = (0..singles.len())
                .filter(|bit| subset & (1 << bit) == 0)
                .any(|bit| frequent(subset | (1 << bit)));
            if extendable {
                continue;
            }
        }
        let items = (0..singles.len())
            .filter(|bit| subset & (1 << bit) != 0)
            .map(|bit| singles[bit])
            .collect();
        out.push(FrequentItemset {
            items,
            count,
            n_transactions: n as u64,
        });
    }
    sort_itemsets(&mut out);
    Ok(out)
}
