#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rule_trie::{mine_frequent, ItemId, MiningConfig, MiningMode, RuleTrie, TransactionDatabase};

pub const FIX1: &str = "f,c,a,m,p\nf,c,a,b,m\nf,b\nc,b,p\nf,c,a,m,p\n";

pub fn fix1() -> TransactionDatabase {
    TransactionDatabase::parse_basket(FIX1)
}

pub fn ids(db: &TransactionDatabase, names: &str) -> Vec<ItemId> {
    db.resolve(names.split(',').filter(|s| !s.is_empty())).expect("known names")
}

pub fn db_from_rows(rows: &[Vec<u8>]) -> TransactionDatabase {
    TransactionDatabase::from_transactions(
        rows.iter()
            .map(|r| r.iter().map(|i| format!("i{i}")).collect::<Vec<_>>()),
    )
}

/// Small random databases: up to 10 items and 40 non-empty transactions.
pub fn arb_db() -> impl Strategy<Value = TransactionDatabase> {
    (1u8..=10).prop_flat_map(|n_items| {
        prop::collection::vec(prop::collection::vec(0..n_items, 1..=n_items as usize), 1..=40)
            .prop_map(|rows| db_from_rows(&rows))
    })
}

pub fn arb_threshold() -> impl Strategy<Value = f64> {
    0.1f64..=0.5
}

/// Same shape as [`arb_db`], drawn from a fixed seed.
pub fn seeded_db(seed: u64) -> TransactionDatabase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_items = rng.gen_range(1..=10u8);
    let n_rows = rng.gen_range(1..=40);
    let rows: Vec<Vec<u8>> = (0..n_rows)
        .map(|_| {
            let len = rng.gen_range(1..=n_items as usize);
            (0..len).map(|_| rng.gen_range(0..n_items)).collect()
        })
        .collect();
    db_from_rows(&rows)
}

pub fn seeded_threshold(seed: u64) -> f64 {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed).gen_range(0.1..=0.5)
}

pub fn trie_for(db: &TransactionDatabase, min_support: f64, mode: MiningMode) -> RuleTrie {
    let sets = mine_frequent(db, &MiningConfig::new(min_support, mode).unwrap()).unwrap();
    RuleTrie::from_itemsets(&sets, db, mode).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
