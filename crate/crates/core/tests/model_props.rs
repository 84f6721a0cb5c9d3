mod common;

use common::{arb_db, fix1, ids};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rule_trie::{FrequencyTable, ItemId, TransactionDatabase};

/// A database with a random subset of its items, shuffled.
fn db_and_subset() -> impl Strategy<Value = (TransactionDatabase, Vec<ItemId>)> {
    arb_db().prop_flat_map(|db| {
        let all: Vec<ItemId> = (0..db.n_items() as u32).map(ItemId).collect();
        let n = all.len();
        (Just(db), subsequence(all, 0..=n).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn canonical_order_is_idempotent_and_permutation_invariant(
        (db, items) in db_and_subset(),
        seed in any::<u64>(),
    ) {
        let freq = FrequencyTable::from_database(&db);
        let once = freq.canonical_order(&items).unwrap();
        prop_assert_eq!(&freq.canonical_order(&once).unwrap(), &once);
        let mut rotated = items.clone();
        if !rotated.is_empty() {
            let k = (seed % rotated.len() as u64) as usize;
            rotated.rotate_left(k);
            rotated.reverse();
        }
        prop_assert_eq!(&freq.canonical_order(&rotated).unwrap(), &once);
        // Duplicated input collapses to the same order.
        let doubled: Vec<ItemId> = items.iter().chain(&items).copied().collect();
        prop_assert_eq!(freq.canonical_order(&doubled).unwrap(), once);
    }

    #[test]
    fn canonical_prefixes_are_canonical((db, items) in db_and_subset()) {
        let freq = FrequencyTable::from_database(&db);
        let order = freq.canonical_order(&items).unwrap();
        for k in 0..=order.len() {
            let prefix = &order[..k];
            prop_assert_eq!(&freq.canonical_order(prefix).unwrap()[..], prefix);
        }
    }

    #[test]
    fn support_is_anti_monotone((db, items) in db_and_subset(), cut in any::<prop::sample::Index>()) {
        let k = if items.is_empty() { 0 } else { cut.index(items.len() + 1) };
        let (sub, sup) = (&items[..k], &items[..]);
        prop_assert!(db.support(sub) >= db.support(sup));
        prop_assert!(db.support_count(sub) >= db.support_count(sup));
    }

    #[test]
    fn empty_set_and_singletons(db in arb_db()) {
        let freq = FrequencyTable::from_database(&db);
        prop_assert_eq!(db.support(&[]), 1.0);
        for i in 0..db.n_items() as u32 {
            let id = ItemId(i);
            prop_assert_eq!(db.support(&[id]), freq.get(id).unwrap().fraction);
        }
        // Canonical rank follows descending count.
        let ordered = freq.canonical_items();
        for w in ordered.windows(2) {
            prop_assert!(freq.count(w[0]) >= freq.count(w[1]));
        }
    }
}

#[test]
fn fix1_canonical_examples() {
    let db = fix1();
    let freq = FrequencyTable::from_database(&db);
    assert_eq!(freq.canonical_order(&ids(&db, "p,a,f")).unwrap(), ids(&db, "f,a,p"));
    assert_eq!(freq.canonical_order(&ids(&db, "c,f")).unwrap(), ids(&db, "f,c"));
    assert_eq!(freq.canonical_order(&[]).unwrap(), Vec::<ItemId>::new());
    assert!(freq.canonical_order(&[ItemId(99)]).is_err());
}

#[test]
fn duplicate_tokens_collapse() {
    let db = TransactionDatabase::parse_basket("a,b,a\nb\n");
    assert_eq!(db.n_transactions(), 2);
    assert_eq!(db.transactions()[0].len(), 2);
    assert_eq!(db.support(&ids(&db, "a")), 0.5);
    assert_eq!(db.support(&ids(&db, "b")), 1.0);
}
