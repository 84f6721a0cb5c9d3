//! Data-parallel passes against their sequential fallbacks. Build with
//! `--no-default-features` to see the parallel entries degrade to the
//! sequential path.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rule_trie::parallel::{count_into, count_into_seq};
use rule_trie::synth::BasketGenerator;
use rule_trie::trie::count_paths_for;
use rule_trie::{mine_frequent, MiningConfig, MiningMode, RuleTrie};

fn annotate_pass(c: &mut Criterion) {
    let db = BasketGenerator {
        n_transactions: 50_000,
        ..BasketGenerator::with_seed(0)
    }
    .generate();
    let sets = mine_frequent(&db, &MiningConfig::new(0.002, MiningMode::Maximal).unwrap()).unwrap();
    let trie = RuleTrie::from_itemsets(&sets, &db, MiningMode::Maximal).unwrap();
    let mut group = c.benchmark_group("maximal_annotate_counting");
    group.bench_function("parallel", |b| b.iter(|| black_box(count_paths_for(&trie, &db, true))));
    group.bench_function("sequential", |b| b.iter(|| black_box(count_paths_for(&trie, &db, false))));
    group.finish();
}

fn item_counts(c: &mut Criterion) {
    let db = BasketGenerator {
        n_transactions: 200_000,
        ..BasketGenerator::with_seed(1)
    }
    .generate();
    let n = db.n_items();
    let add = |t: &Vec<rule_trie::ItemId>, acc: &mut [u64]| {
        for id in t {
            acc[id.index()] += 1;
        }
    };
    let mut group = c.benchmark_group("item_frequency_counting");
    group.bench_function("parallel", |b| b.iter(|| black_box(count_into(db.transactions(), n, add))));
    group.bench_function("sequential", |b| b.iter(|| black_box(count_into_seq(db.transactions(), n, add))));
    group.finish();
}

criterion_group!(benches, annotate_pass, item_counts);
criterion_main!(benches);
