//! Trie of rules: a prefix tree that stores association rules.
//!
//! The pipeline has three steps:
//!
//! 1. mine frequent itemsets from a [`TransactionDatabase`] ([`miner`]),
//! 2. insert them, canonically ordered, as root paths of a trie
//!    ([`trie::build_trie`]),
//! 3. attach support counts so every node encodes the rule
//!    *path-above → node* with support, confidence and lift
//!    ([`trie::TrieSkeleton::annotate`]).
//!
//! ```
//! use rule_trie::{mine_frequent, MiningConfig, MiningMode, RuleTrie, TransactionDatabase};
//!
//! let db = TransactionDatabase::parse_basket("f,c,a,m,p\nf,c,a,b,m\nf,b\nc,b,p\nf,c,a,m,p\n");
//! let config = MiningConfig::new(0.3, MiningMode::All).unwrap();
//! let itemsets = mine_frequent(&db, &config).unwrap();
//! let trie = RuleTrie::from_itemsets(&itemsets, &db, MiningMode::All).unwrap();
//!
//! let ids = |s: &str| db.resolve(s.split(',')).unwrap();
//! let rule = trie.lookup_rule(&ids("f,c"), &ids("a")).unwrap();
//! assert!((rule.metrics.confidence - 1.0).abs() < 1e-12);
//! ```
//!
//! [`FlatRuleTable`] is the array-of-rows baseline and [`bench`] times the
//! two against each other.

pub mod baseline;
pub mod bench;
pub mod cli;
pub mod error;
pub mod miner;
pub mod model;
pub mod parallel;
pub mod retail;
pub mod stats;
pub mod synth;
pub mod trie;

pub use baseline::{FlatRuleTable, Metric};
pub use error::{Error, Result};
pub use miner::{brute_force_frequent, maximal_filter, mine_frequent, MiningConfig, MiningMode};
pub use model::{FrequencyTable, FrequentItemset, ItemDictionary, ItemId, MetricSet, Rule, TransactionDatabase};
pub use trie::{build_trie, NodeId, Probes, RuleTrie, TrieNode, TrieSkeleton};
