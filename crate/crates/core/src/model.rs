//! Transactions, itemsets, rules and metrics.
//!
//! Items are interned to dense `u32` ids when a database is built. Everything
//! downstream works on ids; names only come back at the presentation edge.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ItemId(pub u32);

impl ItemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Bijection between item tokens and dense ids, in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ItemDictionary {
    names: Vec<String>,
    index: HashMap<String, ItemId>,
    // Global token position at which each item was first seen.
    first_seen: Vec<u64>,
}

impl ItemDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds a dictionary from `(name, first_seen)` pairs listed in id order.
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut dict = Self::new();
        for (name, first_seen) in entries {
            let name = name.into();
            if dict.index.contains_key(&name) {
                return Err(Error::Malformed(format!("duplicate item name {name:?}")));
            }
            dict.push(name, first_seen);
        }
        Ok(dict)
    }

    fn push(&mut self, name: String, position: u64) -> ItemId {
        let id = ItemId(self.names.len() as u32);
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.first_seen.push(position);
        id
    }

    fn intern(&mut self, name: &str, position: u64) -> ItemId {
        match self.index.get(name) {
            Some(&id) => id,
            None => self.push(name.to_owned(), position),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<ItemId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: ItemId) -> Option<&str> {
        self.names.get(id.index()).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn first_seen(&self, id: ItemId) -> Option<u64> {
        self.first_seen.get(id.index()).copied()
    }

    /// Joins item names with `sep`; unknown ids render as `#n`.
    pub fn render(&self, items: &[ItemId], sep: &str) -> String {
        items
            .iter()
            .map(|&id| self.name(id).map_or_else(|| id.to_string(), str::to_owned))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// The database D: a list of transactions, each a set of item ids stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransactionDatabase {
    transactions: Vec<Vec<ItemId>>,
    dictionary: ItemDictionary,
}

impl TransactionDatabase {
    /// Interns every token; ids follow first appearance, duplicates within a
    /// transaction collapse. Empty transactions are dropped.
    pub fn from_transactions<I, T, S>(rows: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut dictionary = ItemDictionary::new();
        let mut transactions = Vec::new();
        let mut position = 0u64;
        for row in rows {
            let mut items: Vec<ItemId> = row
                .into_iter()
                .map(|tok| {
                    let id = dictionary.intern(tok.as_ref(), position);
                    position += 1;
                    id
                })
                .collect();
            items.sort_unstable();
            items.dedup();
            if !items.is_empty() {
                transactions.push(items);
            }
        }
        Self {
            transactions,
            dictionary,
        }
    }

    /// Parses the basket format: one transaction per line, comma-separated
    /// tokens, whitespace trimmed, blank lines and blank tokens skipped.
    pub fn parse_basket(text: &str) -> Self {
        Self::from_transactions(text.lines().map(basket_tokens))
    }

    pub fn read_basket<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = Vec::new();
        for line in reader.lines() {
            lines.push(line?);
        }
        Ok(Self::from_transactions(lines.iter().map(|l| basket_tokens(l))))
    }

    pub fn transactions(&self) -> &[Vec<ItemId>] {
        &self.transactions
    }

    pub fn dictionary(&self) -> &ItemDictionary {
        &self.dictionary
    }

    pub fn n_transactions(&self) -> usize {
        self.transactions.len()
    }

    pub fn n_items(&self) -> usize {
        self.dictionary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Resolves item names to ids, reporting the first unknown name.
    pub fn resolve<'a, I>(&self, names: I) -> std::result::Result<Vec<ItemId>, &'a str>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names
            .into_iter()
            .map(|n| self.dictionary.id(n).ok_or(n))
            .collect()
    }

    /// Number of transactions containing every item of `itemset`.
    pub fn support_count(&self, itemset: &[ItemId]) -> u64 {
        let mut wanted = itemset.to_vec();
        wanted.sort_unstable();
        wanted.dedup();
        if wanted.iter().any(|id| id.index() >= self.dictionary.len()) {
            return 0;
        }
        self.transactions
            .iter()
            .filter(|t| contains_sorted(t, &wanted))
            .count() as u64
    }

    /// Exact support fraction, `count / n`. The empty set has support 1 on a
    /// non-empty database; unknown items give 0.
    pub fn support(&self, itemset: &[ItemId]) -> f64 {
        if self.transactions.is_empty() {
            return 0.0;
        }
        self.support_count(itemset) as f64 / self.transactions.len() as f64
    }
}

fn basket_tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(',').map(str::trim).filter(|t| !t.is_empty())
}

/// Both slices sorted ascending; true when `haystack` ⊇ `needles`.
pub(crate) fn contains_sorted(haystack: &[ItemId], needles: &[ItemId]) -> bool {
    let mut rest = haystack;
    for n in needles {
        match rest.binary_search(n) {
            Ok(pos) => rest = &rest[pos + 1..],
            Err(_) => return false,
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ItemFrequency {
    pub count: u64,
    pub fraction: f64,
    pub first_occurrence: u64,
}

/// Per-item support counts plus the canonical rank derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    entries: Vec<ItemFrequency>,
    n_transactions: u64,
    // rank[id] = position of the item in canonical order.
    rank: Vec<u32>,
    order: Vec<ItemId>,
}

impl FrequencyTable {
    pub fn from_database(db: &TransactionDatabase) -> Self {
        let dict = db.dictionary();
        let mut counts = vec![0u64; dict.len()];
        for t in db.transactions() {
            for id in t {
                counts[id.index()] += 1;
            }
        }
        let first: Vec<u64> = (0..dict.len())
            .map(|i| dict.first_seen(ItemId(i as u32)).unwrap_or(i as u64))
            .collect();
        Self::from_counts(counts, first, db.n_transactions() as u64)
    }

    /// Builds a table from raw counts; used when reloading a persisted trie.
    pub fn from_counts(counts: Vec<u64>, first_occurrence: Vec<u64>, n_transactions: u64) -> Self {
        debug_assert_eq!(counts.len(), first_occurrence.len());
        let entries: Vec<ItemFrequency> = counts
            .iter()
            .zip(&first_occurrence)
            .map(|(&count, &first)| ItemFrequency {
                count,
                fraction: if n_transactions == 0 {
                    0.0
                } else {
                    count as f64 / n_transactions as f64
                },
                first_occurrence: first,
            })
            .collect();
        let mut order: Vec<ItemId> = (0..entries.len() as u32).map(ItemId).collect();
        order.sort_by(|a, b| {
            let (ea, eb) = (&entries[a.index()], &entries[b.index()]);
            eb.count
                .cmp(&ea.count)
                .then(ea.first_occurrence.cmp(&eb.first_occurrence))
                .then(a.cmp(b))
        });
        let mut rank = vec![0u32; entries.len()];
        for (r, id) in order.iter().enumerate() {
            rank[id.index()] = r as u32;
        }
        Self {
            entries,
            n_transactions,
            rank,
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn n_transactions(&self) -> u64 {
        self.n_transactions
    }

    pub fn get(&self, id: ItemId) -> Option<&ItemFrequency> {
        self.entries.get(id.index())
    }

    pub fn entries(&self) -> &[ItemFrequency] {
        &self.entries
    }

    pub fn count(&self, id: ItemId) -> Option<u64> {
        self.get(id).map(|e| e.count)
    }

    pub fn rank(&self, id: ItemId) -> Option<u32> {
        self.rank.get(id.index()).copied()
    }

    /// All items in canonical order.
    pub fn canonical_items(&self) -> &[ItemId] {
        &self.order
    }

    /// Sorts a set of items by descending count, then first occurrence,
    /// then id. Duplicates are removed.
    pub fn canonical_order(&self, itemset: &[ItemId]) -> Result<Vec<ItemId>> {
        if let Some(&bad) = itemset.iter().find(|id| id.index() >= self.entries.len()) {
            return Err(Error::UnknownItem(bad));
        }
        let mut out = itemset.to_vec();
        out.sort_unstable_by_key(|id| self.rank[id.index()]);
        out.dedup();
        Ok(out)
    }
}

/// An itemset with its exact support count out of `n_transactions`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrequentItemset {
    pub items: Vec<ItemId>,
    pub count: u64,
    pub n_transactions: u64,
}

impl FrequentItemset {
    pub fn support(&self) -> f64 {
        self.count as f64 / self.n_transactions as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSet {
    pub support: f64,
    pub confidence: f64,
    /// `None` when the structure cannot supply the consequent's support.
    pub lift: Option<f64>,
}

impl MetricSet {
    /// Metrics from exact counts: rule count, antecedent count, consequent count.
    pub fn from_counts(rule: u64, antecedent: u64, consequent: Option<u64>, n: u64) -> Self {
        let support = rule as f64 / n as f64;
        let confidence = rule as f64 / antecedent as f64;
        let lift = consequent.map(|c| confidence / (c as f64 / n as f64));
        Self {
            support,
            confidence,
            lift,
        }
    }
}

/// `antecedent → consequent` with its metrics. The antecedent may be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedent: Vec<ItemId>,
    pub consequent: Vec<ItemId>,
    pub metrics: MetricSet,
}

impl Rule {
    pub fn new(antecedent: Vec<ItemId>, consequent: Vec<ItemId>, metrics: MetricSet) -> Result<Self> {
        validate_rule_shape(&antecedent, &consequent)?;
        Ok(Self {
            antecedent,
            consequent,
            metrics,
        })
    }
}

pub(crate) fn validate_rule_shape(antecedent: &[ItemId], consequent: &[ItemId]) -> Result<()> {
    if consequent.is_empty() {
        return Err(Error::InvalidRule("consequent is empty"));
    }
    if antecedent.iter().any(|a| consequent.contains(a)) {
        return Err(Error::InvalidRule("antecedent and consequent overlap"));
    }
    Ok(())
}
