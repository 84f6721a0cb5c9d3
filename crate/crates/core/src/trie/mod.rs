//! The Trie of rules.
//!
//! Every frequent itemset is inserted as a root path in canonical item
//! order, so shared prefixes overlay each other. Each non-root node then
//! encodes one rule: the path above it is the antecedent, the node's item is
//! the consequent. Nodes store exact support counts; support, confidence and
//! lift are derived on read.
//!
//! Construction happens in two steps, mirroring the pipeline: [`build_trie`]
//! lays out the paths, [`TrieSkeleton::annotate`] attaches support counts.

mod export;
mod query;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::miner::MiningMode;
use crate::model::{FrequencyTable, FrequentItemset, ItemDictionary, ItemId, MetricSet, TransactionDatabase};
use crate::parallel;

pub use export::FORMAT_VERSION;
pub use query::Probes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrieNode {
    item: Option<ItemId>,
    parent: Option<NodeId>,
    depth: u32,
    // keyed by canonical rank of the child's item
    children: BTreeMap<u32, NodeId>,
    count: u64,
}

impl TrieNode {
    pub fn item(&self) -> Option<ItemId> {
        self.item
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Children in ascending canonical rank.
    pub fn children(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.children.values().copied()
    }

    pub fn support_count(&self) -> u64 {
        self.count
    }

    pub fn is_root(&self) -> bool {
        self.parent.is_none()
    }
}

/// Trie paths before support counts are attached.
#[derive(Debug, Clone, PartialEq)]
pub struct TrieSkeleton {
    nodes: Vec<TrieNode>,
    freq: FrequencyTable,
    dictionary: ItemDictionary,
    n_transactions: u64,
    mode: MiningMode,
}

/// An annotated Trie of rules. Immutable; safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleTrie {
    nodes: Vec<TrieNode>,
    freq: FrequencyTable,
    dictionary: ItemDictionary,
    n_transactions: u64,
    mode: MiningMode,
}

/// Inserts each itemset, canonically ordered, as a path from the root.
///
/// `mode` records what the itemsets are: the complete frequent collection
/// (`All`) or only the maximal ones. The result does not depend on the order
/// of `itemsets`.
pub fn build_trie(
    itemsets: &[FrequentItemset],
    freq: &FrequencyTable,
    db: &TransactionDatabase,
    mode: MiningMode,
) -> Result<TrieSkeleton> {
    let mut nodes = vec![root_node()];
    for set in itemsets {
        let path = freq.canonical_order(&set.items)?;
        let mut cur = NodeId::ROOT;
        for item in path {
            let rank = freq.rank(item).expect("canonical_order checked the item");
            let next = match nodes[cur.index()].children.get(&rank) {
                Some(&child) => child,
                None => {
                    let child = NodeId(nodes.len() as u32);
                    let depth = nodes[cur.index()].depth + 1;
                    nodes.push(TrieNode {
                        item: Some(item),
                        parent: Some(cur),
                        depth,
                        children: BTreeMap::new(),
                        count: 0,
                    });
                    nodes[cur.index()].children.insert(rank, child);
                    child
                }
            };
            cur = next;
        }
    }
    Ok(TrieSkeleton {
        nodes: preorder_layout(&nodes),
        freq: freq.clone(),
        dictionary: db.dictionary().clone(),
        n_transactions: db.n_transactions() as u64,
        mode,
    })
}

fn root_node() -> TrieNode {
    TrieNode {
        item: None,
        parent: None,
        depth: 0,
        children: BTreeMap::new(),
        count: 0,
    }
}

/// Renumbers nodes in depth-first preorder (children by ascending rank), so
/// node ids double as the deterministic enumeration order and two tries with
/// the same paths have identical arenas.
pub(crate) fn preorder_layout(nodes: &[TrieNode]) -> Vec<TrieNode> {
    let mut out: Vec<TrieNode> = Vec::with_capacity(nodes.len());
    // (old id, new parent id)
    let mut stack = vec![(NodeId::ROOT, None::<NodeId>)];
    while let Some((old, new_parent)) = stack.pop() {
        let src = &nodes[old.index()];
        let new_id = NodeId(out.len() as u32);
        out.push(TrieNode {
            item: src.item,
            parent: new_parent,
            depth: src.depth,
            children: BTreeMap::new(),
            count: src.count,
        });
        if let Some(p) = new_parent {
            let rank_key = *nodes[src.parent.expect("non-root").index()]
                .children
                .iter()
                .find(|(_, &c)| c == old)
                .expect("child is linked from its parent")
                .0;
            out[p.index()].children.insert(rank_key, new_id);
        }
        for &child in src.children.values().rev() {
            stack.push((child, Some(new_id)));
        }
    }
    out
}

impl TrieSkeleton {
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Attaches support counts.
    ///
    /// In `All` mode every path is itself a mined itemset and its count is
    /// read from `itemsets`. In `Maximal` mode prefix supports are unknown,
    /// so one counting pass over `db` fills them in.
    pub fn annotate(mut self, itemsets: &[FrequentItemset], db: &TransactionDatabase) -> Result<RuleTrie> {
        let n = self.n_transactions;
        match self.mode {
            MiningMode::All => {
                let mut known: Vec<Option<u64>> = vec![None; self.nodes.len()];
                for set in itemsets {
                    let path = self.freq.canonical_order(&set.items)?;
                    if let Some(node) = find_path(&self.nodes, &self.freq, &path) {
                        known[node.index()] = Some(set.count);
                    }
                }
                for (i, slot) in known.iter().enumerate().skip(1) {
                    match slot {
                        Some(c) => self.nodes[i].count = *c,
                        None => return Err(Error::MissingSupport(path_items(&self.nodes, NodeId(i as u32)))),
                    }
                }
            }
            MiningMode::Maximal => {
                let counts = count_paths(&self.nodes, db);
                for (node, c) in self.nodes.iter_mut().zip(counts).skip(1) {
                    node.count = c;
                }
            }
        }
        self.nodes[0].count = n;
        Ok(RuleTrie {
            nodes: self.nodes,
            freq: self.freq,
            dictionary: self.dictionary,
            n_transactions: n,
            mode: self.mode,
        })
    }
}

/// For each node, the number of transactions containing its whole path.
fn count_paths(nodes: &[TrieNode], db: &TransactionDatabase) -> Vec<u64> {
    parallel::count_into(db.transactions(), nodes.len(), |t, acc| count_transaction(nodes, t, acc))
}

pub(crate) fn count_paths_seq(nodes: &[TrieNode], db: &TransactionDatabase) -> Vec<u64> {
    parallel::count_into_seq(db.transactions(), nodes.len(), |t, acc| count_transaction(nodes, t, acc))
}

fn count_transaction(nodes: &[TrieNode], t: &[ItemId], acc: &mut [u64]) {
    let mut stack = vec![NodeId::ROOT];
    while let Some(cur) = stack.pop() {
        for child in nodes[cur.index()].children.values() {
            let item = nodes[child.index()].item.expect("non-root");
            if t.binary_search(&item).is_ok() {
                acc[child.index()] += 1;
                stack.push(*child);
            }
        }
    }
}

fn find_path(nodes: &[TrieNode], freq: &FrequencyTable, path: &[ItemId]) -> Option<NodeId> {
    let mut cur = NodeId::ROOT;
    for &item in path {
        let rank = freq.rank(item)?;
        cur = *nodes[cur.index()].children.get(&rank)?;
    }
    Some(cur)
}

fn path_items(nodes: &[TrieNode], node: NodeId) -> Vec<ItemId> {
    let mut items = Vec::with_capacity(nodes[node.index()].depth as usize);
    let mut cur = node;
    while let Some(item) = nodes[cur.index()].item {
        items.push(item);
        cur = nodes[cur.index()].parent.expect("non-root has a parent");
    }
    items.reverse();
    items
}

impl RuleTrie {
    /// Mines nothing; builds and annotates in one call.
    pub fn from_itemsets(
        itemsets: &[FrequentItemset],
        db: &TransactionDatabase,
        mode: MiningMode,
    ) -> Result<Self> {
        let freq = FrequencyTable::from_database(db);
        build_trie(itemsets, &freq, db, mode)?.annotate(itemsets, db)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn root(&self) -> &TrieNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &TrieNode {
        &self.nodes[id.index()]
    }

    pub fn get(&self, id: NodeId) -> Option<&TrieNode> {
        self.nodes.get(id.index())
    }

    /// Node ids in depth-first preorder, root first.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn mode(&self) -> MiningMode {
        self.mode
    }

    pub fn freq(&self) -> &FrequencyTable {
        &self.freq
    }

    pub fn dictionary(&self) -> &ItemDictionary {
        &self.dictionary
    }

    pub fn n_transactions(&self) -> u64 {
        self.n_transactions
    }

    pub fn child(&self, node: NodeId, item: ItemId) -> Option<NodeId> {
        let rank = self.freq.rank(item)?;
        self.nodes[node.index()].children.get(&rank).copied()
    }

    /// Node reached by following `path` (already in canonical order).
    pub fn find_path(&self, path: &[ItemId]) -> Option<NodeId> {
        find_path(&self.nodes, &self.freq, path)
    }

    /// Items on the root path to `node`, root side first.
    pub fn path_items(&self, node: NodeId) -> Vec<ItemId> {
        path_items(&self.nodes, node)
    }

    /// Support of the node's path divided by `n`.
    pub fn support(&self, node: NodeId) -> f64 {
        self.nodes[node.index()].count as f64 / self.n_transactions as f64
    }

    /// `Sup(path) / Sup(parent path)`; `None` for the root.
    pub fn confidence(&self, node: NodeId) -> Option<f64> {
        let n = &self.nodes[node.index()];
        let parent = &self.nodes[n.parent?.index()];
        Some(n.count as f64 / parent.count as f64)
    }

    /// Metrics of the node-rule; `None` for the root.
    pub fn metrics(&self, node: NodeId) -> Option<MetricSet> {
        let n = &self.nodes[node.index()];
        let item = n.item?;
        let parent = &self.nodes[n.parent?.index()];
        Some(MetricSet::from_counts(
            n.count,
            parent.count,
            self.freq.count(item),
            self.n_transactions,
        ))
    }

    pub(crate) fn nodes(&self) -> &[TrieNode] {
        &self.nodes
    }
}

/// Per-node path counts over `db`, through the data-parallel pass or the
/// sequential one. Exposed for benchmarks.
#[doc(hidden)]
pub fn count_paths_for(trie: &RuleTrie, db: &TransactionDatabase, parallel: bool) -> Vec<u64> {
    if parallel {
        count_paths(trie.nodes(), db)
    } else {
        count_paths_seq(trie.nodes(), db)
    }
}
