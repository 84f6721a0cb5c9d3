//! FP-growth over an arena FP-tree with header lists and conditional
//! pattern bases.
//!
//! Items are recoded to dense ranks among the frequent items (rank 0 is the
//! most frequent), so a path from the root always has ascending ranks.

use crate::model::{FrequencyTable, ItemId, TransactionDatabase};

const ROOT: usize = 0;

#[derive(Debug)]
struct FpNode {
    rank: u32,
    count: u64,
    parent: usize,
    // Few children per node in practice; linear probing beats a map here.
    children: Vec<(u32, usize)>,
}

#[derive(Debug)]
struct FpTree {
    nodes: Vec<FpNode>,
    // rank -> nodes carrying that rank
    header: Vec<Vec<usize>>,
    totals: Vec<u64>,
}

impl FpTree {
    fn new(n_ranks: usize) -> Self {
        Self {
            nodes: vec![FpNode {
                rank: u32::MAX,
                count: 0,
                parent: ROOT,
                children: Vec::new(),
            }],
            header: vec![Vec::new(); n_ranks],
            totals: vec![0; n_ranks],
        }
    }

    /// Inserts a path of ascending ranks with multiplicity `count`.
    fn insert(&mut self, path: &[u32], count: u64) {
        let mut cur = ROOT;
        for &rank in path {
            let found = self.nodes[cur]
                .children
                .iter()
                .find(|(r, _)| *r == rank)
                .map(|&(_, idx)| idx);
            let next = match found {
                Some(idx) => idx,
                None => {
                    let idx = self.nodes.len();
                    self.nodes.push(FpNode {
                        rank,
                        count: 0,
                        parent: cur,
                        children: Vec::new(),
                    });
                    self.nodes[cur].children.push((rank, idx));
                    self.header[rank as usize].push(idx);
                    idx
                }
            };
            self.nodes[next].count += count;
            self.totals[rank as usize] += count;
            cur = next;
        }
    }

    /// Prefix paths (root side first) of every node carrying `rank`.
    fn pattern_base(&self, rank: u32) -> Vec<(Vec<u32>, u64)> {
        self.header[rank as usize]
            .iter()
            .filter_map(|&idx| {
                let mut path = Vec::new();
                let mut cur = self.nodes[idx].parent;
                while cur != ROOT {
                    path.push(self.nodes[cur].rank);
                    cur = self.nodes[cur].parent;
                }
                if path.is_empty() {
                    return None;
                }
                path.reverse();
                Some((path, self.nodes[idx].count))
            })
            .collect()
    }
}

/// Returns every frequent itemset (items in canonical order) with its count.
pub(super) fn mine(db: &TransactionDatabase, freq: &FrequencyTable, min_count: u64) -> Vec<(Vec<ItemId>, u64)> {
    // Frequent items in canonical order; position = local rank.
    let frequent: Vec<ItemId> = freq
        .canonical_items()
        .iter()
        .copied()
        .filter(|&id| freq.count(id).unwrap_or(0) >= min_count)
        .collect();
    if frequent.is_empty() {
        return Vec::new();
    }
    let mut local = vec![u32::MAX; freq.len()];
    for (r, id) in frequent.iter().enumerate() {
        local[id.index()] = r as u32;
    }

    let mut tree = FpTree::new(frequent.len());
    let mut path = Vec::new();
    for t in db.transactions() {
        path.clear();
        path.extend(t.iter().map(|id| local[id.index()]).filter(|&r| r != u32::MAX));
        path.sort_unstable();
        if !path.is_empty() {
            tree.insert(&path, 1);
        }
    }

    let mut out = Vec::new();
    let mut suffix = Vec::new();
    grow(&tree, min_count, &mut suffix, &mut out);

    out.into_iter()
        .map(|(mut ranks, count)| {
            ranks.sort_unstable();
            (ranks.into_iter().map(|r| frequent[r as usize]).collect(), count)
        })
        .collect()
}

fn grow(tree: &FpTree, min_count: u64, suffix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u64)>) {
    for rank in (0..tree.header.len() as u32).rev() {
        let total = tree.totals[rank as usize];
        if total < min_count {
            continue;
        }
        suffix.push(rank);
        out.push((suffix.clone(), total));

        let base = tree.pattern_base(rank);
        if !base.is_empty() {
            let mut cond_totals = vec![0u64; rank as usize];
            for (p, c) in &base {
                for &r in p {
                    cond_totals[r as usize] += c;
                }
            }
            if cond_totals.iter().any(|&c| c >= min_count) {
                let mut cond = FpTree::new(rank as usize);
                let mut pruned = Vec::new();
                for (p, c) in &base {
                    pruned.clear();
                    pruned.extend(p.iter().copied().filter(|&r| cond_totals[r as usize] >= min_count));
                    if !pruned.is_empty() {
                        cond.insert(&pruned, *c);
                    }
                }
                grow(&cond, min_count, suffix, out);
            }
        }
        suffix.pop();
    }
}
