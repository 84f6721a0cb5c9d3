use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::{NodeId, RuleTrie};
use crate::error::{Error, Result};
use crate::model::{validate_rule_shape, ItemId, MetricSet, Rule};

/// Child-map probes performed by a lookup.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Probes {
    /// Probes spent locating the rule's path.
    pub path: usize,
    /// Extra probes spent resolving a compound consequent's own support for lift.
    pub lift: usize,
}

impl RuleTrie {
    /// The rule encoded by a single node.
    pub fn node_rule(&self, node: NodeId) -> Result<Rule> {
        let n = self.get(node).ok_or(Error::RootHasNoRule)?;
        let item = n.item().ok_or(Error::RootHasNoRule)?;
        let mut antecedent = self.path_items(node);
        antecedent.pop();
        Ok(Rule {
            antecedent,
            consequent: vec![item],
            metrics: self.metrics(node).expect("non-root node"),
        })
    }

    /// Product of node confidences over a contiguous parent-to-child chain.
    pub fn compound_confidence(&self, segment: &[NodeId]) -> Result<f64> {
        let (first, rest) = segment.split_first().ok_or(Error::InvalidRule("empty node segment"))?;
        let mut product = self.confidence(*first).ok_or(Error::RootHasNoRule)?;
        let mut prev = *first;
        for &id in rest {
            let node = self.get(id).ok_or(Error::NonContiguousSegment)?;
            if node.parent() != Some(prev) {
                return Err(Error::NonContiguousSegment);
            }
            product *= self.confidence(id).expect("has a parent");
            prev = id;
        }
        Ok(product)
    }

    pub fn lookup_rule(&self, antecedent: &[ItemId], consequent: &[ItemId]) -> Result<Rule> {
        self.lookup_rule_probed(antecedent, consequent, &mut Probes::default())
    }

    /// Looks up `antecedent → consequent`, counting child-map probes.
    ///
    /// The rule exists only if canonical order puts every antecedent item
    /// before every consequent item and the combined sequence is a root path.
    /// Locating it costs at most `|antecedent| + |consequent|` path probes.
    pub fn lookup_rule_probed(
        &self,
        antecedent: &[ItemId],
        consequent: &[ItemId],
        probes: &mut Probes,
    ) -> Result<Rule> {
        validate_rule_shape(antecedent, consequent)?;
        let freq = &self.freq;
        for &id in antecedent.iter().chain(consequent) {
            freq.rank(id).ok_or(Error::NotFound { item: id })?;
        }
        let rank = |id: &ItemId| freq.rank(*id).expect("checked above");
        // These two vectors become the returned rule; the lookup itself
        // allocates nothing else.
        let mut ante = antecedent.to_vec();
        ante.sort_unstable_by_key(rank);
        ante.dedup();
        let mut cons = consequent.to_vec();
        cons.sort_unstable_by_key(rank);
        cons.dedup();

        if let Some(last_ante) = ante.last().map(rank) {
            if let Some(&item) = cons.iter().find(|id| rank(id) < last_ante) {
                return Err(Error::NotRepresentable { item });
            }
        }

        let step = |node: NodeId, id: ItemId| {
            self.nodes[node.index()]
                .children
                .get(&rank(&id))
                .copied()
                .ok_or(Error::NotFound { item: id })
        };
        let mut cur = NodeId::ROOT;
        for &id in &ante {
            probes.path += 1;
            cur = step(cur, id)?;
        }
        // Walking the consequent segment multiplies its node confidences,
        // exactly as `compound_confidence` would.
        let mut confidence = 1.0;
        for &id in &cons {
            probes.path += 1;
            let parent = cur;
            cur = step(cur, id)?;
            confidence *= self.nodes[cur.index()].count as f64 / self.nodes[parent.index()].count as f64;
        }

        let lift = self.consequent_count(&cons, probes).map(|c| confidence / (c as f64 / self.n_transactions as f64));
        Ok(Rule {
            antecedent: ante,
            consequent: cons,
            metrics: MetricSet {
                support: self.support(cur),
                confidence,
                lift,
            },
        })
    }

    /// Support count of the consequent as an itemset, if the trie holds it.
    fn consequent_count(&self, consequent: &[ItemId], probes: &mut Probes) -> Option<u64> {
        if let [single] = consequent {
            return self.freq.count(*single);
        }
        let mut cur = NodeId::ROOT;
        for &id in consequent {
            probes.lift += 1;
            cur = self.child(cur, id)?;
        }
        Some(self.node(cur).support_count())
    }

    /// The rule whose consequent is the `len` nodes ending at `bottom`.
    pub fn segment_rule(&self, bottom: NodeId, len: usize) -> Result<Rule> {
        let depth = self.get(bottom).ok_or(Error::RootHasNoRule)?.depth() as usize;
        if len == 0 || len > depth {
            return Err(Error::NonContiguousSegment);
        }
        let mut segment = Vec::with_capacity(len);
        let mut cur = bottom;
        for _ in 0..len {
            segment.push(cur);
            cur = self.node(cur).parent().expect("depth bounds the walk");
        }
        segment.reverse();
        let path = self.path_items(bottom);
        let (antecedent, consequent) = path.split_at(depth - len);
        let confidence = self.compound_confidence(&segment)?;
        let lift = self
            .consequent_count(consequent, &mut Probes::default())
            .map(|c| confidence / (c as f64 / self.n_transactions as f64));
        Ok(Rule {
            antecedent: antecedent.to_vec(),
            consequent: consequent.to_vec(),
            metrics: MetricSet {
                support: self.support(bottom),
                confidence,
                lift,
            },
        })
    }

    /// Every rule whose consequent is a contiguous segment of at most
    /// `max_consequent_len` nodes and whose antecedent has at least
    /// `min_antecedent_len` items.
    ///
    /// Order is depth-first preorder of the segment's bottom node, then
    /// ascending segment length.
    pub fn enumerate_rules(
        &self,
        max_consequent_len: usize,
        min_antecedent_len: usize,
    ) -> impl Iterator<Item = Rule> + '_ {
        self.node_ids().skip(1).flat_map(move |id| {
            let depth = self.node(id).depth() as usize;
            (1..=max_consequent_len.min(depth))
                .filter(move |len| depth - len >= min_antecedent_len)
                .map(move |len| self.segment_rule(id, len).expect("segment within depth"))
        })
    }

    /// The `n` node-rules with the highest support.
    ///
    /// Best-first walk from the root: a child never out-supports its parent,
    /// so a subtree is only opened once its root has been selected. Ties go
    /// to the earlier node in preorder.
    pub fn top_n_by_support(&self, n: usize) -> Vec<Rule> {
        self.top_nodes_by_support(n)
            .into_iter()
            .map(|id| self.node_rule(id).expect("non-root"))
            .collect()
    }

    pub fn top_nodes_by_support(&self, n: usize) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(n.min(self.node_count()));
        if n == 0 {
            return out;
        }
        let mut frontier: BinaryHeap<(u64, Reverse<NodeId>)> = self
            .root()
            .children()
            .map(|c| (self.node(c).support_count(), Reverse(c)))
            .collect();
        while let Some((_, Reverse(id))) = frontier.pop() {
            out.push(id);
            if out.len() == n {
                break;
            }
            frontier.extend(self.node(id).children().map(|c| (self.node(c).support_count(), Reverse(c))));
        }
        out
    }

    /// The `n` node-rules with the highest confidence. Confidence is not
    /// monotone along paths, so every node is visited.
    pub fn top_n_by_confidence(&self, n: usize) -> Vec<Rule> {
        self.top_nodes_by_confidence(n)
            .into_iter()
            .map(|id| self.node_rule(id).expect("non-root"))
            .collect()
    }

    pub fn top_nodes_by_confidence(&self, n: usize) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self.node_ids().skip(1).collect();
        // Exact comparison of count ratios: a/b > c/d  <=>  a*d > c*b.
        let ratio = |id: NodeId| {
            let node = self.node(id);
            let parent = self.node(node.parent().expect("non-root"));
            (node.support_count() as u128, parent.support_count() as u128)
        };
        ids.sort_by(|&x, &y| {
            let (a, b) = ratio(x);
            let (c, d) = ratio(y);
            match (c * b).cmp(&(a * d)) {
                Ordering::Equal => x.cmp(&y),
                o => o,
            }
        });
        ids.truncate(n);
        ids
    }
}
