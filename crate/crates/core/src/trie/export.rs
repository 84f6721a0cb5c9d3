//! Graphviz and JSON renderings of a trie.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{preorder_layout, NodeId, RuleTrie, TrieNode};
use crate::error::{Error, Result};
use crate::miner::MiningMode;
use crate::model::{FrequencyTable, ItemDictionary, ItemId};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Document {
    format_version: u32,
    mode: MiningMode,
    n_transactions: u64,
    items: Vec<ItemEntry>,
    nodes: Vec<NodeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ItemEntry {
    name: String,
    count: u64,
    first_occurrence: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeEntry {
    item: Option<ItemId>,
    support_count: u64,
    children: Vec<u32>,
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl RuleTrie {
    /// Graphviz digraph; the root is labelled `null`, every other node carries
    /// its item and the three node-rule metrics.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph trie_of_rules {\n  node [shape=box];\n  n0 [label=\"null\"];\n");
        for id in self.node_ids().skip(1) {
            let node = self.node(id);
            let item = node.item().expect("non-root");
            let name = self.dictionary.name(item).map_or_else(|| item.to_string(), str::to_owned);
            let m = self.metrics(id).expect("non-root");
            let _ = writeln!(
                out,
                "  n{} [label=\"{}\\nsupport={:.4}\\nconfidence={:.4}\\nlift={:.4}\"];",
                id.0,
                dot_escape(&name),
                m.support,
                m.confidence,
                m.lift.unwrap_or(f64::NAN)
            );
        }
        for id in self.node_ids().skip(1) {
            let parent = self.node(id).parent().expect("non-root");
            let _ = writeln!(out, "  n{} -> n{};", parent.0, id.0);
        }
        out.push_str("}\n");
        out
    }

    pub fn export_json(&self) -> Result<String> {
        let items = self
            .freq
            .entries()
            .iter()
            .zip(self.dictionary.names())
            .map(|(e, name)| ItemEntry {
                name: name.clone(),
                count: e.count,
                first_occurrence: e.first_occurrence,
            })
            .collect();
        let nodes = self
            .nodes
            .iter()
            .map(|n| NodeEntry {
                item: n.item,
                support_count: n.count,
                children: n.children.values().map(|c| c.0).collect(),
            })
            .collect();
        let doc = Document {
            format_version: FORMAT_VERSION,
            mode: self.mode,
            n_transactions: self.n_transactions,
            items,
            nodes,
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    /// Parses a document written by [`RuleTrie::export_json`]. Either the
    /// whole trie is rebuilt or an error is returned.
    pub fn import_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let version = value
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Malformed("missing format_version".into()))?;
        if version != u64::from(FORMAT_VERSION) {
            return Err(Error::VersionMismatch {
                found: version as u32,
                expected: FORMAT_VERSION,
            });
        }
        let doc: Document = serde_json::from_value(value)?;
        let dictionary = ItemDictionary::from_entries(doc.items.iter().map(|i| (i.name.clone(), i.first_occurrence)))?;
        let freq = FrequencyTable::from_counts(
            doc.items.iter().map(|i| i.count).collect(),
            doc.items.iter().map(|i| i.first_occurrence).collect(),
            doc.n_transactions,
        );
        let nodes = rebuild_nodes(&doc, &freq)?;
        Ok(RuleTrie {
            nodes,
            freq,
            dictionary,
            n_transactions: doc.n_transactions,
            mode: doc.mode,
        })
    }
}

fn rebuild_nodes(doc: &Document, freq: &FrequencyTable) -> Result<Vec<TrieNode>> {
    let bad = |msg: String| Err(Error::Malformed(msg));
    let Some(root) = doc.nodes.first() else {
        return bad("no root node".into());
    };
    if root.item.is_some() {
        return bad("root node carries an item".into());
    }
    if root.support_count != doc.n_transactions {
        return bad("root count differs from n_transactions".into());
    }
    let mut nodes: Vec<TrieNode> = doc
        .nodes
        .iter()
        .map(|e| TrieNode {
            item: e.item,
            parent: None,
            depth: 0,
            children: BTreeMap::new(),
            count: e.support_count,
        })
        .collect();
    for (i, entry) in doc.nodes.iter().enumerate() {
        for &c in &entry.children {
            let c = c as usize;
            if c == 0 || c >= nodes.len() {
                return bad(format!("node {i} has out-of-range child {c}"));
            }
            if nodes[c].parent.is_some() {
                return bad(format!("node {c} has more than one parent"));
            }
            let Some(item) = nodes[c].item else {
                return bad(format!("non-root node {c} has no item"));
            };
            let Some(rank) = freq.rank(item) else {
                return bad(format!("node {c} references unknown item {item}"));
            };
            if nodes[c].count > nodes[i].count {
                return bad(format!("node {c} out-supports its parent"));
            }
            if nodes[i].children.insert(rank, NodeId(c as u32)).is_some() {
                return bad(format!("node {i} has duplicate child item {item}"));
            }
            nodes[c].parent = Some(NodeId(i as u32));
        }
    }
    // Depths from the root; also catches cycles and detached nodes.
    let mut seen = 1usize;
    let mut stack = vec![NodeId::ROOT];
    while let Some(cur) = stack.pop() {
        let depth = nodes[cur.index()].depth + 1;
        let children: Vec<NodeId> = nodes[cur.index()].children.values().copied().collect();
        for c in children {
            nodes[c.index()].depth = depth;
            seen += 1;
            stack.push(c);
        }
    }
    if seen != nodes.len() {
        return bad("nodes unreachable from the root".into());
    }
    Ok(preorder_layout(&nodes))
}
