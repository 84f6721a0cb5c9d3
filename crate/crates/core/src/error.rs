use crate::model::ItemId;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("transaction database is empty")]
    EmptyDatabase,

    #[error("minimum support {0} is outside (0, 1]")]
    MinSupportOutOfRange(f64),

    #[error("item {0} is not in the frequency table (dictionary mismatch)")]
    UnknownItem(ItemId),

    #[error("brute-force miner limited to {limit} frequent items, found {found}")]
    BruteForceLimit { found: usize, limit: usize },

    /// The canonical order of antecedent and consequent interleaves, so the
    /// rule cannot be a root path of the trie.
    #[error("rule is not representable in the trie: consequent item {item} precedes an antecedent item")]
    NotRepresentable { item: ItemId },

    #[error("rule not found: no path continues with item {item}")]
    NotFound { item: ItemId },

    #[error("unknown item name {0:?}")]
    UnknownName(String),

    #[error("invalid rule: {0}")]
    InvalidRule(&'static str),

    #[error("the root node does not encode a rule")]
    RootHasNoRule,

    #[error("node segment is not a contiguous parent-child chain")]
    NonContiguousSegment,

    #[error("no mined support for path {0:?}")]
    MissingSupport(Vec<ItemId>),

    #[error("malformed trie document: {0}")]
    Malformed(String),

    #[error("unsupported trie document version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("benchmark population is empty")]
    EmptyPopulation,

    #[error("repetition count must be at least 1")]
    ZeroReps,

    #[error("paired sample has zero variance")]
    ZeroVariance,

    #[error("paired t-test needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("support thresholds must be strictly descending and within (0, 1]")]
    BadThresholds,

    #[error("missing CSV column(s): {}", .0.join(", "))]
    MissingColumns(Vec<String>),

    #[error("trie and flat-table top-{n} by {metric:?} disagree")]
    CrossCheckMismatch { metric: crate::baseline::Metric, n: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
