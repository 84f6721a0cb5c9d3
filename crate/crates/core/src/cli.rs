//! `rule-trie` command-line front end.
//!
//! Every command is deterministic given its input file and flags; only the
//! timing columns of `bench` and `sweep` vary between runs. CSV bodies go to
//! `--output` or stdout, human-readable summaries to stderr.
//!
//! Exit codes are stable: see [`exit_code`].

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::baseline::{same_rule_multiset, FlatRuleTable, Metric};
use crate::bench::{self, DEFAULT_WARMUP};
use crate::error::{Error, Result};
use crate::miner::{mine_frequent, MiningConfig, MiningMode};
use crate::model::{FrequencyTable, ItemId, Rule, TransactionDatabase};
use crate::retail::{parse_retail_csv, DEFAULT_INVOICE_COL, DEFAULT_ITEM_COL};
use crate::synth::BasketGenerator;
use crate::trie::{build_trie, RuleTrie};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_NOT_FOUND: u8 = 4;
pub const EXIT_NOT_REPRESENTABLE: u8 = 5;
pub const EXIT_CROSS_CHECK: u8 = 6;

/// Default `sweep` ladder: five even steps from 0.0135 down to 0.005.
pub const DEFAULT_LADDER: [f64; 5] = [0.0135, 0.011375, 0.00925, 0.007125, 0.005];

#[derive(Debug, Parser)]
#[command(name = "rule-trie", version, about = "Mine association rules into a trie of rules and query it")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine frequent itemsets to CSV (items, support, count).
    Mine(MineArgs),
    /// Build and annotate a trie and write it as JSON.
    Build(BuildArgs),
    /// Look up one rule and print its metrics.
    Query(QueryArgs),
    /// Top-N node-rules by support or confidence, as CSV.
    Top(TopArgs),
    /// Every rule encoded by contiguous path segments, as CSV.
    Enumerate(EnumerateArgs),
    /// Time trie lookups against a flat-table linear scan.
    Bench(BenchArgs),
    /// Mine and build across a descending ladder of support thresholds.
    Sweep(SweepArgs),
    /// Render the trie as a Graphviz digraph.
    ExportDot(ExportArgs),
    /// Write a seeded synthetic basket file.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// One transaction per line, comma-separated items.
    Basket,
    /// Invoice-line CSV with a header row.
    RetailCsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    All,
    Maximal,
}

impl From<ModeArg> for MiningMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::All => MiningMode::All,
            ModeArg::Maximal => MiningMode::Maximal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Support,
    Confidence,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Support => Metric::Support,
            MetricArg::Confidence => Metric::Confidence,
        }
    }
}

/// A rule count, either absolute (`10`) or a share of the population (`10%`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TopN {
    Count(usize),
    Percent(f64),
}

impl TopN {
    /// Percentages round up, so a non-empty population never yields zero rows.
    pub fn resolve(self, population: usize) -> usize {
        match self {
            TopN::Count(n) => n,
            TopN::Percent(p) => ((p / 100.0 * population as f64) - 1e-9).ceil().max(0.0) as usize,
        }
    }
}

impl FromStr for TopN {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some(p) = s.strip_suffix('%') {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad percentage {s:?}"))?;
            if !(p > 0.0 && p <= 100.0) {
                return Err(format!("percentage {p} is outside (0, 100]"));
            }
            Ok(TopN::Percent(p))
        } else {
            s.parse().map(TopN::Count).map_err(|_| format!("bad count {s:?}"))
        }
    }
}

fn parse_support(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("bad support {s:?}"))?;
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(format!("support {v} is outside (0, 1]"))
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Transaction file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Basket)]
    pub format: InputFormat,
    /// Invoice column for `--format retail-csv`.
    #[arg(long, default_value = DEFAULT_INVOICE_COL)]
    pub invoice_col: String,
    /// Item column for `--format retail-csv`.
    #[arg(long, default_value = DEFAULT_ITEM_COL)]
    pub item_col: String,
}

#[derive(Debug, Clone, Args)]
pub struct MiningArgs {
    #[arg(long, default_value_t = 0.005, value_parser = parse_support)]
    pub min_support: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    pub mode: ModeArg,
}

/// Where a trie comes from: a transaction file to mine, or a saved JSON trie.
#[derive(Debug, Clone, Args)]
pub struct TrieSource {
    /// Transaction file to mine and build from.
    #[arg(long, required_unless_present = "trie", conflicts_with = "trie")]
    pub input: Option<PathBuf>,
    /// Trie JSON written by `build`.
    #[arg(long)]
    pub trie: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Basket)]
    pub format: InputFormat,
    #[arg(long, default_value = DEFAULT_INVOICE_COL)]
    pub invoice_col: String,
    #[arg(long, default_value = DEFAULT_ITEM_COL)]
    pub item_col: String,
    #[command(flatten)]
    pub mining: MiningArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub mining: MiningArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub mining: MiningArgs,
    /// JSON destination; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub source: TrieSource,
    /// Comma-separated antecedent items; may be empty.
    #[arg(long, default_value = "")]
    pub antecedent: String,
    /// Comma-separated consequent items.
    #[arg(long)]
    pub consequent: String,
}

#[derive(Debug, Clone, Args)]
pub struct TopArgs {
    #[command(flatten)]
    pub source: TrieSource,
    /// Row count or percentage of node-rules, e.g. `10` or `10%`.
    #[arg(long, default_value = "10%")]
    pub top_n: TopN,
    #[arg(long, value_enum, default_value_t = MetricArg::Support)]
    pub metric: MetricArg,
    /// Also sort a flat table and fail unless both agree.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub source: TrieSource,
    #[arg(long, default_value_t = 1)]
    pub max_consequent: usize,
    #[arg(long, default_value_t = 0)]
    pub min_antecedent: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub source: TrieSource,
    /// Timed lookups per rule.
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    /// Untimed lookups per rule before timing.
    #[arg(long, default_value_t = DEFAULT_WARMUP)]
    pub warmup: usize,
    /// Longest consequent in the benchmarked population.
    #[arg(long, default_value_t = 1)]
    pub max_consequent: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    pub mode: ModeArg,
    /// Strictly descending comma-separated thresholds.
    #[arg(long, value_delimiter = ',', value_parser = parse_support)]
    pub thresholds: Vec<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: TrieSource,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = BasketGenerator::default().n_transactions)]
    pub n_transactions: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Stable process exit code for an error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NotFound { .. } | Error::UnknownName(_) | Error::UnknownItem(_) => EXIT_NOT_FOUND,
        Error::NotRepresentable { .. } => EXIT_NOT_REPRESENTABLE,
        Error::CrossCheckMismatch { .. } => EXIT_CROSS_CHECK,
        Error::Io(_) => EXIT_IO,
        Error::Csv(e) if matches!(e.kind(), csv::ErrorKind::Io(_)) => EXIT_IO,
        Error::MinSupportOutOfRange(_)
        | Error::ZeroReps
        | Error::BadThresholds
        | Error::InvalidRule(_)
        | Error::MissingColumns(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args`, runs the command and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Mine(a) => cmd_mine(a),
        Command::Build(a) => cmd_build(a),
        Command::Query(a) => cmd_query(a),
        Command::Top(a) => cmd_top(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::ExportDot(a) => cmd_export_dot(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

fn load_database(path: &Path, format: InputFormat, invoice_col: &str, item_col: &str) -> Result<TransactionDatabase> {
    let file = File::open(path)?;
    match format {
        InputFormat::Basket => TransactionDatabase::read_basket(BufReader::new(file)),
        InputFormat::RetailCsv => parse_retail_csv(BufReader::new(file), invoice_col, item_col),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn config(m: &MiningArgs) -> Result<MiningConfig> {
    MiningConfig::new(m.min_support, m.mode.into())
}

impl TrieSource {
    fn load(&self) -> Result<RuleTrie> {
        if let Some(path) = &self.trie {
            return RuleTrie::import_json(&std::fs::read_to_string(path)?);
        }
        let path = self.input.as_deref().expect("clap requires --input or --trie");
        let db = load_database(path, self.format, &self.invoice_col, &self.item_col)?;
        let cfg = config(&self.mining)?;
        let sets = mine_frequent(&db, &cfg)?;
        RuleTrie::from_itemsets(&sets, &db, cfg.mode())
    }
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

fn fmt_lift(lift: Option<f64>) -> String {
    lift.map_or_else(|| "NA".to_owned(), fmt6)
}

/// Columns: antecedent, consequent, support, confidence, lift.
fn rule_record(trie: &RuleTrie, rule: &Rule) -> [String; 5] {
    let dict = trie.dictionary();
    [
        dict.render(&rule.antecedent, "|"),
        dict.render(&rule.consequent, "|"),
        fmt6(rule.metrics.support),
        fmt6(rule.metrics.confidence),
        fmt_lift(rule.metrics.lift),
    ]
}

fn cmd_mine(a: &MineArgs) -> Result<()> {
    let db = load_database(&a.input.input, a.input.format, &a.input.invoice_col, &a.input.item_col)?;
    let sets = mine_frequent(&db, &config(&a.mining)?)?;
    let freq = FrequencyTable::from_database(&db);
    let mut w = csv::Writer::from_writer(open_output(a.output.as_deref())?);
    w.write_record(["items", "support", "count"])?;
    for s in &sets {
        let items = freq.canonical_order(&s.items)?;
        w.write_record([db.dictionary().render(&items, "|"), fmt6(s.support()), s.count.to_string()])?;
    }
    w.flush()?;
    eprintln!("{} transactions, {} items, {} itemsets", db.n_transactions(), db.n_items(), sets.len());
    Ok(())
}

fn cmd_build(a: &BuildArgs) -> Result<()> {
    let db = load_database(&a.input.input, a.input.format, &a.input.invoice_col, &a.input.item_col)?;
    let cfg = config(&a.mining)?;
    let sets = mine_frequent(&db, &cfg)?;
    let freq = FrequencyTable::from_database(&db);
    let start = Instant::now();
    let skeleton = build_trie(&sets, &freq, &db, cfg.mode())?;
    let build = start.elapsed();
    let start = Instant::now();
    let trie = skeleton.annotate(&sets, &db)?;
    let annotate = start.elapsed();
    let mut out = open_output(a.output.as_deref())?;
    out.write_all(trie.export_json()?.as_bytes())?;
    out.write_all(b"\n")?;
    out.flush()?;
    eprintln!(
        "nodes={} build_ms={:.3} annotate_ms={:.3}",
        trie.node_count(),
        build.as_secs_f64() * 1e3,
        annotate.as_secs_f64() * 1e3
    );
    Ok(())
}

fn resolve_names(trie: &RuleTrie, list: &str) -> Result<Vec<ItemId>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| trie.dictionary().id(name).ok_or_else(|| Error::UnknownName(name.to_owned())))
        .collect()
}

fn cmd_query(a: &QueryArgs) -> Result<()> {
    let trie = a.source.load()?;
    let antecedent = resolve_names(&trie, &a.antecedent)?;
    let consequent = resolve_names(&trie, &a.consequent)?;
    let rule = trie.lookup_rule(&antecedent, &consequent)?;
    let dict = trie.dictionary();
    println!(
        "{{{}}} -> {{{}}} support={:.4} confidence={:.4} lift={}",
        dict.render(&rule.antecedent, ","),
        dict.render(&rule.consequent, ","),
        rule.metrics.support,
        rule.metrics.confidence,
        rule.metrics.lift.map_or_else(|| "NA".to_owned(), |l| format!("{l:.4}"))
    );
    Ok(())
}

fn cmd_top(a: &TopArgs) -> Result<()> {
    let trie = a.source.load()?;
    let n = a.top_n.resolve(trie.node_count());
    let metric: Metric = a.metric.into();
    let rules = match metric {
        Metric::Support => trie.top_n_by_support(n),
        Metric::Confidence => trie.top_n_by_confidence(n),
    };
    if a.cross_check {
        let flat = FlatRuleTable::from_trie(&trie, 1).sort_top_n(metric, n);
        if !same_rule_multiset(&rules, &flat) {
            return Err(Error::CrossCheckMismatch { metric, n });
        }
        eprintln!("cross-check ok: {} rules agree with the flat table", rules.len());
    }
    let mut w = csv::Writer::from_writer(open_output(a.output.as_deref())?);
    w.write_record(["rank", "antecedent", "consequent", "support", "confidence", "lift"])?;
    for (i, r) in rules.iter().enumerate() {
        let rec = rule_record(&trie, r);
        w.write_record(std::iter::once((i + 1).to_string()).chain(rec))?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<()> {
    let trie = a.source.load()?;
    let mut w = csv::Writer::from_writer(open_output(a.output.as_deref())?);
    w.write_record(["antecedent", "consequent", "support", "confidence", "lift"])?;
    for r in trie.enumerate_rules(a.max_consequent, a.min_antecedent) {
        w.write_record(rule_record(&trie, &r))?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<()> {
    if a.reps == 0 {
        return Err(Error::ZeroReps);
    }
    let trie = a.source.load()?;
    let table = FlatRuleTable::from_trie(&trie, a.max_consequent);
    let report = bench::time_lookup_suite(&trie, &table, a.reps, a.warmup)?;
    report.write_csv(open_output(a.output.as_deref())?)?;
    let t = report
        .t_test
        .map_or_else(|| "NA".to_owned(), |t| format!("{:.4} (df {})", t.t_statistic, t.degrees_of_freedom));
    eprintln!(
        "population={} trie_mean_ns={:.1} flat_mean_ns={:.1} speedup={:.2}x t={} verdict: {}",
        report.population(),
        report.trie_mean_ns,
        report.flat_mean_ns,
        report.speedup,
        t,
        report.verdict()
    );
    Ok(())
}

fn cmd_sweep(a: &SweepArgs) -> Result<()> {
    let db = load_database(&a.input.input, a.input.format, &a.input.invoice_col, &a.input.item_col)?;
    let thresholds = if a.thresholds.is_empty() { DEFAULT_LADDER.to_vec() } else { a.thresholds.clone() };
    let records = bench::support_sweep(&db, &thresholds, a.mode.into())?;
    bench::write_sweep_csv(&records, open_output(a.output.as_deref())?)
}

fn cmd_export_dot(a: &ExportArgs) -> Result<()> {
    let trie = a.source.load()?;
    let mut out = open_output(a.output.as_deref())?;
    out.write_all(trie.export_dot().as_bytes())?;
    out.flush()?;
    Ok(())
}

fn cmd_synth(a: &SynthArgs) -> Result<()> {
    let db = BasketGenerator {
        n_transactions: a.n_transactions,
        ..BasketGenerator::with_seed(a.seed)
    }
    .generate();
    let mut out = open_output(a.output.as_deref())?;
    for t in db.transactions() {
        writeln!(out, "{}", db.dictionary().render(t, ","))?;
    }
    out.flush()?;
    Ok(())
}
