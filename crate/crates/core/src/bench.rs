//! Timing harness for trie vs flat-table lookups and support-threshold sweeps.
//!
//! Each rule's repetitions are timed as one batch with the monotonic clock,
//! so every rule yields a paired (trie, flat) mean while clock-read overhead
//! is amortised across the batch. A probe count accompanies each
//! timing; it is deterministic and does not depend on the machine.

use std::hint::black_box;
use std::io::Write;
use std::time::{Duration, Instant};

use crate::baseline::FlatRuleTable;
use crate::error::{Error, Result};
use crate::miner::{mine_frequent, MiningConfig, MiningMode};
use crate::model::{FrequencyTable, ItemId, TransactionDatabase};
use crate::stats::{self, paired_t_test, TTest};
use crate::trie::{build_trie, Probes, RuleTrie};

pub const DEFAULT_WARMUP: usize = 3;

/// Populations below this size get a report but no significance verdict.
pub const MIN_SIGNIFICANCE_POPULATION: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct RuleTiming {
    pub antecedent: Vec<ItemId>,
    pub consequent: Vec<ItemId>,
    pub trie_ns: f64,
    pub flat_ns: f64,
    pub trie_probes: usize,
    pub flat_probes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rules: Vec<RuleTiming>,
    pub reps: usize,
    pub warmup: usize,
    pub trie_mean_ns: f64,
    pub flat_mean_ns: f64,
    pub trie_sd_ns: f64,
    pub flat_sd_ns: f64,
    /// `flat_mean / trie_mean`
    pub speedup: f64,
    /// Over per-rule `flat − trie` differences; `None` when degenerate.
    pub t_test: Option<TTest>,
}

impl BenchReport {
    pub fn population(&self) -> usize {
        self.rules.len()
    }

    pub fn small_sample(&self) -> bool {
        self.population() < MIN_SIGNIFICANCE_POPULATION
    }

    pub fn total_trie_probes(&self) -> usize {
        self.rules.iter().map(|r| r.trie_probes).sum()
    }

    pub fn total_flat_probes(&self) -> usize {
        self.rules.iter().map(|r| r.flat_probes).sum()
    }

    pub fn verdict(&self) -> &'static str {
        match self.t_test {
            _ if self.small_sample() => "n too small for significance",
            Some(t) if t.significant_at_0_05 && t.t_statistic > 0.0 => "trie faster (significant at 0.05)",
            Some(t) if t.significant_at_0_05 => "flat faster (significant at 0.05)",
            Some(_) => "no significant difference at 0.05",
            None => "degenerate sample",
        }
    }

    /// One row per rule plus a `#`-prefixed summary footer.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["rule_index", "trie_ns", "flat_ns", "trie_probes", "flat_probes"])?;
        for (i, r) in self.rules.iter().enumerate() {
            w.write_record([
                i.to_string(),
                format!("{:.1}", r.trie_ns),
                format!("{:.1}", r.flat_ns),
                r.trie_probes.to_string(),
                r.flat_probes.to_string(),
            ])?;
        }
        let mut out = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        writeln!(out, "# population={} reps={} warmup={}", self.population(), self.reps, self.warmup)?;
        writeln!(
            out,
            "# trie_mean_ns={:.1} trie_sd_ns={:.1} flat_mean_ns={:.1} flat_sd_ns={:.1} speedup={:.3}",
            self.trie_mean_ns, self.trie_sd_ns, self.flat_mean_ns, self.flat_sd_ns, self.speedup
        )?;
        match self.t_test {
            Some(t) => writeln!(
                out,
                "# t_statistic={:.4} df={} critical={:.3} verdict={}",
                t.t_statistic,
                t.degrees_of_freedom,
                t.critical_value,
                self.verdict()
            )?,
            None => writeln!(out, "# t_statistic=NA verdict={}", self.verdict())?,
        }
        Ok(())
    }
}

/// Times every rule of `table` in both structures.
///
/// `table` must come from [`FlatRuleTable::from_trie`] on the same trie.
/// Each rule is looked up `warmup` times untimed, then `reps` times in a
/// timed batch per structure; the per-rule mean is recorded.
pub fn time_lookup_suite(trie: &RuleTrie, table: &FlatRuleTable, reps: usize, warmup: usize) -> Result<BenchReport> {
    if reps == 0 {
        return Err(Error::ZeroReps);
    }
    if table.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let population: Vec<_> = table.rules().collect();
    let mut rules = Vec::with_capacity(population.len());
    for rule in &population {
        let (a, c) = (&rule.antecedent, &rule.consequent);
        for _ in 0..warmup {
            let _ = black_box(trie.lookup_rule(black_box(a), black_box(c)));
            let _ = black_box(table.scan_lookup(black_box(a), black_box(c)));
        }
        // Probe counts are deterministic; take them from one untimed call,
        // which also surfaces lookup errors before timing starts.
        let mut trie_probes = Probes::default();
        trie.lookup_rule_probed(a, c, &mut trie_probes)?;
        let mut flat_probes = 0usize;
        table.scan_lookup_probed(a, c, &mut flat_probes)?;

        let start = Instant::now();
        for _ in 0..reps {
            let _ = black_box(trie.lookup_rule(black_box(a), black_box(c)));
        }
        let trie_total = start.elapsed();
        let start = Instant::now();
        for _ in 0..reps {
            let _ = black_box(table.scan_lookup(black_box(a), black_box(c)));
        }
        let flat_total = start.elapsed();
        rules.push(RuleTiming {
            antecedent: a.clone(),
            consequent: c.clone(),
            trie_ns: trie_total.as_nanos() as f64 / reps as f64,
            flat_ns: flat_total.as_nanos() as f64 / reps as f64,
            trie_probes: trie_probes.path + trie_probes.lift,
            flat_probes,
        });
    }
    Ok(summarize(rules, reps, warmup))
}

/// Means, spreads, speedup and the paired t-test over per-rule timings.
pub fn summarize(rules: Vec<RuleTiming>, reps: usize, warmup: usize) -> BenchReport {
    let trie: Vec<f64> = rules.iter().map(|r| r.trie_ns).collect();
    let flat: Vec<f64> = rules.iter().map(|r| r.flat_ns).collect();
    let diffs: Vec<f64> = rules.iter().map(|r| r.flat_ns - r.trie_ns).collect();
    let sd = |xs: &[f64]| if xs.len() > 1 { stats::sample_sd(xs) } else { 0.0 };
    let trie_mean_ns = stats::mean(&trie);
    let flat_mean_ns = stats::mean(&flat);
    BenchReport {
        trie_sd_ns: sd(&trie),
        flat_sd_ns: sd(&flat),
        speedup: flat_mean_ns / trie_mean_ns,
        t_test: paired_t_test(&diffs).ok(),
        trie_mean_ns,
        flat_mean_ns,
        rules,
        reps,
        warmup,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub threshold: f64,
    pub itemsets: usize,
    pub nodes: usize,
    pub build: Duration,
    pub annotate: Duration,
}

/// Mines, builds and annotates at each threshold, largest first.
pub fn support_sweep(db: &TransactionDatabase, thresholds: &[f64], mode: MiningMode) -> Result<Vec<SweepRecord>> {
    let in_range = thresholds.iter().all(|&t| t > 0.0 && t <= 1.0);
    let descending = thresholds.windows(2).all(|w| w[0] > w[1]);
    if !in_range || !descending {
        return Err(Error::BadThresholds);
    }
    let freq = FrequencyTable::from_database(db);
    thresholds
        .iter()
        .map(|&threshold| {
            let sets = mine_frequent(db, &MiningConfig::new(threshold, mode)?)?;
            let start = Instant::now();
            let skeleton = build_trie(&sets, &freq, db, mode)?;
            let build = start.elapsed();
            let start = Instant::now();
            let trie = skeleton.annotate(&sets, db)?;
            let annotate = start.elapsed();
            Ok(SweepRecord {
                threshold,
                itemsets: sets.len(),
                nodes: trie.node_count(),
                build,
                annotate,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["threshold", "itemsets", "nodes", "build_ms", "annotate_ms"])?;
    for r in records {
        w.write_record([
            r.threshold.to_string(),
            r.itemsets.to_string(),
            r.nodes.to_string(),
            format!("{:.3}", r.build.as_secs_f64() * 1e3),
            format!("{:.3}", r.annotate.as_secs_f64() * 1e3),
        ])?;
    }
    w.flush()?;
    Ok(())
}
