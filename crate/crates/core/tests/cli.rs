mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::FIX1;
use rule_trie::RuleTrie;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rule-trie"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rule-trie")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

struct Fixture {
    dir: TempDir,
    input: PathBuf,
}

impl Fixture {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        let input = dir.path().join("fix1.basket");
        std::fs::write(&input, FIX1).unwrap();
        Self { dir, input }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn input(&self) -> &str {
        self.input.to_str().unwrap()
    }

    fn build(&self, mode: &str) -> PathBuf {
        let out = self.path(&format!("{mode}.json"));
        let res = run(&[
            "build", "--input", self.input(), "--min-support", "0.3", "--mode", mode, "--output",
            out.to_str().unwrap(),
        ]);
        assert!(res.status.success(), "{}", stderr(&res));
        out
    }
}

fn data_rows(csv: &str) -> usize {
    csv.lines().skip(1).filter(|l| !l.starts_with('#')).count()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn mine_row_counts() {
    let fx = Fixture::new();
    let maximal = run(&["mine", "--input", fx.input(), "--min-support", "0.3", "--mode", "maximal"]);
    assert!(maximal.status.success());
    let text = stdout(&maximal);
    assert_eq!(text.lines().next(), Some("items,support,count"));
    assert_eq!(data_rows(&text), 3);
    assert!(text.contains("f|c|a|m|p,0.400000,2"));

    let all = run(&["mine", "--input", fx.input(), "--min-support", "0.3"]);
    assert_eq!(data_rows(&stdout(&all)), 34);

    let none = run(&["mine", "--input", fx.input(), "--min-support", "1.0"]);
    assert!(none.status.success());
    assert_eq!(stdout(&none), "items,support,count\n");
}

#[test]
fn build_writes_loadable_json() {
    let fx = Fixture::new();
    for (mode, nodes) in [("maximal", 8), ("all", 34)] {
        let path = fx.build(mode);
        let trie = RuleTrie::import_json(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(trie.node_count(), nodes);
    }
    let out = fx.path("empty.json");
    let res = run(&["build", "--input", fx.input(), "--min-support", "1.0", "--output", p(&out)]);
    assert!(res.status.success());
    assert!(stderr(&res).contains("nodes=0"));
    assert!(stderr(&res).contains("build_ms=") && stderr(&res).contains("annotate_ms="));
    let trie = RuleTrie::import_json(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(trie.is_empty());
}

#[test]
fn query_reports_metrics_and_exit_codes() {
    let fx = Fixture::new();
    let trie = fx.build("maximal");
    let hit = run(&["query", "--trie", p(&trie), "--antecedent", "f,c", "--consequent", "a"]);
    assert!(hit.status.success());
    assert_eq!(stdout(&hit).trim(), "{f,c} -> {a} support=0.6000 confidence=1.0000 lift=1.6667");

    let reversed = run(&["query", "--trie", p(&trie), "--antecedent", "a", "--consequent", "f"]);
    assert_eq!(reversed.status.code(), Some(5));
    let missing = run(&["query", "--trie", p(&trie), "--antecedent", "f", "--consequent", "q"]);
    assert_eq!(missing.status.code(), Some(4));
    let absent = run(&["query", "--trie", p(&trie), "--antecedent", "f,a", "--consequent", "p"]);
    assert_eq!(absent.status.code(), Some(4));

    // Mining on the fly gives the same answer.
    let direct = run(&[
        "query", "--input", fx.input(), "--min-support", "0.3", "--mode", "maximal", "--antecedent", "f,c",
        "--consequent", "a",
    ]);
    assert_eq!(stdout(&direct), stdout(&hit));
}

#[test]
fn top_rows_and_cross_check() {
    let fx = Fixture::new();
    let trie = fx.build("maximal");
    let support = run(&["top", "--trie", p(&trie), "--top-n", "2", "--cross-check"]);
    assert!(support.status.success(), "{}", stderr(&support));
    let text = stdout(&support);
    assert_eq!(text.lines().next(), Some("rank,antecedent,consequent,support,confidence,lift"));
    assert_eq!(data_rows(&text), 2);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(3) == Some("0.800000")));

    let pct = run(&["top", "--trie", p(&trie), "--top-n", "10%"]);
    assert_eq!(data_rows(&stdout(&pct)), 1);

    let conf = run(&["top", "--trie", p(&trie), "--top-n", "2", "--metric", "confidence", "--cross-check"]);
    let text = stdout(&conf);
    let consequents: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(consequents, ["a", "m"]);

    let bad = run(&["top", "--trie", p(&trie), "--top-n", "0%"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn enumerate_and_export_dot() {
    let fx = Fixture::new();
    let trie = fx.build("maximal");
    let one = run(&["enumerate", "--trie", p(&trie)]);
    assert_eq!(data_rows(&stdout(&one)), 8);
    let two = run(&["enumerate", "--trie", p(&trie), "--max-consequent", "2"]);
    assert_eq!(data_rows(&stdout(&two)), 14);
    let dot = fx.path("t.dot");
    assert!(run(&["export-dot", "--trie", p(&trie), "--output", p(&dot)]).status.success());
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 8);
}

#[test]
fn bench_flags_small_populations() {
    let fx = Fixture::new();
    let trie = fx.build("maximal");
    let out = fx.path("bench.csv");
    let res = run(&["bench", "--trie", p(&trie), "--reps", "3", "--warmup", "1", "--output", p(&out)]);
    assert!(res.status.success(), "{}", stderr(&res));
    assert!(stderr(&res).contains("n too small"));
    let csv = std::fs::read_to_string(out).unwrap();
    assert_eq!(csv.lines().next(), Some("rule_index,trie_ns,flat_ns,trie_probes,flat_probes"));
    assert_eq!(data_rows(&csv), 8);

    let zero = run(&["bench", "--trie", p(&trie), "--reps", "0"]);
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn sweep_csv() {
    let fx = Fixture::new();
    let res = run(&["sweep", "--input", fx.input(), "--thresholds", "0.5,0.3"]);
    assert!(res.status.success());
    let text = stdout(&res);
    assert_eq!(text.lines().next(), Some("threshold,itemsets,nodes,build_ms,annotate_ms"));
    let counts: Vec<(String, String)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].to_owned(), f[2].to_owned())
        })
        .collect();
    assert_eq!(counts, [("18".into(), "18".into()), ("34".into(), "34".into())]);
    let ascending = run(&["sweep", "--input", fx.input(), "--thresholds", "0.3,0.5"]);
    assert_eq!(ascending.status.code(), Some(2));
}

#[test]
fn io_and_usage_errors() {
    let missing = run(&["mine", "--input", "/nonexistent/basket.txt"]);
    assert_eq!(missing.status.code(), Some(3));
    let fx = Fixture::new();
    let bad = run(&["mine", "--input", fx.input(), "--min-support", "1.5"]);
    assert_eq!(bad.status.code(), Some(2));
    let no_source = run(&["top"]);
    assert_eq!(no_source.status.code(), Some(2));
}

#[test]
fn retail_csv_input() {
    let fx = Fixture::new();
    let path = fx.path("retail.csv");
    std::fs::write(
        &path,
        "Invoice,Item,Qty\n1,bread,1\n1,milk,2\n2,bread,1\n2, ,1\n3,milk,1\n3,bread,4\n",
    )
    .unwrap();
    let res = run(&[
        "mine", "--input", p(&path), "--format", "retail-csv", "--invoice-col", "Invoice", "--item-col", "Item",
        "--min-support", "0.5",
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    assert!(stderr(&res).starts_with("3 transactions, 2 items"));
    assert!(stdout(&res).contains("bread|milk,0.666667,2"));

    let wrong = run(&["mine", "--input", p(&path), "--format", "retail-csv"]);
    assert_eq!(wrong.status.code(), Some(2));
    assert!(stderr(&wrong).contains("InvoiceNo") && stderr(&wrong).contains("Description"));
}

#[test]
fn outputs_are_deterministic() {
    let fx = Fixture::new();
    let synth = fx.path("synth.basket");
    let res = run(&["synth", "--seed", "11", "--n-transactions", "400", "--output", p(&synth)]);
    assert!(res.status.success());
    let again = fx.path("synth2.basket");
    run(&["synth", "--seed", "11", "--n-transactions", "400", "--output", p(&again)]);
    assert_eq!(std::fs::read(&synth).unwrap(), std::fs::read(&again).unwrap());

    let commands: [&[&str]; 4] = [
        &["mine", "--min-support", "0.02"],
        &["top", "--min-support", "0.02", "--top-n", "25", "--metric", "confidence"],
        &["enumerate", "--min-support", "0.02", "--max-consequent", "2"],
        &["export-dot", "--min-support", "0.02", "--mode", "maximal"],
    ];
    for cmd in commands {
        let go = || {
            let mut args = cmd.to_vec();
            args.extend(["--input", p(&synth)]);
            let out = run(&args);
            assert!(out.status.success(), "{cmd:?}: {}", stderr(&out));
            out.stdout
        };
        assert_eq!(go(), go(), "{cmd:?}");
    }
}
