use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const COLON_G: &str = r#"{"vertices":["x1","x2","x3","x4","x5","x6"],"edges":[["x1","x2"],["x2","x3"],["x3","x4"],["x4","x5"],["x5","x6"],["x1","x6"],["x4","x6"]]}"#;
const COLON_H: &str = r#"{"vertices":["x4","x5","x6"],"edges":[["x4","x5"],["x5","x6"],["x4","x6"]]}"#;

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_edgereg"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }

    fn path(&self) -> &Path {
        self.dir.path()
    }
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_of_c8_with_certificate_file() {
    let w = Workspace::new();
    let c8: Vec<String> = (1..=8).map(|i| format!("\"x{i}\"")).collect();
    let edges: Vec<String> = (1..=8).map(|i| format!("[\"x{i}\",\"x{}\"]", i % 8 + 1)).collect();
    w.file(
        "c8.json",
        &format!(r#"{{"vertices":[{}],"edges":[{}]}}"#, c8.join(","), edges.join(",")),
    );
    let o = w.run(&["invariants", "c8.json", "--certificate", "cert.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["nu"].as_u64(), v["cochord"].as_u64()), (Some(2), Some(3)));
    assert_eq!(v["mat"], 4);
    assert_eq!(v["certificate"]["valid"], true);
    assert_eq!(v["classes"]["cycle_length"], 8);
    assert_eq!(v["classes"]["bipartite"], true);
    let cert: Value = serde_json::from_str(&fs::read_to_string(w.path().join("cert.json")).unwrap()).unwrap();
    assert_eq!(cert, v["cochord_certificate"]);
}

#[test]
fn invariants_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_edgereg"))
        .args(["invariants", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(COLON_G.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["edges"], 7);
}

#[test]
fn malformed_inputs_exit_two_and_name_the_token() {
    let w = Workspace::new();
    w.file("loop.json", r#"{"vertices":["a"],"edges":[["a","a"]]}"#);
    w.file("unknown.json", r#"{"vertices":["a"],"edges":[["a","zz"]]}"#);
    w.file("broken.json", r#"{"vertices":["a"],"edges":"#);
    for (file, token) in [
        ("loop.json", "loop"),
        ("unknown.json", "\"zz\""),
        ("broken.json", "malformed"),
    ] {
        let o = w.run(&["invariants", file]);
        assert_eq!(o.status.code(), Some(2), "{file}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(token), "{file}");
    }
    assert_eq!(w.run(&["invariants", "missing.json"]).status.code(), Some(2));
    assert_eq!(w.run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(w.run(&["reproduce-paper", "--char", "6"]).status.code(), Some(2));
    assert_eq!(w.run(&["reproduce-paper", "--limit-gens", "0"]).status.code(), Some(2));
}

#[test]
fn colon_subcommand_on_the_worked_example() {
    let w = Workspace::new();
    w.file("g.json", COLON_G);
    w.file("h.json", COLON_H);
    let o = w.run(&["colon", "h.json", "g.json", "--edge", "x4,x5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["extra_generators"], serde_json::json!(["x3*x6", "x6^2"]));
    assert_eq!(v["matches_direct_colon"], true);
    assert_eq!(v["quadratic"], true);
    assert_eq!(v["fresh_vertices"], serde_json::json!([["x6", "z_x6"]]));
    let bad = w.run(&["colon", "h.json", "g.json", "--edge", "x1,x2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn transfer_cover_computes_or_accepts_a_cover() {
    let w = Workspace::new();
    w.file("g.json", COLON_G);
    w.file("h.json", COLON_H);
    let o = w.run(&["transfer-cover", "h.json", "g.json", "--edge", "x4,x5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["input_cover_computed"], true);
    assert_eq!(v["verdict"]["valid"], true);
    assert_eq!(v["classes"], v["input_cover"]["classes"].as_array().unwrap().len());

    w.file("cover.json", &serde_json::to_string(&v["input_cover"]).unwrap());
    let again = w.run(&[
        "transfer-cover",
        "h.json",
        "g.json",
        "--edge",
        "x4,x5",
        "--cover",
        "cover.json",
    ]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(json(&again)["cover"], v["cover"]);

    w.file("short.json", r#"{"classes":[[["x1","x2"]]]}"#);
    let short = w.run(&[
        "transfer-cover",
        "h.json",
        "g.json",
        "--edge",
        "x4,x5",
        "--cover",
        "short.json",
    ]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn regularity_formats() {
    let w = Workspace::new();
    w.file(
        "c5.json",
        r#"{"vertices":["a","b","c","d","e"],"edges":[["a","b"],["b","c"],["c","d"],["d","e"],["a","e"]]}"#,
    );
    let csv = w.run(&["regularity", "--graph", "c5.json"]);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(stdout(&csv), "i,j,rank\n0,2,5\n1,3,5\n2,5,1\n# regularity: 3\n");
    let j = json(&w.run(&["regularity", "--graph", "c5.json", "--format", "json", "--char", "2"]));
    assert_eq!(j["regularity"], 3);
    assert_eq!(j["characteristic"], 2);
    assert_eq!(j["engines"], serde_json::json!(["hochster", "lcm"]));
    let t = stdout(&w.run(&["regularity", "--graph", "c5.json", "--format", "table"]));
    assert!(t.ends_with("regularity: 3\n"), "{t}");

    w.file("sq.json", r#"{"vars":["x","y"],"gens":[{"x":2,"y":2}]}"#);
    let sq = w.run(&["regularity", "sq.json", "--engine", "lcm"]);
    assert_eq!(stdout(&sq), "i,j,rank\n0,4,1\n# regularity: 4\n");
}

#[test]
fn limits_and_force() {
    let w = Workspace::new();
    w.file(
        "c5.json",
        r#"{"vertices":["a","b","c","d","e"],"edges":[["a","b"],["b","c"],["c","d"],["d","e"],["a","e"]]}"#,
    );
    let refused = w.run(&[
        "regularity",
        "--graph",
        "c5.json",
        "--engine",
        "hochster",
        "--limit-vars",
        "3",
    ]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("limit"));
    let forced = w.run(&[
        "regularity",
        "--graph",
        "c5.json",
        "--engine",
        "hochster",
        "--limit-vars",
        "3",
        "--force",
    ]);
    assert_eq!(forced.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&forced.stderr).starts_with("warning:"));
}

#[test]
fn ideal_subcommands() {
    let w = Workspace::new();
    w.file("xy.json", r#"{"vars":["x","y"],"gens":[{"x":1,"y":1}]}"#);
    let p = json(&w.run(&["ideal", "product", "xy.json", "xy.json"]));
    assert_eq!(p["gens"], serde_json::json!([{"x": 2, "y": 2}]));
    w.file("p.json", &serde_json::to_string(&p).unwrap());
    let c = json(&w.run(&["ideal", "colon", "p.json", "--by", "x*y"]));
    assert_eq!(c["gens"], serde_json::json!([{"x": 1, "y": 1}]));
    let pol = json(&w.run(&["ideal", "polarize", "p.json"]));
    assert_eq!(pol["ideal"]["vars"].as_array().unwrap().len(), 4);
    assert_eq!(pol["copies"]["x"], serde_json::json!(["x", 1]));
    w.file("other.json", r#"{"vars":["x","z"],"gens":[{"z":1}]}"#);
    assert_eq!(
        w.run(&["ideal", "product", "xy.json", "other.json"]).status.code(),
        Some(2)
    );
    assert_eq!(w.run(&["ideal", "colon", "p.json", "--by", "q"]).status.code(), Some(2));
}

#[test]
fn check_bounds_exit_codes() {
    let w = Workspace::new();
    w.file("g.json", COLON_G);
    w.file("h.json", COLON_H);
    let o = w.run(&["check-bounds", "h.json", "g.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["all_hold"], true);
    assert_eq!(v["product_bounds"]["reg_IJ"], 5);
    assert_eq!(v["product_bounds"]["relation"], "induced_subgraph");
    let reversed = w.run(&["check-bounds", "g.json", "h.json"]);
    assert_eq!(reversed.status.code(), Some(2));
    let table = w.run(&["check-bounds", "h.json", "g.json", "--format", "table"]);
    assert!(stdout(&table)
        .lines()
        .any(|l| l.starts_with("all_hold") && l.ends_with("true")));
    assert_eq!(
        w.run(&["check-bounds", "h.json", "g.json", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn fuzz_is_deterministic_across_widths() {
    let w = Workspace::new();
    let a = w.run(&["fuzz", "--n", "5", "--count", "10", "--seed", "7", "--jobs", "1"]);
    let b = w.run(&["fuzz", "--n", "5", "--count", "10", "--seed", "7", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["campaign"]["seed"], 7);
    assert_eq!(v["failures"], serde_json::json!([]));
    let c = w.run(&["fuzz", "--n", "5", "--count", "10", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
    let csv = stdout(&w.run(&[
        "fuzz",
        "--n",
        "4",
        "--count",
        "3",
        "--checks",
        "colon,sandwich",
        "--format",
        "csv",
    ]));
    assert_eq!(csv.lines().next(), Some("check,pass,fail,inapplicable,skipped"));
    assert_eq!(csv.lines().count(), 3);
    assert_eq!(w.run(&["fuzz", "--checks", "nonsense"]).status.code(), Some(2));
    assert_eq!(w.run(&["fuzz", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn reproduce_paper_table() {
    let w = Workspace::new();
    let o = w.run(&["reproduce-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("example"));
    assert!(text.lines().skip(1).all(|l| l.ends_with("true")), "{text}");
}

#[test]
fn help_exits_zero() {
    let w = Workspace::new();
    let o = w.run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check-bounds"));
}
