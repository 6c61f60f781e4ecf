use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_saddle-config"));
    c.env_remove("SADDLE_CONFIG_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn example(dir: &Path, name: &str, k: Option<usize>) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let mut args = vec!["example", name, "--out", path.to_str().unwrap()];
    let ks = k.map(|k| k.to_string());
    if let Some(k) = &ks {
        args.extend(["--k", k]);
    }
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn every_example_validates() {
    let dir = TempDir::new().unwrap();
    let list = stdout(&run(&["example", "--list"]));
    let names: Vec<&str> = list.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert!(names.contains(&"tree1") && names.contains(&"benzene"));
    for name in names {
        let p = example(dir.path(), name, None);
        let o = run(&["validate", p.to_str().unwrap(), "--json"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert_eq!(json(&o)["valid"], true);
    }
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["validate", "/nonexistent/file.json"]).status.code(), Some(1));

    // A single vertex with three rays at 120 degrees: valid graph, odd degree.
    let odd = dir.path().join("odd.json");
    let t = 2.0 * std::f64::consts::PI / 3.0;
    let doc = serde_json::json!({
        "half_edges": 3,
        "iota": [0, 1, 2],
        "sigma": [1, 2, 0],
        "vertices": [{"id": 7, "position": [0.0, 0.0]}],
        "vertex_of": [7, 7, 7],
        "ray_angles": {"0": 0.0, "1": t, "2": 2.0 * t},
        "phase": {},
    });
    std::fs::write(&odd, doc.to_string()).unwrap();
    let o = run(&["validate", odd.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["errors"][0].as_str().unwrap().contains("orientable"));
}

#[test]
fn analyze_reports() {
    let dir = TempDir::new().unwrap();
    let r = json(&run(&["analyze", example(dir.path(), "benzene", None).to_str().unwrap(), "--json"]));
    assert_eq!(r["horizontal"]["dim_d"], 11);
    assert_eq!(r["horizontal"]["rigid"], false);

    let r = json(&run(&["analyze", example(dir.path(), "gyroid4", None).to_str().unwrap(), "--json"]));
    assert_eq!(r["horizontal"]["rigid"], true);
    assert!(r["vertical"]["Ok"]["kernel_dim"].as_u64().unwrap() >= 1);

    let p = example(dir.path(), "triangle", None);
    let r = json(&run(&["analyze", p.to_str().unwrap(), "--json", "--certify"]));
    assert_eq!(r["horizontal"]["dim_d"], 4);
    assert!(r["horizontal"]["certificate"].is_object());
}

#[test]
fn analyze_is_deterministic_and_seed_env_wins() {
    let dir = TempDir::new().unwrap();
    let p = example(dir.path(), "gyroid3", None);
    let p = p.to_str().unwrap();
    let a = stdout(&run(&["analyze", p, "--json", "--certify", "--seed", "5"]));
    let b = stdout(&run(&["analyze", p, "--json", "--certify", "--seed", "5"]));
    assert_eq!(a, b);
    let env = bin().args(["analyze", p, "--json", "--certify", "--seed", "1"]).env("SADDLE_CONFIG_SEED", "5").output().unwrap();
    assert_eq!(stdout(&env), a);
}

#[test]
fn phases() {
    let dir = TempDir::new().unwrap();
    let r = json(&run(&["phases", example(dir.path(), "tree1", None).to_str().unwrap(), "--json"]));
    let mut vals: Vec<f64> = r["solutions"].as_array().unwrap().iter().map(|s| s["phase"][0].as_f64().unwrap()).collect();
    vals.sort_by(f64::total_cmp);
    assert_eq!(vals, [0.0, std::f64::consts::PI]);

    let r = json(&run(&["phases", example(dir.path(), "gyroid3", None).to_str().unwrap(), "--json"]));
    assert!(r["solutions"].as_array().unwrap().iter().any(|s| s["trivial"] == false));

    let r = json(&run(&["phases", example(dir.path(), "triangle_scalene", None).to_str().unwrap(), "--json"]));
    assert!(r["solutions"].as_array().unwrap().iter().all(|s| s["trivial"] == true));
}

#[test]
fn embed_verdicts() {
    let dir = TempDir::new().unwrap();
    for (name, outcome) in [("tree1", "Embedded"), ("tree1_pi", "NotEmbedded"), ("tree2", "Inconclusive")] {
        let r = json(&run(&["embed", example(dir.path(), name, None).to_str().unwrap(), "--json"]));
        assert_eq!(r["outcome"], outcome, "{name}");
        assert_eq!(r["tier"], "FlatOrder", "{name}");
    }
    let o = run(&["embed", example(dir.path(), "benzene", None).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let misc = example(dir.path(), "misc1", None);
    let r = json(&run(&["embed", misc.to_str().unwrap(), "--json"]));
    assert_eq!(r["tier"], "FirstOrder");
    let r = json(&run(&["embed", misc.to_str().unwrap(), "--json", "--xi", "zero"]));
    assert_ne!(r["tier"], "FirstOrder");
}

#[test]
fn render_svg() {
    let dir = TempDir::new().unwrap();
    let tree = example(dir.path(), "tree1", None);
    let out = dir.path().join("t.svg");
    let o = run(&["render", tree.to_str().unwrap(), "--eps", "0.2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let a = std::fs::read_to_string(&out).unwrap();
    run(&["render", tree.to_str().unwrap(), "--eps", "0.2", "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), a);
    assert!(a.starts_with("<?xml") && a.contains("version=\"1.1\""));

    let benz = example(dir.path(), "benzene", None);
    let s = stdout(&run(&["render", benz.to_str().unwrap()]));
    assert!(s.contains("not rigid"));

    let o = run(&["render", tree.to_str().unwrap(), "--out", "/nonexistent/dir/x.svg"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn example_errors_and_polygram() {
    assert_eq!(run(&["example", "nope"]).status.code(), Some(1));
    let r = json(&run(&["example", "polygram", "--k", "5"]));
    assert_eq!(r["vertices"].as_array().unwrap().len(), 10);
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
}
