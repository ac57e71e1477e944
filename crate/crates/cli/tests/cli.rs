use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use sepgraph::context::{bridges, compose, context_iso, persistent_ports, Context};
use sepgraph::graph::PortGraph;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

/// Runs the binary and returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sepgraph"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_output(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    let p = dir.path().join(name);
    std::fs::write(&p, out).unwrap();
    p
}

#[test]
fn disconnectedness_on_two_points() {
    let (code, out, _) = run(&[
        "eval-formula",
        path(&data("two_points.json")),
        path(&data("disconnected.sf")),
    ]);
    assert_eq!((code, out.trim()), (0, "true"));
    let (code, out, _) = run(&[
        "eval-formula",
        path(&data("path3.json")),
        path(&data("disconnected.sf")),
    ]);
    assert_eq!((code, out.trim()), (1, "false"));
}

#[test]
fn compiled_expression_agrees_with_the_formula() {
    let (code, expr, _) = run(&["compile", "exists x. exists y. S0(x,y)", "--arity", "0"]);
    assert_eq!(code, 0);
    for (g, want) in [("two_points.json", "true"), ("path3.json", "false")] {
        let (_, out, err) = run(&["eval-expr", path(&data(g)), expr.trim()]);
        assert_eq!(out.trim(), want, "{err}");
    }
}

#[test]
fn beta_recognizer_is_aperiodic_mod_reachability() {
    let dir = TempDir::new().unwrap();
    let r = write_output(&dir, "beta_k2.json", &["beta-recognizer", "--arity", "2"]);
    let (code, out, err) = run(&["decide", "--recognizer", path(&r), "--arity", "2"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "aperiodic-mod-reachability");
}

#[test]
fn vertex_count_recognizer_is_a_violation() {
    let dir = TempDir::new().unwrap();
    let r = write_output(
        &dir,
        "count.json",
        &["count-recognizer", "--arity", "1", "--modulus", "2"],
    );
    let (code, out, _) = run(&["--json", "decide", "--recognizer", path(&r), "--arity", "1"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "violation");
    assert_eq!(v["witness"]["check"]["beta_idempotent"], true);
    assert_eq!(v["witness"]["check"]["alpha_never_stabilizes"], true);
}

#[test]
fn hub_certificate_has_the_parity_sequence() {
    let (code, out, err) = run(&[
        "certify",
        "--oracle",
        "two-disjoint",
        "--context",
        path(&data("hub.json")),
        "--max-power",
        "8",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("sequence: false,true,false,true,false,true,false,true"));
    let (_, out, _) = run(&[
        "--json",
        "certify",
        "--oracle",
        "two-disjoint",
        "--context",
        path(&data("hub.json")),
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let seq: Vec<bool> = v["sequence"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_bool().unwrap())
        .collect();
    assert_eq!(seq, (1..=8).map(|m| m % 2 == 0).collect::<Vec<_>>());
}

#[test]
fn reachability_has_no_certificate() {
    let (code, out, _) = run(&[
        "certify",
        "--oracle",
        "reach",
        "--context",
        path(&data("hub.json")),
    ]);
    assert_eq!(code, 1);
    assert!(out.starts_with("no certificate"));
}

#[test]
fn input_errors_exit_with_two() {
    // crossing is not idempotent under reachability
    let (code, _, err) = run(&[
        "certify",
        "--oracle",
        "two-disjoint",
        "--context",
        path(&data("crossing.json")),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("idempotent"));

    let (code, _, err) = run(&["beta", "/nonexistent/context.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/context.json"));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\"arity\": 1,\n \"vertices\": [\"a\"], \"edges\": [], \"left\": {}}",
    )
    .unwrap();
    let (code, _, err) = run(&["beta", path(&bad)]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.json") && err.contains("line"), "{err}");

    let (code, _, _) = run(&[
        "certify",
        "--oracle",
        "three-disjoint",
        "--context",
        path(&bad),
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["build-word", "--arity", "1", "g14"]);
    assert_eq!(code, 2);
}

#[test]
fn json_outputs_round_trip() {
    let (_, out, _) = run(&["--json", "build-word", "--arity", "1", "g3", "g5", "g3"]);
    let c = Context::from_json(&out).unwrap();
    assert_eq!(
        c.to_json(),
        Context::from_json(&c.to_json()).unwrap().to_json()
    );

    let (_, out, _) = run(&["--json", "encode-word", "abba"]);
    let g = PortGraph::from_json(&out).unwrap();
    assert_eq!(g.vertex_count(), 5);

    let (_, out, _) = run(&["--json", "generators", "--arity", "1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 14);
    for g in gens {
        Context::from_json(&g["context"].to_string()).unwrap();
    }

    let dir = TempDir::new().unwrap();
    let (_, out, _) = run(&["--json", "pathwidth", path(&data("hub.json"))]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pathwidth"], 3);
    let pd = dir.path().join("pd.json");
    std::fs::write(&pd, v["decomposition"].to_string()).unwrap();
    let split = dir.path().join("split.json");
    std::fs::write(&split, r#"{"x": ["z"]}"#).unwrap();
    let (code, out, err) = run(&[
        "--json",
        "dealternate",
        path(&pd),
        path(&data("hub.json")),
        "--split",
        path(&split),
    ]);
    assert_eq!(code, 0, "{err}");
    let d: Value = serde_json::from_str(&out).unwrap();
    assert!(d["width"].as_i64() <= d["original_width"].as_i64());
}

#[test]
fn beta_and_bridges_of_the_crossing() {
    let (_, out, _) = run(&["beta", path(&data("crossing.json"))]);
    assert!(out.contains("reach: L1-R2 L2-R1"));
    let (_, out, _) = run(&["--json", "bridges", path(&data("crossing.json"))]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn two_bridge_factors_compose_back() {
    let dir = TempDir::new().unwrap();
    let w = write_output(
        &dir,
        "w.json",
        &["build-word", "--arity", "2", "g112", "g30"],
    );
    let input = Context::from_json(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(bridges(&input).len(), 2);
    let (code, out, err) = run(&["--json", "two-bridge", path(&w), "--width", "2"]);
    assert_eq!(code, 0, "{err}");
    let t: Value = serde_json::from_str(&out).unwrap();
    let base = persistent_ports(&input).count_ones();
    let mut acc: Option<Context> = None;
    for f in t["factors"].as_array().unwrap() {
        let c = Context::from_json(&f["context"].to_string()).unwrap();
        if f["kind"] == "Generator" {
            assert!(c.vertex_count() <= 3);
        } else {
            assert!(persistent_ports(&c).count_ones() > base);
        }
        acc = Some(match acc {
            None => c,
            Some(a) => compose(&a, &c).unwrap(),
        });
    }
    assert!(context_iso(&acc.unwrap(), &input));

    let (code, _, err) = run(&["two-bridge", path(&data("hub.json")), "--width", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("bridges") || err.contains("arity"), "{err}");
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "certify", "--oracle", "two-disjoint", "--context"];
    let hub = data("hub.json");
    let mut a = args.to_vec();
    a.push(path(&hub));
    assert_eq!(run(&a).1, run(&a).1);
    assert_eq!(
        run(&["generators", "--arity", "2"]).1,
        run(&["generators", "--arity", "2"]).1
    );
}
