use std::path::{Path, PathBuf};
use std::process::Command;

use cayley_cli::document::EdcsDocument;
use serde_json::Value;
use tempfile::TempDir;

fn write_doc(dir: &TempDir, name: &str, vertices: &[&str], edges: &[(&str, &str, f64)], nonedges: &[(&str, &str)], dim: usize) -> PathBuf {
    let doc = serde_json::json!({
        "format_version": "1",
        "vertices": vertices,
        "edges": edges.iter().map(|(u, v, d)| serde_json::json!({"u": u, "v": v, "delta": d})).collect::<Vec<_>>(),
        "nonedges": nonedges.iter().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "dim": dim,
    });
    let path = dir.path().join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path
}

fn cayley(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cayley")).args(args).env_remove("CAYLEY_SEED").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).expect("stdout is JSON") };
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const V4: [&str; 4] = ["v1", "v2", "v3", "v4"];

fn k4_minus_f(dir: &TempDir) -> PathBuf {
    let e = [("v1", "v3", 1.0), ("v1", "v4", 1.0), ("v2", "v3", 1.0), ("v2", "v4", 1.0), ("v3", "v4", 1.0)];
    write_doc(dir, "k4f.json", &V4, &e, &[], 2)
}

fn p3(dir: &TempDir) -> PathBuf {
    write_doc(dir, "p3.json", &V4[..3], &[("v1", "v2", 3.0), ("v2", "v3", 4.0)], &[("v1", "v3")], 2)
}

fn c4(dir: &TempDir) -> PathBuf {
    let e = [("v1", "v2", 1.0), ("v2", "v3", 1.0), ("v3", "v4", 1.0), ("v1", "v4", 1.0)];
    write_doc(dir, "c4.json", &V4, &e, &[], 2)
}

#[test]
fn analyze_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let (code, out, _) = cayley(&["analyze", p(&k4_minus_f(&dir)), "--nonedge", "v1,v2"]);
    assert_eq!(code, 3);
    assert_eq!(out["verdict"]["holds"], false);
    assert_eq!(out["verdict"]["offending"][0]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(out["verdict"]["offending"][0]["edges"].as_array().unwrap().len(), 6);

    let (code, out, _) = cayley(&["analyze", p(&p3(&dir)), "--nonedge", "v1,v3"]);
    assert_eq!(code, 0);
    assert_eq!(out["verdict"]["holds"], true);
    assert_eq!(out["laman"]["tag"], "underconstrained");

    let parts = [("a1", "a2"), ("b1", "b2"), ("c1", "c2")];
    let names = ["a1", "a2", "b1", "b2", "c1", "c2"];
    let mut edges = Vec::new();
    for (i, x) in parts.iter().enumerate() {
        for y in &parts[i + 1..] {
            for a in [x.0, x.1] {
                for b in [y.0, y.1] {
                    edges.push((a, b, 1.0));
                }
            }
        }
    }
    let k222 = write_doc(&dir, "k222.json", &names, &edges, &[], 3);
    let (code, out, _) = cayley(&["analyze", p(&k222), "--dim", "3"]);
    assert_eq!(code, 3);
    assert_eq!(out["verdict"]["kind"], "universal_inherence");
}

#[test]
fn complete_examples() {
    let dir = TempDir::new().unwrap();
    let p3 = write_doc(&dir, "p3.json", &V4[..3], &[("v1", "v2", 3.0), ("v2", "v3", 4.0)], &[], 2);
    let (code, out, _) = cayley(&["complete", p(&p3)]);
    assert_eq!(code, 0);
    assert_eq!(out["suggested_f"], serde_json::json!([["v1", "v3"]]));

    let (code, out, _) = cayley(&["complete", p(&k4_minus_f(&dir))]);
    assert_eq!(code, 3);
    assert_eq!(out["suggested_f"], "none");

    let (code, out, _) = cayley(&["complete", p(&c4(&dir))]);
    assert_eq!(code, 0);
    let f = out["suggested_f"].as_array().unwrap();
    assert_eq!(f.len(), 1);
    assert!(f[0] == serde_json::json!(["v1", "v3"]) || f[0] == serde_json::json!(["v2", "v4"]));
}

#[test]
fn polytope_and_sample() {
    let dir = TempDir::new().unwrap();
    let path = p3(&dir);
    let (code, out, _) = cayley(&["polytope", p(&path)]);
    assert_eq!(code, 0);
    assert_eq!(out["triangle_rows"], 2);
    assert_eq!(out["ranges"][0]["lo"], 1.0);
    assert_eq!(out["ranges"][0]["hi"], 7.0);
    assert_eq!(out["inequalities"][0], "x(v1,v3) >= 1");

    let svg = dir.path().join("s.svg");
    let (code, a, _) = cayley(&["sample", p(&path), "--count", "5", "--seed", "9", "--svg", p(&svg)]);
    assert_eq!(code, 0);
    assert_eq!(a["seed"], 9);
    assert_eq!(a["points"].as_array().unwrap().len(), 5);
    let (_, b, _) = cayley(&["sample", p(&path), "--count", "5", "--seed", "9"]);
    assert_eq!(a, b);
    for x in a["points"].as_array().unwrap() {
        let v = x["v1,v3"].as_f64().unwrap();
        assert!((1.0..=7.0).contains(&v));
    }
    let drawing = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(drawing.matches("<g id=").count(), 5);

    let out = Command::new(env!("CARGO_BIN_EXE_cayley"))
        .args(["sample", p(&path), "--count", "2"])
        .env("CAYLEY_SEED", "42")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 42);
}

#[test]
fn realize_with_config_and_branches() {
    let dir = TempDir::new().unwrap();
    let path = p3(&dir);
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"v1,v3": 5.0}"#).unwrap();
    let (code, out, _) = cayley(&["realize", p(&path), "--config", p(&cfg)]);
    assert_eq!(code, 0);
    assert_eq!(out["pass"], true);
    let pts = &out["realizations"][0]["points"];
    let d = |a: &str, b: &str| {
        let (x, y) = (pts[a].as_array().unwrap(), pts[b].as_array().unwrap());
        ((x[0].as_f64().unwrap() - y[0].as_f64().unwrap()).powi(2) + (x[1].as_f64().unwrap() - y[1].as_f64().unwrap()).powi(2)).sqrt()
    };
    assert!((d("v1", "v3") - 5.0).abs() < 1e-9);

    std::fs::write(&cfg, r#"{"v1,v3": 8.0}"#).unwrap();
    let (code, _, err) = cayley(&["realize", p(&path), "--config", p(&cfg)]);
    assert_eq!(code, 4, "{err}");

    let (code, out, _) = cayley(&["realize", p(&k4_minus_f(&dir)), "--all-branches"]);
    assert_eq!(code, 0);
    assert_eq!(out["realizations"].as_array().unwrap().len(), 2);
}

#[test]
fn witness_then_oracle() {
    let dir = TempDir::new().unwrap();
    let (code, _, _) = cayley(&["witness", p(&c4(&dir)), "--nonedge", "v1,v3"]);
    assert_eq!(code, 4);

    let out = Command::new(env!("CARGO_BIN_EXE_cayley"))
        .args(["witness", p(&k4_minus_f(&dir)), "--nonedge", "v1,v2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = EdcsDocument::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let expected = doc.expected_values.clone().unwrap();
    assert!((expected[1] - 3f64.sqrt()).abs() < 1e-12);
    let wpath = dir.path().join("witness.json");
    std::fs::write(&wpath, &out.stdout).unwrap();

    let (code, out, _) = cayley(&["oracle", p(&wpath), "--grid", "1000"]);
    assert_eq!(code, 0);
    let iv = out["intervals"].as_array().unwrap();
    assert_eq!(iv.len(), 2);
    for (piece, x) in iv.iter().zip(&expected) {
        assert!((piece[0].as_f64().unwrap() - x).abs() < 1e-9);
        assert!((piece[1].as_f64().unwrap() - x).abs() < 1e-9);
    }
}

#[test]
fn decompose_lists_components() {
    let dir = TempDir::new().unwrap();
    let e = [("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0), ("c", "d", 1.0), ("d", "e", 1.0), ("c", "e", 1.0)];
    let path = write_doc(&dir, "bowtie.json", &["a", "b", "c", "d", "e"], &e, &[], 2);
    let (code, out, _) = cayley(&["decompose", p(&path)]);
    assert_eq!(code, 0);
    let d = &out["decompositions"][0];
    assert_eq!(d["components"].as_array().unwrap().len(), 2);
    assert_eq!(d["tree"][0]["hinge"]["vertex"], "c");
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"format_version\": \"1\",\n \"vertices\": [\"a\"],\n \"edges\": [{\"u\": \"a\", \"v\": \"q\", \"delta\": 1}], \"dim\": 2}").unwrap();
    let (code, out, err) = cayley(&["analyze", p(&path)]);
    assert_eq!(code, 2);
    assert_eq!(out, Value::Null);
    assert!(err.contains("edges[0].v"), "{err}");

    std::fs::write(&path, "{\"format_version\": \"1\",\n \"vertices\": [").unwrap();
    let (code, _, err) = cayley(&["analyze", p(&path)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let (code, _, _) = cayley(&["analyze", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = cayley(&["oracle", p(&k4_minus_f(&dir)), "--nonedge", "v1,v9"]);
    assert_eq!(code, 2);
}
