use std::path::PathBuf;
use std::process::Command;

use afflat_core::io;
use afflat_core::polyhedra::poly_set_equal;
use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("stdout is JSON")
    }
}

struct Workspace {
    dir: TempDir,
    count: usize,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().unwrap(),
            count: 0,
        }
    }

    fn file(&mut self, v: &Value) -> String {
        self.count += 1;
        let p: PathBuf = self.dir.path().join(format!("in{}.json", self.count));
        std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
        p.to_string_lossy().into_owned()
    }
}

fn afflat(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_afflat"));
    cmd.args(args).env_remove("AFFLAT_MAX_DEN");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

#[test]
fn segment_equivalence_example() {
    let mut w = Workspace::new();
    let a = w.file(&json!({"a": ["0"], "b": ["1"]}));
    let b = w.file(&json!({"a": ["3"], "b": ["4"]}));
    let r = afflat(&["equiv", "--kind", "segment", &a, &b], &[]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"equivalent": true, "map": {"matrix": [[1]], "translation": [3]}}));
}

#[test]
fn affine_invariant_example() {
    let mut w = Workspace::new();
    let f = w.file(&json!({"points": [["2/5", "0"], ["0", "2/5"]]}));
    let r = afflat(&["invariant", "--kind", "affine", &f], &[]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"dim": 1, "d": 5, "c": 2}));
}

#[test]
fn conic_classification_exit_codes() {
    let mut w = Workspace::new();
    let c = |f: &str| json!({"a": "1", "b": "0", "c": "1", "d": "0", "e": "0", "f": f});
    let three = w.file(&c("-3"));
    let r = afflat(&["classify-conic", &three], &[]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json(), json!({"class": "ellipse-no-rational-point"}));
    let one = w.file(&c("-1"));
    let r = afflat(&["classify-conic", &one], &[]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"class": "ellipse-in-𝓔"}));
    let r = afflat(&["invariant", "--kind", "ellipse", &three], &[]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json()["error"], json!("not-in-class"));
}

#[test]
fn chains_and_lengths() {
    let mut w = Workspace::new();
    let s = w.file(&json!({"a": ["-1/2"], "b": ["5/8"]}));
    let r = afflat(&["hj", &s], &[]);
    assert_eq!(r.json(), json!({"vertices": [["-1/2"], ["0"], ["1/2"], ["3/5"], ["5/8"]]}));
    let r = afflat(&["lambda1", &s], &[]);
    assert_eq!(r.json(), json!({"lambda1": "9/8"}));
    let r = afflat(&["--format", "text", "lambda1", &s], &[]);
    assert_eq!(r.stdout, "lambda1: 9\u{2044}8\n");
    let r = afflat(&["invariant", "--kind", "segment", &s], &[]);
    assert_eq!(r.json(), json!({"c": 1, "lambda1": "9/8", "den_a": 2, "den_x1": 1}));
}

#[test]
fn desingularization() {
    let mut w = Workspace::new();
    let k = w.file(&json!({"generators": [[-1, 2], [5, 8]]}));
    let r = afflat(&["desingularize", &k], &[]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["rays"], json!([[-1, 2], [0, 1], [1, 2], [3, 5], [5, 8]]));
}

#[test]
fn malformed_inputs_exit_two() {
    let mut w = Workspace::new();
    let bad = w.file(&json!({"a": ["0.5"], "b": ["1"]}));
    assert_eq!(afflat(&["hj", &bad], &[]).code, 2);
    let extra = w.file(&json!({"a": ["0"], "b": ["1"], "c": ["2"]}));
    assert_eq!(afflat(&["hj", &extra], &[]).code, 2);
    assert_eq!(afflat(&["hj", "/nonexistent/file.json"], &[]).code, 2);
    let k = w.file(&json!({"generators": [[1, 0], [0, 1]]}));
    assert_eq!(afflat(&["invariant", "--kind", "cone", &k], &[]).code, 2);
    assert_eq!(afflat(&["invariant", "--kind", "nonsense", &k], &[]).code, 2);
    let m = w.file(&json!({"matrix": [[2]], "translation": [0]}));
    let s = w.file(&json!({"a": ["0"], "b": ["1"]}));
    assert_eq!(afflat(&["apply", "--kind", "segment", &m, &s], &[]).code, 2);
}

#[test]
fn trivial_angle_is_not_in_class() {
    let mut w = Workspace::new();
    let a = w.file(&json!({"v": ["0", "0"], "h": ["1", "0"], "k": ["-1", "0"]}));
    assert_eq!(afflat(&["invariant", "--kind", "angle", &a], &[]).code, 3);
}

#[test]
fn resource_cap_exits_five() {
    let mut w = Workspace::new();
    let p = w.file(&json!({"simplexes": [[["0"], ["1/7"]]]}));
    let r = afflat(&["equiv", "--kind", "polyhedron", &p, &p], &[("AFFLAT_MAX_DEN", "4")]);
    assert_eq!(r.code, 5);
    let r = afflat(&["equiv", "--kind", "polyhedron", &p, &p], &[]);
    assert_eq!(r.code, 0);
    let e = w.file(&json!({"a": "25", "b": "0", "c": "25", "d": "0", "e": "0", "f": "-1"}));
    assert_eq!(afflat(&["invariant", "--kind", "ellipse", &e], &[("AFFLAT_MAX_DEN", "3")]).code, 5);
    assert_eq!(afflat(&["invariant", "--kind", "ellipse", &e], &[]).code, 0);
}

fn round_trip(kind: &str, object: Value, map: Value) {
    let mut w = Workspace::new();
    let x = w.file(&object);
    let m = w.file(&map);
    let moved = afflat(&["apply", "--kind", kind, &m, &x], &[]);
    assert_eq!(moved.code, 0, "{}", moved.stdout);
    let y = w.file(&moved.json());
    let decided = afflat(&["equiv", "--kind", kind, &x, &y], &[]);
    assert_eq!(decided.code, 0, "{}", decided.stdout);
    let out = decided.json();
    assert_eq!(out["equivalent"], json!(true), "{kind}");
    let witness = w.file(&out["map"]);
    let again = afflat(&["apply", "--kind", kind, &witness, &x], &[]);
    let target: Value = moved.json();
    let (got, want) = (again.json(), target);
    match kind {
        "ellipse" => assert!(io::parse_conic(&got).unwrap().same_up_to_scalar(&io::parse_conic(&want).unwrap())),
        "polyhedron" => assert!(poly_set_equal(
            &io::parse_polyhedron(&got).unwrap(),
            &io::parse_polyhedron(&want).unwrap()
        )),
        "affine" => assert!(io::parse_affine(&got).unwrap().same_set(&io::parse_affine(&want).unwrap())),
        _ => assert_eq!(got, want, "{kind}"),
    }
}

#[test]
fn apply_round_trips() {
    let g2 = json!({"matrix": [[2, 1], [1, 1]], "translation": [3, -1]});
    round_trip("segment", json!({"a": ["1/3", "0"], "b": ["2", "3/4"]}), g2.clone());
    round_trip("angle", json!({"v": ["3/5", "0"], "h": ["1", "0"], "k": ["1", "1"]}), g2.clone());
    round_trip("triangle", json!({"u": ["0", "0"], "v": ["1/2", "0"], "w": ["0", "1/3"]}), g2.clone());
    round_trip("affine", json!({"points": [["1/2", "0"], ["0", "1/2"]]}), g2.clone());
    round_trip(
        "polyhedron",
        json!({"simplexes": [[["0", "0"], ["1", "0"], ["0", "1/2"]], [["1", "0"], ["2", "1"]]]}),
        g2.clone(),
    );
    round_trip("ellipse", json!({"a": "1", "b": "0", "c": "1", "d": "0", "e": "0", "f": "-1"}), g2);
}

#[test]
fn output_is_byte_stable() {
    let mut w = Workspace::new();
    let t = w.file(&json!({"u": ["0", "0"], "v": ["1/2", "0"], "w": ["0", "1/3"]}));
    let runs: Vec<String> = (0..3)
        .map(|_| afflat(&["invariant", "--kind", "triangle", &t], &[]).stdout)
        .collect();
    assert!(runs.windows(2).all(|p| p[0] == p[1]));
    let a = w.file(&json!({"points": [["1/2", "0"], ["0", "1/2"]]}));
    let b = w.file(&json!({"points": [["5/2", "1"], ["2", "3/2"]]}));
    let runs: Vec<String> = (0..3)
        .map(|_| afflat(&["equiv", "--kind", "affine", &a, &b], &[]).stdout)
        .collect();
    assert!(runs.windows(2).all(|p| p[0] == p[1]));
}

#[test]
fn stdin_input() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_afflat"));
    cmd.args(["lambda1", "-"]).stdin(std::process::Stdio::piped()).stdout(std::process::Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"a": ["0"], "b": ["2/5"]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"lambda1\":\"2/5\"}\n");
}
