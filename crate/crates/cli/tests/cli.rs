use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gjacobi")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn result(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["status"], "ok");
    r["result"].clone()
}

/// Run a command and store its stdout in `dir/name`.
fn save(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let out = run(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    fs::write(&path, &out.stdout).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn betti(v: &Value) -> Vec<u64> {
    v["betti"].as_array().unwrap().iter().map(|b| b.as_u64().unwrap()).collect()
}

#[test]
fn sl2_homology_example() {
    let r = result(&["homology", "lie", "--family", "sl", "--rank", "2", "--max-degree", "3"]);
    assert_eq!(betti(&r), [1, 0, 0, 1]);
    let out = run(&["homology", "lie", "--family", "sl", "--rank", "2", "--max-degree", "3", "--format", "csv"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("degree,chain_dim,boundary_rank,betti"));
    assert_eq!(csv.lines().last(), Some("3,1,0,1"));
}

#[test]
fn identity_rank_example() {
    let dir = TempDir::new().unwrap();
    let id = save(dir.path(), "identity.json", &["build", "band", "--name", "I"]);
    assert_eq!(result(&["rank", "--matrix", p(&id), "--exact"])["exact"], "1");
    assert_eq!(result(&["trace", "--matrix", p(&id), "--exact"])["value"], "1");
}

#[test]
fn predict_example() {
    let r = result(&["predict", "--generators", "2:even,4:even,6:even", "--max-degree", "6"]);
    let dims: Vec<u64> = r["dims"].as_array().unwrap().iter().map(|b| b.as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 1, 0, 2, 0, 3]);
}

#[test]
fn cocycle_of_shift_pair() {
    let dir = TempDir::new().unwrap();
    let q = save(dir.path(), "q.json", &["build", "band", "--name", "Q"]);
    let p_ = save(dir.path(), "p.json", &["build", "band", "--name", "P"]);
    assert_eq!(result(&["cocycle", "--x", p(&q), "--y", p(&q)])["value"], "0");
    let pq = result(&["cocycle", "--x", p(&p_), "--y", p(&q)]);
    let qp = result(&["cocycle", "--x", p(&q), "--y", p(&p_)]);
    assert_eq!(pq["value"], "0");
    assert_eq!(qp["value"], "0");
}

#[test]
fn affine_central_term() {
    let dir = TempDir::new().unwrap();
    let x = save(dir.path(), "x.json", &["embed", "affine", "--n", "2", "--i", "1", "--j", "1", "--a", "1"]);
    let y = save(dir.path(), "y.json", &["embed", "affine", "--n", "2", "--i", "1", "--j", "1", "--a", "-1"]);
    assert_eq!(result(&["cocycle", "--x", p(&x), "--y", p(&y)])["value"], "1");
    let ext = |src: &Path, name: &str, c: &str| {
        let band: Value = serde_json::from_slice(&fs::read(src).unwrap()).unwrap();
        let path = dir.path().join(name);
        fs::write(&path, serde_json::json!({"x": band["result"], "c": c}).to_string()).unwrap();
        path
    };
    let (u, v) = (ext(&x, "u.json", "5"), ext(&y, "v.json", "-2/3"));
    let br = result(&["extbracket", "--u", p(&u), "--v", p(&v)]);
    assert_eq!(br["c"], "1");
}

#[test]
fn blockiso_round_trip_through_reports() {
    let dir = TempDir::new().unwrap();
    let q = save(dir.path(), "q.json", &["build", "band", "--name", "Q"]);
    let fwd = save(dir.path(), "fwd.json", &["blockiso", "--n", "3", "--matrix", p(&q)]);
    let back = result(&["blockiso", "--n", "3", "--matrix", p(&fwd), "--inverse"]);
    let original: Value = serde_json::from_slice(&fs::read(&q).unwrap()).unwrap();
    assert_eq!(back, original["result"]);
}

#[test]
fn twisted_example_has_matrix_homology() {
    let dir = TempDir::new().unwrap();
    let k2 = save(dir.path(), "k2.json", &["build", "algebra", "--family", "product-field", "--n", "2"]);
    let act = save(dir.path(), "act.json", &["build", "action", "--cyclic-shift", "2"]);
    let tw = save(dir.path(), "tw.json", &["twisted", "--algebra", p(&k2), "--action", p(&act)]);
    let r = result(&["homology", "hochschild", "--algebra", p(&tw), "--max-degree", "2"]);
    assert_eq!(betti(&r), [1, 0, 0]);
    let r = result(&["homology", "cyclic", "--algebra", p(&tw), "--max-degree", "2"]);
    assert_eq!(betti(&r), [1, 0, 1]);
}

#[test]
fn dihedral_and_periodicity() {
    let dir = TempDir::new().unwrap();
    let k = save(dir.path(), "k.json", &["build", "algebra", "--family", "field"]);
    let hd = result(&["homology", "dihedral", "--algebra", p(&k), "--sign", "+1", "--max-degree", "4"]);
    assert_eq!(betti(&hd), [1, 0, 0, 0, 1]);
    let skew = result(&["homology", "dihedral", "--algebra", p(&k), "--sign", "-1", "--max-degree", "4"]);
    assert_eq!(betti(&skew), [0, 0, 1, 0, 0]);
    let per = result(&["periodicity", "--algebra", p(&k), "--max-degree", "5"]);
    assert_eq!(per["passed"], true);
}

#[test]
fn rank_construct_and_truncation() {
    let r = result(&["rank", "construct", "--target", "-1,1,2", "--steps", "3"]);
    let rs: Vec<u64> = r["r"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(rs, [1, 2, 3, 3]);
    let dir = TempDir::new().unwrap();
    let id = save(dir.path(), "id.json", &["build", "band", "--name", "I"]);
    let t = result(&["rank", "--matrix", p(&id), "--trunc", "4"]);
    assert_eq!(t["approximants"][0]["density"], "1");
}

#[test]
fn lie_algebra_json_input() {
    let dir = TempDir::new().unwrap();
    let g = save(dir.path(), "sp1.json", &["build", "lie", "--family", "sp", "--rank", "1"]);
    let r = result(&["homology", "lie", "--algebra", p(&g), "--max-degree", "3"]);
    assert_eq!(betti(&r), [1, 0, 0, 1]);
    let m2 = save(dir.path(), "m2.json", &["build", "algebra", "--family", "matrix", "--n", "2"]);
    let r = result(&["homology", "lie", "--family", "gl", "--rank", "1", "--over", p(&m2), "--max-degree", "4"]);
    assert_eq!(betti(&r), [1, 1, 0, 1, 1]);
}

#[test]
fn schema_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"diagonals\": 3}").unwrap();
    let out = run(&["rank", "--matrix", p(&bad), "--exact"]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["error"]["kind"], "schema");
    assert_eq!(code(&run(&["rank", "--exact"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["predict", "--generators", "2:sideways", "--max-degree", "3"])), 2);
    // CSV is only defined for Betti-style tables
    assert_eq!(code(&run(&["embed", "w", "--a", "1", "--poly", "1", "--format", "csv"])), 2);
}

#[test]
fn domain_errors_exit_3() {
    let out = run(&["embed", "affine", "--n", "1", "--i", "1", "--j", "1", "--a", "0"]);
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out)["error"]["kind"], "domain");
    assert_eq!(code(&run(&["rank", "construct", "--target", "1,0,2", "--steps", "3"])), 3);
    let dir = TempDir::new().unwrap();
    let k2 = save(dir.path(), "k2.json", &["build", "algebra", "--family", "product-field", "--n", "2"]);
    let act = save(dir.path(), "act.json", &["build", "action", "--cyclic-shift", "2"]);
    let tw = save(dir.path(), "tw.json", &["twisted", "--algebra", p(&k2), "--action", p(&act)]);
    assert_eq!(code(&run(&["homology", "dihedral", "--algebra", p(&tw), "--sign", "+1", "--max-degree", "1"])), 3);
}

#[test]
fn resource_ceiling_exits_4() {
    let out = run(&["homology", "lie", "--family", "gl", "--rank", "3", "--max-degree", "3", "--max-chain-dim", "10"]);
    assert_eq!(code(&out), 4);
    assert_eq!(report(&out)["error"]["kind"], "resource");
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let m2 = save(dir.path(), "m2.json", &["build", "algebra", "--family", "matrix", "--n", "2"]);
    let args = ["homology", "cyclic", "--algebra", p(&m2), "--max-degree", "2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let digest = &report(&a)["inputs"][0]["sha256"];
    assert_eq!(digest.as_str().unwrap().len(), 64);
}

#[test]
fn emitted_json_reingests_exactly() {
    let dir = TempDir::new().unwrap();
    let w = save(dir.path(), "w.json", &["embed", "w", "--a", "-2", "--poly", "1/2,0,-3"]);
    let once = save(dir.path(), "once.json", &["blockiso", "--n", "2", "--matrix", p(&w)]);
    let back = save(dir.path(), "back.json", &["blockiso", "--n", "2", "--matrix", p(&once), "--inverse"]);
    let original: Value = serde_json::from_slice(&fs::read(&w).unwrap()).unwrap();
    let returned: Value = serde_json::from_slice(&fs::read(&back).unwrap()).unwrap();
    assert_eq!(original["result"], returned["result"]);
    // a bare payload and its wrapping report are interchangeable inputs
    let bare = dir.path().join("bare.json");
    fs::write(&bare, serde_json::to_string_pretty(&original["result"]).unwrap()).unwrap();
    assert_eq!(
        result(&["rank", "--matrix", p(&bare), "--trunc", "3"]),
        result(&["rank", "--matrix", p(&w), "--trunc", "3"])
    );
}
