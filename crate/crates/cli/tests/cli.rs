use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const CUBE: &str = r#"{"commands": [
  {"type": "SOL", "params": {}},
  {"type": "Line", "params": {"x": 1.0, "y": 0.0}},
  {"type": "Line", "params": {"x": 1.0, "y": 1.0}},
  {"type": "Line", "params": {"x": 0.0, "y": 1.0}},
  {"type": "Line", "params": {"x": 0.0, "y": 0.0}},
  {"type": "Extrude", "params": {"theta": 0.0, "phi": 0.0, "gamma": 0.0, "px": 0.5, "py": 0.5, "pz": 0.5,
   "s": 0.5, "e1": 0.5, "e2": 0.0, "b": 0, "u": 0}},
  {"type": "EOS", "params": {}}
]}"#;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extrudekit")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn cube(dir: &TempDir) -> std::path::PathBuf {
    let path = dir.path().join("cube.json");
    fs::write(&path, CUBE).unwrap();
    path
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = cube(&dir);
    let o = cli(&["validate", p(&good)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let open = dir.path().join("open.json");
    fs::write(&open, CUBE.replace(r#"{"type": "Line", "params": {"x": 0.0, "y": 0.0}},"#, "")).unwrap();
    let o = cli(&["validate", p(&good), p(&open)]);
    assert_eq!(code(&o), 1);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report[p(&good)]["valid"], true);
    assert_eq!(report[p(&open)]["valid"], false);

    assert_eq!(code(&cli(&["validate", p(&dir.path().join("missing.json"))])), 2);
}

#[test]
fn execute_formats() {
    let dir = TempDir::new().unwrap();
    let f = cube(&dir);
    let obj = cli(&["execute", p(&f)]);
    assert_eq!(code(&obj), 0);
    let text = String::from_utf8(obj.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 12);

    let stl = dir.path().join("cube.stl");
    assert_eq!(code(&cli(&["execute", p(&f), "--format", "stl", "--out", p(&stl)])), 0);
    assert_eq!(fs::read(&stl).unwrap().len(), 84 + 12 * 50);

    let xyz = cli(&["execute", p(&f), "--format", "xyz", "--points", "300"]);
    assert_eq!(code(&xyz), 0);
    assert_eq!(String::from_utf8(xyz.stdout).unwrap().lines().count(), 300);
}

#[test]
fn render_and_edgemap() {
    let dir = TempDir::new().unwrap();
    let f = cube(&dir);
    let views = dir.path().join("views");
    assert_eq!(code(&cli(&["render", p(&f), "--views", "3", "--out", p(&views)])), 0);
    for i in 0..3 {
        assert!(views.join(format!("view_{i:02}.png")).is_file());
        assert!(views.join(format!("camera_{i:02}.json")).is_file());
    }
    let edges = dir.path().join("edges.png");
    let o = cli(&["edgemap", p(&views.join("view_00.png")), "--out", p(&edges)]);
    assert_eq!(code(&o), 0);
    assert!(edges.is_file());

    let bad = cli(&["edgemap", p(&views.join("view_00.png")), "--t-low", "0.3", "--t-high", "0.1", "--out", p(&edges)]);
    assert_eq!(code(&bad), 2);
    assert_eq!(code(&cli(&["render", p(&f)])), 2, "render needs --out");
}

#[test]
fn bind_worked_example() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("proposals.json");
    fs::write(
        &f,
        r#"{"lines": [[10, 10, 50, 10], [0, 0, 0, 200]], "endpoints": [[11, 10, 1.0], [50, 13, 0.5]]}"#,
    )
    .unwrap();
    let o = cli(&["bind", p(&f), "--epsilon", "25", "--loi"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let lines = v["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 1);
    assert_eq!(v["loi"].as_array().unwrap().len(), 1);
    assert_eq!(v["loi"][0]["line"].as_array().unwrap().len(), 32);
}

#[test]
fn gen_dedup_eval_loss() {
    let dir = TempDir::new().unwrap();
    let gen = dir.path().join("gen");
    assert_eq!(code(&cli(&["gen", "6", "--seed", "9", "--out", p(&gen)])), 0);
    let again = dir.path().join("again");
    assert_eq!(code(&cli(&["gen", "6", "--seed", "9", "--out", p(&again)])), 0);
    for i in 0..6 {
        let name = format!("gen_{i:04}.json");
        assert_eq!(fs::read(gen.join(&name)).unwrap(), fs::read(again.join(&name)).unwrap());
    }

    fs::copy(gen.join("gen_0000.json"), gen.join("gen_copy.json")).unwrap();
    let deduped = dir.path().join("deduped");
    let o = cli(&["dedup", p(&gen), "--out", p(&deduped)]);
    assert_eq!(code(&o), 0);
    let counts: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(counts["kept"], 6);
    assert_eq!(counts["duplicates"], 1);

    let o = cli(&["eval", p(&deduped), p(&deduped)]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["cmd_acc"], 1.0);
    assert_eq!(report["invalid_ratio"], 0.0);

    let empty = dir.path().join("empty");
    fs::create_dir_all(&empty).unwrap();
    assert_eq!(code(&cli(&["eval", p(&empty), p(&deduped)])), 2);

    let logits = dir.path().join("logits.json");
    let zeros = serde_json::json!({
        "cmd_logits": vec![vec![0.0; 6]; 60],
        "param_logits": vec![vec![vec![0.0; 256]; 16]; 60],
    });
    fs::write(&logits, zeros.to_string()).unwrap();
    let o = cli(&["loss", p(&logits), p(&gen.join("gen_0000.json"))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["loss"].as_f64().unwrap() > 6f64.ln());
}

#[test]
fn config_file_and_unknown_keys() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.toml");
    fs::write(&cfg, "n_views = 3\nimage_size = 64\n").unwrap();
    let f = cube(&dir);
    let views = dir.path().join("v");
    assert_eq!(code(&cli(&["--config", p(&cfg), "render", p(&f), "--out", p(&views)])), 0);
    assert_eq!(fs::read_dir(&views).unwrap().count(), 6);

    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(code(&cli(&["--config", p(&cfg), "render", p(&f), "--out", p(&views)])), 2);
}
