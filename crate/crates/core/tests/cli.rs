use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn tilepot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilepot"))
        .args(args)
        .env_remove("TILEPOT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares against `tests/golden/{name}`; set `TILEPOT_BLESS=1` to rewrite.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("TILEPOT_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {name}"));
    assert_eq!(actual, expected, "golden {name}");
}

fn s(p: PathBuf) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn min_order_golden() {
    let pot = s(data("cube_s2.pot"));
    let o = tilepot(&["min-order", "--pot", &pot, "--max", "16", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"free_count":0,"witnesses":[{"counts":[1,2,5],"order":8}]}"#
    );
}

#[test]
fn min_order_none_below_eight() {
    let pot = s(data("cube_s2.pot"));
    let o = tilepot(&["min-order", "--pot", &pot, "--max", "7", "--json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectrum_golden() {
    let o = tilepot(&["spectrum", "--pot", &s(data("cube_t3.pot")), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    golden("spectrum_cube_t3.json", &stdout(&o));
    let o = tilepot(&["spectrum", "--pot", &s(data("small.json"))]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn graph_family() {
    let o = tilepot(&["graph", "--family", "square_tube", "--rows", "4", "--cols", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let g = tilepot::MultiGraph::from_json_str(&stdout(&o)).unwrap();
    assert_eq!(g.vertex_count(), 16);
    golden("square_tube_4x5.json", &stdout(&o));
}

#[test]
fn scenario_levels() {
    let pot = s(data("cube_s2.pot"));
    let cube = s(data("cube.json"));
    let o = tilepot(&["scenario", "--level", "2", "--pot", &pot, "--graph", &cube, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "holds");
    let o = tilepot(&["scenario", "--level", "3", "--pot", &pot, "--graph", &cube, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    golden("scenario3_cube_s2.json", &stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["violation"]["kind"], "non_isomorphic");
}

#[test]
fn budget_exhaustion_is_indeterminate() {
    let pot = s(data("cube_s2.pot"));
    let cube = s(data("cube.json"));
    let o = tilepot(&["scenario", "--level", "3", "--pot", &pot, "--graph", &cube, "--budget", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_tilepot"))
        .args(["realize", "--pot", &pot, "--graph", &cube])
        .env("TILEPOT_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tilepot(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tilepot(&["scenario", "--level", "4"]).status.code(), Some(2));
    let o = tilepot(&["realize", "--pot", "/nonexistent.pot", "--graph", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(tilepot(&["--help"]).status.code(), Some(0));
}

#[test]
fn realize_emits_valid_certificate() {
    let pot = s(data("cube_t3.pot"));
    let cube = s(data("cube.json"));
    let o = tilepot(&["realize", "--pot", &pot, "--graph", &cube, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cert: tilepot::realize::CertificateJson =
        serde_json::from_value(v["certificate"].clone()).unwrap();
    let g = tilepot::MultiGraph::from_json_str(&std::fs::read_to_string(&cube).unwrap()).unwrap();
    let p = tilepot::parse_pot(&std::fs::read_to_string(&pot).unwrap()).unwrap();
    cert.into_certificate(&g, &p).unwrap();
}

#[test]
fn enumerate_lattice_example() {
    let dir = std::env::temp_dir().join(format!("tilepot-cli-enum-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pot = dir.join("ex.pot");
    std::fs::write(&pot, "a,^a ; a,a,^a ; a,^a,^a ; a,a,^a,^a").unwrap();
    let o = tilepot(&["enumerate", "--pot", &s(pot), "--order", "6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complete"], true);
    assert!(v["graphs"].as_array().unwrap().len() >= 2);
}

#[test]
fn reduce_round_trip() {
    let dir = std::env::temp_dir().join(format!("tilepot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (out, target) = (dir.join("c5.pot"), dir.join("c5.json"));
    let c5 = tilepot(&["graph", "--family", "cycle", "--n", "5"]);
    let c5_path = dir.join("c5_source.json");
    std::fs::write(&c5_path, stdout(&c5)).unwrap();
    let o = tilepot(&[
        "reduce", "--variant", "prp", "--graph", &s(c5_path), "--out", &s(out.clone()),
        "--emit-target", &s(target.clone()), "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tiles"], 45);
    assert_eq!(v["target_order"], 10);
    let o = tilepot(&["realize", "--pot", &s(out), "--graph", &s(target)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let pot = s(data("cube_s2.pot"));
    let cube = s(data("cube.json"));
    let args = ["scenario", "--level", "3", "--pot", &pot, "--graph", &cube, "--json"];
    assert_eq!(stdout(&tilepot(&args)), stdout(&tilepot(&args)));
}

#[test]
fn registry_lists_entries() {
    let o = tilepot(&["registry", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["entries"].as_array().unwrap().len() > 40);
}
