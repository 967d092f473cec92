use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn drtest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drtest"))
        .args(args)
        .env_remove("DRTEST_BUDGET")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("drtest-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dr_presentation_exits_10_with_a_vector() {
    let dir = scratch("dr");
    let f = write(
        &dir,
        "ex.pres",
        "x, y, z, w | x^2 y^2 z^2 ; x y x^-1 z y z^-1 ; w^2 x^-1 w^-1 z\n",
    );
    let out = drtest(&["--json", "--seed", "7", "check", &f]);
    assert_eq!(out.status.code(), Some(10));
    let v = json(&out);
    assert_eq!(v["status"], "ProvenDR");
    assert_eq!(v["seed"], 7);
    let proven = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["status"] == "ProvenDR")
        .expect("a proving test");
    assert_eq!(proven["test"], "itest");
    assert!(proven["witness"].to_string().contains("vector"));
}

#[test]
fn negative_control_is_not_proven() {
    let dir = scratch("neg");
    let f = write(&dir, "neg.pres", "x, y | x^2 ; y^3\n");
    let out = drtest(&["check", &f]);
    assert!(matches!(out.status.code(), Some(20 | 30)), "{out:?}");
}

#[test]
fn parse_errors_exit_1_with_a_location() {
    let dir = scratch("err");
    let f = write(&dir, "err.pres", "x, y | x ^^\n");
    let out = drtest(&["check", &f]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(&format!("{f}:1:")), "{err}");

    let out = drtest(&["check", &dir.join("missing.pres").display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn whitehead_weight_test_is_infeasible() {
    let dir = scratch("wh");
    let f = write(&dir, "w.pres", "x, y | x^3 y x y\n");
    let out = drtest(&["--json", "whitehead", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["weight_test"]["status"], "infeasible", "{v}");
}

#[test]
fn generated_instances_are_reproducible() {
    for kind in ["lot", "tower", "adian"] {
        let a = drtest(&["--seed", "11", "gen", kind, "--size", "4"]);
        let b = drtest(&["--seed", "11", "gen", kind, "--size", "4"]);
        assert!(a.status.success());
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
    let one = scratch("gen1");
    let two = scratch("gen2");
    for dir in [&one, &two] {
        let d = dir.display().to_string();
        let out = drtest(&["--seed", "3", "gen", "lot", "--count", "4", "--out", &d]);
        assert!(out.status.success());
    }
    let mut names: Vec<_> = fs::read_dir(&one)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 4);
    for n in names {
        assert_eq!(
            fs::read(one.join(&n)).unwrap(),
            fs::read(two.join(&n)).unwrap()
        );
    }
}

#[test]
fn batch_reports_every_file_in_order() {
    let dir = scratch("batch");
    let d = dir.display().to_string();
    assert!(
        drtest(&["--seed", "1", "gen", "lot", "--count", "5", "--out", &d])
            .status
            .success()
    );
    let out = drtest(&["--json", "batch", &d]);
    assert!(out.status.success());
    let v = json(&out);
    let inputs: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["input"].as_str().unwrap())
        .collect();
    assert_eq!(inputs.len(), 5);
    assert!(inputs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn fixed_vector_itest() {
    let dir = scratch("itest");
    let f = write(&dir, "w.pres", "x, y | x^3 y^3 x y\n");
    assert_eq!(
        drtest(&["itest", &f, "--vector=-1,1"]).status.code(),
        Some(10)
    );
    assert_eq!(
        drtest(&["itest", &f, "--vector=1,-1"]).status.code(),
        Some(20)
    );
    assert_eq!(
        drtest(&["itest", &f, "--vector", "1,1"]).status.code(),
        Some(30)
    );
    assert_eq!(
        drtest(&["itest", &f, "--vector", "1,x"]).status.code(),
        Some(1)
    );
}

#[test]
fn dot_output_is_a_graph() {
    let dir = scratch("dot");
    let f = write(&dir, "t.log", "vertices: a b\na b b\n");
    let out = drtest(&["dot", &f]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("digraph"));
    let out = drtest(&["dot", &f, "--graph", "whitehead"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("graph"));
}
