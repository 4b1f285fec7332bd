use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cenergy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cenergy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const AND2: &str = "INPUT x0\nINPUT x1\ng2 = AND g0 g1\nOUTPUT g2\n";

#[test]
fn energy_of_and2() {
    let dir = tempfile::tempdir().unwrap();
    let nl = write(dir.path(), "and2.nl", AND2);
    let o = cenergy(&["energy", "--circuit", &nl, "--exhaustive"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "EC=1 argmax=11");
    let o = cenergy(&["energy", "--circuit", &nl, "--input", "10"]);
    assert_eq!(stdout(&o).trim(), "energy=0");
}

#[test]
fn compile_xor2_within_bound() {
    let dir = tempfile::tempdir().unwrap();
    let tt = write(dir.path(), "xor2.tt", "n=2\n0110\n");
    let out = dir.path().join("xor2.nl");
    let o = cenergy(&["compile-tt", "--table", &tt, "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let ec: usize = text
        .lines()
        .next()
        .unwrap()
        .split_whitespace()
        .find_map(|w| w.strip_prefix("EC="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(ec <= 5);
    // The header is a comment, so the output parses back.
    let o = cenergy(&["eval", "--circuit", out.to_str().unwrap(), "--input", "10"]);
    assert!(stdout(&o).starts_with("output=1"));
}

#[test]
fn gen_is_deterministic_and_echoes_its_spec() {
    let args = [
        "gen",
        "--shape",
        "CIRCUIT",
        "--seed",
        "1",
        "--vars",
        "4",
        "--size",
        "10",
        "--neg-density",
        "0.3",
    ];
    let a = stdout(&cenergy(&args));
    assert_eq!(a, stdout(&cenergy(&args)));
    assert!(a.starts_with("# gen shape=CIRCUIT seed=1 stream=0 vars=4 size=10"));
    let dir = tempfile::tempdir().unwrap();
    let nl = write(dir.path(), "g.nl", &a);
    assert!(cenergy(&["energy", "--circuit", &nl]).status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(cenergy(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        cenergy(&["energy", "--circuit", "/nonexistent/x.nl"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cenergy(&["gen", "--shape", "DTREE", "--seed", "1", "--vars", "2", "--size", "5"])
            .status
            .code(),
        Some(2)
    );
    // A bare input has positive sensitivity 1 and no gate to charge.
    let o = cenergy(&["psens-check", "--circuit", "fixture:and_tree:1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(cenergy(&["psens-check", "--circuit", "fixture:and_tree:5"])
        .status
        .success());
}

#[test]
fn kw_run_emits_json() {
    let dir = tempfile::tempdir().unwrap();
    let nl = write(dir.path(), "and2.nl", AND2);
    let o = cenergy(&["kw-run", "--circuit", &nl, "--a", "11", "--b", "01"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], 0);
    assert!(v["alice_bits"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());
    let o = cenergy(&["kw-run", "--circuit", &nl, "--a", "10", "--b", "01"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn formula_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.nl",
        "INPUT x0\ng1 = NOT g0\nINPUT x1\ng3 = OR g1 g2\nOUTPUT g3\n",
    );
    let o = cenergy(&["fml-decompose", "--formula", &f]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.contains("T=3") && text.contains("equivalent=true"),
        "{text}"
    );
    let o = cenergy(&["fml-stats", "--formula", &f]);
    assert!(stdout(&o).contains("leaves=2 depth=2 negs=1"));
    let o = cenergy(&[
        "fml-nonskew",
        "--formula",
        &f,
        "--samples",
        "64",
        "--seed",
        "5",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["t"], 0);
    assert_eq!(v["exact_mean"], 1.25);
}

#[test]
fn trees_compile() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.dt", "(x0 (x1 0 1) (x2 1 0))\n");
    let o = cenergy(&["dt2circuit", "--tree", &t]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("# depth=2 EC=4 bound=8"));
    let o = cenergy(&["fanin2", "--tree", &t]);
    assert!(stdout(&o).contains("FANIN 2\n"));
    let o = cenergy(&["extract-dt", "--circuit", "fixture:parity_dnf:3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dt=3"));
}

#[test]
fn verify_all_smoke_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let o = cenergy(&[
        "verify-all",
        "--level",
        "smoke",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["level"], "smoke");
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 13);
    for c in criteria {
        for k in c["checks"].as_array().unwrap() {
            assert_eq!(k["violations"], 0);
            assert!(k["claim"].as_str().is_some_and(|s| !s.is_empty()));
        }
    }
    assert!(cenergy(&["verify-all", "--level", "medium"]).status.code() == Some(2));
}
