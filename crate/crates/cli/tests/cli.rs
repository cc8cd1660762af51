use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn opident(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opident"))
        .args(args)
        .env_remove("OPIDENT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("opident-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn catalan_hankel_is_one() {
    let path = fixture("cheb.json", r#"{"type":"chebyshev"}"#);
    for n in ["5", "0"] {
        let o = opident(&["hankel", "--functional", path.to_str().unwrap(), "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), "1");
    }
}

#[test]
fn modified_hankel_value() {
    let path = fixture("atoms3.json", r#"{"type":"atoms","atoms":[["0","1"],["1","2"],["3","1"]]}"#);
    let o = opident(&["hankel", "--functional", path.to_str().unwrap(), "--n", "2", "--x", "2", "--y", "-1/2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    // rho_s = sum_a w_a u_a^s (u_a - 2) / (u_a + 1/2), rho_0 rho_2 - rho_1^2
    assert_eq!(json(&o)["value"], "-136/21");
}

#[test]
fn pole_at_atom_is_a_mismatch_exit() {
    let path = fixture("atoms-pole.json", r#"{"type":"atoms","atoms":[["0","1"],["1","2"]]}"#);
    let o = opident(&["hankel", "--functional", path.to_str().unwrap(), "--n", "1", "--y", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole at atom"));
}

#[test]
fn usage_errors_exit_two() {
    let bad = fixture("bad.json", r#"{"type":"atoms""#);
    let o = opident(&["verify", "theorem1", "--functional", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse"));
    assert_eq!(opident(&["hankel"]).status.code(), Some(2));
    assert_eq!(opident(&["verify", "theorem2"]).status.code(), Some(2));
    assert_eq!(opident(&["verify", "theorem1", "--truncation", "0"]).status.code(), Some(2));
    let cheb = fixture("cheb2.json", r#"{"type":"chebyshev"}"#);
    let o = opident(&["hankel", "--functional", cheb.to_str().unwrap(), "--y", "3"]);
    assert_eq!(o.status.code(), Some(2), "exact poles need atoms");
}

#[test]
fn trivial_theorem_sweep() {
    let o = opident(&["verify", "theorem1", "--max-n", "0", "--max-k", "1", "--max-m", "1", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all checks passed"));
}

#[test]
fn json_is_deterministic() {
    let args = ["verify", "theorem1", "--max-n", "2", "--max-k", "2", "--max-m", "1", "--trials", "3", "--seed", "42", "--json"];
    let a = opident(&args);
    let b = opident(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 42);
    assert!(v["counterexample"].is_null());
    assert_eq!(v["summary"][0]["instances"], 3 * 3 * 3 * 2);
}

#[test]
fn seed_from_environment() {
    let with_flag = opident(&["verify", "prop13", "--max-n", "2", "--trials", "1", "--seed", "7", "--json"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_opident"))
        .args(["verify", "prop13", "--max-n", "2", "--trials", "1", "--json"])
        .env("OPIDENT_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(with_flag.status.code(), Some(0));
    assert_eq!(with_flag.stdout, with_env.stdout);
}

#[test]
fn series_mode_sweep() {
    let o = opident(&["verify", "theorem1", "--series", "--max-n", "2", "--trials", "1", "--truncation", "10", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["summary"][0]["identity"], "identity-series");
}

#[test]
fn lemma_sweep_passes() {
    let o = opident(&["verify", "lemmas", "--max-n", "3", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn unmodified_uvarov_is_orthogonal() {
    let o = opident(&["uvarov", "--max-k", "0", "--max-n", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ys"].as_array().unwrap().len(), 0);
    let gram = v["gram"].as_array().unwrap();
    for (i, row) in gram.iter().enumerate() {
        for (j, e) in row.as_array().unwrap().iter().enumerate() {
            if i != j {
                assert_eq!(e, "0");
            }
        }
    }
    for p in v["polynomials"].as_array().unwrap() {
        assert!(p["degree_ok"].is_boolean());
    }
}

#[test]
fn one_pole_uvarov_is_orthogonal() {
    let o = opident(&["uvarov", "--max-n", "4", "--y", "1/2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["orthogonal"], true);
}

#[test]
fn chebyshev_table_schema() {
    let o = opident(&["chebyshev", "--max-n", "2", "--closed-max-n", "2", "--json"]);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    for r in rows {
        for key in ["id", "n", "lhs", "rhs", "equal"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
    }
    let central = rows.iter().find(|r| r["id"] == "central-binomial-hankel" && r["n"] == 2).unwrap();
    assert_eq!(central["lhs"], "1/4");
    // Everything except the printed mixed-binomial form and the conjectures holds.
    let odd: Vec<&str> = rows
        .iter()
        .filter(|r| r["equal"] == false)
        .map(|r| r["id"].as_str().unwrap())
        .filter(|id| !id.starts_with("conjecture-"))
        .collect();
    assert!(odd.iter().all(|id| *id == "mixed-binomial-hankel-y"), "{odd:?}");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let o = opident(&["selftest", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["passed"], true);
}
