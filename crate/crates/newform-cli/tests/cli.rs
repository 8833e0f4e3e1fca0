use std::process::{Command, Output};

fn newform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newform")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_of_discrete_series() {
    let o = newform(&["invariants", "R: D^3 t=0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("c = 3"), "{out}");
    assert!(out.contains("(3,0)"), "{out}");
    assert!(out.contains("i^-3 = i"), "{out}");
}

#[test]
fn invariants_json() {
    let o = newform(&["invariants", "C: chi^2 t=0 ; chi^-1 t=0.5", "--json", "--max-degree", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["conductor"], 3);
    assert_eq!(v["newform_ktype"], serde_json::json!([2, -1]));
    assert_eq!(v["oldform_dims"].as_array().unwrap().len(), 6);
}

#[test]
fn zonal_real_plane() {
    let o = newform(&["zonal", "R", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x2^2 - x1^2");
    let o = newform(&["zonal", "R", "2", "2", "--eval", "0,1"]);
    assert!(stdout(&o).contains("= 1"), "{}", stdout(&o));
}

#[test]
fn lfactor_and_twist() {
    let o = newform(&["lfactor", "R: chi^0 t=0", "--s", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // zeta_R(1) = pi^{-1/2} Gamma(1/2) = 1
    assert!((v["value"][0].as_f64().unwrap() - 1.0).abs() < 1e-13);
    let o = newform(&["lfactor", "R: D^3 t=0", "--s", "2", "--twist", "R: chi^0 t=0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn whittaker_methods_agree() {
    let d = "R: chi^1 t=0.2 ; chi^0 t=0";
    let value = |m: &str| {
        let o = newform(&["whittaker", d, "--at", "0.8", "--method", m, "--json"]);
        assert_eq!(o.status.code(), Some(0), "{m}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["value"][0].as_f64().unwrap()
    };
    let c = value("closed");
    assert!((value("jacquet") - c).abs() < 1e-8 * c.abs());
    assert!((value("propagate") - c).abs() < 1e-8 * c.abs());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(newform(&["invariants", "R: chi^x t=0"]).status.code(), Some(2));
    assert_eq!(newform(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(newform(&["zonal", "Q", "2", "2"]).status.code(), Some(2));
    assert_eq!(newform(&["verify", "--profile", "medium"]).status.code(), Some(2));
    assert_eq!(newform(&["whittaker", "R: chi^0 t=0", "--at", "1"]).status.code(), Some(2));
}

fn write_config(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("newform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const SMALL: &str = r#"{
  "checks": [
    { "identity": "tate", "descriptor": "R: chi^1 t=0", "partner": "R: chi^0 t=0",
      "s": [[1.5, 0.0], [2.0, 1.0]], "tolerance": { "value": 1e-8, "kind": "relative" } },
    { "identity": "reproducing", "descriptor": "R 3 1",
      "tolerance": { "value": 0.0, "kind": "absolute" } }
  ]
}"#;

#[test]
fn verify_config_is_deterministic() {
    let cfg = write_config("small.json", SMALL);
    let cfg = cfg.to_str().unwrap();
    let run = |seed: &str| newform(&["verify", "--config", cfg, "--seed", seed, "--json"]);
    let a = run("5");
    let b = run("5");
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["total"], 2);
    assert!(v["reports"][0]["seconds"].is_null());
    assert_ne!(run("6").stdout, a.stdout, "the Monte-Carlo check depends on the seed");
}

#[test]
fn verify_failure_exits_one() {
    // s = -5 is left of the convergence region, so the check reports an error
    let body = SMALL.replace("[[1.5, 0.0], [2.0, 1.0]]", "[[-5.0, 0.0]]");
    let cfg = write_config("outside.json", &body);
    let o = newform(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("ERROR"));
    assert!(stdout(&o).contains("1/2 checks passed"));
}

#[test]
fn verify_fast_profile_passes() {
    let path = std::env::temp_dir().join(format!("newform-fast-{}.json", std::process::id()));
    let o = newform(&["verify", "--profile", "fast", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], v["total"]);
    assert_eq!(v["profile"], "fast");
}
