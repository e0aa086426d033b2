use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn gallery(name: &str) -> PathBuf {
    root().join("gallery").join(name)
}

fn parhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parhopf"))
        .args(args)
        .env_remove("SPEC")
        .env_remove("OUT")
        .env_remove("WINDOW")
        .env_remove("FIELD")
        .env_remove("JOBS")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn checks(r: &Value) -> Vec<&Value> {
    r["sections"].as_array().unwrap().iter().flat_map(|s| s["checks"].as_array().unwrap()).collect()
}

fn temp_spec(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("parhopf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn induced_coaction_morita_passes() {
    let out = parhopf(&["morita", "--spec", gallery("induced-coaction-z4.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["exit_code"], 0);
    let cs = checks(&r);
    for anchor in ["morita.compatibility.first", "morita.compatibility.second"] {
        let c = cs.iter().find(|c| c["anchor"] == anchor).unwrap_or_else(|| panic!("{anchor} missing"));
        assert_eq!(c["status"], "pass");
    }
    assert!(cs.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn non_subgroup_projection_is_refused() {
    let text = std::fs::read_to_string(gallery("projection-coaction.toml")).unwrap().replace("subset = [0, 2]", "subset = [0, 1]");
    let spec = temp_spec("not-a-subgroup.toml", &text);
    let out = parhopf(&["verify-coaction", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["sections"][0]["values"]["refused"], "m⊗m = (m⊗1)Δ(m)");
    assert!(String::from_utf8_lossy(&out.stderr).contains("m⊗m = (m⊗1)Δ(m)"));
}

#[test]
fn integers_window_is_sample_verified() {
    let out = parhopf(&["verify-mhopf", "--spec", gallery("integers-window.toml").to_str().unwrap(), "--window", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let cs = checks(&r);
    assert!(!cs.is_empty());
    assert!(cs.iter().all(|c| c["status"] == "sample-verified" && c["scope"] == "window {-8..8}"));
}

#[test]
fn unreadable_specs_exit_two() {
    let missing = parhopf(&["all", "--spec", "/nonexistent/spec.toml"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad = temp_spec("bad.toml", "name = \"x\"\n[group]\nkind = \"dihedral\"\n");
    assert_eq!(parhopf(&["all", "--spec", bad.to_str().unwrap()]).status.code(), Some(2));
    let out = parhopf(&["all", "--spec", gallery("lambda-action.toml").to_str().unwrap(), "--field", "gf:2"]);
    assert_eq!(out.status.code(), Some(2), "char 2 divides |N| = 2");
    let out = parhopf(&["verify-action", "--spec", gallery("induced-coaction-z4.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "no [action] table");
}

#[test]
fn env_vars_and_out_file() {
    let out_path = std::env::temp_dir().join(format!("parhopf-cli-out-{}.json", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_parhopf"))
        .arg("verify-mhopf")
        .env("SPEC", gallery("group-algebra-s3.toml"))
        .env("OUT", &out_path)
        .env("FIELD", "gf:7")
        .env("JOBS", "2")
        .env_remove("WINDOW")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r["field"], "gf:7");
    assert_eq!(r["schema_version"], 1);
    std::fs::remove_file(out_path).ok();
}

#[test]
fn gallery_reports_are_deterministic() {
    let dir = root().join("gallery");
    let a = parhopf(&["all", "--spec", dir.to_str().unwrap(), "--no-timing", "--jobs", "4"]);
    let b = parhopf(&["all", "--spec", dir.to_str().unwrap(), "--no-timing", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let reports: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(reports.as_array().unwrap().len() >= 10);
}
