use std::path::{Path, PathBuf};

use parhopf::runner::{run_dir, run_file, run_spec, Command, Exit, RunOptions};
use parhopf::spec::{ExampleSpec, Overrides};

fn gallery() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../gallery")
}

fn spec(name: &str) -> ExampleSpec {
    ExampleSpec::load(&gallery().join(format!("{name}.toml"))).unwrap()
}

fn text(name: &str) -> String {
    std::fs::read_to_string(gallery().join(format!("{name}.toml"))).unwrap()
}

#[test]
fn every_gallery_spec_passes_all() {
    let runs = run_dir(&gallery(), Command::All, &RunOptions::default()).unwrap();
    assert!(runs.len() >= 10);
    for (path, o) in runs {
        assert_eq!(o.exit, Exit::Ok, "{}: {:#?}", path.display(), o.report.failures());
        assert_eq!(o.report.exit_code, 0);
        assert!(o.report.summary.total > 0);
        assert_eq!(o.report.summary.failed, 0);
    }
}

#[test]
fn commands_select_sections() {
    let s = spec("induced-coaction-z4");
    let titles = |c| run_spec(&s, c, None).report.sections.into_iter().map(|s| s.title).collect::<Vec<_>>();
    assert_eq!(titles(Command::VerifyMhopf).len(), 3);
    assert!(titles(Command::Morita).iter().any(|t| t == "Morita context"));
    assert!(titles(Command::Galois).iter().any(|t| t == "Galois map"));
    assert!(titles(Command::All).len() > titles(Command::VerifyCoaction).len());
    for c in Command::ALL {
        assert_eq!(Command::parse(c.name()), Some(c));
    }
}

#[test]
fn galois_verdicts() {
    let verdict = |name: &str| {
        let o = run_spec(&spec(name), Command::Galois, None);
        assert_eq!(o.exit, Exit::Ok);
        o.report.sections.iter().find_map(|s| s.values.get("verdict").cloned()).unwrap()
    };
    assert_eq!(verdict("induced-coaction-z4"), "bijective");
    assert_eq!(verdict("global-self-coaction-z4"), "bijective");
    assert_eq!(verdict("projection-coaction"), "neither");
}

#[test]
fn non_subgroup_projection_is_refused() {
    let s = ExampleSpec::parse(&text("projection-coaction").replace("subset = [0, 2]", "subset = [0, 1]")).unwrap();
    let o = run_spec(&s, Command::Morita, None);
    assert_eq!(o.exit, Exit::Refused);
    assert_eq!(o.report.exit_code, 3);
    let refused = o.report.sections.iter().find_map(|s| s.values.get("refused")).unwrap();
    assert_eq!(refused, "m⊗m = (m⊗1)Δ(m)");
}

fn explicit(e: &str) -> ExampleSpec {
    ExampleSpec::parse(&format!(
        "name = \"explicit\"\n[group]\nkind = \"cyclic\"\norder = 2\n[hopf]\nkind = \"function-algebra\"\n\
         [coaction]\nrecipe = \"explicit\"\nalgebra = \"scalars\"\nrho = [[\"1\", \"0\"]]\ne = {e}\n"
    ))
    .unwrap()
}

#[test]
fn explicit_tables_pass_or_fail() {
    assert_eq!(run_spec(&explicit(r#"["1", "0"]"#), Command::VerifyCoaction, None).exit, Exit::Ok);
    let o = run_spec(&explicit(r#"["1", "1"]"#), Command::VerifyCoaction, None);
    assert_eq!(o.exit, Exit::Failed);
    assert_eq!(o.report.exit_code, 1);
    assert!(!o.report.failures().is_empty());
    let missing = text("induced-coaction-z4").replace("recipe = \"induced\"", "recipe = \"explicit\"");
    assert!(ExampleSpec::parse(&missing).is_err());
}

#[test]
fn integers_are_sample_verified() {
    let s = spec("integers-window");
    let o = run_spec(&s.with_overrides(&Overrides { field: None, window: Some(3) }).unwrap(), Command::VerifyMhopf, None);
    assert_eq!(o.exit, Exit::Ok);
    assert_eq!(o.report.summary.passed, 0);
    assert_eq!(o.report.summary.sample_verified, o.report.summary.total);
    assert_eq!(o.report.sections[0].values["window"], "3");
}

#[test]
fn field_override_is_honoured_or_rejected() {
    let opts = |f: &str| RunOptions { overrides: Overrides { field: Some(f.into()), window: None }, jobs: Some(2) };
    let o = run_file(&gallery().join("group-algebra-s3.toml"), Command::VerifyMhopf, &opts("gf:5"));
    assert_eq!(o.exit, Exit::Ok);
    assert_eq!(o.report.field, "gf:5");
    let o = run_file(&gallery().join("lambda-action.toml"), Command::VerifyAction, &opts("gf:2"));
    assert_eq!(o.exit, Exit::Parse);
    let o = run_file(&gallery().join("lambda-action.toml"), Command::VerifyAction, &opts("gf:4"));
    assert_eq!(o.exit, Exit::Parse);
}

#[test]
fn unreadable_input_is_a_parse_exit() {
    let o = run_file(Path::new("/nonexistent.toml"), Command::All, &RunOptions::default());
    assert_eq!(o.exit, Exit::Parse);
    assert_eq!(o.report.sections[0].title, "specification");
    assert!(run_dir(Path::new("/nonexistent"), Command::All, &RunOptions::default()).is_err());
}

#[test]
fn missing_stage_input_is_a_parse_exit() {
    assert_eq!(run_spec(&spec("lambda-action"), Command::VerifyCoaction, None).exit, Exit::Parse);
    assert_eq!(run_spec(&spec("integers-window"), Command::Morita, None).exit, Exit::Parse);
}

#[test]
fn exit_severity_order() {
    assert_eq!(Exit::Failed.worst(Exit::Refused), Exit::Refused);
    assert_eq!(Exit::Refused.worst(Exit::CrossCheck), Exit::CrossCheck);
    assert_eq!(Exit::CrossCheck.worst(Exit::Parse), Exit::Parse);
    assert_eq!(Exit::Parse.worst(Exit::Ok), Exit::Parse);
    assert_eq!([Exit::Ok, Exit::Failed, Exit::Parse, Exit::Refused, Exit::CrossCheck].map(Exit::code), [0, 1, 2, 3, 4]);
}

#[test]
fn reports_round_trip_through_json() {
    let o = run_spec(&spec("trivial-coaction"), Command::All, None);
    let json = o.report.without_timing().to_json();
    let back: parhopf::report::Report = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_json(), json);
    assert_eq!(back.fingerprint, spec("trivial-coaction").fingerprint());
}
