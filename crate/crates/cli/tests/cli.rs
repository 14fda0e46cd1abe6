use std::path::{Path, PathBuf};
use std::process::Command;

use ainf_cli::run;
use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).to_string_lossy().into_owned()
}

fn ainf(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ainf").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn sod_on_toy_passes_with_tables() {
    let (code, out, _) = ainf(&["sod", &corpus("toy.json"), "--format", "json"]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["command"], "sod");
    assert_eq!(r["verdict"], "PASS");
    for key in ["hom_P_S", "hom_S_S"] {
        let t = r["tables"][key].as_array().unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(|row| row.as_array().unwrap().len() == 4));
    }
    // zero below the diagonal, one-dimensional on it
    let ps = &r["tables"]["hom_P_S"];
    for j in 0..4 {
        for i in 0..j {
            assert_eq!(ps[j][i], 0);
            assert_eq!(r["tables"]["hom_S_S"][j][i], 0);
        }
        assert_eq!(ps[j][j], 1);
    }
    assert_eq!(r["tables"]["hom_dims"], json("[[3,2,1,1],[2,2,1,0],[2,2,2,1],[1,1,1,1]]"));
    assert!(r["witnesses"].as_array().unwrap().is_empty());
    assert!(r["timings"].is_object());
}

#[test]
fn stasheff_on_nonassoc_fails_with_witness() {
    let (code, out, _) = ainf(&["stasheff", &corpus("nonassoc.json"), "--format", "json"]);
    assert_eq!(code, 1);
    let r = json(&out);
    assert_eq!(r["verdict"], "FAIL");
    let w = &r["witnesses"][0];
    assert_eq!(w["n"], 3);
    assert_eq!(w["tuple"], json(r#"["x","x","x"]"#));
    let (code, text, _) = ainf(&["stasheff", &corpus("nonassoc.json")]);
    assert_eq!(code, 1);
    assert!(text.contains("(x, x, x)"), "{text}");
}

#[test]
fn gamma_round_trip_validates() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "gamma.json");
    let (code, _, err) = ainf(&["gamma", "build", &corpus("toy.json"), "-o", &g]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = ainf(&["validate", &g, "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["tables"]["dim"], 23);
    // writing the parsed file again gives the same bytes
    let text = std::fs::read_to_string(&g).unwrap();
    let spec = ainf_core::format::parse_spec(&text).unwrap().load().unwrap();
    let again = ainf_core::format::to_json(&ainf_core::format::category_to_spec(&spec.category, None, None));
    assert_eq!(again, text);
}

#[test]
fn witnesses_are_sorted() {
    let (_, out, _) = ainf(&["stasheff", &corpus("nonassoc.json"), "--format", "json", "--jobs", "3"]);
    let r = json(&out);
    let keys: Vec<(u64, Vec<String>)> = r["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| (w["n"].as_u64().unwrap(), w["tuple"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 4);
}

#[test]
fn job_count_does_not_change_reports() {
    let strip = |s: String| {
        let mut v = json(&s);
        v["timings"] = Value::Null;
        v
    };
    let (_, a, _) = ainf(&["sod", &corpus("toy.json"), "--format", "json", "--jobs", "1"]);
    let (_, b, _) = ainf(&["sod", &corpus("toy.json"), "--format", "json", "--jobs", "4"]);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn filtration_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let deg = path(dir.path(), "deg.json");
    assert_eq!(ainf(&["filtration", "degree", &corpus("toy.json"), "-o", &deg]).0, 0);
    let (code, out, _) = ainf(&["filtration", "check", &deg, "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["tables"]["filtration_dims"], json("[3,1,0]"));
    assert_eq!(ainf(&["sod", &deg]).0, 0);

    let app = path(dir.path(), "app.json");
    let (code, out, _) = ainf(&["filtration", "appendix", &corpus("toy.json"), "--kappa", "1", "-o", &app, "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["tables"]["filtration_dims"], json("[3,2,1,1,0]"));
    assert_eq!(ainf(&["filtration", "check", &app]).0, 0);
}

#[test]
fn deform_reports_cocycles_and_non_cocycles() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = path(dir.path(), "def.json");
    let (code, _, _) = ainf(&["deform", &corpus("dual_numbers.json"), "--cochain", &corpus("dual_numbers_eta.json"), "-o", &out_path]);
    assert_eq!(code, 0);
    assert_eq!(ainf(&["validate", &out_path]).0, 0);

    // η(1, ε) = ε is not normalized
    let bad = path(dir.path(), "bad.json");
    std::fs::write(
        &bad,
        r#"{ "degree": 2, "tables": [ { "arity": 2, "entries": [ { "inputs": ["1", "eps"], "output": { "eps'": "1" } } ] } ] }"#,
    )
    .unwrap();
    let (code, out, _) = ainf(&["deform", &corpus("dual_numbers.json"), "--cochain", &bad, "-o", &out_path, "--format", "json"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["witnesses"][0]["check"], "normalized");

    // a normalized non-cocycle on upper-triangular 2×2 matrices: η(e11, e11) = e12'
    let nc = path(dir.path(), "nc.json");
    std::fs::write(
        &nc,
        r#"{ "degree": 2, "tables": [ { "arity": 2, "entries": [ { "inputs": ["e11", "e11"], "output": { "e12'": "1" } } ] } ] }"#,
    )
    .unwrap();
    let (code, out, _) = ainf(&["deform", &corpus("upper_triangular_2.json"), "--cochain", &nc, "-o", &out_path, "--format", "json"]);
    assert_eq!(code, 1);
    let r = json(&out);
    let failing: Vec<&str> = r["tables"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failing.contains(&"cocycle"), "{failing:?}");
    assert!(failing.iter().any(|n| n.starts_with("deformed stasheff")), "{failing:?}");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(ainf(&[]).0, 2);
    assert_eq!(ainf(&["frobnicate"]).0, 2);
    assert_eq!(ainf(&["stasheff", "/nonexistent.json"]).0, 2);
    assert_eq!(ainf(&["sod", &corpus("toy.json"), "--format", "yaml"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let p = path(dir.path(), "z.json");
    let text = std::fs::read_to_string(corpus("nonassoc.json")).unwrap().replace(r#"["x", "y"], "output": { "x""#, r#"["x", "y"], "output": { "z""#);
    std::fs::write(&p, text).unwrap();
    let (code, _, err) = ainf(&["validate", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("\"z\""), "{err}");
    // no filtration and no kappa
    assert_eq!(ainf(&["sod", &corpus("k.json")]).0, 2);
    assert_eq!(ainf(&["filtration", "check", &corpus("k.json")]).0, 2);
    assert_eq!(ainf(&["--help"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ainf");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["sod", &corpus("toy.json"), "--format", "json"]), 0);
    assert_eq!(status(&["stasheff", &corpus("nonassoc.json")]), 1);
    assert_eq!(status(&["validate"]), 2);
}
