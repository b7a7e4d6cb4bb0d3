use std::path::Path;
use std::process::Command;

use phcalc_cli::cache::{CacheEntry, ENGINE_VERSION};
use phcalc_cli::{run, EXIT_DATA, EXIT_FAILURE, EXIT_INFEASIBLE, EXIT_NO_INPUT, EXIT_OK, EXIT_USAGE};
use phcalc_core::godel::Code;
use phcalc_core::{ArrowReport, Coloring, CtxTree, VerifyAudit};
use serde_json::Value;

fn phcalc(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("phcalc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = phcalc(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out.trim_end().to_string()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn documented_examples() {
    let report: ArrowReport = serde_json::from_str(&ok(&["arrow", "--m", "6", "--n", "2", "--r", "2", "--k", "3"])).unwrap();
    assert!(report.holds);
    assert_eq!(ok(&["pair", "1", "2"]), "8 = 2^3");
    assert_eq!(ok(&["--json", "pair", "1", "2"]), r#"{"kind":"pair","value":"8"}"#);
    let (code, _, err) = phcalc(&["arrow", "--m", "40", "--n", "3", "--r", "3", "--k", "5"]);
    assert_eq!(code, EXIT_INFEASIBLE);
    assert!(err.contains("infeasible"));
}

#[test]
fn distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(phcalc(&["arrow", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(phcalc(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(phcalc(&["mono", "--seq", "1,x"]).0, EXIT_USAGE);
    assert_eq!(phcalc(&["--threads", "0", "pair", "1", "2"]).0, EXIT_USAGE);
    let bad = write(dir.path(), "bad.json", r#"{"m":5"#);
    assert_eq!(phcalc(&["verify", "--file", &bad]).0, EXIT_DATA);
    let wrong = write(dir.path(), "wrong.json", r#"{"m":3,"n":2,"c":2,"colors":[0],"k":3}"#);
    assert_eq!(phcalc(&["verify", "--file", &wrong]).0, EXIT_DATA);
    let missing = dir.path().join("missing.json");
    assert_eq!(phcalc(&["verify", "--file", missing.to_str().unwrap()]).0, EXIT_NO_INPUT);
    assert_eq!(phcalc(&["decode", "seq", "10"]).0, EXIT_FAILURE);
    assert_eq!(phcalc(&["decode", "set", "0"]).0, EXIT_FAILURE);
    assert_eq!(phcalc(&["--help"]).0, EXIT_OK);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_phcalc");
    let out = Command::new(bin).args(["pair", "3", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "32 = 2^5");
    let out = Command::new(bin).args(["arrow", "--m", "40", "--n", "3", "--r", "3", "--k", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn json_outputs_parse_into_their_types() {
    let dir = tempfile::tempdir().unwrap();
    let arrow = ok(&["--json", "arrow", "--m", "5", "--n", "2", "--r", "2", "--k", "3"]);
    let report: ArrowReport = serde_json::from_str(&arrow).unwrap();
    let ce = report.counterexample.clone().unwrap();

    let mut cert = serde_json::to_value(&ce).unwrap();
    cert["k"] = 3.into();
    let cert_path = write(dir.path(), "cert.json", &cert.to_string());
    let audit: VerifyAudit = serde_json::from_str(&ok(&["--json", "verify", "--file", &cert_path])).unwrap();
    assert!(audit.counterexample);

    let tree: CtxTree =
        serde_json::from_str(&ok(&["--json", "tree", "--n", "2", "--r", "2", "--k", "3", "--max-level", "7"])).unwrap();
    assert_eq!(tree.first_empty_level(), Some(6));

    let small = ce.restrict(3).unwrap();
    let col_path = write(dir.path(), "col.json", &serde_json::to_string(&small).unwrap());
    let code: Code = serde_json::from_str(&ok(&["--json", "encode", "partition", "--file", &col_path])).unwrap();
    let back: Coloring = serde_json::from_str(&ok(&[
        "--json",
        "decode",
        "partition",
        &code.value.to_string(),
        "--m",
        "3",
        "--n",
        "2",
        "--c",
        "2",
    ]))
    .unwrap();
    assert_eq!(back, small);
    let big = write(dir.path(), "big.json", &serde_json::to_string(&ce).unwrap());
    assert_eq!(phcalc(&["encode", "partition", "--file", &big]).0, EXIT_INFEASIBLE);

    for args in [
        &["--json", "least", "--n", "2", "--r", "2", "--k", "3", "--cap", "8"][..],
        &["--json", "mono", "--seq", "3,1,2"],
        &["--json", "encode", "set", "2,0,1"],
        &["--json", "encode", "seq", "0,1,2"],
        &["--json", "decode", "set", "2250"],
        &["--json", "decode", "seq", "2250"],
        &["--json", "unpair", "8"],
        &["--json", "sentence", "--level", "1", "--fmt", "sexpr"],
        &["--json", "tree", "--n", "2", "--r", "2", "--k", "3", "--max-level", "5", "--branch"],
    ] {
        let v: Value = serde_json::from_str(&ok(args)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(v.is_object(), "{args:?}");
    }
}

#[test]
fn text_outputs() {
    assert_eq!(ok(&["least", "--n", "2", "--r", "2", "--k", "3", "--cap", "10"]), "6");
    assert_eq!(ok(&["least", "--n", "2", "--r", "2", "--k", "3", "--cap", "4"]), "none up to 4");
    assert_eq!(ok(&["encode", "set", "2,0,1"]), "2250 = 2^1·3^2·5^3");
    assert_eq!(ok(&["encode", "set"]), "1 = 1");
    assert_eq!(ok(&["decode", "seq", "2250"]), "<0,1,2>");
    assert_eq!(ok(&["unpair", "8"]), "1 2");
    assert_eq!(ok(&["mono", "--seq", "-1/2, 3, 2, 5"]), "-1/2,3,5");
    let s = ok(&["sentence", "--level", "0"]);
    assert!(s.starts_with("Ab.(Seq(b) -> Ae.(Seq(e) -> Ay.(Seq(y) -> Ea.(Seq(a) /\\"), "{s}");
    assert!(ok(&["sentence", "--fmt", "latex"]).contains("\\forall b"));
}

#[test]
fn branch_to_level_five() {
    let v: Value =
        serde_json::from_str(&ok(&["tree", "--n", "2", "--r", "2", "--k", "3", "--max-level", "5", "--branch"])).unwrap();
    assert_eq!(v["branch"].as_array().unwrap().len(), 6);
    let v: Value =
        serde_json::from_str(&ok(&["tree", "--n", "2", "--r", "2", "--k", "3", "--max-level", "6", "--branch"])).unwrap();
    assert!(v["branch"].is_null());
    assert_eq!(v["firstEmptyLevel"], 6);
}

#[test]
fn cache_is_append_only_and_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let cache = path.to_str().unwrap();
    let args = ["--cache", cache, "arrow", "--m", "5", "--n", "2", "--r", "2", "--k", "3"];
    let fresh = ok(&args[2..]);
    let first = ok(&args);
    let second = ok(&args);
    assert_eq!(fresh, first);
    assert_eq!(first, second);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1);
    let entry: CacheEntry = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(entry.engine, ENGINE_VERSION);
    assert_eq!(entry.key, r#"{"k":3,"m":5,"n":2,"r":2,"starred":false}"#);

    // least reuses and extends the same store
    ok(&["--cache", cache, "least", "--n", "2", "--r", "2", "--k", "3", "--cap", "8"]);
    let lines = std::fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(lines, 7);
    ok(&["--cache", cache, "least", "--n", "2", "--r", "2", "--k", "3", "--cap", "8"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 7);
}

#[test]
fn cached_result_is_served_from_the_store() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let cache = path.to_str().unwrap();
    ok(&["--cache", cache, "arrow", "--m", "6", "--n", "2", "--r", "2", "--k", "3"]);
    // tamper with the count; a hit must return the stored value verbatim
    let text = std::fs::read_to_string(&path).unwrap().replace("\"coloringsExamined\":325", "\"coloringsExamined\":1");
    std::fs::write(&path, &text).unwrap();
    let out = ok(&["--cache", cache, "arrow", "--m", "6", "--n", "2", "--r", "2", "--k", "3"]);
    assert!(out.contains("\"coloringsExamined\":1"), "{out}");

    // other engine versions are ignored
    std::fs::write(&path, text.replace(ENGINE_VERSION, "phcalc/0.0.0")).unwrap();
    let out = ok(&["--cache", cache, "arrow", "--m", "6", "--n", "2", "--r", "2", "--k", "3"]);
    assert!(out.contains("\"coloringsExamined\":325"), "{out}");
}

#[test]
fn corrupt_or_conflicting_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let cache = path.to_str().unwrap();
    std::fs::write(&path, "not json\n").unwrap();
    assert_eq!(phcalc(&["--cache", cache, "arrow", "--m", "3", "--n", "2", "--r", "2", "--k", "3"]).0, EXIT_DATA);

    std::fs::remove_file(&path).unwrap();
    ok(&["--cache", cache, "arrow", "--m", "3", "--n", "2", "--r", "2", "--k", "3"]);
    let line = std::fs::read_to_string(&path).unwrap();
    let flipped = line.replace("\"holds\":false", "\"holds\":true");
    assert_ne!(line, flipped);
    std::fs::write(&path, format!("{line}{flipped}")).unwrap();
    assert_eq!(phcalc(&["--cache", cache, "arrow", "--m", "3", "--n", "2", "--r", "2", "--k", "3"]).0, EXIT_DATA);
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_phcalc"))
        .args(["arrow", "--m", "4", "--n", "2", "--r", "2", "--k", "3"])
        .env("PHCALC_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
}

#[test]
fn thread_count_does_not_change_output() {
    for q in [["6", "2", "2", "3"], ["5", "2", "2", "3"], ["7", "2", "3", "3"]] {
        let base = ["arrow", "--m", q[0], "--n", q[1], "--r", q[2], "--k", q[3]];
        let one = ok(&[&["--threads", "1"][..], &base].concat());
        let four = ok(&[&["--threads", "4"][..], &base].concat());
        assert_eq!(one, four);
    }
}
