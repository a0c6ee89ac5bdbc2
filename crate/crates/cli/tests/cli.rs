use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_psc-stab"));
    c.env("PSC_STAB_COLOR", "never");
    c
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares stdout with a stored golden file; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, o: &Output) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &o.stdout).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&expected), "golden {name}");
}

#[test]
fn golden_outputs() {
    let cases: &[(&str, Vec<String>)] = &[
        ("s2xs2_flip.invariants.json", vec!["invariants".into(), "--in".into(), data("s2xs2_flip.json")]),
        ("s2xs2_neg.invariants.json", vec!["invariants".into(), "--in".into(), data("s2xs2_neg.json")]),
        ("cp2_conj.invariants.json", vec!["invariants".into(), "--in".into(), data("cp2_conj.json")]),
        ("cp2_identity.invariants.json", vec!["invariants".into(), "--in".into(), data("cp2_identity.json")]),
        ("big_entries.invariants.json", vec!["invariants".into(), "--in".into(), data("big_entries.json")]),
        ("cp2_conj_n3.check-stab.json", vec!["check-stab".into(), "--in".into(), data("cp2_conj_n3.json")]),
        ("batch.check-stab.json", vec!["check-stab".into(), "--batch".into(), data("batch.json")]),
        ("s2xs2_flip.check-stab.txt", vec!["check-stab".into(), "--n".into(), "1".into(), "--format".into(), "text".into(), "--in".into(), data("s2xs2_flip.json")]),
        ("catalog_list.json", vec!["catalog".into(), "list".into()]),
        ("catalog_show_s2xs2.json", vec!["catalog".into(), "show".into(), "S2xS2".into()]),
        ("hypersurface_4.json", vec!["hypersurface".into(), "4".into()]),
        ("hypersurface_5.json", vec!["hypersurface".into(), "5".into()]),
        ("selftest.json", vec!["selftest".into()]),
    ];
    for (name, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        check_golden(name, &run(&args));
    }
}

#[test]
fn generator_phi_vectors() {
    for (file, phi) in [("s2xs2_flip.json", [0, 1, 0]), ("s2xs2_neg.json", [0, 0, 1]), ("cp2_conj.json", [1, 1, 1]), ("cp2_identity.json", [0, 0, 0])] {
        let o = run(&["invariants", "--in", &data(file)]);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&o)["invariants"]["phi"], serde_json::json!(phi), "{file}");
    }
}

#[test]
fn check_stab_exit_codes() {
    let cases = [
        ("s2xs2_flip.json", "2", 0, Some(1)),
        ("s2xs2_flip.json", "1", 3, None),
        ("cp2_conj.json", "3", 3, None),
        ("cp2_conj.json", "2", 3, None),
        ("s2xs2_identity.json", "1", 0, Some(3)),
        ("cp2_identity.json", "1", 0, Some(4)),
    ];
    for (file, n, exit, case) in cases {
        let o = run(&["check-stab", "--n", n, "--in", &data(file)]);
        assert_eq!(code(&o), exit, "{file} n = {n}");
        let v = json(&o);
        assert_eq!(v["stabilization"]["matched_case"], serde_json::json!(case), "{file} n = {n}");
        let names: Vec<&str> =
            v["stabilization"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
        assert_eq!(names, ["spin", "n ≥ 2", "w2w3 vanishes", "unit component"]);
    }
    // n from the input file.
    assert_eq!(code(&run(&["check-stab", "--in", &data("cp2_conj_n3.json")])), 3);
}

#[test]
fn invalid_inputs_exit_two_with_error_object() {
    let flip = std::fs::read_to_string(data("s2xs2_flip.json")).unwrap();
    let cases: Vec<(Vec<&str>, String, &str)> = vec![
        (vec!["check-stab", "--n", "0"], flip.clone(), "invalid_n"),
        (vec!["check-stab"], flip.clone(), "invalid_input"),
        (vec!["invariants"], "{not json".into(), "invalid_input"),
        (vec!["invariants"], r#"{"form":{"matrix":[[0,1],[1,0]]},"isometry":[[1,0],[0,1]],"extra":1}"#.into(), "invalid_input"),
        (vec!["invariants"], r#"{"form":{"matrix":[[0,1],[1,0]]},"isometry":[[1,0],[0,1]],"spin":false}"#.into(), "spin_parity_mismatch"),
        (vec!["invariants"], r#"{"form":{"matrix":[[1,2],[2,4]]},"isometry":[[1,0],[0,1]]}"#.into(), "singular"),
        (vec!["invariants"], r#"{"form":{"matrix":[[1,2],[0,4]]},"isometry":[[1,0],[0,1]]}"#.into(), "asymmetric"),
        (vec!["invariants"], r#"{"form":{"matrix":[]},"isometry":[]}"#.into(), "empty_form"),
        (vec!["invariants"], r#"{"form":{"matrix":[[1]]},"isometry":[[1,0]]}"#.into(), "dimension_mismatch"),
        (vec!["invariants"], r#"{"form":{"matrix":[[2,0],[0,2]]},"isometry":[[1,1],[1,-1]]}"#.into(), "not_an_isometry"),
        (vec!["invariants"], r#"{"form":{"matrix":[[1]]},"isometry":[[1.5]]}"#.into(), "invalid_input"),
    ];
    for (args, stdin, expected) in cases {
        let o = run_stdin(&args, &stdin);
        assert_eq!(code(&o), 2, "{args:?} {stdin}");
        let v = json(&o);
        assert_eq!(v["error"], expected, "{stdin}");
        assert!(v["detail"].is_string());
    }
    for args in [vec!["hypersurface", "0"], vec!["catalog", "show", "T4"]] {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(json(&o)["error"].is_string());
    }
}

#[test]
fn spin_override() {
    let input = r#"{"form":{"matrix":[[0,1],[1,0]]},"isometry":[[1,0],[0,1]],"spin":false,"override_spin":true}"#;
    let o = run_stdin(&["check-stab", "--n", "1"], input);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["invariants"]["spin"], false);
    assert_eq!(v["stabilization"]["matched_case"], 4);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    // An explicit flag that agrees with the parity needs no override.
    let agree = r#"{"form":{"matrix":[[1]]},"isometry":[[1]],"spin":false}"#;
    assert_eq!(code(&run_stdin(&["invariants"], agree)), 0);
}

#[test]
fn report_round_trip() {
    for file in ["s2xs2_flip.json", "cp2_conj.json", "big_entries.json", "k3_negid.json", "cp2_conj_n3.json"] {
        let args = ["check-stab", "--n", "2", "--in", &data(file)];
        let first = run(&args);
        let echoed = serde_json::to_string(&json(&first)["input"]).unwrap();
        let second = run_stdin(&["check-stab"], &echoed);
        assert_eq!(first.stdout, second.stdout, "{file}");
        assert_eq!(code(&first), code(&second));
    }
}

#[test]
fn large_integers_are_strings() {
    let v = json(&run(&["invariants", "--in", &data("big_entries.json")]));
    assert_eq!(v["input"]["form"]["matrix"][0][0], "1152921504606846976");
    assert_eq!(v["invariants"]["unimodular"], false);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn batch_preserves_order_and_reports_worst_exit() {
    let o = run(&["check-stab", "--batch", &data("batch.json")]);
    assert_eq!(code(&o), 2);
    let v = json(&o);
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 4);
    assert_eq!(items[0]["stabilization"]["verdict"], "guaranteed");
    assert_eq!(items[1]["stabilization"]["verdict"], "inconclusive");
    assert_eq!(items[2]["stabilization"]["matched_case"], 4);
    assert_eq!(items[3]["error"], "not_an_isometry");
    // Same reports as one-at-a-time runs.
    let single = run(&["check-stab", "--in", &data("cp2_conj_n3.json")]);
    assert_eq!(items[1]["invariants"], json(&single)["invariants"]);
}

#[test]
fn quiet_and_color() {
    let o = run(&["--quiet", "check-stab", "--n", "1", "--in", &data("s2xs2_flip.json")]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());

    let args = ["check-stab", "--n", "1", "--format", "text", "--in", &data("s2xs2_flip.json")];
    let plain = bin().args(args).env("PSC_STAB_COLOR", "never").output().unwrap();
    assert!(!plain.stdout.contains(&0x1b));
    let colored = bin().args(args).env("PSC_STAB_COLOR", "always").output().unwrap();
    assert!(colored.stdout.contains(&0x1b));
    // Not a terminal, so auto means plain.
    let auto = bin().args(args).env("PSC_STAB_COLOR", "auto").output().unwrap();
    assert_eq!(auto.stdout, plain.stdout);
}

#[test]
fn hypersurface_reports() {
    let v = json(&run(&["hypersurface", "1"]));
    assert_eq!((v["invariants"]["euler"].as_i64(), v["invariants"]["signature"].as_i64()), (Some(3), Some(1)));
    assert_eq!(v["invariants"]["b2_plus"], 1);
    let k3 = run(&["hypersurface", "4"]);
    assert_eq!(code(&k3), 3, "spin with nonzero signature has no stable psc metric");
    let v = json(&k3);
    assert_eq!((v["invariants"]["euler"].as_i64(), v["invariants"]["signature"].as_i64()), (Some(24), Some(-16)));
    assert_eq!(v["invariants"]["spin"], true);
    let q = json(&run(&["hypersurface", "5"]));
    assert_eq!((q["invariants"]["spin"].as_bool(), q["invariants"]["b2_plus"].as_i64()), (Some(false), Some(9)));
    assert_eq!(q["stable_psc"]["stably_exists"], true);
    assert_eq!(q["kahler_example"]["taubes_obstruction_applies"], true);
    // Big degrees switch to string encoding past 2^53.
    let big = json(&run(&["hypersurface", "1000000"]));
    assert!(big["invariants"]["euler"].is_string());
}

#[test]
fn catalog_commands() {
    let names = json(&run(&["catalog", "list"]));
    assert_eq!(names.as_array().unwrap().len(), 7);
    let k3 = json(&run(&["catalog", "show", "K3"]));
    assert_eq!((k3["signature"]["p"].as_u64(), k3["signature"]["q"].as_u64()), (Some(3), Some(19)));
    assert_eq!(k3["spin"], true);
    let t = json(&run(&["catalog", "show", "nCP2_mCP2bar(1,2)"]));
    assert_eq!(t["form"]["matrix"], serde_json::json!([[1, 0, 0], [0, -1, 0], [0, 0, -1]]));
}

#[test]
fn extended_selftest_small() {
    let o = run(&["selftest", "--extended", "--count", "20", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert!(v["extended"]["runs"].as_array().unwrap().iter().all(|r| r["failures"] == 0));
    // --seed is meaningless without --extended.
    assert_eq!(code(&run(&["selftest", "--seed", "3"])), 2);
}
