use std::path::PathBuf;
use std::process::{Command, Output};

fn graph(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("graphs").join(format!("{name}.graph"))
}

fn leavitt(graph_name: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .arg("--graph")
        .arg(graph(graph_name))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn normalize_examples() {
    let cases = [("r1", "1*e^*.e", "1*v"), ("r1", "1*v + -1*v", "0"), ("r2", "1*y2.y2^*", "1*v + (-1)*y1.y1^*")];
    for (g, input, expected) in cases {
        let o = leavitt(g, &["normalize", input]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(stdout(&o).trim(), expected);
    }
}

#[test]
fn printed_forms_reparse() {
    let o = leavitt("r2", &["normalize", "2*y1.y2.y1^* + (-1/3)*y2^*.y1^* + y2.y2^*"]);
    let printed = stdout(&o).trim().to_string();
    let again = leavitt("r2", &["normalize", &printed]);
    assert_eq!(stdout(&again).trim(), printed);
}

#[test]
fn witness_examples() {
    let o = leavitt("a2", &["witness", "1*e"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("y = 1*e^*"));
    assert!(stdout(&o).contains("VERIFIED"));
    for field in ["q", "fp:2"] {
        let o = leavitt("r2", &["--field", field, "witness", "1*y1 + 1*y2"]);
        assert_eq!(code(&o), 0, "{field}: {}", stderr(&o));
        assert!(stdout(&o).lines().any(|l| l == "VERIFIED"));
    }
}

#[test]
fn exit_code_contract() {
    let corpus: &[(&str, &[&str], i32, &str)] = &[
        ("r2", &["witness", "y1 + v"], 2, "NotHomogeneous"),
        ("r2", &["normalize", "1*zz"], 2, "UnknownGenerator"),
        ("r2", &["normalize", "1*y1 +"], 2, "SyntaxError"),
        ("r2", &["--field", "fp:4", "normalize", "v"], 2, "InvalidField"),
        ("r1", &["--max-bound", "8", "witness-any", "v + e"], 1, "NoWitnessWithinBound(8)"),
        ("a2", &["corner", "realize"], 1, "GraphHasSource(v1)"),
        ("r2", &["desource", "--vertex", "v"], 1, "NotASource"),
        ("flagged_rose", &["desing", "--depth", "3"], 2, "DepthTooSmall"),
        (
            "a2",
            &["matrix", "transport", "--shifts", "0,1", "--entry", "1,1=v1", "--entry", "2,2=v2"],
            2,
            "MultiEntryUnsupported",
        ),
        ("r2", &["suite", "--trials", "3"], 2, "--seed"),
        ("point", &["degree", "0"], 2, "ZeroHasNoDegree"),
    ];
    for (g, args, expected, needle) in corpus {
        let o = leavitt(g, args);
        assert_eq!(code(&o), *expected, "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
    }
    let missing = Command::new(env!("CARGO_BIN_EXE_leavitt")).args(["normalize", "v"]).output().unwrap();
    assert_eq!(code(&missing), 2);
}

#[test]
fn suite_reports_are_reproducible() {
    let args = ["--seed", "11", "--format", "json", "suite", "--trials", "10"];
    let a = leavitt("r2", &args);
    let b = leavitt("r2", &args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["report"]["verified"], 10);
    assert_eq!(v["graph_sha256"].as_str().unwrap().len(), 64);
    let text = leavitt("r2", &["--seed", "11", "suite", "--trials", "10"]);
    assert!(stdout(&text).lines().any(|l| l == "10/10 VERIFIED"));
}

#[test]
fn desource_notices_and_outputs() {
    let o = leavitt("r2", &["desource"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "no sources");

    let o = leavitt("a2", &["desource", "--vertex", "v1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("vertex v2\n"));
    assert!(out.contains("# p = 1*v2"));
    assert!(out.contains("v1 = e.v2.e^* VERIFIED"));
}

#[test]
fn transform_files_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tails.graph");
    let o = leavitt("point", &["desing", "--depth", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let map = std::fs::read_to_string(format!("{}.map", out.display())).unwrap();
    assert_eq!(map.trim(), "v -> 1*v");

    let rejected =
        Command::new(env!("CARGO_BIN_EXE_leavitt")).arg("--graph").arg(&out).args(["normalize", "v"]).output().unwrap();
    assert_eq!(code(&rejected), 2);
    assert!(stderr(&rejected).contains("ReservedIdentifier"));

    let o = Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .arg("--graph")
        .arg(&out)
        .args(["--allow-reserved", "normalize", "~tail:v_f1^*.~tail:v_f1"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "1*~tail:v_1");
}

#[test]
fn corner_and_matrix_commands() {
    let o = leavitt("r2", &["corner", "realize"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("p = 1*y1.y1^*"));
    let o = leavitt("r2", &["corner", "witness", "y1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("VERIFIED"));

    let o = leavitt("point", &["matrix", "degree", "--shifts", "0,1", "--entry", "1,2=v"]);
    assert_eq!(stdout(&o).trim(), "degree -1");
    let o = leavitt("a2", &["matrix", "transport", "--shifts", "0,1", "--entry", "1,2=e"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("y = [0, 0; 1*e^*, 0]"));
}

#[test]
fn idgen_and_mul() {
    let o = leavitt("r2", &["idgen", "y1", "y2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("e = 1*v\n"));
    let o = leavitt("a2", &["mul", "e^*", "e"]);
    assert_eq!(stdout(&o).trim(), "1*v2");
}
