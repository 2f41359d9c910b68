use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lyub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lyub"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn lyub_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lyub"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn table_of_a4() {
    let o = lyub(&["table", "data/a4.ideal"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 1 0\n  0 0\n    2"), "{}", stdout(&o));
}

#[test]
fn table_depends_on_the_field() {
    let q = json(&lyub(&["table", "data/rp2.ideal", "--field", "q", "--json"]));
    let f2 = json(&lyub(&["table", "data/rp2.ideal", "--field", "fp:2", "--json"]));
    assert_eq!(q["lyubeznik"], serde_json::json!([[0, 0, 0, 0], [0, 0, 0], [0, 0], [1]]));
    assert_eq!(f2["lyubeznik"], serde_json::json!([[0, 0, 1, 0], [0, 0, 0], [0, 1], [1]]));
    assert_eq!(f2["field"], "fp:2");
}

#[test]
fn check_succeeds_on_a5() {
    let o = lyub(&["check", "data/a5.ideal", "--parallel", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("routes agree"));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn bass_json_schema() {
    let v = json(&lyub(&["bass", "data/three-components.ideal", "--r", "4", "--json"]));
    assert_eq!(v["n"], 5);
    assert_eq!(
        v["bass"],
        serde_json::json!([{"r": 4, "rows": [
            {"alpha": [1, 1, 1, 1, 0], "mu": [1, 0, 0, 0, 0]},
            {"alpha": [1, 1, 1, 1, 1], "mu": [1, 0, 0, 0, 0, 0]},
        ]}])
    );
}

#[test]
fn run_uses_the_compute_statement() {
    let o = lyub(&["run", "data/mixed-heights.ideal", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    for key in ["lyubeznik", "bass", "dims", "supp"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v.get("betti").is_none());
    let dims = v["dims"].as_array().unwrap();
    let h3 = dims.iter().find(|d| d["r"] == 3).unwrap();
    assert_eq!((h3["star_id"].clone(), h3["dim_module"].clone()), (1.into(), 2.into()));
}

#[test]
fn seqcm_of_the_nine_variable_ideal() {
    let o = lyub(&["seqcm", "data/nine.ideal"]);
    assert!(stdout(&o).contains("sequentially Cohen-Macaulay over q: yes"));
}

#[test]
fn every_subcommand_runs() {
    for cmd in ["table", "bass", "dual-bass", "betti", "strands", "supp", "dims", "seqcm", "check", "info"] {
        for json_flag in [false, true] {
            let mut args = vec![cmd, "data/a5.ideal"];
            if json_flag {
                args.push("--json");
            }
            let o = lyub(&args);
            assert!(o.status.success(), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
            if json_flag {
                json(&o);
            }
        }
    }
}

#[test]
fn syntax_errors_exit_nonzero_with_a_position() {
    let o = lyub_stdin(&["table", "-"], "n=4;\ngens: x1*x1*x2;\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column 10"), "{err}");
}

#[test]
fn bad_flags_and_files_fail() {
    assert_eq!(lyub(&["table", "data/a4.ideal", "--field", "fp:4"]).status.code(), Some(2));
    assert_eq!(lyub(&["table", "data/missing.ideal"]).status.code(), Some(2));
    assert_eq!(lyub(&["bass", "data/a4.ideal", "--r", "9"]).status.code(), Some(2));
    assert_eq!(lyub(&["run", "data/a4.ideal"]).status.code(), Some(2));
}

#[test]
fn resource_caps_are_reported() {
    let gens: Vec<String> = (0..5).map(|k| format!("x{}*x{}", 2 * k + 1, 2 * k + 2)).collect();
    let o = lyub_stdin(&["betti", "-"], &format!("n=10; gens: {};", gens.join(", ")));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(o.status.code(), Some(2), "{err}");
    assert!(err.contains("resource limit"), "{err}");

    let o = lyub_stdin(&["table", "-"], "n=17; gens: x1*x17;");
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(o.status.code(), Some(2), "{err}");
    assert!(err.contains("hypercube"), "{err}");
}
