//! End-to-end tests of the command-line binary: exit codes, formats, and
//! the zone-predicate encoding.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::json;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_lrsomega")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn fib_json() -> &'static str {
    r#"{"coeffs": ["1", "1"], "initial": ["1", "1"]}"#
}

fn zmzp_json() -> &'static str {
    r#"{"coeffs": ["0", "-1"], "initial": ["0", "-1"]}"#
}

fn all_minus_json() -> &'static str {
    r#"{"coeffs": ["1"], "initial": ["-1"]}"#
}

/// Last-letter automaton over the sign alphabet accepting iff `+` recurs.
fn inf_plus_automaton() -> String {
    json!({
        "states": ["m", "z", "p"],
        "initial": "m",
        "alphabet": ["-", "0", "+"],
        "delta": {
            "m": {"-": "m", "0": "z", "+": "p"},
            "z": {"-": "m", "0": "z", "+": "p"},
            "p": {"-": "m", "0": "z", "+": "p"}
        },
        "accepting": [["p"], ["m", "p"], ["z", "p"], ["m", "z", "p"], ["p", "z"], ["p", "m"]]
    })
    .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).env_remove("LRSOMEGA_SOLVER").output().unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

#[test]
fn signdesc_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let fib = write_file(dir.path(), "fib.json", fib_json());
    let out = run(&["signdesc", fib.to_str().unwrap(), "--length", "10"]);
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("++++++++++"));

    let zmzp = write_file(dir.path(), "z.json", zmzp_json());
    let out = run(&["--json", "signdesc", zmzp.to_str().unwrap(), "--length", "8"]);
    assert_eq!(exit_code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["details"]["signs"], "0-0+0-0+");
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let zmzp = write_file(dir.path(), "z.json", zmzp_json());
    let minus = write_file(dir.path(), "m.json", all_minus_json());
    let fib = write_file(dir.path(), "fib.json", fib_json());
    let automaton = write_file(dir.path(), "a.json", &inf_plus_automaton());

    // Accept.
    let out = run(&[
        "check",
        zmzp.to_str().unwrap(),
        "--automaton",
        automaton.to_str().unwrap(),
        "--horizon",
        "5000",
        "--threshold",
        "1000",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Accept"));

    // Reject.
    let out = run(&[
        "check",
        minus.to_str().unwrap(),
        "--automaton",
        automaton.to_str().unwrap(),
        "--horizon",
        "5000",
        "--threshold",
        "1000",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("Reject"));

    // Wrong alphabet -> error.
    let bad = write_file(
        dir.path(),
        "bad.json",
        &json!({
            "states": ["q0"],
            "initial": "q0",
            "alphabet": ["a", "b"],
            "delta": {"q0": {"a": "q0", "b": "q0"}},
            "accepting": [["q0"]]
        })
        .to_string(),
    );
    let out = run(&[
        "check",
        fib.to_str().unwrap(),
        "--automaton",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);

    // Certified mode without a solver -> unknown.
    let out = run(&[
        "check",
        fib.to_str().unwrap(),
        "--automaton",
        automaton.to_str().unwrap(),
        "--mode",
        "certified",
        "--horizon",
        "5000",
        "--threshold",
        "1000",
    ]);
    assert_eq!(exit_code(&out), 2);

    // Non-simple input -> error.
    let ramp = write_file(dir.path(), "ramp.json", r#"{"coeffs": ["2", "-1"], "initial": ["1", "2"]}"#);
    let out = run(&[
        "check",
        ramp.to_str().unwrap(),
        "--automaton",
        automaton.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("repeated factor"));
}

/// The worked zone property: predicates x-3, x-5, x-10, and the automaton
/// for "only finitely many times does a (-,*,*) letter lead to a (*,*,+)
/// letter with no (*,0,*) in between".
#[test]
fn zone_worked_property_shape() {
    let dir = tempfile::tempdir().unwrap();
    let fib = write_file(dir.path(), "fib.json", fib_json());

    let signs = ["-", "0", "+"];
    let mut letters = Vec::new();
    for a in signs {
        for b in signs {
            for c in signs {
                letters.push(format!("({a},{b},{c})"));
            }
        }
    }
    let classify = |letter: &str| -> (bool, bool, bool) {
        let inner: Vec<&str> =
            letter.trim_start_matches('(').trim_end_matches(')').split(',').collect();
        let arm = inner[0] == "-" && inner[1] != "0";
        let disarm = inner[1] == "0";
        let hit = inner[2] == "+" && inner[1] != "0";
        (arm, disarm, hit)
    };
    let mut delta = serde_json::Map::new();
    for state in ["idle", "armed", "hit"] {
        let mut row = serde_json::Map::new();
        for letter in &letters {
            let (arm, disarm, hit) = classify(letter);
            let next = match state {
                // After a completion the letter is processed fresh.
                "idle" | "hit" => {
                    if arm {
                        "armed"
                    } else {
                        "idle"
                    }
                }
                "armed" => {
                    if disarm {
                        "idle"
                    } else if hit {
                        "hit"
                    } else {
                        "armed"
                    }
                }
                _ => unreachable!(),
            };
            row.insert(letter.clone(), json!(next));
        }
        delta.insert(state.to_string(), serde_json::Value::Object(row));
    }
    // Finitely many completions: accepting families avoid the hit state.
    let automaton = json!({
        "states": ["idle", "armed", "hit"],
        "initial": "idle",
        "alphabet": letters,
        "delta": delta,
        "accepting": [["idle"], ["armed"], ["idle", "armed"]]
    });
    let automaton = write_file(dir.path(), "zone.json", &automaton.to_string());

    let out = run(&[
        "zone",
        fib.to_str().unwrap(),
        "--poly",
        "x - 3",
        "--poly",
        "x - 5",
        "--poly",
        "x - 10",
        "--automaton",
        automaton.to_str().unwrap(),
        "--horizon",
        "5000",
        "--threshold",
        "1000",
    ]);
    assert_eq!(
        exit_code(&out),
        0,
        "stdout: {} stderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("Accept"));
}

#[test]
fn zone_constant_predicate() {
    let dir = tempfile::tempdir().unwrap();
    let fib = write_file(dir.path(), "fib.json", fib_json());
    // F = x on Fibonacci over the 1-tuple alphabet behaves like the plain
    // sign track: all (+).
    let automaton = json!({
        "states": ["q0", "q1"],
        "initial": "q0",
        "alphabet": ["(-)", "(0)", "(+)"],
        "delta": {
            "q0": {"(-)": "q0", "(0)": "q0", "(+)": "q1"},
            "q1": {"(-)": "q0", "(0)": "q0", "(+)": "q1"}
        },
        "accepting": [["q1"]]
    });
    let automaton = write_file(dir.path(), "tuple.json", &automaton.to_string());
    let out = run(&[
        "zone",
        fib.to_str().unwrap(),
        "--poly",
        "x",
        "--automaton",
        automaton.to_str().unwrap(),
        "--horizon",
        "5000",
        "--threshold",
        "1000",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn counterexample_validation_and_report() {
    let out = run(&["counterexample", "--lambda", "1/2", "1/2", "--horizon", "100"]);
    assert_eq!(exit_code(&out), 3);
    let out = run(&["--json", "counterexample", "--horizon", "2000"]);
    assert_eq!(exit_code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(parsed["details"]["plus_count"].as_u64().unwrap() > 0);
}

#[test]
fn gaps_csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let zmzp = write_file(dir.path(), "z.json", zmzp_json());
    let out = run(&[
        "--json",
        "gaps",
        zmzp.to_str().unwrap(),
        "--pattern",
        "0-",
        "--length",
        "64",
        "--csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let csv = parsed["details"]["csv"].as_str().unwrap();
    assert!(csv.starts_with("occurrence,start,gap_from_previous"));
    assert!(csv.contains("\n0,0,\n"));
    assert!(csv.contains("\n1,4,4\n"));
}

#[test]
fn emit_formula_script_shape() {
    let dir = tempfile::tempdir().unwrap();
    let fib = write_file(dir.path(), "fib.json", fib_json());
    let out = run(&["emit-formula", fib.to_str().unwrap(), "--pattern", "+", "--what", "u"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(set-logic QF_NRA)"));
    assert!(text.contains("(check-sat)"));

    let out = run(&[
        "emit-formula",
        fib.to_str().unwrap(),
        "--pattern",
        "+",
        "--what",
        "phi:2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(set-logic NRA)"));
    assert!(text.contains("forall"));

    // Impossible pattern: zeros misplaced against the zero structure.
    let zmzp = write_file(dir.path(), "z.json", zmzp_json());
    let out = run(&["emit-formula", zmzp.to_str().unwrap(), "--pattern", "00", "--what", "u"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(assert false)"));
}

#[test]
fn decompose_reports_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let zmzp = write_file(dir.path(), "z.json", zmzp_json());
    let out = run(&["--json", "decompose", zmzp.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["details"]["period"], 2);
    assert_eq!(parsed["details"]["zero_offsets"][0], 0);
    assert_eq!(parsed["details"]["minimal_order"], 2);
}
