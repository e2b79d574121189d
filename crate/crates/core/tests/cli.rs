//! Runs every `$ eqlarge …` line in the README's console blocks through the
//! binary and compares stdout followed by stderr. A trailing `[exit N]` line
//! gives a non-zero exit code.

use std::process::Command;

struct Example {
    args: Vec<String>,
    expected: String,
    code: i32,
}

fn examples() -> Vec<Example> {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    let mut out: Vec<Example> = vec![];
    let mut in_console = false;
    for line in readme.lines() {
        if line.starts_with("```") {
            in_console = line == "```console";
            continue;
        }
        if !in_console {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ eqlarge") {
            let args = shlex::split(cmd).expect("quoting");
            out.push(Example { args, expected: String::new(), code: 0 });
        } else if let Some(code) = line.strip_prefix("[exit ").and_then(|s| s.strip_suffix(']')) {
            out.last_mut().unwrap().code = code.parse().unwrap();
        } else {
            let ex = out.last_mut().unwrap();
            ex.expected.push_str(line);
            ex.expected.push('\n');
        }
    }
    out
}

#[test]
fn readme_examples() {
    let all = examples();
    assert!(all.len() >= 10);
    for ex in all {
        let res = Command::new(env!("CARGO_BIN_EXE_eqlarge")).args(&ex.args).output().unwrap();
        let got = String::from_utf8(res.stdout).unwrap() + &String::from_utf8(res.stderr).unwrap();
        assert_eq!(got, ex.expected, "eqlarge {:?}", ex.args);
        assert_eq!(res.status.code(), Some(ex.code), "eqlarge {:?}", ex.args);
    }
}

#[test]
fn full_suite_json_is_one_array() {
    let res = Command::new(env!("CARGO_BIN_EXE_eqlarge"))
        .args(["verify", "all", "--groups", "catalog<=16", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 29 * 35);
    assert!(rows.iter().all(|r| r["passed"] == true));
    let summary = String::from_utf8(res.stderr).unwrap();
    assert!(summary.contains("0 failed"), "{summary}");
}

#[test]
fn unknown_check_is_a_usage_error() {
    let res = Command::new(env!("CARGO_BIN_EXE_eqlarge")).args(["verify", "nope", "--format", "json"]).output().unwrap();
    assert_eq!(res.status.code(), Some(2));
    assert!(res.stdout.is_empty());
}
