use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeta-extremal")).args(args).output().expect("binary runs")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid json")
}

#[test]
fn help_lists_commands_and_exit_codes() {
    let o = bin(&["--help"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    for word in ["constants", "sigma-a", "l-bound", "search-height", "trace", "check", "Exit codes"] {
        assert!(text.contains(word), "{word}");
    }
}

#[test]
fn constants_are_deterministic() {
    let a = bin(&["constants", "--which", "all", "--digits", "20"]);
    let b = bin(&["constants", "--which", "all", "--digits", "20"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a.stdout);
    let names: Vec<&str> = v["constants"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 3);
    assert!(v["constants"][0]["value"].is_string());
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("zeta-extremal-cli-{}.json", std::process::id()));
    let o = bin(&["l-bound", "--q", "4", "--digits", "12", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v = json(&std::fs::read(&path).unwrap());
    std::fs::remove_file(&path).ok();
    assert!(v["result"]["value"].as_str().unwrap().starts_with("1.887790926"));
}

#[test]
fn errors_go_to_stderr_with_exit_codes() {
    let o = bin(&["sigma-a", "--a", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(json(&o.stderr)["error"], "redirect");

    assert_eq!(bin(&["constants", "--digits", "5"]).status.code(), Some(2));
    assert_eq!(bin(&["trace", "--window", "1,2,3"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));

    let o = bin(&["search-height", "--verify-height", "50", "--prime-limit", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn text_format() {
    let o = bin(&["sigma-a", "--a", "2", "--digits", "12", "--format", "text"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("1.72864723"));
}

#[test]
fn weak_search_runs() {
    let args = ["search-height", "--n", "4", "--nu", "30", "--r", "10", "--no-refine"];
    let a = bin(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, bin(&args).stdout);
    let v = json(&a.stdout);
    assert!(v["candidates"][0]["score"].is_string());
}
