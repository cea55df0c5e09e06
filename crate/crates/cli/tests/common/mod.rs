#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn tcbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcbound"))
        .args(args)
        .output()
        .expect("spawn tcbound")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Runs a command that must succeed and parses its JSON report.
pub fn json(args: &[&str]) -> Value {
    let out = tcbound(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

pub fn interval(v: &Value) -> (u64, String) {
    let hi = match &v["hi"] {
        Value::Number(n) => n.to_string(),
        other => other.as_str().expect("hi is a number or \"inf\"").to_string(),
    };
    (v["lo"].as_u64().expect("lo"), hi)
}

pub fn exact(v: &Value, lo: u64, hi: u64) -> bool {
    interval(v) == (lo, hi.to_string())
}
