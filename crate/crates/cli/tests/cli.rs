//! End-to-end checks of the kstab binary: exit codes, determinism across
//! thread counts, and the registry override hook.

use std::process::Command;

fn kstab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_kstab"))
        .args(args)
        .output()
        .expect("spawn kstab")
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let a = kstab(&["verify-all", "--format", "json", "--parallel", "1"]);
    let b = kstab(&["verify-all", "--format", "json", "--parallel", "8"]);
    assert_eq!(a.status.code(), Some(0));
    // byte-identical regardless of worker count
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["summary"]["mismatches"], 1);
    assert_eq!(doc["summary"]["assumed"], 4);
}

#[test]
fn strict_mode_fails_on_documented_mismatch() {
    let out = kstab(&["verify-all", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["summary"]["failed"], 1);
}

#[test]
fn query_values() {
    let out = kstab(&["query", "sx", "--pencil", "h-r"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "67/88");

    let out = kstab(&[
        "query", "nemuro", "--case", "hr-in-r", "--f", "prop2.5",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "44/41");
}

#[test]
fn bad_input_exits_2() {
    let out = kstab(&["query", "sx", "--pencil", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn emit_samples_lists_every_lemma() {
    let out = kstab(&["verify-all", "--emit-samples", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let samples = doc["samples"].as_object().unwrap();
    assert_eq!(samples.len(), 16);
    for (_, table) in samples {
        assert_eq!(table.as_array().unwrap().len(), 9);
    }
}
