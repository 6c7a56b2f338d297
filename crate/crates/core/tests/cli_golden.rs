use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

mod common;

use common::CORPUS;

fn afftl(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_afftl"));
    cmd.args(args).env_remove("AFFTL_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.arg("--cache").arg(dir);
    }
    cmd.output().unwrap()
}

fn golden(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    fs::read(path).unwrap()
}

#[test]
fn outputs_match_golden_files() {
    for (name, args) in CORPUS {
        let out = afftl(args, None);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(out.stdout, golden(name), "{name}");
    }
}

#[test]
fn cache_misses_and_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in CORPUS {
        let miss = afftl(args, Some(dir.path()));
        let hit = afftl(args, Some(dir.path()));
        assert_eq!(miss.stdout, golden(name), "{name} (miss)");
        assert_eq!(hit.stdout, golden(name), "{name} (hit)");
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), CORPUS.len());
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["enumerate", "--n", "4", "--t", "2"];
    afftl(&args, Some(dir.path()));
    let entry = fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    fs::write(&entry, b"{not json").unwrap();
    let out = afftl(&args, Some(dir.path()));
    assert_eq!(out.stdout, golden("enumerate_4_2"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt cache entry"));
    assert_eq!(fs::read(&entry).unwrap(), golden("enumerate_4_2"));
}

#[test]
fn out_file_gets_the_stdout_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("out.json");
    let out = afftl(
        &[
            "simples",
            "--n",
            "5",
            "--flavor",
            "tl",
            "--out",
            file.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read(file).unwrap(), golden("simples_5_tl"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        afftl(&["relcheck", "--n", "5"], None).status.code(),
        Some(0)
    );
    assert_eq!(
        afftl(&["simples", "--n", "4", "--flavor", "dn"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        afftl(&["normalize", "--n", "4", "--expr", "E1 +"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        afftl(&["normalize", "--n", "4", "--expr", "E7"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        afftl(&["enumerate", "--n", "9", "--t", "1"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(afftl(&["frobnicate"], None).status.code(), Some(2));
    let failed = afftl(
        &[
            "cellcheck",
            "--n",
            "4",
            "--alpha",
            "2",
            "--even-base",
            "offset",
        ],
        None,
    );
    assert_eq!(failed.status.code(), Some(1));
}

#[test]
fn syntax_errors_carry_positions() {
    let out = afftl(&["normalize", "--n", "4", "--expr", "E1 * (E2"], None);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("syntax error at 1:9"), "{err}");
}
