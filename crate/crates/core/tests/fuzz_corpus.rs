//! Replays the checked-in fuzz seeds through the same assertions as the
//! fuzz targets.

use std::fs;
use std::path::PathBuf;

use angdecomp::combinatorics::{format_rational, parse_rational};
use angdecomp::render::DecomposeReport;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn parse_rational_seeds() {
    let seeds = seeds("parse_rational");
    assert!(!seeds.is_empty());
    let mut accepted = 0;
    for (name, data) in &seeds {
        let Ok(text) = std::str::from_utf8(data) else {
            continue;
        };
        if let Ok(value) = parse_rational(text) {
            accepted += 1;
            assert_eq!(
                parse_rational(&format_rational(&value)).unwrap(),
                value,
                "{name}"
            );
        }
    }
    assert!(accepted > 0 && accepted < seeds.len());
}

#[test]
fn decompose_json_seeds() {
    let seeds = seeds("decompose_json");
    assert!(!seeds.is_empty());
    let mut accepted = 0;
    for (name, data) in &seeds {
        let Ok(text) = std::str::from_utf8(data) else {
            continue;
        };
        if let Ok(report) = DecomposeReport::from_json(text) {
            accepted += 1;
            assert_eq!(report.to_json(), text, "{name}");
        }
    }
    assert!(accepted > 0 && accepted < seeds.len());
}
