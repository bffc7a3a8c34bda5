//! Shared inputs for the benchmarks.

use std::path::PathBuf;

use ackit::{parse_certificate, Certificate};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// The 160-move listing certificate from P to AK(3).
pub fn s2() -> Certificate {
    let text = std::fs::read_to_string(fixture_path("s2.cert")).expect("fixtures/s2.cert");
    parse_certificate(&text).expect("s2.cert parses")
}
