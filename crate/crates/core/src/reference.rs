//! Published mean/std values for algorithms compared against Leo.
//!
//! These are literature numbers, not results computed by this crate.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

const CSV: &str = include_str!("../data/reference.csv");

/// Algorithms that only appear through published values.
pub const REFERENCE_ONLY: [&str; 6] = ["da", "woa", "ssa", "fdo", "lpb", "fox"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub table: u8,
    pub function: String,
    pub algorithm: String,
    pub mean: f64,
    pub std: f64,
}

pub fn reference_data() -> &'static [ReferenceEntry] {
    static DATA: OnceLock<Vec<ReferenceEntry>> = OnceLock::new();
    DATA.get_or_init(|| {
        CSV.lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                ReferenceEntry {
                    table: f[0].parse().expect("table number"),
                    function: f[1].to_string(),
                    algorithm: f[2].to_string(),
                    mean: f[3].parse().expect("mean"),
                    std: f[4].parse().expect("std"),
                }
            })
            .collect()
    })
}

/// First published entry for `(function, algorithm)`.
pub fn lookup(function: &str, algorithm: &str) -> Option<&'static ReferenceEntry> {
    reference_data()
        .iter()
        .find(|e| e.function.eq_ignore_ascii_case(function) && e.algorithm.eq_ignore_ascii_case(algorithm))
}
