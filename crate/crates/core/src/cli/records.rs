//! Line-delimited JSON records written and read by the CLI.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::stats::{Method, Summary};

/// One repetition. `algorithm.run(problem, &config, seed)` reproduces it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algorithm: String,
    pub function: String,
    pub repetition: usize,
    pub seed: u64,
    pub final_best: f64,
    pub best_genes: Vec<f64>,
    pub evaluations: u64,
    pub repairs: u64,
    pub config: RunConfig,
    /// Trace files relative to the output directory.
    pub trace_files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub algorithm: String,
    pub function: String,
    #[serde(flatten)]
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRecord {
    pub algorithm: String,
    pub function: String,
    pub repetition: usize,
    pub wall_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonRecord {
    pub function: String,
    pub a: String,
    pub b: String,
    pub n_a: usize,
    pub n_b: usize,
    pub u_statistic: f64,
    pub p_value: f64,
    pub method: Method,
    pub significant_at_0_05: bool,
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    for item in items {
        let line = serde_json::to_string(item).map_err(|e| Error::Parse(e.to_string()))?;
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), i + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let r = ResultRecord {
            algorithm: "leo".into(),
            function: "TF1".into(),
            repetition: 2,
            seed: u64::MAX,
            final_best: 1.0 / 3.0,
            best_genes: vec![0.1, -2e-300],
            evaluations: 10,
            repairs: 0,
            config: RunConfig::default(),
            trace_files: vec!["traces/a/convergence.csv".into()],
        };
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.jsonl");
        write_jsonl(&p, &[r.clone(), r.clone()]).unwrap();
        assert_eq!(read_jsonl::<ResultRecord>(&p).unwrap(), vec![r.clone(), r]);
    }

    #[test]
    fn schema_mismatch_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.jsonl");
        fs::write(&p, "{\"algorithm\":\"leo\"}\n").unwrap();
        assert!(matches!(read_jsonl::<ResultRecord>(&p), Err(Error::Parse(_))));
    }
}
