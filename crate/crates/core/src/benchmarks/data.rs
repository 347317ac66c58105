//! Auxiliary shift, rotation and optima matrices.
//!
//! Each file holds one matrix: a header line `# id dimension kind`, then one
//! row per line with whitespace-separated decimals. Files are named
//! `<id>_<kind>.txt`, e.g. `CEC04_shift.txt`, `CEC04_rotation.txt`,
//! `TF14_optima.txt`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use super::cec2019::Cec;
use crate::error::{Error, Result};
use crate::rng::RandomStream;

pub const CEC_SEED: u64 = 20190;
pub const COMPOSITE_SEED: u64 = 2005;

#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    pub id: String,
    pub dimension: usize,
    pub kind: String,
    pub rows: Vec<Vec<f64>>,
}

impl DataMatrix {
    pub fn file_name(&self) -> String {
        format!("{}_{}.txt", self.id, self.kind)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty data file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "#" {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let dimension: usize = fields[2].parse().map_err(|_| Error::Parse(format!("bad dimension in {header:?}")))?;
        let mut rows = Vec::new();
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
                .collect::<Result<Vec<f64>>>()?;
            if row.len() != dimension {
                return Err(Error::Parse(format!("row of {} values, expected {dimension}", row.len())));
            }
            rows.push(row);
        }
        Ok(Self { id: fields[1].to_string(), dimension, kind: fields[3].to_string(), rows })
    }

    pub fn render(&self) -> String {
        let mut s = format!("# {} {} {}\n", self.id, self.dimension, self.kind);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }
}

/// Everything the shifted, rotated and composite functions need.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AuxData {
    pub cec_shift: BTreeMap<String, Vec<f64>>,
    pub cec_rotation: BTreeMap<String, Vec<Vec<f64>>>,
    pub composite_optima: BTreeMap<String, Vec<Vec<f64>>>,
}

macro_rules! bundled_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../data/", $name)))),*]
    };
}

const BUNDLED: &[(&str, &str)] = bundled_files!(
    "cec2019/CEC04_shift.txt",
    "cec2019/CEC04_rotation.txt",
    "cec2019/CEC05_shift.txt",
    "cec2019/CEC05_rotation.txt",
    "cec2019/CEC06_shift.txt",
    "cec2019/CEC06_rotation.txt",
    "cec2019/CEC07_shift.txt",
    "cec2019/CEC07_rotation.txt",
    "cec2019/CEC08_shift.txt",
    "cec2019/CEC08_rotation.txt",
    "cec2019/CEC09_shift.txt",
    "cec2019/CEC09_rotation.txt",
    "cec2019/CEC10_shift.txt",
    "cec2019/CEC10_rotation.txt",
    "composite/TF14_optima.txt",
    "composite/TF15_optima.txt",
    "composite/TF16_optima.txt",
    "composite/TF17_optima.txt",
    "composite/TF18_optima.txt",
    "composite/TF19_optima.txt",
);

impl AuxData {
    /// The data files compiled into the crate.
    pub fn bundled() -> &'static AuxData {
        static DATA: OnceLock<AuxData> = OnceLock::new();
        DATA.get_or_init(|| {
            let mut d = AuxData::default();
            for (name, text) in BUNDLED {
                let m = DataMatrix::parse(text).unwrap_or_else(|e| panic!("bundled {name}: {e}"));
                d.insert(m).unwrap_or_else(|e| panic!("bundled {name}: {e}"));
            }
            d
        })
    }

    /// Loads every `*.txt` matrix in `dir` and its immediate subdirectories.
    pub fn from_dir(dir: &Path) -> Result<AuxData> {
        let mut d = AuxData::default();
        let mut dirs = vec![dir.to_path_buf()];
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                dirs.push(path);
            }
        }
        for p in dirs {
            for entry in fs::read_dir(&p)? {
                let path = entry?.path();
                if path.is_file() && path.extension().is_some_and(|e| e == "txt") {
                    d.insert(DataMatrix::parse(&fs::read_to_string(&path)?)?)?;
                }
            }
        }
        Ok(d)
    }

    pub fn insert(&mut self, m: DataMatrix) -> Result<()> {
        match m.kind.as_str() {
            "shift" => {
                let row = m.rows.into_iter().next().ok_or_else(|| Error::Parse(format!("{}: empty shift", m.id)))?;
                self.cec_shift.insert(m.id, row);
            }
            "rotation" => {
                if m.rows.len() != m.dimension {
                    return Err(Error::Parse(format!("{}: rotation is not square", m.id)));
                }
                self.cec_rotation.insert(m.id, m.rows);
            }
            "optima" => {
                self.composite_optima.insert(m.id, m.rows);
            }
            other => return Err(Error::Parse(format!("{}: unknown kind {other:?}", m.id))),
        }
        Ok(())
    }

    pub fn matrices(&self) -> Vec<DataMatrix> {
        let mut out = Vec::new();
        for (id, s) in &self.cec_shift {
            out.push(DataMatrix { id: id.clone(), dimension: s.len(), kind: "shift".into(), rows: vec![s.clone()] });
        }
        for (id, r) in &self.cec_rotation {
            out.push(DataMatrix { id: id.clone(), dimension: r.len(), kind: "rotation".into(), rows: r.clone() });
        }
        for (id, o) in &self.composite_optima {
            let dimension = o.first().map_or(0, Vec::len);
            out.push(DataMatrix { id: id.clone(), dimension, kind: "optima".into(), rows: o.clone() });
        }
        out
    }

    /// Regenerates the bundled data from the recorded seeds.
    pub fn generate() -> AuxData {
        let mut d = AuxData::default();
        let mut rng = RandomStream::new(CEC_SEED);
        for f in Cec::ALL.iter().filter(|f| f.shifted_rotated()) {
            let n = f.dimension();
            let shift: Vec<f64> = (0..n).map(|_| rng.uniform(-80.0, 80.0)).collect();
            let gauss: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.standard_normal()).collect()).collect();
            d.cec_shift.insert(f.id(), shift);
            d.cec_rotation.insert(f.id(), orthonormalize(gauss));
        }
        let mut rng = RandomStream::new(COMPOSITE_SEED);
        for n in 14..=19 {
            let o: Vec<Vec<f64>> = (0..10).map(|_| (0..10).map(|_| rng.uniform(-4.0, 4.0)).collect()).collect();
            d.composite_optima.insert(format!("TF{n}"), o);
        }
        d
    }
}

/// Rows made orthonormal by modified Gram-Schmidt with a second pass.
pub fn orthonormalize(mut rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    for i in 0..rows.len() {
        for _ in 0..2 {
            for j in 0..i {
                let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
                let prev = rows[j].clone();
                rows[i].iter_mut().zip(&prev).for_each(|(a, b)| *a -= dot * b);
            }
        }
        let norm = rows[i].iter().map(|v| v * v).sum::<f64>().sqrt();
        rows[i].iter_mut().for_each(|v| *v /= norm);
    }
    rows
}

/// Largest `|(R R^T - I)_{ij}|`.
pub fn orthogonality_error(m: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.len() {
        for j in 0..m.len() {
            let dot: f64 = m[i].iter().zip(&m[j]).map(|(a, b)| a * b).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_render_round_trip() {
        let m = DataMatrix {
            id: "X".into(),
            dimension: 2,
            kind: "optima".into(),
            rows: vec![vec![0.1, -1.0 / 3.0], vec![1e-300, 7.0]],
        };
        assert_eq!(DataMatrix::parse(&m.render()).unwrap(), m);
    }

    #[test]
    fn malformed_matrices_rejected() {
        assert!(DataMatrix::parse("").is_err());
        assert!(DataMatrix::parse("X 2 shift\n1 2\n").is_err());
        assert!(DataMatrix::parse("# X 2 shift\n1 2 3\n").is_err());
        assert!(DataMatrix::parse("# X 2 shift\n1 two\n").is_err());
    }

    #[test]
    fn bundled_data_is_complete_and_orthogonal() {
        let d = AuxData::bundled();
        assert_eq!(d.cec_shift.len(), 7);
        assert_eq!(d.composite_optima.len(), 6);
        for m in d.cec_rotation.values() {
            assert!(orthogonality_error(m) < 1e-9);
        }
    }

    #[test]
    fn bundled_data_matches_regeneration() {
        assert_eq!(&AuxData::generate(), AuxData::bundled());
    }
}
