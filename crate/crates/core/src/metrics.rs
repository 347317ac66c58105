//! Per-iteration measurement traces and their CSV form.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::Candidate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    SearchHistory,
    Trajectory,
    AverageFitness,
    Convergence,
}

impl TraceKind {
    pub const ALL: [TraceKind; 4] =
        [TraceKind::SearchHistory, TraceKind::Trajectory, TraceKind::AverageFitness, TraceKind::Convergence];

    pub fn file_name(self) -> &'static str {
        match self {
            TraceKind::SearchHistory => "search_history.csv",
            TraceKind::Trajectory => "trajectory.csv",
            TraceKind::AverageFitness => "average_fitness.csv",
            TraceKind::Convergence => "convergence.csv",
        }
    }
}

/// The four traces of a run. Index `t` holds the state after generation `t`
/// (index 0 is the initial population).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TraceSet {
    /// `(x0, x1)` of every agent.
    pub search_history: Vec<Vec<[f64; 2]>>,
    /// First gene of agent 0.
    pub trajectory: Vec<f64>,
    pub average_fitness: Vec<f64>,
    pub convergence: Vec<f64>,
}

impl TraceSet {
    pub fn is_empty(&self) -> bool {
        self.search_history.is_empty()
            && self.trajectory.is_empty()
            && self.average_fitness.is_empty()
            && self.convergence.is_empty()
    }
}

/// Appends one record per trace.
///
/// Average fitness and convergence are always recorded; the positional
/// traces only when `positions` is set. Returns `true` when the history had
/// to pad a one-dimensional agent with 0.
pub fn record_iteration(pop: &[Candidate], best_so_far: f64, positions: bool, traces: &mut TraceSet) -> bool {
    traces.convergence.push(best_so_far);
    traces.average_fitness.push(pop.iter().map(|c| c.value).sum::<f64>() / pop.len() as f64);
    if !positions {
        return false;
    }
    traces.trajectory.push(pop[0].genes[0]);
    let padded = pop.first().is_some_and(|c| c.genes.len() < 2);
    traces.search_history.push(pop.iter().map(|c| [c.genes[0], c.genes.get(1).copied().unwrap_or(0.0)]).collect());
    padded
}

/// Writes one CSV per non-empty trace into `dir`; returns the paths written.
pub fn export_traces(traces: &TraceSet, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if traces.is_empty() {
        return Ok(written);
    }
    fs::create_dir_all(dir)?;
    for kind in TraceKind::ALL {
        let path = dir.join(kind.file_name());
        match kind {
            TraceKind::SearchHistory if !traces.search_history.is_empty() => {
                let mut w = BufWriter::new(fs::File::create(&path)?);
                writeln!(w, "iteration,agent,x0,x1")?;
                for (t, row) in traces.search_history.iter().enumerate() {
                    for (a, p) in row.iter().enumerate() {
                        writeln!(w, "{t},{a},{},{}", p[0], p[1])?;
                    }
                }
                w.flush()?;
            }
            TraceKind::Trajectory if !traces.trajectory.is_empty() => write_scalar(&path, &traces.trajectory)?,
            TraceKind::AverageFitness if !traces.average_fitness.is_empty() => {
                write_scalar(&path, &traces.average_fitness)?
            }
            TraceKind::Convergence if !traces.convergence.is_empty() => write_scalar(&path, &traces.convergence)?,
            _ => continue,
        }
        written.push(path);
    }
    Ok(written)
}

fn write_scalar(path: &Path, values: &[f64]) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "iteration,value")?;
    for (t, v) in values.iter().enumerate() {
        writeln!(w, "{t},{v}")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads whatever trace files exist in `dir`.
pub fn read_traces(dir: &Path) -> Result<TraceSet> {
    let mut out = TraceSet::default();
    for kind in TraceKind::ALL {
        let path = dir.join(kind.file_name());
        if !path.exists() {
            continue;
        }
        let text = fs::read_to_string(&path)?;
        match kind {
            TraceKind::SearchHistory => out.search_history = parse_history(&text)?,
            TraceKind::Trajectory => out.trajectory = parse_scalar(&text)?,
            TraceKind::AverageFitness => out.average_fitness = parse_scalar(&text)?,
            TraceKind::Convergence => out.convergence = parse_scalar(&text)?,
        }
    }
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad index {s:?}")))
}

fn parse_scalar(text: &str) -> Result<Vec<f64>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("iteration,value") {
        return Err(Error::Parse("expected header iteration,value".into()));
    }
    let mut out = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let (t, v) = line.split_once(',').ok_or_else(|| Error::Parse(format!("bad row {line:?}")))?;
        if parse_usize(t)? != out.len() {
            return Err(Error::Parse(format!("iteration out of order in {line:?}")));
        }
        out.push(parse_f64(v)?);
    }
    Ok(out)
}

fn parse_history(text: &str) -> Result<Vec<Vec<[f64; 2]>>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("iteration,agent,x0,x1") {
        return Err(Error::Parse("expected header iteration,agent,x0,x1".into()));
    }
    let mut out: Vec<Vec<[f64; 2]>> = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 4 {
            return Err(Error::Parse(format!("bad row {line:?}")));
        }
        let (t, a) = (parse_usize(f[0])?, parse_usize(f[1])?);
        if t == out.len() {
            out.push(Vec::new());
        }
        if t + 1 != out.len() || a != out[t].len() {
            return Err(Error::Parse(format!("row out of order: {line:?}")));
        }
        out[t].push([parse_f64(f[2])?, parse_f64(f[3])?]);
    }
    Ok(out)
}
