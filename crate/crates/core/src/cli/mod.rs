//! Experiment driver behind the `leo` binary.
//!
//! Output directory layout:
//!
//! * `records.jsonl`: one [`ResultRecord`] per repetition, ordered by
//!   function, algorithm, repetition
//! * `summary.jsonl`: mean/std per (algorithm, function)
//! * `timings.jsonl`: wall time per repetition
//! * `report.json`, `table.txt`: comparison tables (`suite` only)
//! * `traces/<alg>_<fn>_<rep>/*.csv` with `--traces`

pub mod args;
pub mod records;
pub mod table;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::Parser;

use crate::applications::{
    cpams_problem, igg_problem, CpamsParams, CPAMS_AGENTS, CPAMS_ITERATIONS, IGG_AGENTS, IGG_ITERATIONS,
};
use crate::benchmarks::{benchmark_catalog, build_problem, AuxData};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::harness::run_repetitions;
use crate::metrics::export_traces;
use crate::problem::Problem;
use crate::stats::{comparison_table, summarize, wilcoxon_rank_sum, ResultGrid, StatsReport};

pub use args::{AppKind, Cli, Command, Common, ExperimentSpec};
pub use records::{read_jsonl, write_jsonl, ResultRecord, SummaryRecord, TimingRecord, WilcoxonRecord};

/// Parses `args` (including the program name) and runs the command.
///
/// Returns the process exit code: 0 when every run completed, 1 when some
/// runs failed, 2 for start-up errors.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(outcome) => {
            for f in &outcome.failures {
                eprintln!("failed: {} {} seed={} ({})", f.algorithm, f.function, f.seed, f.message);
            }
            if outcome.failures.is_empty() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub algorithm: String,
    pub function: String,
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<ResultRecord>,
    pub failures: Vec<Failure>,
    pub report: Option<StatsReport>,
}

pub fn dispatch(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Run(c) => cmd_run(&c.resolve(None)?),
        Command::Suite(c) => cmd_suite(&c.resolve(None)?),
        Command::App(a) => cmd_run(&a.common.resolve(Some(a.app))?),
        Command::Stats(s) => {
            let out = s.out.unwrap_or_else(|| "results".into());
            let rows = cmd_stats(&s.a, &s.b, &out)?;
            print!("{}", render_wilcoxon(&rows));
            Ok(Outcome::default())
        }
        Command::Catalog(c) => {
            print!("{}", render_catalog(c.json));
            Ok(Outcome::default())
        }
    }
}

struct Task {
    label: String,
    problem: Problem,
    config: RunConfig,
}

fn build_tasks(spec: &ExperimentSpec) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    match spec.app {
        Some(kind) => {
            let (problem, agents, iters) = match kind {
                AppKind::Igg => (igg_problem(), IGG_AGENTS, IGG_ITERATIONS),
                AppKind::Cpams => {
                    let (d, k1, k2) = spec.cpams;
                    (cpams_problem(CpamsParams::new(d, k1, k2)?, 1)?, CPAMS_AGENTS, CPAMS_ITERATIONS)
                }
            };
            let mut config = spec.config.clone();
            if !spec.pop_set {
                config.population_size = agents;
            }
            if !spec.iters_set {
                config.iterations = iters;
            }
            tasks.push(Task { label: problem.id.clone(), problem, config });
        }
        None => {
            let aux = AuxData::bundled();
            for id in &spec.functions {
                tasks.push(Task { label: id.id(), problem: build_problem(*id, aux)?, config: spec.config.clone() });
            }
        }
    }
    for t in &tasks {
        for a in &spec.algorithms {
            a.validate(&t.config)?;
        }
    }
    Ok(tasks)
}

fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let probe = dir.join(".write-check");
    fs::write(&probe, b"")?;
    fs::remove_file(&probe)?;
    Ok(())
}

struct Executed {
    records: Vec<ResultRecord>,
    timings: Vec<TimingRecord>,
    failures: Vec<Failure>,
    grid: ResultGrid,
    functions: Vec<String>,
}

fn execute(spec: &ExperimentSpec) -> Result<Executed> {
    if spec.algorithms.is_empty() {
        return Err(Error::config("no algorithms selected"));
    }
    let tasks = build_tasks(spec)?;
    prepare_out(&spec.out)?;
    let mut ex = Executed {
        records: Vec::new(),
        timings: Vec::new(),
        failures: Vec::new(),
        grid: ResultGrid::new(),
        functions: tasks.iter().map(|t| t.label.clone()).collect(),
    };
    for task in &tasks {
        for alg in &spec.algorithms {
            let runs = run_repetitions(*alg, &task.problem, &task.config, spec.jobs);
            for (rep, (seed, outcome)) in runs.into_iter().enumerate() {
                let result = match outcome {
                    Ok(r) => r,
                    Err(e) => {
                        ex.failures.push(Failure {
                            algorithm: alg.name().into(),
                            function: task.label.clone(),
                            seed,
                            message: e.to_string(),
                        });
                        continue;
                    }
                };
                let mut trace_files = Vec::new();
                if spec.traces {
                    let rel = Path::new("traces").join(format!("{}_{}_{rep}", alg.name(), task.label));
                    for p in export_traces(&result.traces, &spec.out.join(&rel))? {
                        let name = p.file_name().expect("trace file name").to_string_lossy().into_owned();
                        trace_files.push(rel.join(name).to_string_lossy().replace('\\', "/"));
                    }
                }
                ex.grid
                    .entry(alg.name().into())
                    .or_default()
                    .entry(task.label.clone())
                    .or_default()
                    .push(result.final_best());
                ex.timings.push(TimingRecord {
                    algorithm: alg.name().into(),
                    function: task.label.clone(),
                    repetition: rep,
                    wall_secs: result.elapsed_secs,
                });
                ex.records.push(ResultRecord {
                    algorithm: alg.name().into(),
                    function: task.label.clone(),
                    repetition: rep,
                    seed,
                    final_best: result.final_best(),
                    best_genes: result.best.genes.clone(),
                    evaluations: result.evaluations,
                    repairs: result.repairs,
                    config: task.config.clone(),
                    trace_files,
                });
            }
        }
    }
    Ok(ex)
}

/// Mean/std per (algorithm, function) recomputed from records.
pub fn summaries_from(records: &[ResultRecord]) -> Result<Vec<SummaryRecord>> {
    let mut groups: Vec<((String, String), Vec<f64>)> = Vec::new();
    for r in records {
        let key = (r.algorithm.clone(), r.function.clone());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(r.final_best),
            None => groups.push((key, vec![r.final_best])),
        }
    }
    groups
        .into_iter()
        .map(|((algorithm, function), v)| Ok(SummaryRecord { algorithm, function, summary: summarize(&v)? }))
        .collect()
}

fn write_common(spec: &ExperimentSpec, ex: &Executed) -> Result<Vec<SummaryRecord>> {
    let summaries = summaries_from(&ex.records)?;
    write_jsonl(&spec.out.join("records.jsonl"), &ex.records)?;
    write_jsonl(&spec.out.join("summary.jsonl"), &summaries)?;
    write_jsonl(&spec.out.join("timings.jsonl"), &ex.timings)?;
    Ok(summaries)
}

pub fn cmd_run(spec: &ExperimentSpec) -> Result<Outcome> {
    let ex = execute(spec)?;
    let summaries = write_common(spec, &ex)?;
    println!("{:<6} {:<24} {:>4} {:>13} {:>13}", "alg", "function", "n", "mean", "std");
    for s in &summaries {
        println!(
            "{:<6} {:<24} {:>4} {:>13} {:>13}",
            s.algorithm,
            s.function,
            s.summary.n,
            table::sci(s.summary.mean),
            table::sci(s.summary.std)
        );
    }
    Ok(Outcome { records: ex.records, failures: ex.failures, report: None })
}

pub fn cmd_suite(spec: &ExperimentSpec) -> Result<Outcome> {
    let ex = execute(spec)?;
    write_common(spec, &ex)?;
    let algs: Vec<String> = spec.algorithms.iter().map(|a| a.name().to_string()).collect();
    let complete: Vec<String> = ex
        .functions
        .iter()
        .filter(|f| algs.iter().all(|a| ex.grid.get(a).and_then(|m| m.get(*f)).is_some()))
        .cloned()
        .collect();
    let subject = if algs.iter().any(|a| a == "leo") { "leo".to_string() } else { algs[0].clone() };
    let report = comparison_table(&ex.grid, &algs, &complete, &subject)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Parse(e.to_string()))?;
    fs::write(spec.out.join("report.json"), json + "\n")?;
    let mut text = table::render_summary(&report, spec.reference_data);
    let pv = table::render_pvalues(&report);
    if !pv.is_empty() {
        text.push_str("\nrank-sum p-values\n");
        text.push_str(&pv);
    }
    if spec.reference_data {
        text.push_str("\n[ref] columns are published values, not computed by this run\n");
    }
    fs::write(spec.out.join("table.txt"), &text)?;
    print!("{text}");
    Ok(Outcome { records: ex.records, failures: ex.failures, report: Some(report) })
}

/// Compares every (algorithm in `a`, algorithm in `b`) pair on shared functions.
pub fn cmd_stats(a: &Path, b: &Path, out: &Path) -> Result<Vec<WilcoxonRecord>> {
    let ra: Vec<ResultRecord> = read_jsonl(a)?;
    let rb: Vec<ResultRecord> = read_jsonl(b)?;
    let group = |rs: &[ResultRecord]| {
        let mut m: BTreeMap<String, BTreeMap<String, Vec<f64>>> = BTreeMap::new();
        for r in rs {
            m.entry(r.function.clone()).or_default().entry(r.algorithm.clone()).or_default().push(r.final_best);
        }
        m
    };
    let (ga, gb) = (group(&ra), group(&rb));
    let mut rows = Vec::new();
    for (f, algs_a) in &ga {
        let Some(algs_b) = gb.get(f) else { continue };
        for (x, va) in algs_a {
            for (y, vb) in algs_b {
                if va.len() != vb.len() {
                    return Err(Error::Stats(format!("{f}: {x} has {} repetitions, {y} has {}", va.len(), vb.len())));
                }
                let w = wilcoxon_rank_sum(va, vb)?;
                rows.push(WilcoxonRecord {
                    function: f.clone(),
                    a: x.clone(),
                    b: y.clone(),
                    n_a: va.len(),
                    n_b: vb.len(),
                    u_statistic: w.u_statistic,
                    p_value: w.p_value,
                    method: w.method,
                    significant_at_0_05: w.significant_at_0_05,
                });
            }
        }
    }
    if rows.is_empty() {
        eprintln!("warning: the two files share no functions");
    }
    prepare_out(out)?;
    write_jsonl(&out.join("wilcoxon.jsonl"), &rows)?;
    Ok(rows)
}

fn render_wilcoxon(rows: &[WilcoxonRecord]) -> String {
    let mut s = format!("{:<24} {:<6} {:<6} {:>13} {:<20}\n", "function", "a", "b", "p", "method");
    for r in rows {
        s.push_str(&format!(
            "{:<24} {:<6} {:<6} {:>13} {:<20}\n",
            r.function,
            r.a,
            r.b,
            table::sci(r.p_value),
            format!("{:?}", r.method)
        ));
    }
    s
}

fn render_catalog(json: bool) -> String {
    let mut s = String::new();
    if !json {
        s.push_str(&format!("{:<7} {:<11} {:>4} {:>18} {:>12}\n", "id", "family", "dim", "range", "f_min"));
    }
    for spec in benchmark_catalog() {
        if json {
            s.push_str(&serde_json::to_string(&spec).expect("catalog serializes"));
            s.push('\n');
        } else {
            let fam = serde_json::to_value(spec.family).expect("family").as_str().unwrap_or_default().to_string();
            let range = format!("[{}, {}]", spec.range.0, spec.range.1);
            let fmin = if spec.f_min_per_dimension { format!("{}/dim", spec.f_min) } else { spec.f_min.to_string() };
            s.push_str(&format!("{:<7} {:<11} {:>4} {:>18} {:>12}\n", spec.id, fam, spec.dimension, range, fmin));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lists_every_function() {
        assert_eq!(render_catalog(false).lines().count(), 30);
        assert_eq!(render_catalog(true).lines().count(), 29);
    }

    #[test]
    fn summaries_group_in_first_seen_order() {
        let mk = |a: &str, f: &str, v: f64| ResultRecord {
            algorithm: a.into(),
            function: f.into(),
            repetition: 0,
            seed: 0,
            final_best: v,
            best_genes: vec![],
            evaluations: 0,
            repairs: 0,
            config: RunConfig::default(),
            trace_files: vec![],
        };
        let s = summaries_from(&[mk("leo", "TF2", 1.0), mk("ga", "TF2", 5.0), mk("leo", "TF2", 3.0)]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].algorithm.as_str(), s[0].summary.mean), ("leo", 2.0));
    }
}
