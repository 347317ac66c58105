use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::benchmarks::{Family, FunctionId};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::harness::Algorithm;

#[derive(Debug, Parser)]
#[command(name = "leo", version, about = "Leo metaheuristic experiment driver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run repetitions of one or more algorithms on functions or an application.
    Run(Common),
    /// Run the algorithm x function cross product and render comparison tables.
    Suite(Common),
    /// Rank-sum comparison of two records files.
    Stats(StatsArgs),
    /// List the benchmark functions.
    Catalog(CatalogArgs),
    /// Run one of the application problems.
    App(AppArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Algorithms, comma separated (leo, ga, pso).
    #[arg(long, value_delimiter = ',')]
    pub alg: Vec<String>,
    /// Functions, comma separated: ids, ranges like TF1-TF7, or a family name
    /// (all, classical, unimodal, multimodal, composite, cec2019).
    #[arg(long = "fn", value_delimiter = ',')]
    pub functions: Vec<String>,
    /// Application instead of benchmark functions.
    #[arg(long, value_enum)]
    pub app: Option<AppKind>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Concurrent repetitions.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write per-run trace CSV files.
    #[arg(long)]
    pub traces: bool,
    /// Add published reference values to rendered tables.
    #[arg(long = "reference-data")]
    pub reference_data: bool,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub cpams: CpamsArgs,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct CpamsArgs {
    /// CPAMS node count.
    #[arg(long = "d")]
    pub nodes: Option<u32>,
    #[arg(long)]
    pub k1: Option<f64>,
    #[arg(long)]
    pub k2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AppKind {
    Igg,
    Cpams,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Print JSON lines instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct AppArgs {
    #[arg(value_enum, id = "application", value_name = "APP")]
    pub app: AppKind,
    #[command(flatten)]
    pub common: Common,
}

/// Values a config file may provide.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub alg: Option<ListValue>,
    #[serde(rename = "fn")]
    pub functions: Option<ListValue>,
    pub app: Option<AppKind>,
    pub reps: Option<usize>,
    pub iters: Option<usize>,
    pub pop: Option<usize>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub traces: Option<bool>,
    pub reference_data: Option<bool>,
    pub d: Option<u32>,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    /// Operator parameters; missing keys keep their defaults.
    pub run: Option<RunConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ListValue {
    One(String),
    Many(Vec<String>),
}

impl ListValue {
    fn into_vec(self) -> Vec<String> {
        match self {
            ListValue::One(s) => s.split(',').map(|t| t.trim().to_string()).collect(),
            ListValue::Many(v) => v,
        }
    }
}

/// Fully merged experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub algorithms: Vec<Algorithm>,
    pub functions: Vec<FunctionId>,
    pub app: Option<AppKind>,
    pub config: RunConfig,
    pub jobs: usize,
    pub out: PathBuf,
    pub traces: bool,
    pub reference_data: bool,
    pub cpams: (u32, f64, f64),
    /// Population and iterations given explicitly (flag or file).
    pub pop_set: bool,
    pub iters_set: bool,
}

pub fn load_file_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))
}

impl Common {
    /// Merges flags over the optional config file over defaults.
    pub fn resolve(&self, default_app: Option<AppKind>) -> Result<ExperimentSpec> {
        let file = match &self.config {
            Some(p) => load_file_config(p)?,
            None => FileConfig::default(),
        };
        let algs = if !self.alg.is_empty() {
            self.alg.clone()
        } else {
            file.alg.map(ListValue::into_vec).unwrap_or_else(|| vec!["leo".into()])
        };
        let algorithms = algs.iter().map(|a| a.parse()).collect::<Result<Vec<Algorithm>>>()?;
        let app = self.app.or(default_app).or(file.app);
        let fns = if !self.functions.is_empty() {
            self.functions.clone()
        } else {
            file.functions.map(ListValue::into_vec).unwrap_or_default()
        };
        let functions = if app.is_some() {
            if !fns.is_empty() {
                return Err(Error::config("--fn and --app are mutually exclusive"));
            }
            Vec::new()
        } else {
            if fns.is_empty() {
                return Err(Error::config("no functions selected (use --fn or --app)"));
            }
            parse_function_list(&fns)?
        };
        let mut config = file.run.unwrap_or_default();
        let pop = self.pop.or(file.pop);
        let iters = self.iters.or(file.iters);
        if let Some(p) = pop {
            config.population_size = p;
        }
        if let Some(t) = iters {
            config.iterations = t;
        }
        if let Some(r) = self.reps.or(file.reps) {
            config.repetitions = r;
        }
        if let Some(s) = self.seed.or(file.seed) {
            config.seed = s;
        }
        let traces = self.traces || file.traces.unwrap_or(false);
        config.traces = traces;
        let jobs = self
            .jobs
            .or(file.jobs)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1);
        Ok(ExperimentSpec {
            algorithms,
            functions,
            app,
            config,
            jobs,
            out: self.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("results")),
            traces,
            reference_data: self.reference_data || file.reference_data.unwrap_or(false),
            cpams: (
                self.cpams.nodes.or(file.d).unwrap_or(15),
                self.cpams.k1.or(file.k1).unwrap_or(0.0),
                self.cpams.k2.or(file.k2).unwrap_or(0.1),
            ),
            pop_set: pop.is_some(),
            iters_set: iters.is_some(),
        })
    }
}

fn family_members(f: Family) -> Vec<FunctionId> {
    crate::benchmarks::benchmark_catalog()
        .into_iter()
        .filter(|s| s.family == f)
        .map(|s| FunctionId::parse(&s.id).expect("catalog ids parse"))
        .collect()
}

/// Expands ids, ranges and family names, dropping duplicates.
pub fn parse_function_list(items: &[String]) -> Result<Vec<FunctionId>> {
    let mut out: Vec<FunctionId> = Vec::new();
    for raw in items {
        let item = raw.trim();
        if item.is_empty() {
            continue;
        }
        let ids: Vec<FunctionId> = match item.to_ascii_lowercase().as_str() {
            "all" => FunctionId::all(),
            "classical" => FunctionId::all().into_iter().filter(|f| !matches!(f, FunctionId::Cec(_))).collect(),
            "unimodal" => family_members(Family::Unimodal),
            "multimodal" => family_members(Family::Multimodal),
            "composite" => family_members(Family::Composite),
            "cec" | "cec2019" => family_members(Family::Cec2019),
            _ => match item.split_once('-') {
                Some((a, b)) => {
                    let all = FunctionId::all();
                    let (a, b) = (FunctionId::parse(a)?, FunctionId::parse(b)?);
                    let i = all.iter().position(|f| *f == a).unwrap();
                    let j = all.iter().position(|f| *f == b).unwrap();
                    if i > j {
                        return Err(Error::config(format!("empty range {item:?}")));
                    }
                    all[i..=j].to_vec()
                }
                None => vec![FunctionId::parse(item)?],
            },
        };
        for id in ids {
            if !out.contains(&id) {
                out.push(id);
            }
        }
    }
    Ok(out)
}
