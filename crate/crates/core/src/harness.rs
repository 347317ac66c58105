//! One entry point for every optimizer.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{ga_run, pso_run, GaConfig, PsoConfig};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::leo::leo_run;
use crate::problem::Problem;
use crate::result::RunResult;
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Leo,
    Ga,
    Pso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Leo, Algorithm::Ga, Algorithm::Pso];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Leo => "leo",
            Algorithm::Ga => "ga",
            Algorithm::Pso => "pso",
        }
    }

    /// One run with the given seed; `config.seed` is ignored.
    pub fn run(self, problem: &Problem, config: &RunConfig, seed: u64) -> Result<RunResult> {
        match self {
            Algorithm::Leo => {
                let cfg = RunConfig { seed, ..config.clone() };
                leo_run(problem, &cfg)
            }
            Algorithm::Ga => ga_run(problem, &GaConfig::from_run(config), seed),
            Algorithm::Pso => pso_run(problem, &PsoConfig::from_run(config), seed),
        }
    }

    /// Checks `config` the way [`run`](Self::run) would, without evaluating anything.
    pub fn validate(self, config: &RunConfig) -> Result<()> {
        match self {
            Algorithm::Leo => config.validate_leo(),
            Algorithm::Ga => {
                config.validate()?;
                GaConfig::from_run(config).validate()
            }
            Algorithm::Pso => {
                config.validate()?;
                PsoConfig::from_run(config).validate()
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "leo" => Ok(Algorithm::Leo),
            "ga" => Ok(Algorithm::Ga),
            "pso" => Ok(Algorithm::Pso),
            other => Err(Error::config(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// `config.repetitions` runs with seeds `derive_seed(config.seed, i)`,
/// returned in repetition order. Runs execute on up to `jobs` threads.
pub fn run_repetitions(
    algorithm: Algorithm,
    problem: &Problem,
    config: &RunConfig,
    jobs: usize,
) -> Vec<(u64, Result<RunResult>)> {
    let seeds: Vec<u64> = (0..config.repetitions as u64).map(|i| derive_seed(config.seed, i)).collect();
    let work = || -> Vec<(u64, Result<RunResult>)> {
        seeds.par_iter().map(|&s| (s, algorithm.run(problem, config, s))).collect()
    };
    if jobs <= 1 {
        return seeds.iter().map(|&s| (s, algorithm.run(problem, config, s))).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::problem;

    #[test]
    fn parse_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("de".parse::<Algorithm>().is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let p = problem("TF1").unwrap();
        let cfg = RunConfig { population_size: 10, iterations: 5, repetitions: 4, seed: 3, ..RunConfig::default() };
        for a in Algorithm::ALL {
            let s: Vec<_> = run_repetitions(a, &p, &cfg, 1).into_iter().map(|(s, r)| (s, r.unwrap())).collect();
            let q: Vec<_> = run_repetitions(a, &p, &cfg, 3).into_iter().map(|(s, r)| (s, r.unwrap())).collect();
            assert_eq!(s, q);
            assert_eq!(s[2].0, derive_seed(3, 2));
        }
    }
}
