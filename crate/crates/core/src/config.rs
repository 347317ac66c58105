use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters shared by every run of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub population_size: usize,
    pub iterations: usize,
    pub repetitions: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub alpha_low: f64,
    pub alpha_high: f64,
    pub sigma_low: f64,
    pub sigma_high: f64,
    pub epsilon_div: f64,
    pub seed: u64,
    /// Record search history and trajectory traces.
    pub traces: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            iterations: 500,
            repetitions: 30,
            crossover_rate: 0.6,
            mutation_rate: 0.3,
            alpha_low: 0.2,
            alpha_high: 0.3,
            sigma_low: -1.0,
            sigma_high: 1.0,
            epsilon_div: 1e-12,
            seed: 0,
            traces: false,
        }
    }
}

impl RunConfig {
    pub fn with_population(mut self, n: usize) -> Self {
        self.population_size = n;
        self
    }

    pub fn with_iterations(mut self, t: usize) -> Self {
        self.iterations = t;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Checks the invariants common to all algorithms.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.population_size < 2 {
            return bad("population_size must be at least 2");
        }
        if self.repetitions == 0 {
            return bad("repetitions must be positive");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return bad("crossover_rate must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("mutation_rate must lie in [0, 1]");
        }
        if self.alpha_low.partial_cmp(&self.alpha_high) != Some(Ordering::Less) {
            return bad("alpha_low must be below alpha_high");
        }
        if self.sigma_low.partial_cmp(&self.sigma_high) != Some(Ordering::Less) {
            return bad("sigma_low must be below sigma_high");
        }
        if self.epsilon_div.is_nan() || self.epsilon_div <= 0.0 {
            return bad("epsilon_div must be positive");
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus the Leo-specific population rules.
    pub fn validate_leo(&self) -> Result<()> {
        self.validate()?;
        if !self.population_size.is_multiple_of(2) {
            return Err(Error::config("population_size must be even"));
        }
        if self.population_size < 4 {
            return Err(Error::config("population_size must be at least 4"));
        }
        Ok(())
    }
}
