use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::metrics::{record_iteration, TraceSet};
use crate::problem::{is_better, Candidate, Problem, Sense};

/// Outcome of one optimization run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunResult {
    pub algorithm: String,
    pub problem: String,
    pub seed: u64,
    pub best: Candidate,
    pub traces: TraceSet,
    /// Set when the search history padded a one-dimensional problem.
    pub history_padded: bool,
    pub evaluations: u64,
    /// Non-finite genes replaced by a bound.
    pub repairs: u64,
    pub elapsed_secs: f64,
}

/// Equality ignores `elapsed_secs`, the only field a fixed seed cannot pin down.
impl PartialEq for RunResult {
    fn eq(&self, o: &Self) -> bool {
        self.algorithm == o.algorithm
            && self.problem == o.problem
            && self.seed == o.seed
            && self.best == o.best
            && self.traces == o.traces
            && self.history_padded == o.history_padded
            && self.evaluations == o.evaluations
            && self.repairs == o.repairs
    }
}

impl RunResult {
    /// Best-so-far value after each generation, starting with the initial population.
    pub fn convergence(&self) -> &[f64] {
        &self.traces.convergence
    }

    pub fn mean_values(&self) -> &[f64] {
        &self.traces.average_fitness
    }

    pub fn final_best(&self) -> f64 {
        self.best.value
    }
}

/// Best-so-far bookkeeping shared by the optimizers.
pub(crate) struct Tracker {
    sense: Sense,
    pub best: Candidate,
    traces: TraceSet,
    positions: bool,
    padded: bool,
    pub evaluations: u64,
    pub repairs: u64,
    start: Instant,
}

impl Tracker {
    pub fn new(problem: &Problem, positions: bool) -> Self {
        Self {
            sense: problem.sense,
            best: Candidate { genes: Vec::new(), value: problem.sense.worst(), evaluated: false },
            traces: TraceSet::default(),
            positions,
            padded: false,
            evaluations: 0,
            repairs: 0,
            start: Instant::now(),
        }
    }

    pub fn observe(&mut self, pop: &[Candidate]) {
        for c in pop {
            if !self.best.evaluated || is_better(c.value, self.best.value, self.sense) {
                self.best = c.clone();
            }
        }
    }

    /// Observes `pop`, then appends one record to every trace.
    pub fn record(&mut self, pop: &[Candidate]) {
        self.observe(pop);
        self.padded |= record_iteration(pop, self.best.value, self.positions, &mut self.traces);
    }

    pub fn finish(self, algorithm: &str, problem: &Problem, seed: u64) -> RunResult {
        RunResult {
            algorithm: algorithm.to_string(),
            problem: problem.id.clone(),
            seed,
            best: self.best,
            traces: self.traces,
            history_padded: self.padded,
            evaluations: self.evaluations,
            repairs: self.repairs,
            elapsed_secs: self.start.elapsed().as_secs_f64(),
        }
    }
}
