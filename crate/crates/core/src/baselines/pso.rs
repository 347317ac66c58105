//! Global-best PSO with linearly decreasing inertia.

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::population::{evaluate_all, initialize_population};
use crate::problem::{clamp_in_place, is_better, Candidate, Problem};
use crate::result::{RunResult, Tracker};
use crate::rng::RandomStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PsoConfig {
    pub population_size: usize,
    pub iterations: usize,
    pub inertia_start: f64,
    pub inertia_end: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity limit as a fraction of each dimension's range.
    pub velocity_clamp_fraction: f64,
    pub traces: bool,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            iterations: 500,
            inertia_start: 0.9,
            inertia_end: 0.4,
            cognitive: 2.0,
            social: 2.0,
            velocity_clamp_fraction: 0.2,
            traces: false,
        }
    }
}

impl PsoConfig {
    pub fn from_run(run: &RunConfig) -> Self {
        Self { population_size: run.population_size, iterations: run.iterations, traces: run.traces, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 1 {
            return Err(Error::config("PSO swarm must not be empty"));
        }
        if !(self.inertia_start >= self.inertia_end && self.inertia_end >= 0.0) {
            return Err(Error::config("PSO inertia must decrease to a non-negative value"));
        }
        if !(self.velocity_clamp_fraction > 0.0 && self.velocity_clamp_fraction <= 1.0) {
            return Err(Error::config("PSO velocity_clamp_fraction must lie in (0, 1]"));
        }
        Ok(())
    }

    /// Inertia at iteration `t` of `iterations`.
    pub fn inertia(&self, t: usize) -> f64 {
        if self.iterations <= 1 {
            return self.inertia_start;
        }
        let frac = t as f64 / (self.iterations - 1) as f64;
        self.inertia_start - (self.inertia_start - self.inertia_end) * frac
    }
}

/// Runs PSO from a random swarm.
pub fn pso_run(problem: &Problem, config: &PsoConfig, seed: u64) -> Result<RunResult> {
    config.validate()?;
    let mut rng = RandomStream::new(seed);
    let swarm = initialize_population(problem, config.population_size, &mut rng)?;
    run(problem, config, swarm.into_iter().map(|c| c.genes).collect(), rng, seed)
}

/// Runs PSO from the given positions with zero initial velocity.
pub fn pso_run_from(problem: &Problem, config: &PsoConfig, positions: Vec<Vec<f64>>, seed: u64) -> Result<RunResult> {
    config.validate()?;
    if positions.len() != config.population_size || positions.iter().any(|p| p.len() != problem.dimension) {
        return Err(Error::config("initial swarm does not match population_size/dimension"));
    }
    run(problem, config, positions, RandomStream::new(seed), seed)
}

fn run(
    problem: &Problem,
    config: &PsoConfig,
    positions: Vec<Vec<f64>>,
    mut rng: RandomStream,
    seed: u64,
) -> Result<RunResult> {
    let d = problem.dimension;
    let vmax: Vec<f64> =
        problem.lower.iter().zip(&problem.upper).map(|(l, u)| config.velocity_clamp_fraction * (u - l)).collect();
    let mut tracker = Tracker::new(problem, config.traces);

    let mut swarm: Vec<Candidate> = positions.into_iter().map(Candidate::new).collect();
    for p in swarm.iter_mut() {
        tracker.repairs += clamp_in_place(&mut p.genes, &problem.lower, &problem.upper) as u64;
    }
    tracker.evaluations += evaluate_all(problem, &mut swarm, &mut rng)?;
    let mut velocity = vec![vec![0.0; d]; swarm.len()];
    let mut personal = swarm.clone();
    tracker.record(&swarm);
    let mut global = tracker.best.clone();

    for t in 0..config.iterations {
        let w = config.inertia(t);
        for (i, p) in swarm.iter_mut().enumerate() {
            for g in 0..d {
                let r1 = rng.unit();
                let r2 = rng.unit();
                let v = w * velocity[i][g]
                    + config.cognitive * r1 * (personal[i].genes[g] - p.genes[g])
                    + config.social * r2 * (global.genes[g] - p.genes[g]);
                velocity[i][g] = v.clamp(-vmax[g], vmax[g]);
                p.genes[g] += velocity[i][g];
            }
            tracker.repairs += clamp_in_place(&mut p.genes, &problem.lower, &problem.upper) as u64;
            problem.evaluate_candidate(p, &mut rng)?;
            tracker.evaluations += 1;
            if is_better(p.value, personal[i].value, problem.sense) {
                personal[i] = p.clone();
            }
            if is_better(p.value, global.value, problem.sense) {
                global = p.clone();
            }
        }
        tracker.record(&swarm);
    }
    Ok(tracker.finish("pso", problem, seed))
}
