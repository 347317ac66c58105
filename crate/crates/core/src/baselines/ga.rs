//! Generational real-coded GA: tournament selection, uniform crossover,
//! Gaussian per-gene mutation, one elite.

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::population::{evaluate_all, initialize_population};
use crate::problem::{clamp_in_place, is_better, Candidate, Problem};
use crate::result::{RunResult, Tracker};
use crate::rng::RandomStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population_size: usize,
    pub iterations: usize,
    pub crossover_rate: f64,
    /// Per-gene mutation probability; `None` means `1 / dimension`.
    pub mutation_rate: Option<f64>,
    pub tournament_size: usize,
    /// Mutation step as a fraction of each dimension's range.
    pub mutation_scale: f64,
    pub elitism: usize,
    pub traces: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            iterations: 500,
            crossover_rate: 0.9,
            mutation_rate: None,
            tournament_size: 3,
            mutation_scale: 0.1,
            elitism: 1,
            traces: false,
        }
    }
}

impl GaConfig {
    /// Population, budget and trace settings taken from `run`.
    pub fn from_run(run: &RunConfig) -> Self {
        Self { population_size: run.population_size, iterations: run.iterations, traces: run.traces, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::config("GA population must be at least 2"));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::config("GA crossover_rate must lie in [0, 1]"));
        }
        if self.mutation_rate.is_some_and(|m| !(0.0..=1.0).contains(&m)) {
            return Err(Error::config("GA mutation_rate must lie in [0, 1]"));
        }
        if self.tournament_size < 2 {
            return Err(Error::config("GA tournament_size must be at least 2"));
        }
        if self.elitism >= self.population_size {
            return Err(Error::config("GA elitism must be below the population size"));
        }
        Ok(())
    }
}

fn tournament<'a>(pop: &'a [Candidate], size: usize, problem: &Problem, rng: &mut RandomStream) -> &'a Candidate {
    let mut best = &pop[rng.below(pop.len())];
    for _ in 1..size {
        let c = &pop[rng.below(pop.len())];
        if is_better(c.value, best.value, problem.sense) {
            best = c;
        }
    }
    best
}

pub fn ga_run(problem: &Problem, config: &GaConfig, seed: u64) -> Result<RunResult> {
    config.validate()?;
    let mut rng = RandomStream::new(seed);
    let d = problem.dimension;
    let pm = config.mutation_rate.unwrap_or(1.0 / d as f64);
    let steps: Vec<f64> =
        problem.lower.iter().zip(&problem.upper).map(|(l, u)| config.mutation_scale * (u - l)).collect();

    let mut tracker = Tracker::new(problem, config.traces);
    let mut pop = initialize_population(problem, config.population_size, &mut rng)?;
    tracker.evaluations += evaluate_all(problem, &mut pop, &mut rng)?;
    tracker.record(&pop);

    for _ in 0..config.iterations {
        let mut next: Vec<Candidate> = Vec::with_capacity(pop.len());
        let mut ranked: Vec<&Candidate> = pop.iter().collect();
        ranked.sort_by(|a, b| problem.sense.cmp(a.value, b.value));
        next.extend(ranked.iter().take(config.elitism).map(|c| (*c).clone()));

        let mut children = Vec::with_capacity(pop.len());
        while next.len() + children.len() < pop.len() {
            let mut c1 = tournament(&pop, config.tournament_size, problem, &mut rng).genes.clone();
            let mut c2 = tournament(&pop, config.tournament_size, problem, &mut rng).genes.clone();
            if rng.chance(config.crossover_rate) {
                for g in 0..d {
                    if rng.chance(0.5) {
                        std::mem::swap(&mut c1[g], &mut c2[g]);
                    }
                }
            }
            for child in [&mut c1, &mut c2] {
                for (g, step) in child.iter_mut().zip(&steps) {
                    if rng.chance(pm) {
                        *g += step * rng.standard_normal();
                    }
                }
                tracker.repairs += clamp_in_place(child, &problem.lower, &problem.upper) as u64;
            }
            children.push(Candidate::new(c1));
            if next.len() + children.len() < pop.len() {
                children.push(Candidate::new(c2));
            }
        }
        tracker.evaluations += evaluate_all(problem, &mut children, &mut rng)?;
        next.extend(children);
        pop = next;
        tracker.record(&pop);
    }
    Ok(tracker.finish("ga", problem, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::best_index;
    use crate::problem::Sense;

    fn sphere() -> Problem {
        Problem::uniform_bounds("sphere", 5, -10.0, 10.0, Sense::Minimize, |z: &[f64]| {
            z.iter().map(|v| v * v).sum::<f64>()
        })
        .unwrap()
    }

    #[test]
    fn zero_iterations_is_initial_best() {
        let cfg = GaConfig { population_size: 12, iterations: 0, ..GaConfig::default() };
        let r = ga_run(&sphere(), &cfg, 3).unwrap();
        let mut rng = RandomStream::new(3);
        let mut pop = initialize_population(&sphere(), 12, &mut rng).unwrap();
        evaluate_all(&sphere(), &mut pop, &mut rng).unwrap();
        assert_eq!(r.final_best(), pop[best_index(&sphere(), &pop)].value);
    }

    #[test]
    fn deterministic_and_improving() {
        let cfg = GaConfig { population_size: 30, iterations: 60, ..GaConfig::default() };
        let a = ga_run(&sphere(), &cfg, 9).unwrap();
        assert_eq!(a, ga_run(&sphere(), &cfg, 9).unwrap());
        assert!(a.convergence().windows(2).all(|w| w[1] <= w[0]));
        assert!(a.final_best() < a.convergence()[0]);
        assert_eq!(a.evaluations, 30 + 60 * 29);
    }

    #[test]
    fn invalid_configs() {
        for cfg in [
            GaConfig { tournament_size: 1, ..GaConfig::default() },
            GaConfig { crossover_rate: 1.5, ..GaConfig::default() },
            GaConfig { population_size: 1, ..GaConfig::default() },
            GaConfig { mutation_rate: Some(-0.1), ..GaConfig::default() },
        ] {
            assert!(ga_run(&sphere(), &cfg, 0).is_err());
        }
    }
}
