//! The Leo optimizer: group partition, parent selection, LPX, mutation and
//! elitist replacement.

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::operators::{gaussian_mutate, guard, lpx, LpxParams, MutationParams};
use crate::population::{evaluate_all, initialize_population};
use crate::problem::{clamp_in_place, is_better, Candidate, Problem, Sense};
use crate::result::{RunResult, Tracker};
use crate::rng::RandomStream;

/// Split of the better half of the population into two pools.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    /// All indices, best first.
    pub ranked: Vec<usize>,
    /// The best `N/2` indices, best first.
    pub hg: Vec<usize>,
    pub fg_pool: Vec<usize>,
    pub sg_pool: Vec<usize>,
    pub fg_champion: usize,
    pub sg_champion: usize,
}

/// `candidate / champion` with the operators' divisor guard.
pub fn relative_fitness(candidate_value: f64, champion_value: f64, epsilon_div: f64) -> f64 {
    candidate_value / guard(champion_value, epsilon_div)
}

/// Indices sorted best first, ties by lower index.
pub fn rank_indices(pop: &[Candidate], sense: Sense) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pop.len()).collect();
    idx.sort_by(|&a, &b| sense.cmp(pop[a].value, pop[b].value));
    idx
}

fn champion(group: &[usize], pop: &[Candidate], sense: Sense) -> usize {
    let mut best = group[0];
    for &i in &group[1..] {
        if is_better(pop[i].value, pop[best].value, sense) {
            best = i;
        }
    }
    best
}

/// Partitions the best half of an evaluated population.
///
/// The better half is shuffled into two provisional groups; the group whose
/// champion is better becomes the first group. Members no better than the
/// second champion go to `sg_pool`, members no better than the first
/// champion go to `fg_pool`, anything else stays with its provisional group.
pub fn partition_groups(pop: &[Candidate], sense: Sense, rng: &mut RandomStream) -> Result<GroupPartition> {
    let n = pop.len();
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::State(format!("population of {n} cannot be split into two groups")));
    }
    if let Some(i) = pop.iter().position(|c| !c.evaluated || !c.value.is_finite()) {
        return Err(Error::State(format!("candidate {i} is not evaluated")));
    }
    let ranked = rank_indices(pop, sense);
    let hg: Vec<usize> = ranked[..n / 2].to_vec();
    let mut shuffled = hg.clone();
    rng.shuffle(&mut shuffled);
    let (mut g1, mut g2) = shuffled.split_at(shuffled.len() / 2);
    let mut c1 = champion(g1, pop, sense);
    let mut c2 = champion(g2, pop, sense);
    if is_better(pop[c2].value, pop[c1].value, sense) {
        std::mem::swap(&mut g1, &mut g2);
        std::mem::swap(&mut c1, &mut c2);
    }
    let mut fg_pool = Vec::new();
    let mut sg_pool = Vec::new();
    for &m in &hg {
        let v = pop[m].value;
        if !is_better(v, pop[c2].value, sense) {
            sg_pool.push(m);
        } else if !is_better(v, pop[c1].value, sense) || g1.contains(&m) {
            fg_pool.push(m);
        } else {
            sg_pool.push(m);
        }
    }
    Ok(GroupPartition { ranked, hg, fg_pool, sg_pool, fg_champion: c1, sg_champion: c2 })
}

/// `count` distinct parents: shuffled `fg_pool`, then shuffled `sg_pool`,
/// then the rest of the population best first.
pub fn select_parents(partition: &GroupPartition, count: usize, rng: &mut RandomStream) -> Result<Vec<usize>> {
    let n = partition.ranked.len();
    if count > n {
        return Err(Error::config(format!("{count} parents requested from a population of {n}")));
    }
    if count < 2 || !count.is_multiple_of(2) {
        return Err(Error::config(format!("parent count {count} must be even and at least 2")));
    }
    let mut fg = partition.fg_pool.clone();
    let mut sg = partition.sg_pool.clone();
    rng.shuffle(&mut fg);
    rng.shuffle(&mut sg);
    let mut out = fg;
    out.extend(sg);
    if out.len() < count {
        for &i in &partition.ranked {
            if out.len() == count {
                break;
            }
            if !out.contains(&i) {
                out.push(i);
            }
        }
    }
    out.truncate(count);
    Ok(out)
}

/// Crossover pairs per generation: `round(crossover_rate * N / 2)`.
pub fn crossover_pairs(config: &RunConfig) -> usize {
    (config.crossover_rate * config.population_size as f64 / 2.0).round() as usize
}

/// Mutants per generation: `round(mutation_rate * N)`.
pub fn mutant_count(config: &RunConfig) -> usize {
    (config.mutation_rate * config.population_size as f64).round() as usize
}

/// State carried between Leo generations.
#[derive(Debug, Clone)]
pub struct LeoState {
    /// Evaluated, sorted best first after every step.
    pub population: Vec<Candidate>,
    pub generation: usize,
    pub best_so_far: Candidate,
    pub rng: RandomStream,
    pub config: RunConfig,
    pub problem: Problem,
    pub evaluations: u64,
    pub repairs: u64,
}

impl LeoState {
    /// Random initial population, evaluated.
    pub fn new(problem: &Problem, config: &RunConfig, seed: u64) -> Result<Self> {
        config.validate_leo()?;
        let mut rng = RandomStream::new(seed);
        let mut population = initialize_population(problem, config.population_size, &mut rng)?;
        Self::from_population_with(problem, config, &mut population, rng)
    }

    /// Starts from the given genes. They are clamped and evaluated.
    pub fn from_population(problem: &Problem, config: &RunConfig, genes: Vec<Vec<f64>>, seed: u64) -> Result<Self> {
        config.validate_leo()?;
        if genes.len() != config.population_size {
            return Err(Error::config("initial population size differs from population_size"));
        }
        let mut population: Vec<Candidate> = genes.into_iter().map(Candidate::new).collect();
        Self::from_population_with(problem, config, &mut population, RandomStream::new(seed))
    }

    fn from_population_with(
        problem: &Problem,
        config: &RunConfig,
        population: &mut [Candidate],
        mut rng: RandomStream,
    ) -> Result<Self> {
        let mut repairs = 0;
        for c in population.iter_mut() {
            repairs += clamp_in_place(&mut c.genes, &problem.lower, &problem.upper) as u64;
        }
        let evaluations = evaluate_all(problem, population, &mut rng)?;
        let order = rank_indices(population, problem.sense);
        let population: Vec<Candidate> = order.into_iter().map(|i| population[i].clone()).collect();
        Ok(Self {
            best_so_far: population[0].clone(),
            population,
            generation: 0,
            rng,
            config: config.clone(),
            problem: problem.clone(),
            evaluations,
            repairs,
        })
    }
}

/// Advances `state` by one generation.
pub fn leo_step(state: &mut LeoState) -> Result<()> {
    let problem = &state.problem;
    let cfg = &state.config;
    let rng = &mut state.rng;
    let sense = problem.sense;
    let part = partition_groups(&state.population, sense, rng)?;

    let mut kids: Vec<Candidate> = Vec::new();
    let pairs = crossover_pairs(cfg);
    if pairs > 0 {
        let parents = select_parents(&part, 2 * pairs, rng)?;
        for pair in parents.chunks_exact(2) {
            let x1 = &state.population[pair[0]].genes;
            let x2 = &state.population[pair[1]].genes;
            let params = LpxParams::draw(cfg.alpha_low, cfg.alpha_high, cfg.epsilon_div, rng);
            let (y1, y2) = lpx(x1, x2, params)?;
            kids.push(Candidate::new(y1));
            kids.push(Candidate::new(y2));
        }
    }

    let source = if part.fg_pool.is_empty() { &part.sg_pool } else { &part.fg_pool };
    for _ in 0..mutant_count(cfg) {
        let parent = source[rng.below(source.len())];
        let params = MutationParams::draw(cfg.sigma_low, cfg.sigma_high, cfg.mutation_rate, rng);
        kids.push(Candidate::new(gaussian_mutate(&state.population[parent].genes, params, rng)));
    }

    for k in kids.iter_mut() {
        state.repairs += clamp_in_place(&mut k.genes, &problem.lower, &problem.upper) as u64;
    }
    state.evaluations += evaluate_all(problem, &mut kids, rng)?;

    let mut merged = std::mem::take(&mut state.population);
    merged.extend(kids);
    merged.sort_by(|a, b| sense.cmp(a.value, b.value));
    merged.truncate(cfg.population_size);
    if is_better(merged[0].value, state.best_so_far.value, sense) {
        state.best_so_far = merged[0].clone();
    }
    state.population = merged;
    state.generation += 1;
    Ok(())
}

/// Runs Leo for `config.iterations` generations from seed `config.seed`.
pub fn leo_run(problem: &Problem, config: &RunConfig) -> Result<RunResult> {
    let state = LeoState::new(problem, config, config.seed)?;
    leo_run_from(state)
}

/// Runs the remaining `iterations - generation` generations of `state`.
pub fn leo_run_from(mut state: LeoState) -> Result<RunResult> {
    let mut tracker = Tracker::new(&state.problem, state.config.traces);
    tracker.record(&state.population);
    while state.generation < state.config.iterations {
        leo_step(&mut state)?;
        tracker.record(&state.population);
    }
    tracker.evaluations = state.evaluations;
    tracker.repairs = state.repairs;
    tracker.best = state.best_so_far.clone();
    Ok(tracker.finish("leo", &state.problem, state.config.seed))
}
