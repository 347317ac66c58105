use crate::error::{Error, Result};
use crate::problem::{Candidate, Problem};
use crate::rng::RandomStream;

/// `n` unevaluated candidates with genes uniform on each bound interval.
pub fn initialize_population(problem: &Problem, n: usize, rng: &mut RandomStream) -> Result<Vec<Candidate>> {
    if n < 2 {
        return Err(Error::config(format!("population of {n} is too small")));
    }
    if problem.lower.len() != problem.dimension || problem.upper.len() != problem.dimension {
        return Err(Error::config("bound vectors do not match the dimension"));
    }
    if problem.lower.iter().zip(&problem.upper).any(|(l, u)| l.partial_cmp(u).is_none_or(|o| o.is_gt())) {
        return Err(Error::config("lower bound above upper bound"));
    }
    Ok((0..n)
        .map(|_| {
            let genes = (0..problem.dimension).map(|i| rng.uniform(problem.lower[i], problem.upper[i])).collect();
            Candidate::new(genes)
        })
        .collect())
}

/// Evaluates every candidate; returns the number of evaluations.
pub(crate) fn evaluate_all(problem: &Problem, pop: &mut [Candidate], rng: &mut RandomStream) -> Result<u64> {
    for c in pop.iter_mut() {
        problem.evaluate_candidate(c, rng)?;
    }
    Ok(pop.len() as u64)
}

/// Index of the best candidate (first on ties).
#[cfg(test)]
pub(crate) fn best_index(problem: &Problem, pop: &[Candidate]) -> usize {
    let mut best = 0;
    for i in 1..pop.len() {
        if crate::problem::is_better(pop[i].value, pop[best].value, problem.sense) {
            best = i;
        }
    }
    best
}
