//! Summary statistics and the Wilcoxon rank-sum test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Final best values of one (algorithm, function) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub label: String,
    pub values: Vec<f64>,
}

impl SampleSet {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Self {
        Self { label: label.into(), values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator); 0 for a single value.
    pub std: f64,
    /// Set when `n == 1`.
    pub degenerate: bool,
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::Stats("cannot summarize an empty sample".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Stats("sample contains non-finite values".into()));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return Ok(Summary { n, mean, std: 0.0, degenerate: true });
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok(Summary { n, mean, std: var.sqrt(), degenerate: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    NormalApproximation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    TwoSided,
    /// `a` tends to be smaller than `b`.
    Less,
    /// `a` tends to be larger than `b`.
    Greater,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// Mann-Whitney `U` of the first sample.
    pub u_statistic: f64,
    /// Rank sum of the first sample.
    pub rank_sum: f64,
    pub p_value: f64,
    pub method: Method,
    pub significant_at_0_05: bool,
}

/// Largest sample size for which the exact null distribution is used.
pub const EXACT_LIMIT: usize = 12;
pub const MIN_SAMPLE: usize = 3;

/// Mid-ranks (1-based) of the pooled samples, plus whether any ties occurred.
fn pooled_ranks(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<usize>, bool) {
    let mut all: Vec<(f64, usize)> = a.iter().map(|&v| (v, 0)).chain(b.iter().map(|&v| (v, 1))).collect();
    all.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut ranks = vec![0.0; all.len()];
    let mut tie_sizes = Vec::new();
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j].0 == all[i].0 {
            j += 1;
        }
        let mid = (i + j + 1) as f64 / 2.0;
        ranks[i..j].iter_mut().for_each(|r| *r = mid);
        if j - i > 1 {
            tie_sizes.push(j - i);
        }
        i = j;
    }
    let a_ranks: Vec<f64> = all.iter().zip(&ranks).filter(|(e, _)| e.1 == 0).map(|(_, r)| *r).collect();
    let tied = !tie_sizes.is_empty();
    (a_ranks, tie_sizes, tied)
}

/// Number of `k`-subsets of `{1..n}` with each possible sum, indexed by sum.
pub(crate) fn rank_sum_counts(n: usize, k: usize) -> Vec<f64> {
    let max_sum = n * (n + 1) / 2;
    // dp[j][s]: subsets of size j with sum s among the ranks seen so far
    let mut dp = vec![vec![0.0f64; max_sum + 1]; k + 1];
    dp[0][0] = 1.0;
    for r in 1..=n {
        for j in (1..=k.min(r)).rev() {
            for s in (r..=max_sum).rev() {
                let add = dp[j - 1][s - r];
                if add != 0.0 {
                    dp[j][s] += add;
                }
            }
        }
    }
    dp.swap_remove(k)
}

/// Two-sided rank-sum test.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    wilcoxon_rank_sum_with(a, b, Alternative::TwoSided)
}

pub fn wilcoxon_rank_sum_with(a: &[f64], b: &[f64], alternative: Alternative) -> Result<WilcoxonResult> {
    check_samples(a, b)?;
    let (_, _, tied) = pooled_ranks(a, b);
    let method = if a.len() <= EXACT_LIMIT && b.len() <= EXACT_LIMIT && !tied {
        Method::Exact
    } else {
        Method::NormalApproximation
    };
    wilcoxon_rank_sum_using(a, b, alternative, method)
}

/// Rank-sum test with the p-value method fixed by the caller.
///
/// `Method::Exact` is refused for tied samples and for samples above
/// [`EXACT_LIMIT`].
pub fn wilcoxon_rank_sum_using(
    a: &[f64],
    b: &[f64],
    alternative: Alternative,
    method: Method,
) -> Result<WilcoxonResult> {
    check_samples(a, b)?;
    let (na, nb) = (a.len(), b.len());
    let n = na + nb;
    let (a_ranks, ties, tied) = pooled_ranks(a, b);
    let w: f64 = a_ranks.iter().sum();
    let u = w - (na * (na + 1)) as f64 / 2.0;

    let p = match method {
        Method::Exact => {
            if tied || na > EXACT_LIMIT || nb > EXACT_LIMIT {
                return Err(Error::Stats(format!(
                    "exact p-value needs tie-free samples of at most {EXACT_LIMIT} values"
                )));
            }
            let counts = rank_sum_counts(n, na);
            let total: f64 = counts.iter().sum();
            let w_int = w.round() as usize;
            let lower: f64 = counts[..=w_int].iter().sum::<f64>() / total;
            let upper: f64 = counts[w_int..].iter().sum::<f64>() / total;
            match alternative {
                Alternative::TwoSided => (2.0 * lower.min(upper)).min(1.0),
                Alternative::Less => lower,
                Alternative::Greater => upper,
            }
        }
        Method::NormalApproximation => {
            let mean = na as f64 * (n + 1) as f64 / 2.0;
            let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / (n * (n - 1)) as f64;
            let var = na as f64 * nb as f64 / 12.0 * ((n + 1) as f64 - tie_term);
            if var <= 0.0 {
                1.0
            } else {
                let sd = var.sqrt();
                let normal = Normal::standard();
                match alternative {
                    Alternative::TwoSided => {
                        let z = ((w - mean).abs() - 0.5).max(0.0) / sd;
                        (2.0 * normal.sf(z)).min(1.0)
                    }
                    Alternative::Less => normal.cdf((w - mean + 0.5) / sd),
                    Alternative::Greater => normal.sf((w - mean - 0.5) / sd),
                }
            }
        }
    };
    let p = p.clamp(0.0, 1.0);
    Ok(WilcoxonResult { u_statistic: u, rank_sum: w, p_value: p, method, significant_at_0_05: p < 0.05 })
}

fn check_samples(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() < MIN_SAMPLE || b.len() < MIN_SAMPLE {
        return Err(Error::Stats(format!(
            "rank-sum test needs at least {MIN_SAMPLE} values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::Stats("samples contain non-finite values".into()));
    }
    Ok(())
}

/// Mean/std per (function, algorithm) and subject-vs-other p-values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub subject: String,
    pub functions: Vec<String>,
    pub algorithms: Vec<String>,
    /// `summaries[f][a]` for function `f`, algorithm `a` in list order.
    pub summaries: Vec<Vec<Summary>>,
    pub comparisons: Vec<Comparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub function: String,
    pub other: String,
    pub result: WilcoxonResult,
}

impl StatsReport {
    pub fn summary(&self, function: &str, algorithm: &str) -> Option<&Summary> {
        let f = self.functions.iter().position(|x| x == function)?;
        let a = self.algorithms.iter().position(|x| x == algorithm)?;
        Some(&self.summaries[f][a])
    }

    pub fn p_value(&self, function: &str, other: &str) -> Option<f64> {
        self.comparisons.iter().find(|c| c.function == function && c.other == other).map(|c| c.result.p_value)
    }
}

/// Samples keyed by algorithm, then function.
pub type ResultGrid = BTreeMap<String, BTreeMap<String, Vec<f64>>>;

/// Builds the comparison table.
///
/// `algorithms` and `functions` fix the output order. Every algorithm must
/// have the same number of repetitions on each function. P-values are
/// computed for `subject` against every other algorithm when it is present.
pub fn comparison_table(
    grid: &ResultGrid,
    algorithms: &[String],
    functions: &[String],
    subject: &str,
) -> Result<StatsReport> {
    let mut summaries = Vec::with_capacity(functions.len());
    let mut comparisons = Vec::new();
    for f in functions {
        let mut row = Vec::with_capacity(algorithms.len());
        let mut reps: Option<usize> = None;
        for a in algorithms {
            let values =
                grid.get(a).and_then(|m| m.get(f)).ok_or_else(|| Error::Stats(format!("no results for {a} on {f}")))?;
            match reps {
                None => reps = Some(values.len()),
                Some(r) if r != values.len() => {
                    return Err(Error::Stats(format!("{a} on {f} has {} repetitions, expected {r}", values.len())))
                }
                _ => {}
            }
            row.push(summarize(values)?);
        }
        summaries.push(row);
        if let Some(base) = grid.get(subject).and_then(|m| m.get(f)) {
            for a in algorithms.iter().filter(|a| a.as_str() != subject) {
                if let Ok(result) = wilcoxon_rank_sum(base, &grid[a][f]) {
                    comparisons.push(Comparison { function: f.clone(), other: a.clone(), result });
                }
            }
        }
    }
    Ok(StatsReport {
        subject: subject.to_string(),
        functions: functions.to_vec(),
        algorithms: algorithms.to_vec(),
        summaries,
        comparisons,
    })
}
