//! Lagrangian problem crossover (LPX) and Gaussian mutation.

use crate::error::{Error, Result};
use crate::rng::RandomStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpxParams {
    pub alpha: f64,
    pub epsilon_div: f64,
}

impl LpxParams {
    /// Draws `alpha` uniformly from `[low, high)`.
    pub fn draw(low: f64, high: f64, epsilon_div: f64, rng: &mut RandomStream) -> Self {
        Self { alpha: rng.uniform(low, high), epsilon_div }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutationParams {
    pub sigma: f64,
    pub gene_prob: f64,
}

impl MutationParams {
    pub fn draw(sigma_low: f64, sigma_high: f64, gene_prob: f64, rng: &mut RandomStream) -> Self {
        Self { sigma: rng.uniform(sigma_low, sigma_high), gene_prob }
    }
}

/// Sign-preserving floor on magnitude; `guard(0) = eps`.
#[inline]
pub fn guard(v: f64, eps: f64) -> f64 {
    if v.abs() >= eps {
        v
    } else if v.is_sign_negative() && v != 0.0 {
        -eps
    } else {
        eps
    }
}

#[inline]
fn lpx_gene(a: f64, b: f64, alpha: f64) -> f64 {
    (a - b).powi(2) + (b - 1.0).powi(2) - (alpha * (a + 2.0 * b - 1.0) + alpha * (2.0 * a + b - 1.0))
}

/// Gene-wise offspring pair. `o2` is `o1` with the parents' roles swapped.
pub fn lpx_offspring_pair(x1: &[f64], x2: &[f64], alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if x1.len() != x2.len() {
        return Err(Error::Operator(format!("parent lengths differ: {} vs {}", x1.len(), x2.len())));
    }
    let o1 = x1.iter().zip(x2).map(|(&a, &b)| lpx_gene(a, b, alpha)).collect();
    let o2 = x1.iter().zip(x2).map(|(&a, &b)| lpx_gene(b, a, alpha)).collect();
    Ok((o1, o2))
}

/// `y1 = o2 / x1`, `y2 = o1 / x2`, gene-wise with guarded divisors.
///
/// The caller clamps the result into the box.
pub fn lpx_gene_update(o1: &[f64], o2: &[f64], x1: &[f64], x2: &[f64], epsilon_div: f64) -> (Vec<f64>, Vec<f64>) {
    let y1 = o2.iter().zip(x1).map(|(o, x)| o / guard(*x, epsilon_div)).collect();
    let y2 = o1.iter().zip(x2).map(|(o, x)| o / guard(*x, epsilon_div)).collect();
    (y1, y2)
}

/// Both LPX stages for one parent pair.
pub fn lpx(x1: &[f64], x2: &[f64], params: LpxParams) -> Result<(Vec<f64>, Vec<f64>)> {
    let (o1, o2) = lpx_offspring_pair(x1, x2, params.alpha)?;
    Ok(lpx_gene_update(&o1, &o2, x1, x2, params.epsilon_div))
}

/// Adds `sigma * N(0,1)` to each gene independently selected with `gene_prob`.
pub fn gaussian_mutate(genes: &[f64], params: MutationParams, rng: &mut RandomStream) -> Vec<f64> {
    genes
        .iter()
        .map(|&g| if rng.chance(params.gene_prob) { g + params.sigma * rng.standard_normal() } else { g })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offspring_hand_values() {
        let (o1, _) = lpx_offspring_pair(&[1.0], &[1.0], 0.25).unwrap();
        assert!((o1[0] + 1.0).abs() < 1e-15);
        let (o1, o2) = lpx_offspring_pair(&[2.0], &[0.0], 0.25).unwrap();
        assert!((o1[0] - 4.0).abs() < 1e-15);
        // swapped roles: (0-2)^2 + (2-1)^2 - 0.25*(0+4-1) - 0.25*(0+2-1)
        assert!((o2[0] - 4.0).abs() < 1e-15);
    }

    #[test]
    fn equal_parents_give_equal_offspring() {
        let x = [0.3, -2.0, 7.5];
        let (o1, o2) = lpx_offspring_pair(&x, &x, 0.27).unwrap();
        assert_eq!(o1, o2);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(lpx_offspring_pair(&[1.0], &[1.0, 2.0], 0.2).is_err());
    }

    #[test]
    fn gene_update_examples() {
        let (y1, _) = lpx_gene_update(&[0.0], &[6.0], &[2.0], &[1.0], 1e-12);
        assert_eq!(y1, vec![3.0]);
        let (y1, _) = lpx_gene_update(&[0.0], &[1.0], &[0.0], &[1.0], 1e-12);
        assert!((y1[0] - 1e12).abs() < 1e-3);
        let (y1, _) = lpx_gene_update(&[0.0], &[-4.0], &[-2.0], &[1.0], 1e-12);
        assert_eq!(y1, vec![2.0]);
    }

    #[test]
    fn guard_sign_rules() {
        assert_eq!(guard(0.0, 1e-12), 1e-12);
        assert_eq!(guard(-0.0, 1e-12), 1e-12);
        assert_eq!(guard(-1e-15, 1e-12), -1e-12);
        assert_eq!(guard(2.0, 1e-12), 2.0);
    }

    #[test]
    fn mutation_identity_cases() {
        let g: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let mut rng = RandomStream::new(4);
        let zero_sigma = MutationParams { sigma: 0.0, gene_prob: 1.0 };
        assert_eq!(gaussian_mutate(&g, zero_sigma, &mut rng), g);
        let zero_prob = MutationParams { sigma: 0.7, gene_prob: 0.0 };
        assert_eq!(gaussian_mutate(&g, zero_prob, &mut rng), g);
    }

    #[test]
    fn mutation_steps_are_standard_normal() {
        let d = 10_000;
        let g = vec![1.5; d];
        let sigma = 0.4;
        let out = gaussian_mutate(&g, MutationParams { sigma, gene_prob: 1.0 }, &mut RandomStream::new(12));
        let eta: Vec<f64> = out.iter().zip(&g).map(|(o, i)| (o - i) / sigma).collect();
        let mean = eta.iter().sum::<f64>() / d as f64;
        let var = eta.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (d - 1) as f64;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }

    #[test]
    fn changed_fraction_tracks_gene_prob() {
        let d = 10_000;
        let g = vec![0.0; d];
        let out = gaussian_mutate(&g, MutationParams { sigma: 0.9, gene_prob: 0.3 }, &mut RandomStream::new(5));
        let frac = out.iter().filter(|v| **v != 0.0).count() as f64 / d as f64;
        assert!((frac - 0.3).abs() < 0.02, "fraction {frac}");
    }
}
