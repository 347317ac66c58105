//! TF14-TF19: weighted compositions of ten basic functions.

use super::basic::{ackley, griewank, rastrigin, sphere, weierstrass};
use crate::error::{Error, Result};

pub const CONSTITUENTS: usize = 10;
pub const DIMENSION: usize = 10;
pub const RANGE: f64 = 5.0;
const VALUE_SCALE: f64 = 2000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basic {
    Sphere,
    Griewank,
    Rastrigin,
    Weierstrass,
    Ackley,
}

impl Basic {
    pub fn eval(self, z: &[f64]) -> f64 {
        match self {
            Basic::Sphere => sphere(z),
            Basic::Griewank => griewank(z),
            Basic::Rastrigin => rastrigin(z),
            Basic::Weierstrass => weierstrass(z),
            Basic::Ackley => ackley(z),
        }
    }
}

/// One composite function with its constituents and optima.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeSpec {
    pub id: String,
    pub functions: [Basic; CONSTITUENTS],
    pub lambda: [f64; CONSTITUENTS],
    pub delta: [f64; CONSTITUENTS],
    pub optima: Vec<Vec<f64>>,
    pub bias: [f64; CONSTITUENTS],
    /// `|f_i(5 / lambda_i)|`, the per-constituent value normalizer.
    f_max: [f64; CONSTITUENTS],
}

fn layout(number: usize) -> Option<([Basic; 10], [f64; 10], [f64; 10])> {
    use Basic::*;
    let mixed_a = [Ackley, Ackley, Rastrigin, Rastrigin, Weierstrass, Weierstrass, Griewank, Griewank, Sphere, Sphere];
    let mixed_b = [Rastrigin, Rastrigin, Weierstrass, Weierstrass, Griewank, Griewank, Ackley, Ackley, Sphere, Sphere];
    let lam_b = [0.2, 0.2, 10.0, 10.0, 0.05, 0.05, 5.0 / 32.0, 5.0 / 32.0, 0.05, 0.05];
    let ones = [1.0; 10];
    Some(match number {
        14 => ([Sphere; 10], [0.05; 10], ones),
        15 => ([Griewank; 10], [0.05; 10], ones),
        16 => ([Griewank; 10], ones, ones),
        17 => (mixed_a, [5.0 / 32.0, 5.0 / 32.0, 1.0, 1.0, 10.0, 10.0, 0.05, 0.05, 0.05, 0.05], ones),
        18 => (mixed_b, lam_b, ones),
        19 => {
            let delta = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];
            let mut lam = lam_b;
            for (l, d) in lam.iter_mut().zip(delta) {
                *l *= d;
            }
            (mixed_b, lam, delta)
        }
        _ => return None,
    })
}

impl CompositeSpec {
    /// Spec for TF14..TF19 with the given constituent optima.
    pub fn new(number: usize, optima: Vec<Vec<f64>>) -> Result<Self> {
        let (functions, lambda, delta) =
            layout(number).ok_or_else(|| Error::config(format!("TF{number} is not a composite function")))?;
        if optima.len() != CONSTITUENTS || optima.iter().any(|o| o.len() != DIMENSION) {
            return Err(Error::config(format!("TF{number}: optima must be {CONSTITUENTS}x{DIMENSION}")));
        }
        let mut bias = [0.0; CONSTITUENTS];
        let mut f_max = [1.0; CONSTITUENTS];
        for i in 0..CONSTITUENTS {
            bias[i] = 100.0 * i as f64;
            let probe = vec![RANGE / lambda[i]; DIMENSION];
            let m = functions[i].eval(&probe).abs();
            if m > 0.0 {
                f_max[i] = m;
            }
        }
        Ok(Self { id: format!("TF{number}"), functions, lambda, delta, optima, bias, f_max })
    }

    /// Raw constituent weights `exp(-|x - o_i|^2 / (2 D delta_i^2))`.
    #[allow(clippy::needless_range_loop)]
    pub fn raw_weights(&self, x: &[f64]) -> [f64; CONSTITUENTS] {
        let d = x.len() as f64;
        let mut w = [0.0; CONSTITUENTS];
        for i in 0..CONSTITUENTS {
            let dist: f64 = x.iter().zip(&self.optima[i]).map(|(a, b)| (a - b).powi(2)).sum();
            w[i] = (-dist / (2.0 * d * self.delta[i] * self.delta[i])).exp();
        }
        w
    }

    /// Normalized weights: every weight below the maximum is damped by
    /// `1 - max^10`, then all are scaled to sum to one.
    pub fn weights(&self, x: &[f64]) -> [f64; CONSTITUENTS] {
        let mut w = self.raw_weights(x);
        let max = w.iter().copied().fold(0.0, f64::max);
        for v in w.iter_mut() {
            if *v != max {
                *v *= 1.0 - max.powi(10);
            }
        }
        let sum: f64 = w.iter().sum();
        if sum > 0.0 {
            w.iter_mut().for_each(|v| *v /= sum);
        } else {
            w = [1.0 / CONSTITUENTS as f64; CONSTITUENTS];
        }
        w
    }

    #[allow(clippy::needless_range_loop)]
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != DIMENSION {
            return Err(Error::eval(format!("{}: got {} genes, expected {DIMENSION}", self.id, x.len())));
        }
        let w = self.weights(x);
        let mut total = 0.0;
        let mut z = vec![0.0; DIMENSION];
        for i in 0..CONSTITUENTS {
            if w[i] == 0.0 {
                continue;
            }
            for ((zj, xj), oj) in z.iter_mut().zip(x).zip(&self.optima[i]) {
                *zj = (xj - oj) / self.lambda[i];
            }
            let fit = VALUE_SCALE * self.functions[i].eval(&z) / self.f_max[i];
            total += w[i] * (fit + self.bias[i]);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;

    fn optima(seed: u64) -> Vec<Vec<f64>> {
        let mut r = RandomStream::new(seed);
        (0..10).map(|_| (0..10).map(|_| r.uniform(-4.0, 4.0)).collect()).collect()
    }

    #[test]
    fn first_optimum_scores_zero() {
        for n in 14..=19 {
            let s = CompositeSpec::new(n, optima(n as u64)).unwrap();
            let v = s.eval(&s.optima[0].clone()).unwrap();
            assert!(v.abs() < 1e-6, "TF{n}: {v}");
        }
    }

    #[test]
    fn weights_sum_to_one() {
        let s = CompositeSpec::new(17, optima(3)).unwrap();
        let w = s.weights(&[0.1; 10]);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        // far from every optimum all raw weights underflow
        let far = CompositeSpec::new(19, optima(3)).unwrap().weights(&[500.0; 10]);
        assert!(far.iter().all(|v| (*v - 0.1).abs() < 1e-15));
    }

    #[test]
    fn lambda_tables() {
        let s = CompositeSpec::new(19, optima(1)).unwrap();
        assert!((s.lambda[0] - 0.02).abs() < 1e-15);
        assert!((s.lambda[9] - 0.05).abs() < 1e-15);
        assert!(CompositeSpec::new(13, optima(1)).is_err());
        assert!(CompositeSpec::new(14, vec![vec![0.0; 10]; 9]).is_err());
    }
}
