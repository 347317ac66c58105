//! Building blocks shared by the composite and CEC-2019 functions.

use std::f64::consts::{E, PI};

pub fn sphere(z: &[f64]) -> f64 {
    z.iter().map(|v| v * v).sum()
}

pub fn rastrigin(z: &[f64]) -> f64 {
    z.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum()
}

pub fn griewank(z: &[f64]) -> f64 {
    let sq: f64 = z.iter().map(|v| v * v).sum();
    let pr: f64 = z.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
    sq / 4000.0 - pr + 1.0
}

/// Ackley with the usual `1/n` normalization in both terms.
pub fn ackley(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let sq: f64 = z.iter().map(|v| v * v).sum();
    let cs: f64 = z.iter().map(|v| (2.0 * PI * v).cos()).sum();
    -20.0 * (-0.2 * (sq / n).sqrt()).exp() - (cs / n).exp() + 20.0 + E
}

const W_A: f64 = 0.5;
const W_B: f64 = 3.0;
const W_KMAX: i32 = 20;

/// Weierstrass (a = 0.5, b = 3, kmax = 20), zero at the origin.
pub fn weierstrass(z: &[f64]) -> f64 {
    let mut total = 0.0;
    let mut base = 0.0;
    for k in 0..=W_KMAX {
        let ak = W_A.powi(k);
        let bk = W_B.powi(k);
        base += ak * (PI * bk).cos();
        for v in z {
            total += ak * (2.0 * PI * bk * (v + 0.5)).cos();
        }
    }
    total - z.len() as f64 * base
}
