//! TF1-TF13.

use std::f64::consts::{E, PI};

use crate::rng::RandomStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classical {
    Tf1,
    Tf2,
    Tf3,
    Tf4,
    Tf5,
    Tf6,
    Tf7,
    Tf8,
    Tf9,
    Tf10,
    Tf11,
    Tf12,
    Tf13,
}

impl Classical {
    pub const ALL: [Classical; 13] = [
        Classical::Tf1,
        Classical::Tf2,
        Classical::Tf3,
        Classical::Tf4,
        Classical::Tf5,
        Classical::Tf6,
        Classical::Tf7,
        Classical::Tf8,
        Classical::Tf9,
        Classical::Tf10,
        Classical::Tf11,
        Classical::Tf12,
        Classical::Tf13,
    ];

    pub fn number(self) -> usize {
        Self::ALL.iter().position(|c| *c == self).unwrap() + 1
    }

    pub fn from_number(n: usize) -> Option<Self> {
        Self::ALL.get(n.checked_sub(1)?).copied()
    }

    pub fn id(self) -> String {
        format!("TF{}", self.number())
    }

    /// Symmetric search range `[-r, r]`.
    pub fn range(self) -> f64 {
        use Classical::*;
        match self {
            Tf1 | Tf3 | Tf4 | Tf6 => 100.0,
            Tf2 => 10.0,
            Tf5 => 30.0,
            Tf7 => 1.28,
            Tf8 => 500.0,
            Tf9 => 5.12,
            Tf10 => 32.0,
            Tf11 => 600.0,
            Tf12 | Tf13 => 50.0,
        }
    }

    pub fn shift(self, d: usize) -> Option<Vec<f64>> {
        use Classical::*;
        let s = match self {
            Tf1 | Tf3 | Tf4 => -30.0,
            Tf2 => -3.0,
            Tf5 => -15.0,
            Tf7 => -0.25,
            Tf8 => -300.0,
            Tf9 => -2.0,
            Tf11 => -400.0,
            Tf12 => {
                let mut v = vec![30.0; d];
                v[0] = -30.0;
                return Some(v);
            }
            Tf6 | Tf10 | Tf13 => return None,
        };
        Some(vec![s; d])
    }

    pub fn is_unimodal(self) -> bool {
        self.number() <= 7
    }

    /// Table value of the minimum; for TF8 it is per dimension.
    pub fn f_min(self) -> f64 {
        if self == Classical::Tf8 {
            -418.9829
        } else {
            0.0
        }
    }

    /// A minimizer in shifted coordinates.
    pub fn minimizer(self, d: usize) -> Vec<f64> {
        use Classical::*;
        match self {
            Tf5 | Tf13 => vec![1.0; d],
            Tf8 => vec![420.968_746_227_503_6; d],
            Tf12 => vec![-1.0; d],
            _ => vec![0.0; d],
        }
    }

    /// Value at `z`. TF7 adds `U[0, 1)` from `noise` when given.
    pub fn eval(self, z: &[f64], noise: Option<&mut RandomStream>) -> f64 {
        use Classical::*;
        let n = z.len() as f64;
        match self {
            Tf1 => z.iter().map(|v| v * v).sum(),
            Tf2 => z.iter().map(|v| v.abs()).sum::<f64>() + z.iter().map(|v| v.abs()).product::<f64>(),
            Tf3 => {
                let mut acc = 0.0;
                let mut total = 0.0;
                for v in z {
                    acc += v;
                    total += acc * acc;
                }
                total
            }
            Tf4 => z.iter().fold(0.0, |m, v| m.max(v.abs())),
            Tf5 => z.windows(2).map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2)).sum(),
            Tf6 => z.iter().map(|v| (v + 0.5).floor().powi(2)).sum(),
            Tf7 => {
                let s: f64 = z.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v.powi(4)).sum();
                s + noise.map_or(0.0, |r| r.unit())
            }
            Tf8 => z.iter().map(|v| -v * v.abs().sqrt().sin()).sum(),
            Tf9 => z.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum(),
            Tf10 => {
                let sq: f64 = z.iter().map(|v| v * v).sum();
                let cs: f64 = z.iter().map(|v| (2.0 * PI * v).cos()).sum();
                -20.0 * (-0.2 * sq.sqrt()).exp() - (cs / n).exp() + 20.0 + E
            }
            Tf11 => {
                let sq: f64 = z.iter().map(|v| v * v).sum();
                let pr: f64 = z.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
                sq / 4000.0 - pr + 1.0
            }
            Tf12 => {
                let y: Vec<f64> = z.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
                let k = y.len();
                let mut s = 10.0 * (PI * y[0]).sin().powi(2);
                for i in 0..k - 1 {
                    s += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * (PI * y[i + 1]).sin().powi(2));
                }
                s += (y[k - 1] - 1.0).powi(2);
                PI / n * s + z.iter().map(|v| penalty(*v, 10.0, 100.0, 4)).sum::<f64>()
            }
            Tf13 => {
                let k = z.len();
                let mut s = (3.0 * PI * z[0]).sin().powi(2);
                for v in z {
                    s += (v - 1.0).powi(2) * (1.0 + (3.0 * PI * v + 1.0).sin().powi(2));
                }
                s += (z[k - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * z[k - 1]).sin().powi(2));
                0.1 * s + z.iter().map(|v| penalty(*v, 5.0, 100.0, 4)).sum::<f64>()
            }
        }
    }
}

/// Boundary penalty `u(x, a, k, m)`.
pub fn penalty(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}
