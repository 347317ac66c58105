//! The ten 100-digit-challenge functions. Every function has minimum 1.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cec {
    Chebyshev,
    InverseHilbert,
    LennardJones,
    Rastrigin,
    Griewank,
    Weierstrass,
    Schwefel,
    ExpandedSchaffer,
    HappyCat,
    Ackley,
}

const LJ_MIN: f64 = 12.712_062_256_8;
const SCHWEFEL_OFFSET: f64 = 420.968_746_227_503_6;
const SCHWEFEL_CONST: f64 = 418.982_887_272_433_8;

impl Cec {
    pub const ALL: [Cec; 10] = [
        Cec::Chebyshev,
        Cec::InverseHilbert,
        Cec::LennardJones,
        Cec::Rastrigin,
        Cec::Griewank,
        Cec::Weierstrass,
        Cec::Schwefel,
        Cec::ExpandedSchaffer,
        Cec::HappyCat,
        Cec::Ackley,
    ];

    pub fn number(self) -> usize {
        Self::ALL.iter().position(|c| *c == self).unwrap() + 1
    }

    pub fn from_number(n: usize) -> Option<Self> {
        Self::ALL.get(n.checked_sub(1)?).copied()
    }

    pub fn id(self) -> String {
        format!("CEC{:02}", self.number())
    }

    pub fn name(self) -> &'static str {
        match self {
            Cec::Chebyshev => "Storn's Chebyshev polynomial fitting",
            Cec::InverseHilbert => "Inverse Hilbert matrix",
            Cec::LennardJones => "Lennard-Jones minimum energy cluster",
            Cec::Rastrigin => "Rastrigin",
            Cec::Griewank => "Griewank",
            Cec::Weierstrass => "Weierstrass",
            Cec::Schwefel => "Modified Schwefel",
            Cec::ExpandedSchaffer => "Expanded Schaffer F6",
            Cec::HappyCat => "Happy Cat",
            Cec::Ackley => "Ackley",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            Cec::Chebyshev => 9,
            Cec::InverseHilbert => 16,
            Cec::LennardJones => 18,
            _ => 10,
        }
    }

    pub fn range(self) -> f64 {
        match self {
            Cec::Chebyshev => 8192.0,
            Cec::InverseHilbert => 16384.0,
            Cec::LennardJones => 4.0,
            _ => 100.0,
        }
    }

    /// `true` for CEC04-CEC10.
    pub fn shifted_rotated(self) -> bool {
        self.number() >= 4
    }

    /// Factor applied to the shifted coordinates before rotation.
    pub fn scale(self) -> f64 {
        match self {
            Cec::Rastrigin => 5.12 / 100.0,
            Cec::Griewank => 600.0 / 100.0,
            Cec::Weierstrass => 0.5 / 100.0,
            Cec::Schwefel => 1000.0 / 100.0,
            Cec::HappyCat => 5.0 / 100.0,
            _ => 1.0,
        }
    }

    /// Value at `z = R (x - o)` (or `z = x` for CEC01-CEC03), before scaling.
    pub fn eval_transformed(self, z: &[f64]) -> f64 {
        let s = self.scale();
        let z: Vec<f64> = if s == 1.0 { z.to_vec() } else { z.iter().map(|v| v * s).collect() };
        1.0 + match self {
            Cec::Chebyshev => chebyshev(&z),
            Cec::InverseHilbert => inverse_hilbert(&z),
            Cec::LennardJones => lennard_jones(&z) + LJ_MIN,
            Cec::Rastrigin => super::basic::rastrigin(&z),
            Cec::Griewank => super::basic::griewank(&z),
            Cec::Weierstrass => super::basic::weierstrass(&z),
            Cec::Schwefel => schwefel(&z),
            Cec::ExpandedSchaffer => expanded_schaffer(&z),
            Cec::HappyCat => happy_cat(&z),
            Cec::Ackley => cec_ackley(&z),
        }
    }
}

/// A CEC function bound to its shift and rotation data.
#[derive(Debug, Clone, PartialEq)]
pub struct CecFunction {
    pub function: Cec,
    pub shift: Option<Vec<f64>>,
    pub rotation: Option<Vec<Vec<f64>>>,
}

impl CecFunction {
    pub fn new(function: Cec, shift: Option<Vec<f64>>, rotation: Option<Vec<Vec<f64>>>) -> Result<Self> {
        let d = function.dimension();
        if function.shifted_rotated() && (shift.is_none() || rotation.is_none()) {
            return Err(Error::config(format!("{} needs shift and rotation data", function.id())));
        }
        if shift.as_ref().is_some_and(|s| s.len() != d) {
            return Err(Error::config(format!("{}: shift length must be {d}", function.id())));
        }
        if rotation.as_ref().is_some_and(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(Error::config(format!("{}: rotation must be {d}x{d}", function.id())));
        }
        Ok(Self { function, shift, rotation })
    }

    /// Applies the rotation to already-shifted coordinates, then evaluates.
    pub fn eval_shifted(&self, z: &[f64]) -> f64 {
        match &self.rotation {
            None => self.function.eval_transformed(z),
            Some(m) => {
                let r: Vec<f64> = m.iter().map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum()).collect();
                self.function.eval_transformed(&r)
            }
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let d = self.function.dimension();
        if x.len() != d {
            return Err(Error::eval(format!("{}: got {} genes, expected {d}", self.function.id(), x.len())));
        }
        Ok(match &self.shift {
            None => self.eval_shifted(x),
            Some(o) => {
                let z: Vec<f64> = x.iter().zip(o).map(|(a, b)| a - b).collect();
                self.eval_shifted(&z)
            }
        })
    }
}

/// `T_{n-1}(1.2)`, the fitting target at the end points.
pub(crate) fn chebyshev_threshold(n: usize) -> f64 {
    let (mut a, mut b) = (1.0, 1.2);
    for _ in 0..n.saturating_sub(2) {
        let next = 2.4 * b - a;
        a = b;
        b = next;
    }
    b
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs[1..].iter().fold(coeffs[0], |acc, c| acc * t + c)
}

fn chebyshev(x: &[f64]) -> f64 {
    let n = x.len();
    let samples = 32 * n;
    let dy = 2.0 / samples as f64;
    let mut sum = 0.0;
    let mut y = -1.0;
    for _ in 0..=samples {
        let p = horner(x, y);
        if !(-1.0..=1.0).contains(&p) {
            sum += (1.0 - p.abs()).powi(2);
        }
        y += dy;
    }
    let threshold = chebyshev_threshold(n);
    for t in [1.2, -1.2] {
        let p = horner(x, t);
        if p < threshold {
            sum += (p - threshold).powi(2);
        }
    }
    sum
}

fn inverse_hilbert(x: &[f64]) -> f64 {
    let b = (x.len() as f64).sqrt().round() as usize;
    let mut sum = 0.0;
    for j in 0..b {
        for k in 0..b {
            let y: f64 = (0..b).map(|i| x[k + b * i] / (j + i + 1) as f64).sum();
            sum += if j == k { (y - 1.0).abs() } else { y.abs() };
        }
    }
    sum
}

fn lennard_jones(x: &[f64]) -> f64 {
    let k = x.len() / 3;
    let mut sum = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (3 * i, 3 * j);
            let r2 = (x[a] - x[b]).powi(2) + (x[a + 1] - x[b + 1]).powi(2) + (x[a + 2] - x[b + 2]).powi(2);
            let r6 = r2 * r2 * r2;
            sum += if r6 > 1e-10 { (1.0 / r6 - 2.0) / r6 } else { 1e20 };
        }
    }
    sum
}

fn schwefel(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let mut f = 0.0;
    for &v in z {
        let zi = v + SCHWEFEL_OFFSET;
        if zi > 500.0 {
            let m = 500.0 - zi % 500.0;
            f -= m * m.sqrt().sin();
            f += ((zi - 500.0) / 100.0).powi(2) / n;
        } else if zi < -500.0 {
            let m = zi.abs() % 500.0;
            f -= (-500.0 + m) * (500.0 - m).sqrt().sin();
            f += ((zi + 500.0) / 100.0).powi(2) / n;
        } else {
            f -= zi * zi.abs().sqrt().sin();
        }
    }
    f + SCHWEFEL_CONST * n
}

fn schaffer_pair(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    0.5 + (r2.sqrt().sin().powi(2) - 0.5) / (1.0 + 0.001 * r2).powi(2)
}

fn expanded_schaffer(z: &[f64]) -> f64 {
    let n = z.len();
    (0..n).map(|i| schaffer_pair(z[i], z[(i + 1) % n])).sum()
}

fn happy_cat(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let (mut r2, mut s) = (0.0, 0.0);
    for v in z {
        let w = v - 1.0;
        r2 += w * w;
        s += w;
    }
    (r2 - n).abs().powf(0.25) + (0.5 * r2 + s) / n + 0.5
}

fn cec_ackley(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let sq: f64 = z.iter().map(|v| v * v).sum();
    let cs: f64 = z.iter().map(|v| (2.0 * PI * v).cos()).sum();
    E - 20.0 * (-0.2 * (sq / n).sqrt()).exp() - (cs / n).exp() + 20.0
}
