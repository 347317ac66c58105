//! Two application objectives: pathological IgG scoring and the CPAMS
//! bifurcation-control root problem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{Problem, Sense};

pub const IGG_DIMENSION: usize = 12;
pub const IGG_BOUNDS: (f64, f64) = (0.0, 10.0);
pub const IGG_AGENTS: usize = 12;
pub const IGG_ITERATIONS: usize = 150;
/// Value at the all-tens corner.
pub const IGG_OPTIMUM: f64 = 5.088;

pub const CPAMS_AGENTS: usize = 10;
pub const CPAMS_ITERATIONS: usize = 300;

/// CSF and serum concentrations, all in one unit family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IgGPanel {
    pub igg_csf: f64,
    pub igg_serum: f64,
    pub alb_csf: f64,
    pub alb_serum: f64,
    /// Half-width of the regression validity band.
    pub regression_tolerance: f64,
}

impl IgGPanel {
    pub fn new(igg_csf: f64, igg_serum: f64, alb_csf: f64, alb_serum: f64) -> Self {
        Self { igg_csf, igg_serum, alb_csf, alb_serum, regression_tolerance: 0.001 }
    }

    /// Strict panel check: positive concentrations, serum albumin above CSF albumin.
    pub fn validate(&self) -> Result<()> {
        let all = [self.igg_csf, self.igg_serum, self.alb_csf, self.alb_serum];
        if all.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Domain("concentrations must be positive and finite".into()));
        }
        if self.alb_serum <= self.alb_csf {
            return Err(Error::Domain("serum albumin must exceed CSF albumin".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlbuminQuotient {
    pub value: f64,
    /// `false` when CSF albumin is not below serum albumin.
    pub plausible: bool,
}

/// `Alb_CSF / Alb_serum`.
pub fn albumin_quotient(panel: &IgGPanel) -> Result<AlbuminQuotient> {
    if panel.alb_serum.is_nan() || panel.alb_serum <= 0.0 {
        return Err(Error::Domain(format!("serum albumin must be positive, got {}", panel.alb_serum)));
    }
    Ok(AlbuminQuotient { value: panel.alb_csf / panel.alb_serum, plausible: panel.alb_csf < panel.alb_serum })
}

/// Locally produced IgG: `IgG_CSF - (0.43 Alb_serum - Alb_CSF + 0.001) IgG_serum`.
pub fn igg_pathological(panel: &IgGPanel) -> Result<f64> {
    let all = [panel.igg_csf, panel.igg_serum, panel.alb_csf, panel.alb_serum];
    if all.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::Domain("concentrations must be non-negative and finite".into()));
    }
    Ok(panel.igg_csf - (0.43 * panel.alb_serum - panel.alb_csf + 0.001) * panel.igg_serum)
}

/// `sum(0.41 + 0.0014 x_i)` over twelve fractions.
pub fn igg_objective(x: &[f64]) -> Result<f64> {
    if x.len() != IGG_DIMENSION {
        return Err(Error::eval(format!("IgG objective takes {IGG_DIMENSION} values, got {}", x.len())));
    }
    Ok(x.iter().map(|v| 0.41 + 0.0014 * v).sum())
}

/// Maximization problem on `[0, 10]^12`.
pub fn igg_problem() -> Problem {
    Problem::uniform_bounds("igg", IGG_DIMENSION, IGG_BOUNDS.0, IGG_BOUNDS.1, Sense::Maximize, |x: &[f64]| {
        igg_objective(x).unwrap_or(f64::NAN)
    })
    .expect("static bounds are valid")
    .with_known_optimum(IGG_OPTIMUM)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CpamsParams {
    pub d: u32,
    pub k1: f64,
    pub k2: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CpamsParams {
    /// Checks `d` in 15..=36, `k1` in [0, 1], `k2` in [0.1, 0.5].
    pub fn new(d: u32, k1: f64, k2: f64) -> Result<Self> {
        if !(15..=36).contains(&d) {
            return Err(Error::Domain(format!("node count {d} outside 15..=36")));
        }
        if !(0.0..=1.0).contains(&k1) {
            return Err(Error::Domain(format!("k1 = {k1} outside [0, 1]")));
        }
        if !(0.1..=0.5).contains(&k2) {
            return Err(Error::Domain(format!("k2 = {k2} outside [0.1, 0.5]")));
        }
        Self::unchecked(d, k1, k2)
    }

    /// Any `d > 0` and finite gains; used for structural cases outside the grid.
    pub fn unchecked(d: u32, k1: f64, k2: f64) -> Result<Self> {
        let (a, b, c) = cpams_coefficients(d, k1, k2)?;
        Ok(Self { d, k1, k2, a, b, c })
    }

    /// `F(x) = x^3 + A x^2 + B x + C` for a scalar `x`.
    pub fn cubic(&self, x: f64) -> f64 {
        ((x + self.a) * x + self.b) * x + self.c
    }
}

/// `A = 0.0283 (1 + 1/d - k2)`, `B = (0.0283 - 1.0283 k2) / d`,
/// `C = (0.0013 k1 - 0.0283 k2) / d`.
pub fn cpams_coefficients(d: u32, k1: f64, k2: f64) -> Result<(f64, f64, f64)> {
    if d == 0 {
        return Err(Error::Domain("node count must be positive".into()));
    }
    let d = d as f64;
    Ok((0.0283 * (1.0 + 1.0 / d - k2), (0.0283 - 1.0283 * k2) / d, (0.0013 * k1 - 0.0283 * k2) / d))
}

/// `|S3 + A S2 + B S1 + C|` with `Sk = sum(x_i^k)`.
pub fn cpams_objective(x: &[f64], params: &CpamsParams) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::eval("CPAMS objective needs at least one value"));
    }
    let (mut s1, mut s2, mut s3) = (0.0, 0.0, 0.0);
    for v in x {
        s1 += v;
        s2 += v * v;
        s3 += v * v * v;
    }
    Ok((s3 + params.a * s2 + params.b * s1 + params.c).abs())
}

/// Minimization problem on `[0, 1]^n`.
pub fn cpams_problem(params: CpamsParams, n: usize) -> Result<Problem> {
    let id = format!("cpams-d{}-k1_{}-k2_{}", params.d, params.k1, params.k2);
    Ok(Problem::uniform_bounds(id, n, 0.0, 1.0, Sense::Minimize, move |x: &[f64]| {
        cpams_objective(x, &params).unwrap_or(f64::NAN)
    })?
    .with_known_optimum(0.0))
}

/// Hybrid control law `k1 F(I) + k2 (I + I^3)`.
pub fn cpams_control_term(i: f64, f_i: f64, k1: f64, k2: f64) -> f64 {
    k1 * f_i + k2 * (i + i * i * i)
}
