//! Problems, candidates and bound handling.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RandomStream;

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// Worst finite value under this sense; stands in for non-finite objective values.
    pub fn worst(self) -> f64 {
        match self {
            Sense::Minimize => f64::MAX,
            Sense::Maximize => -f64::MAX,
        }
    }

    /// Ordering with the preferred value first.
    pub fn cmp(self, a: f64, b: f64) -> std::cmp::Ordering {
        match self {
            Sense::Minimize => a.total_cmp(&b),
            Sense::Maximize => b.total_cmp(&a),
        }
    }
}

/// `true` iff `a` is strictly preferable to `b`.
pub fn better(a: f64, b: f64, sense: Sense) -> Result<bool> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Comparison(format!("non-finite operand ({a}, {b})")));
    }
    Ok(is_better(a, b, sense))
}

/// Unchecked variant of [`better`] for values already known to be finite.
#[inline]
pub(crate) fn is_better(a: f64, b: f64, sense: Sense) -> bool {
    match sense {
        Sense::Minimize => a < b,
        Sense::Maximize => a > b,
    }
}

/// Objective evaluated on already-shifted coordinates.
///
/// Implementations must be pure apart from draws on `rng`, which only
/// noisy objectives consume.
pub trait Objective: Send + Sync {
    fn evaluate(&self, z: &[f64], rng: &mut RandomStream) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn evaluate(&self, z: &[f64], _rng: &mut RandomStream) -> f64 {
        self(z)
    }
}

/// A boxed search problem.
#[derive(Clone)]
pub struct Problem {
    pub id: String,
    pub dimension: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub sense: Sense,
    pub shift: Option<Vec<f64>>,
    pub known_optimum: Option<f64>,
    objective: Arc<dyn Objective>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("id", &self.id)
            .field("dimension", &self.dimension)
            .field("sense", &self.sense)
            .field("shift", &self.shift.is_some())
            .field("known_optimum", &self.known_optimum)
            .finish()
    }
}

impl Problem {
    /// Problem with identical bounds `[low, high]` in every dimension.
    pub fn uniform_bounds(
        id: impl Into<String>,
        dimension: usize,
        low: f64,
        high: f64,
        sense: Sense,
        objective: impl Objective + 'static,
    ) -> Result<Self> {
        Self::new(id, vec![low; dimension], vec![high; dimension], sense, objective)
    }

    pub fn new(
        id: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        sense: Sense,
        objective: impl Objective + 'static,
    ) -> Result<Self> {
        let id = id.into();
        if lower.is_empty() {
            return Err(Error::config(format!("{id}: dimension must be positive")));
        }
        if lower.len() != upper.len() {
            return Err(Error::config(format!("{id}: bound vectors differ in length")));
        }
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !(l.is_finite() && u.is_finite() && l < u) {
                return Err(Error::config(format!("{id}: invalid bounds [{l}, {u}] at index {i}")));
            }
        }
        Ok(Self {
            id,
            dimension: lower.len(),
            lower,
            upper,
            sense,
            shift: None,
            known_optimum: None,
            objective: Arc::new(objective),
        })
    }

    pub fn with_shift(mut self, shift: Vec<f64>) -> Result<Self> {
        if shift.len() != self.dimension {
            return Err(Error::config(format!(
                "{}: shift has length {}, expected {}",
                self.id,
                shift.len(),
                self.dimension
            )));
        }
        self.shift = Some(shift);
        Ok(self)
    }

    pub fn with_known_optimum(mut self, value: f64) -> Self {
        self.known_optimum = Some(value);
        self
    }

    /// Objective at `x`, applying `z = x - shift` first.
    pub fn evaluate(&self, x: &[f64], rng: &mut RandomStream) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(Error::eval(format!("{}: got {} genes, expected {}", self.id, x.len(), self.dimension)));
        }
        Ok(match &self.shift {
            None => self.objective.evaluate(x, rng),
            Some(s) => {
                let z: Vec<f64> = x.iter().zip(s).map(|(a, b)| a - b).collect();
                self.objective.evaluate(&z, rng)
            }
        })
    }

    /// Evaluates `c` in place. Non-finite values are stored as the worst finite value.
    pub fn evaluate_candidate(&self, c: &mut Candidate, rng: &mut RandomStream) -> Result<()> {
        let v = self.evaluate(&c.genes, rng)?;
        c.value = if v.is_finite() { v } else { self.sense.worst() };
        c.evaluated = true;
        Ok(())
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension
            && x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(v, (l, u))| l <= v && v <= u)
    }
}

/// One search agent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub genes: Vec<f64>,
    pub value: f64,
    pub evaluated: bool,
}

impl Candidate {
    pub fn new(genes: Vec<f64>) -> Self {
        Self { genes, value: f64::NAN, evaluated: false }
    }
}

/// Saturates every gene into its interval, in place.
///
/// Non-finite genes go to the bound matching their sign (NaN by its sign
/// bit). Returns how many genes needed that repair.
pub fn clamp_in_place(genes: &mut [f64], lower: &[f64], upper: &[f64]) -> usize {
    let mut repaired = 0;
    for ((g, &l), &u) in genes.iter_mut().zip(lower).zip(upper) {
        if !g.is_finite() {
            repaired += 1;
            *g = if g.is_sign_negative() { l } else { u };
        } else if *g < l {
            *g = l;
        } else if *g > u {
            *g = u;
        }
    }
    repaired
}

/// Genes saturated into the problem's box.
#[derive(Debug, Clone, PartialEq)]
pub struct Clamped {
    pub genes: Vec<f64>,
    pub repaired: usize,
}

pub fn clamp_to_bounds(genes: &[f64], problem: &Problem) -> Clamped {
    let mut out = genes.to_vec();
    let repaired = clamp_in_place(&mut out, &problem.lower, &problem.upper);
    Clamped { genes: out, repaired }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(d: usize, lo: f64, hi: f64) -> Problem {
        Problem::uniform_bounds("s", d, lo, hi, Sense::Minimize, |z: &[f64]| z.iter().map(|v| v * v).sum::<f64>())
            .unwrap()
    }

    #[test]
    fn better_examples() {
        assert!(better(1.0, 2.0, Sense::Minimize).unwrap());
        assert!(!better(1.0, 2.0, Sense::Maximize).unwrap());
        assert!(!better(3.0, 3.0, Sense::Minimize).unwrap());
        assert!(!better(3.0, 3.0, Sense::Maximize).unwrap());
        assert!(better(f64::NAN, 1.0, Sense::Minimize).is_err());
        assert!(better(1.0, f64::INFINITY, Sense::Maximize).is_err());
    }

    #[test]
    fn clamp_examples() {
        let p = sphere(2, -100.0, 100.0);
        assert_eq!(clamp_to_bounds(&[150.0, -150.0], &p).genes, vec![100.0, -100.0]);
        let p1 = sphere(1, -1.0, 1.0);
        let c = clamp_to_bounds(&[0.5], &p1);
        assert_eq!(c.genes, vec![0.5]);
        assert_eq!(c.repaired, 0);
        let p30 = sphere(1, -30.0, 30.0);
        let c = clamp_to_bounds(&[f64::INFINITY], &p30);
        assert_eq!(c.genes, vec![30.0]);
        assert_eq!(c.repaired, 1);
        let c = clamp_to_bounds(&[f64::NEG_INFINITY], &p30);
        assert_eq!(c.genes, vec![-30.0]);
    }

    #[test]
    fn invalid_bounds_rejected() {
        let f = |z: &[f64]| z[0];
        assert!(Problem::uniform_bounds("x", 2, 1.0, 1.0, Sense::Minimize, f).is_err());
        assert!(Problem::uniform_bounds("x", 0, 0.0, 1.0, Sense::Minimize, f).is_err());
        assert!(Problem::new("x", vec![0.0], vec![1.0, 2.0], Sense::Minimize, f).is_err());
    }

    #[test]
    fn shift_moves_optimum() {
        let p = sphere(3, -10.0, 10.0).with_shift(vec![-3.0; 3]).unwrap();
        let mut rng = RandomStream::new(0);
        assert_eq!(p.evaluate(&[-3.0, -3.0, -3.0], &mut rng).unwrap(), 0.0);
        assert!(p.evaluate(&[0.0, 0.0], &mut rng).is_err());
        assert!(sphere(3, -1.0, 1.0).with_shift(vec![0.0; 2]).is_err());
    }

    #[test]
    fn non_finite_value_stored_as_worst() {
        let p = Problem::uniform_bounds("n", 1, -1.0, 1.0, Sense::Maximize, |_: &[f64]| f64::NAN).unwrap();
        let mut c = Candidate::new(vec![0.0]);
        p.evaluate_candidate(&mut c, &mut RandomStream::new(1)).unwrap();
        assert!(c.evaluated);
        assert_eq!(c.value, -f64::MAX);
    }
}
