use serde::{Deserialize, Serialize};

use super::cec2019::{Cec, CecFunction};
use super::classical::Classical;
use super::composite::{self, CompositeSpec};
use super::data::AuxData;
use crate::error::{Error, Result};
use crate::problem::{Objective, Problem, Sense};
use crate::rng::RandomStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Unimodal,
    Multimodal,
    Composite,
    Cec2019,
}

/// Identifier of one catalog function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    Classical(Classical),
    Composite(usize),
    Cec(Cec),
}

impl FunctionId {
    /// Accepts `TF1`..`TF19` and `CEC01`..`CEC10` (also `CEC1`), any case.
    pub fn parse(s: &str) -> Result<Self> {
        let u = s.trim().to_ascii_uppercase();
        let unknown = || Error::config(format!("unknown function id {s:?}"));
        if let Some(n) = u.strip_prefix("CEC") {
            let n: usize = n.parse().map_err(|_| unknown())?;
            return Cec::from_number(n).map(FunctionId::Cec).ok_or_else(unknown);
        }
        if let Some(n) = u.strip_prefix("TF") {
            let n: usize = n.parse().map_err(|_| unknown())?;
            return match n {
                1..=13 => Ok(FunctionId::Classical(Classical::from_number(n).unwrap())),
                14..=19 => Ok(FunctionId::Composite(n)),
                _ => Err(unknown()),
            };
        }
        Err(unknown())
    }

    pub fn id(self) -> String {
        match self {
            FunctionId::Classical(c) => c.id(),
            FunctionId::Composite(n) => format!("TF{n}"),
            FunctionId::Cec(c) => c.id(),
        }
    }

    pub fn all() -> Vec<FunctionId> {
        let mut v: Vec<FunctionId> = Classical::ALL.into_iter().map(FunctionId::Classical).collect();
        v.extend((14..=19).map(FunctionId::Composite));
        v.extend(Cec::ALL.into_iter().map(FunctionId::Cec));
        v
    }
}

/// Catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub id: String,
    pub family: Family,
    pub dimension: usize,
    /// Symmetric per-dimension range `(low, high)`.
    pub range: (f64, f64),
    pub shift: Option<Vec<f64>>,
    pub rotation: Option<Vec<Vec<f64>>>,
    /// Tabulated minimum; per dimension when `f_min_per_dimension` is set.
    pub f_min: f64,
    pub f_min_per_dimension: bool,
}

impl BenchmarkSpec {
    /// Minimum of the whole function.
    pub fn optimum_value(&self) -> f64 {
        if self.f_min_per_dimension {
            self.f_min * self.dimension as f64
        } else {
            self.f_min
        }
    }
}

const CLASSICAL_DIM: usize = 10;

fn spec_for(id: FunctionId, aux: &AuxData) -> Result<BenchmarkSpec> {
    Ok(match id {
        FunctionId::Classical(c) => BenchmarkSpec {
            id: c.id(),
            family: if c.is_unimodal() { Family::Unimodal } else { Family::Multimodal },
            dimension: CLASSICAL_DIM,
            range: (-c.range(), c.range()),
            shift: c.shift(CLASSICAL_DIM),
            rotation: None,
            f_min: c.f_min(),
            f_min_per_dimension: c == Classical::Tf8,
        },
        FunctionId::Composite(n) => BenchmarkSpec {
            id: format!("TF{n}"),
            family: Family::Composite,
            dimension: composite::DIMENSION,
            range: (-composite::RANGE, composite::RANGE),
            shift: None,
            rotation: None,
            f_min: 0.0,
            f_min_per_dimension: false,
        },
        FunctionId::Cec(c) => {
            let (shift, rotation) = if c.shifted_rotated() {
                let missing = || Error::config(format!("no shift/rotation data for {}", c.id()));
                (
                    Some(aux.cec_shift.get(&c.id()).cloned().ok_or_else(missing)?),
                    Some(aux.cec_rotation.get(&c.id()).cloned().ok_or_else(missing)?),
                )
            } else {
                (None, None)
            };
            BenchmarkSpec {
                id: c.id(),
                family: Family::Cec2019,
                dimension: c.dimension(),
                range: (-c.range(), c.range()),
                shift,
                rotation,
                f_min: 1.0,
                f_min_per_dimension: false,
            }
        }
    })
}

/// All 29 functions, using the bundled data.
pub fn benchmark_catalog() -> Vec<BenchmarkSpec> {
    catalog_with(AuxData::bundled()).expect("bundled data covers every function")
}

pub fn catalog_with(aux: &AuxData) -> Result<Vec<BenchmarkSpec>> {
    FunctionId::all().into_iter().map(|id| spec_for(id, aux)).collect()
}

struct ClassicalObjective {
    function: Classical,
    noise: bool,
}

impl Objective for ClassicalObjective {
    fn evaluate(&self, z: &[f64], rng: &mut RandomStream) -> f64 {
        self.function.eval(z, if self.noise { Some(rng) } else { None })
    }
}

struct CompositeObjective(CompositeSpec);

impl Objective for CompositeObjective {
    fn evaluate(&self, x: &[f64], _rng: &mut RandomStream) -> f64 {
        self.0.eval(x).unwrap_or(f64::NAN)
    }
}

struct CecObjective(CecFunction);

impl Objective for CecObjective {
    fn evaluate(&self, z: &[f64], _rng: &mut RandomStream) -> f64 {
        self.0.eval_shifted(z)
    }
}

/// Problem for `id` with the bundled data.
pub fn problem(id: &str) -> Result<Problem> {
    build_problem(FunctionId::parse(id)?, AuxData::bundled())
}

pub fn build_problem(id: FunctionId, aux: &AuxData) -> Result<Problem> {
    build_problem_with_noise(id, aux, true)
}

/// As [`build_problem`]; `noise = false` drops the TF7 random term.
pub fn build_problem_with_noise(id: FunctionId, aux: &AuxData, noise: bool) -> Result<Problem> {
    let spec = spec_for(id, aux)?;
    let (lo, hi) = spec.range;
    let d = spec.dimension;
    let p = match id {
        FunctionId::Classical(c) => Problem::uniform_bounds(
            spec.id.clone(),
            d,
            lo,
            hi,
            Sense::Minimize,
            ClassicalObjective { function: c, noise },
        )?,
        FunctionId::Composite(n) => {
            let optima = aux
                .composite_optima
                .get(&spec.id)
                .cloned()
                .ok_or_else(|| Error::config(format!("no optima data for {}", spec.id)))?;
            let cs = CompositeSpec::new(n, optima)?;
            Problem::uniform_bounds(spec.id.clone(), d, lo, hi, Sense::Minimize, CompositeObjective(cs))?
        }
        FunctionId::Cec(c) => {
            let f = CecFunction::new(c, spec.shift.clone(), spec.rotation.clone())?;
            Problem::uniform_bounds(spec.id.clone(), d, lo, hi, Sense::Minimize, CecObjective(f))?
        }
    };
    let p = match spec.shift.clone() {
        Some(s) => p.with_shift(s)?,
        None => p,
    };
    Ok(p.with_known_optimum(spec.optimum_value()))
}

/// A point where `id` attains its minimum, in search coordinates, where known.
pub fn optimum_location(id: FunctionId, aux: &AuxData) -> Option<Vec<f64>> {
    match id {
        FunctionId::Classical(c) => {
            let z = c.minimizer(CLASSICAL_DIM);
            Some(match c.shift(CLASSICAL_DIM) {
                Some(s) => z.iter().zip(&s).map(|(a, b)| a + b).collect(),
                None => z,
            })
        }
        FunctionId::Composite(_) => aux.composite_optima.get(&id.id()).map(|o| o[0].clone()),
        FunctionId::Cec(Cec::Chebyshev) => Some(vec![128.0, 0.0, -256.0, 0.0, 160.0, 0.0, -32.0, 0.0, 1.0]),
        FunctionId::Cec(Cec::InverseHilbert) => Some(vec![
            16.0, -120.0, 240.0, -140.0, -120.0, 1200.0, -2700.0, 1680.0, 240.0, -2700.0, 6480.0, -4200.0, -140.0,
            1680.0, -4200.0, 2800.0,
        ]),
        FunctionId::Cec(Cec::LennardJones) => None,
        FunctionId::Cec(c) => aux.cec_shift.get(&c.id()).cloned(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_contents() {
        let c = benchmark_catalog();
        assert_eq!(c.len(), 29);
        let tf8 = c.iter().find(|s| s.id == "TF8").unwrap();
        assert_eq!(tf8.f_min, -418.9829);
        assert!((tf8.optimum_value() + 4189.829).abs() < 1e-9);
        assert_eq!(c.iter().find(|s| s.id == "CEC03").unwrap().dimension, 18);
        assert_eq!(c.iter().filter(|s| s.family == Family::Composite).count(), 6);
    }

    #[test]
    fn id_parsing() {
        assert_eq!(FunctionId::parse("tf5").unwrap(), FunctionId::Classical(Classical::Tf5));
        assert_eq!(FunctionId::parse("TF17").unwrap(), FunctionId::Composite(17));
        assert_eq!(FunctionId::parse("CEC4").unwrap(), FunctionId::Cec(Cec::Rastrigin));
        assert_eq!(FunctionId::parse("CEC10").unwrap().id(), "CEC10");
        for bad in ["TF0", "TF20", "CEC11", "F1", "TFx"] {
            assert!(FunctionId::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn optima_lie_inside_the_box_and_evaluate_to_f_min() {
        let aux = AuxData::bundled();
        let mut rng = RandomStream::new(0);
        for id in FunctionId::all() {
            let Some(x) = optimum_location(id, aux) else { continue };
            let p = build_problem_with_noise(id, aux, false).unwrap();
            assert!(p.contains(&x), "{} optimum outside the box", id.id());
            let v = p.evaluate(&x, &mut rng).unwrap();
            let target = if id == FunctionId::Classical(Classical::Tf8) {
                -418.982_887_272_433_8 * 10.0
            } else {
                p.known_optimum.unwrap()
            };
            assert!((v - target).abs() < 1e-6, "{}: {v} vs {target}", id.id());
        }
    }

    #[test]
    fn missing_cec_data_is_a_config_error() {
        let empty = AuxData::default();
        assert!(matches!(build_problem(FunctionId::Cec(Cec::Ackley), &empty), Err(Error::Config(_))));
        assert!(build_problem(FunctionId::Cec(Cec::Chebyshev), &empty).is_ok());
        assert!(catalog_with(&empty).is_err());
    }
}
