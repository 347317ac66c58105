//! Test-function battery: TF1-TF13, composites TF14-TF19 and CEC01-CEC10.

pub mod basic;
pub mod catalog;
pub mod cec2019;
pub mod classical;
pub mod composite;
pub mod data;

pub use catalog::{
    benchmark_catalog, build_problem, build_problem_with_noise, catalog_with, optimum_location, problem, BenchmarkSpec,
    Family, FunctionId,
};
pub use cec2019::Cec;
pub use classical::Classical;
pub use composite::CompositeSpec;
pub use data::AuxData;
