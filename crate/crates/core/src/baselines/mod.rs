//! Reference optimizers run under the same protocol as Leo.

pub mod ga;
pub mod pso;

pub use ga::{ga_run, GaConfig};
pub use pso::{pso_run, pso_run_from, PsoConfig};
