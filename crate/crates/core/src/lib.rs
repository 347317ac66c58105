//! Leo metaheuristic with GA/PSO baselines, the classical, composite and
//! CEC-2019 benchmark battery, rank-sum statistics and two application
//! objectives.
//!
//! ```
//! use leo_core::{benchmarks, leo::leo_run, RunConfig};
//!
//! let problem = benchmarks::problem("TF1").unwrap();
//! let config = RunConfig::default().with_population(20).with_iterations(30).with_seed(1);
//! let result = leo_run(&problem, &config).unwrap();
//! assert_eq!(result.convergence().len(), 31);
//! ```

pub mod applications;
pub mod baselines;
pub mod benchmarks;
pub mod cli;
pub mod config;
pub mod error;
pub mod harness;
pub mod leo;
pub mod metrics;
pub mod operators;
pub mod population;
pub mod problem;
pub mod reference;
pub mod result;
pub mod rng;
pub mod stats;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use harness::Algorithm;
pub use problem::{better, clamp_to_bounds, Candidate, Problem, Sense};
pub use result::RunResult;
pub use rng::RandomStream;
