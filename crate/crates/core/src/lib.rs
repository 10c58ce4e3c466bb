//! Exact solvers for single-machine scheduling with precedence constraints,
//! minimizing the sum of completion times.
//!
//! Jobs are indexed `0..n` with `n <= 64`; job sets are bit masks
//! ([`JobSet`]). Costs are exact integers ([`ExactCost`]).

pub mod branch;
pub mod cost;
pub mod dp;
pub mod error;
pub mod exchange;
pub mod gen;
pub mod instance;
pub mod jobset;
pub mod oracle;
pub mod solver;
pub mod structure;

pub use branch::{
    solve, ChosenPath, EpsilonConfig, Quarter, SolveOutcome, SolveReport, SolverConfig,
};
pub use cost::ExactCost;
pub use dp::{DpSolution, DpStats};
pub use error::{Error, Result};
pub use instance::{
    normalize, parse_instance, Instance, InstanceFile, NormalizedInstance, Ordering, Precedence,
};
pub use jobset::{JobSet, MAX_JOBS};
pub use solver::{run, Algorithm};
