//! One entry point for every algorithm.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::branch::{self, BranchRecord, ChosenPath, SolveOutcome, SolverConfig};
use crate::dp::{solve_downward_closed, solve_unfiltered, DpStats};
use crate::error::{Error, Result};
use crate::instance::{normalize, Instance};
use crate::oracle::normalized_optimum_of;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Enumerate linear extensions.
    Brute,
    /// Subset DP over all prefix sets.
    Dp,
    /// Subset DP over downward-closed prefix sets.
    Dcdp,
    /// The branching solver.
    Full,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Brute,
        Algorithm::Dp,
        Algorithm::Dcdp,
        Algorithm::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::Dp => "dp",
            Algorithm::Dcdp => "dcdp",
            Algorithm::Full => "full",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm {s:?}")))
    }
}

/// Solves `inst` with `algo`. Every algorithm works on the normalized instance,
/// so all of them return the same unique ordering.
pub fn run(inst: &Instance, algo: Algorithm, cfg: &SolverConfig) -> Result<SolveOutcome> {
    if algo == Algorithm::Full {
        return branch::solve(inst, cfg);
    }
    let start = Instant::now();
    let norm = normalize(inst);
    let (padded, stats, path) = match algo {
        Algorithm::Brute => {
            if inst.n() > cfg.oracle_cap {
                return Err(Error::InstanceTooLarge {
                    n: inst.n(),
                    limit: cfg.oracle_cap,
                });
            }
            (
                normalized_optimum_of(&norm)?.padded,
                DpStats::default(),
                ChosenPath::Brute,
            )
        }
        Algorithm::Dp => {
            let sol = solve_unfiltered(norm.base())?;
            (sol.ordering, sol.stats, ChosenPath::Dp)
        }
        Algorithm::Dcdp => {
            let sol = solve_downward_closed(norm.base())?;
            (sol.ordering, sol.stats, ChosenPath::Dcdp)
        }
        Algorithm::Full => unreachable!(),
    };
    let record = BranchRecord {
        endpoints: None,
        path,
        detail: String::new(),
        perturbed_cost: Some(norm.base().ordering_cost(&padded)?),
        stats,
    };
    SolveOutcome::finish(
        &norm,
        padded,
        algo.name(),
        path,
        vec![record],
        Vec::new(),
        start,
    )
}
