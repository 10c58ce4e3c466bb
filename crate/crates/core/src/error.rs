use thiserror::Error;

/// Errors produced by the solvers and the instance model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The precedence relation admits no valid ordering.
    #[error("precedence constraints contain a cycle: {}", format_cycle(.cycle))]
    CyclicPrecedence { cycle: Vec<usize> },

    #[error("job index {index} is out of range for an instance with {n} jobs")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("position {position} is out of range 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("not a bijection onto positions: {0}")]
    NotABijection(String),

    #[error("instance has {n} jobs but the limit is {limit}")]
    InstanceTooLarge { n: usize, limit: usize },

    #[error("set of {size} jobs exceeds the enumeration limit of {limit}")]
    SetTooLarge { size: usize, limit: usize },

    #[error("{subset} is not a subset of {superset}")]
    NotASubset { subset: String, superset: String },

    /// No ordering survives the acceptance predicate.
    #[error("no ordering is accepted by the filter")]
    Infeasible,

    /// A branch's guesses force some job into two places at once.
    #[error("branch guesses contradict the precedence constraints: {0}")]
    ContradictoryBranch(String),

    /// A solver produced an ordering that fails revalidation. Never expected.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn format_cycle(cycle: &[usize]) -> String {
    let mut parts: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
    if let Some(first) = cycle.first() {
        parts.push(first.to_string());
    }
    parts.join(" -> ")
}
