//! What a solve did: which strategy won, and per-branch work counters.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cost::ExactCost;
use crate::dp::DpStats;

use super::assignment::Quarter;

/// The strategy that produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChosenPath {
    Brute,
    Dp,
    Dcdp,
    Half,
    Quarters(Quarter),
    Independent,
}

impl fmt::Display for ChosenPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChosenPath::Brute => f.write_str("brute"),
            ChosenPath::Dp => f.write_str("dp"),
            ChosenPath::Dcdp => f.write_str("dcdp"),
            ChosenPath::Half => f.write_str("half"),
            ChosenPath::Quarters(q) => write!(f, "quarters0-{q}"),
            ChosenPath::Independent => f.write_str("independent"),
        }
    }
}

impl std::str::FromStr for ChosenPath {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "brute" => ChosenPath::Brute,
            "dp" => ChosenPath::Dp,
            "dcdp" => ChosenPath::Dcdp,
            "half" => ChosenPath::Half,
            "independent" => ChosenPath::Independent,
            "quarters0-A" => ChosenPath::Quarters(Quarter::A),
            "quarters0-B" => ChosenPath::Quarters(Quarter::B),
            "quarters0-C" => ChosenPath::Quarters(Quarter::C),
            "quarters0-D" => ChosenPath::Quarters(Quarter::D),
            _ => return Err(format!("unknown path {s:?}")),
        })
    }
}

impl Serialize for ChosenPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ChosenPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// One strategy invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchRecord {
    /// `(v_begin, v_end)` of the variant, when the branch has one.
    pub endpoints: Option<(usize, usize)>,
    pub path: ChosenPath,
    /// Human-readable summary of the branch's guesses.
    pub detail: String,
    /// Branch optimum under perturbed times, `None` if infeasible.
    pub perturbed_cost: Option<ExactCost>,
    pub stats: DpStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub chosen_path: ChosenPath,
    pub branches_explored: usize,
    pub branches: Vec<BranchRecord>,
    pub total: DpStats,
    pub wall_ms: f64,
    pub diagnostics: Vec<String>,
}

/// Header of [`SolveReport::csv_rows`].
pub const REPORT_CSV_HEADER: [&str; 8] = [
    "endpoint_begin",
    "endpoint_end",
    "path",
    "detail",
    "perturbed_cost",
    "states_expanded",
    "states_rejected",
    "peak_table_size",
];

impl SolveReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per branch, fields matching [`REPORT_CSV_HEADER`].
    pub fn csv_rows(&self) -> Vec<[String; 8]> {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        self.branches
            .iter()
            .map(|b| {
                [
                    opt(b.endpoints.map(|e| e.0)),
                    opt(b.endpoints.map(|e| e.1)),
                    b.path.to_string(),
                    b.detail.clone(),
                    b.perturbed_cost
                        .as_ref()
                        .map(|c| c.to_string())
                        .unwrap_or_default(),
                    b.stats.states_expanded.to_string(),
                    b.stats.states_rejected.to_string(),
                    b.stats.peak_table_size.to_string(),
                ]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_names_roundtrip() {
        for p in [
            ChosenPath::Brute,
            ChosenPath::Dcdp,
            ChosenPath::Quarters(Quarter::C),
            ChosenPath::Independent,
        ] {
            assert_eq!(p.to_string().parse::<ChosenPath>().unwrap(), p);
        }
        assert_eq!(
            serde_json::to_string(&ChosenPath::Quarters(Quarter::A)).unwrap(),
            "\"quarters0-A\""
        );
    }
}
