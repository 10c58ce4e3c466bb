//! Comparability graph, greedy matching and order-ideal counting.

use num_bigint::BigUint;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::jobset::JobSet;

/// Enumeration limit for [`count_order_ideals`].
pub const IDEAL_COUNT_CAP: usize = 24;

/// Undirected graph with an edge between every comparable pair of jobs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparabilityGraph {
    adjacency: Vec<JobSet>,
}

impl ComparabilityGraph {
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> JobSet {
        self.adjacency[v]
    }

    /// Edges `(u, v)` with `u < v` by index, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }
}

pub fn comparability_graph(inst: &Instance) -> ComparabilityGraph {
    ComparabilityGraph {
        adjacency: (0..inst.n()).map(|v| inst.pred(v) | inst.succ(v)).collect(),
    }
}

/// A matching of comparable pairs together with its endpoint set `M` and the
/// unmatched remainder `I1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub pairs: Vec<(usize, usize)>,
    pub matched: JobSet,
    pub unmatched: JobSet,
}

/// Scans edges in `(min, max)` order and keeps every edge whose endpoints are
/// both still free. The result is inclusion-maximal.
pub fn greedy_maximal_matching(graph: &ComparabilityGraph) -> MatchingResult {
    let mut matched = JobSet::EMPTY;
    let mut pairs = Vec::new();
    for (u, v) in graph.edges() {
        if !matched.contains(u) && !matched.contains(v) {
            matched.insert(u);
            matched.insert(v);
            pairs.push((u, v));
        }
    }
    MatchingResult {
        pairs,
        matched,
        unmatched: JobSet::full(graph.n()) - matched,
    }
}

/// Greedy matching of the instance's comparability graph.
pub fn matching(inst: &Instance) -> MatchingResult {
    greedy_maximal_matching(&comparability_graph(inst))
}

/// Number of downward-closed subsets of the jobs.
pub fn count_order_ideals(inst: &Instance) -> Result<BigUint> {
    if inst.n() > IDEAL_COUNT_CAP {
        return Err(Error::InstanceTooLarge {
            n: inst.n(),
            limit: IDEAL_COUNT_CAP,
        });
    }
    let mut memo = FxHashMap::default();
    Ok(BigUint::from(ideals_within(inst, inst.all(), &mut memo)))
}

/// Ideals of the order restricted to `s`: those avoiding a pivot `v` are ideals
/// of `s` minus everything above `v`; those containing it are `down(v)` plus an
/// ideal of `s` minus everything below `v`.
fn ideals_within(inst: &Instance, s: JobSet, memo: &mut FxHashMap<u64, u64>) -> u64 {
    if s.len() <= 1 {
        return 1 << s.len();
    }
    if let Some(&c) = memo.get(&s.bits()) {
        return c;
    }
    let pivot = s
        .iter()
        .max_by_key(|&v| ((inst.pred(v) | inst.succ(v)) & s).len())
        .unwrap();
    let up = (inst.succ(pivot) & s).with(pivot);
    let down = (inst.pred(pivot) & s).with(pivot);
    let c = if up.len() == 1 && down.len() == 1 {
        // The pivot is isolated within `s`.
        2 * ideals_within(inst, s.without(pivot), memo)
    } else {
        ideals_within(inst, s - up, memo) + ideals_within(inst, s - down, memo)
    };
    memo.insert(s.bits(), c);
    c
}

/// `2^(n - 2k) * 3^k` for a matching of `k` pairs.
pub fn ideal_bound(n: usize, pairs: usize) -> BigUint {
    assert!(
        2 * pairs <= n,
        "a matching on {n} jobs has at most {} pairs",
        n / 2
    );
    BigUint::from(2u8).pow((n - 2 * pairs) as u32) * BigUint::from(3u8).pow(pairs as u32)
}
