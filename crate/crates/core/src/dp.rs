//! Memoized subset dynamic programs.
//!
//! `T(X) = min over v in max(X) of T(X \ {v}) + cost(v, |X|)`, evaluated
//! top-down from the full job set so that sets rejected by the filter are never
//! expanded. The labeled variant additionally tracks which jobs of a label
//! domain occupy a window of positions.

use num_bigint::BigUint;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cost::{ExactCost, Weight, Weights};
use crate::error::{Error, Result};
use crate::instance::{Instance, Ordering};
use crate::jobset::JobSet;

/// Work counters for one DP invocation (or a sum of several).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpStats {
    /// Distinct memo keys accepted by the filter and evaluated, including the empty set.
    pub states_expanded: u64,
    /// Filter rejections (each rejected key is counted once).
    pub states_rejected: u64,
    /// Largest memo table held at once.
    pub peak_table_size: u64,
}

impl DpStats {
    /// Adds counters and keeps the larger peak.
    pub fn absorb(&mut self, other: &DpStats) {
        self.states_expanded += other.states_expanded;
        self.states_rejected += other.states_rejected;
        self.peak_table_size = self.peak_table_size.max(other.peak_table_size);
    }
}

/// Optimal ordering found by a DP, with its cost on the instance it ran on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpSolution {
    pub ordering: Ordering,
    pub cost: ExactCost,
    pub stats: DpStats,
    /// Final label set (labeled DP only; empty otherwise).
    pub label: JobSet,
}

/// Memoized top-down evaluation with an offset: a set `X` occupies positions
/// `offset + 1 ..= offset + |X|` of an `n`-position schedule.
struct Engine<'a, W, F> {
    inst: &'a Instance,
    times: &'a [W],
    n: usize,
    offset: usize,
    filter: F,
    memo: FxHashMap<u64, Option<(W, u8)>>,
    stats: DpStats,
}

const NO_JOB: u8 = u8::MAX;

impl<'a, W: Weight, F: FnMut(JobSet) -> bool> Engine<'a, W, F> {
    fn new(inst: &'a Instance, times: &'a [W], offset: usize, filter: F) -> Self {
        Engine {
            inst,
            times,
            n: inst.n(),
            offset,
            filter,
            memo: FxHashMap::default(),
            stats: DpStats::default(),
        }
    }

    fn eval(&mut self, x: JobSet) -> Option<W> {
        if let Some(entry) = self.memo.get(&x.bits()) {
            return entry.as_ref().map(|(w, _)| w.clone());
        }
        if !(self.filter)(x) {
            self.stats.states_rejected += 1;
            self.memo.insert(x.bits(), None);
            return None;
        }
        let entry = if x.is_empty() {
            Some((W::zero(), NO_JOB))
        } else {
            let coef = (self.n + 1 - self.offset - x.len()) as u64;
            let mut best: Option<(W, u8)> = None;
            for v in self.inst.max_elements(x) {
                if let Some(sub) = self.eval(x.without(v)) {
                    let c = sub.add_scaled(&self.times[v], coef);
                    if best.as_ref().is_none_or(|(b, _)| c < *b) {
                        best = Some((c, v as u8));
                    }
                }
            }
            best
        };
        self.stats.states_expanded += 1;
        let value = entry.as_ref().map(|(w, _)| w.clone());
        self.memo.insert(x.bits(), entry);
        self.stats.peak_table_size = self.memo.len() as u64;
        value
    }

    /// Jobs of `x` in schedule order, following stored choices.
    fn sequence(&self, mut x: JobSet) -> Vec<usize> {
        let mut rev = Vec::with_capacity(x.len());
        while !x.is_empty() {
            let (_, v) = self.memo[&x.bits()]
                .as_ref()
                .expect("reconstructing a feasible set");
            rev.push(*v as usize);
            x = x.without(*v as usize);
        }
        rev.reverse();
        rev
    }
}

fn solve_filtered_with<W: Weight, F: FnMut(JobSet) -> bool>(
    inst: &Instance,
    times: &[W],
    filter: F,
) -> Result<DpSolution> {
    let mut engine = Engine::new(inst, times, 0, filter);
    let all = inst.all();
    if engine.eval(all).is_none() {
        return Err(Error::Infeasible);
    }
    let ordering = Ordering::from_sequence(engine.sequence(all))?;
    let cost = inst.ordering_cost(&ordering)?;
    Ok(DpSolution {
        ordering,
        cost,
        stats: engine.stats,
        label: JobSet::EMPTY,
    })
}

/// Minimum-cost ordering among those whose every prefix set is accepted by `filter`.
///
/// The filter is consulted at most once per distinct set. Ties (possible only on
/// unnormalized instances) go to the smaller last-job index.
pub fn solve_filtered<F: FnMut(JobSet) -> bool>(inst: &Instance, filter: F) -> Result<DpSolution> {
    match inst.weights() {
        Weights::Narrow(t) => solve_filtered_with(inst, t, filter),
        Weights::Wide(t) => solve_filtered_with(inst, t, filter),
    }
}

/// The plain DP: every prefix set accepted.
pub fn solve_unfiltered(inst: &Instance) -> Result<DpSolution> {
    solve_filtered(inst, |_| true)
}

/// The DP restricted to downward-closed prefix sets.
pub fn solve_downward_closed(inst: &Instance) -> Result<DpSolution> {
    solve_filtered(inst, |x| inst.is_downward_closed(x))
}

/// How labels evolve in [`solve_filtered_labeled`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelMode {
    /// `L` holds the labeled jobs already scheduled: removing a labeled job
    /// removes it from `L`. Before the window closes `L = X ∩ domain`.
    Prefix,
    /// `L` is the final label set, fixed for the whole recursion.
    Frozen,
}

/// Label semantics: a job is labeled iff it belongs to the label domain and is
/// scheduled at a position in `(window.0, window.1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRule {
    pub window: (usize, usize),
    pub mode: LabelMode,
    /// Required size of the final label set; `None` allows any size.
    pub size: Option<usize>,
}

impl LabelRule {
    fn in_window(&self, position: usize) -> bool {
        self.window.0 < position && position <= self.window.1
    }
}

struct LabeledEngine<'a, W, F> {
    inst: &'a Instance,
    times: &'a [W],
    domain: JobSet,
    rule: LabelRule,
    filter: F,
    memo: FxHashMap<(u64, u64), Option<(W, u8)>>,
    stats: DpStats,
}

impl<'a, W: Weight, F: FnMut(JobSet, JobSet) -> bool> LabeledEngine<'a, W, F> {
    fn next_label(&self, l: JobSet, v: usize) -> JobSet {
        match self.rule.mode {
            LabelMode::Prefix => l.without(v),
            LabelMode::Frozen => l,
        }
    }

    fn eval(&mut self, x: JobSet, l: JobSet) -> Option<W> {
        let key = (x.bits(), l.bits());
        if let Some(entry) = self.memo.get(&key) {
            return entry.as_ref().map(|(w, _)| w.clone());
        }
        if !(self.filter)(x, l) {
            self.stats.states_rejected += 1;
            self.memo.insert(key, None);
            return None;
        }
        let entry = if x.is_empty() {
            Some((W::zero(), NO_JOB))
        } else {
            let p = x.len();
            let coef = (self.inst.n() + 1 - p) as u64;
            let in_window = self.rule.in_window(p);
            let mut best: Option<(W, u8)> = None;
            for v in self.inst.max_elements(x) {
                let labeled = in_window && self.domain.contains(v);
                if labeled != l.contains(v) {
                    continue;
                }
                if let Some(sub) = self.eval(x.without(v), self.next_label(l, v)) {
                    let c = sub.add_scaled(&self.times[v], coef);
                    if best.as_ref().is_none_or(|(b, _)| c < *b) {
                        best = Some((c, v as u8));
                    }
                }
            }
            best
        };
        self.stats.states_expanded += 1;
        let value = entry.as_ref().map(|(w, _)| w.clone());
        self.memo.insert(key, entry);
        self.stats.peak_table_size = self.memo.len() as u64;
        value
    }

    fn sequence(&self, mut x: JobSet, mut l: JobSet) -> Vec<usize> {
        let mut rev = Vec::with_capacity(x.len());
        while !x.is_empty() {
            let (_, v) = self.memo[&(x.bits(), l.bits())]
                .as_ref()
                .expect("reconstructing a feasible state");
            let v = *v as usize;
            rev.push(v);
            l = self.next_label(l, v);
            x = x.without(v);
        }
        rev.reverse();
        rev
    }
}

fn solve_labeled_with<W: Weight, F: FnMut(JobSet, JobSet) -> bool>(
    inst: &Instance,
    times: &[W],
    domain: JobSet,
    filter: F,
    rule: LabelRule,
) -> Result<DpSolution> {
    let mut engine = LabeledEngine {
        inst,
        times,
        domain,
        rule,
        filter,
        memo: FxHashMap::default(),
        stats: DpStats::default(),
    };
    let all = inst.all();
    let mut best: Option<(W, JobSet)> = None;
    let terminals: Box<dyn Iterator<Item = JobSet>> = match rule.size {
        Some(k) => Box::new(domain.subsets_of_size(k)),
        None => Box::new(domain.subsets()),
    };
    for l in terminals {
        if let Some(c) = engine.eval(all, l) {
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, l));
            }
        }
    }
    let (_, label) = best.ok_or(Error::Infeasible)?;
    let ordering = Ordering::from_sequence(engine.sequence(all, label))?;
    let cost = inst.ordering_cost(&ordering)?;
    Ok(DpSolution {
        ordering,
        cost,
        stats: engine.stats,
        label,
    })
}

/// DP over pairs `(X, L)` where `L` tracks the label-domain jobs placed in the
/// rule's position window.
///
/// A job `v` removed as the last job of `X` (position `|X|`) must be in `L`
/// exactly when it is in the domain and the position lies in the window. The
/// result is the best ordering over all final labels of the required size
/// whose traced pairs are all accepted by `filter`.
pub fn solve_filtered_labeled<F: FnMut(JobSet, JobSet) -> bool>(
    inst: &Instance,
    label_domain: JobSet,
    filter: F,
    rule: LabelRule,
) -> Result<DpSolution> {
    if !label_domain.is_subset(inst.all()) {
        return Err(Error::NotASubset {
            subset: label_domain.to_string(),
            superset: inst.all().to_string(),
        });
    }
    match inst.weights() {
        Weights::Narrow(t) => solve_labeled_with(inst, t, label_domain, filter, rule),
        Weights::Wide(t) => solve_labeled_with(inst, t, label_domain, filter, rule),
    }
}

/// Optimal arrangements of job sets inside a fixed block of positions.
///
/// A set `S` is placed at positions `offset + 1 ..= offset + |S|`, costed with
/// the full-schedule coefficients, respecting precedence among its members.
pub struct BlockTable {
    inner: BlockInner,
    offset: usize,
}

enum BlockInner {
    Narrow(FxHashMap<u64, Option<(u128, u8)>>),
    Wide(FxHashMap<u64, Option<(BigUint, u8)>>),
}

/// Result of arranging one set inside a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockArrangement {
    pub sequence: Vec<usize>,
    pub cost: ExactCost,
}

impl BlockTable {
    pub fn new(inst: &Instance, offset: usize) -> Self {
        let inner = match inst.weights() {
            Weights::Narrow(_) => BlockInner::Narrow(FxHashMap::default()),
            Weights::Wide(_) => BlockInner::Wide(FxHashMap::default()),
        };
        BlockTable { inner, offset }
    }

    /// Best arrangement of `set`, or `None` if `set` does not fit after the offset.
    pub fn arrange(
        &mut self,
        inst: &Instance,
        set: JobSet,
        stats: &mut DpStats,
    ) -> Option<BlockArrangement> {
        self.evaluate(inst, set, stats, true)
    }

    /// Cost of [`BlockTable::arrange`] without reconstructing the sequence.
    pub fn cost(&mut self, inst: &Instance, set: JobSet, stats: &mut DpStats) -> Option<ExactCost> {
        self.evaluate(inst, set, stats, false).map(|a| a.cost)
    }

    fn evaluate(
        &mut self,
        inst: &Instance,
        set: JobSet,
        stats: &mut DpStats,
        with_sequence: bool,
    ) -> Option<BlockArrangement> {
        if self.offset + set.len() > inst.n() {
            return None;
        }
        fn run<W: Weight>(
            inst: &Instance,
            times: &[W],
            offset: usize,
            memo: &mut FxHashMap<u64, Option<(W, u8)>>,
            set: JobSet,
            stats: &mut DpStats,
            with_sequence: bool,
        ) -> Option<BlockArrangement> {
            if let Some(entry) = memo.get(&set.bits()) {
                if !with_sequence {
                    return entry.as_ref().map(|(w, _)| BlockArrangement {
                        sequence: Vec::new(),
                        cost: w.to_exact(),
                    });
                }
            }
            let mut engine = Engine::new(inst, times, offset, |_| true);
            engine.memo = std::mem::take(memo);
            let before = engine.memo.len() as u64;
            let value = engine.eval(set);
            let arrangement = value.map(|w| BlockArrangement {
                sequence: if with_sequence {
                    engine.sequence(set)
                } else {
                    Vec::new()
                },
                cost: w.to_exact(),
            });
            stats.states_expanded += engine.memo.len() as u64 - before;
            stats.peak_table_size = stats.peak_table_size.max(engine.memo.len() as u64);
            *memo = engine.memo;
            arrangement
        }
        match (&mut self.inner, inst.weights()) {
            (BlockInner::Narrow(memo), Weights::Narrow(t)) => {
                run(inst, t, self.offset, memo, set, stats, with_sequence)
            }
            (BlockInner::Wide(memo), Weights::Wide(t)) => {
                run(inst, t, self.offset, memo, set, stats, with_sequence)
            }
            _ => unreachable!("table built for a different instance"),
        }
    }
}
