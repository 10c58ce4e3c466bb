//! Brute-force ground truth by enumerating linear extensions.

use crate::cost::{ExactCost, Weight, Weights};
use crate::error::{Error, Result};
use crate::instance::{normalize, Instance, NormalizedInstance, Ordering};
use crate::jobset::JobSet;

/// Default job-count limit for enumeration.
pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Lazy stream of all linear extensions, in lexicographic order of job sequence.
pub struct LinearExtensions<'a> {
    inst: &'a Instance,
    placed: JobSet,
    sequence: Vec<usize>,
    /// Per depth: candidates not yet tried at that depth.
    pending: Vec<JobSet>,
    started: bool,
}

impl<'a> LinearExtensions<'a> {
    fn available(&self) -> JobSet {
        (self.inst.all() - self.placed)
            .iter()
            .filter(|&v| self.inst.pred(v).is_subset(self.placed))
            .collect()
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Ordering;

    fn next(&mut self) -> Option<Ordering> {
        let n = self.inst.n();
        if !self.started {
            self.started = true;
            if n == 0 {
                return Some(Ordering::identity(0));
            }
            let avail = self.available();
            self.pending.push(avail);
        } else if n == 0 {
            return None;
        }
        while !self.pending.is_empty() {
            // Undo the job placed at this depth by the previous step.
            if self.sequence.len() == self.pending.len() {
                let v = self.sequence.pop().unwrap();
                self.placed.remove(v);
            }
            let top = self.pending.last_mut().unwrap();
            match top.first() {
                None => {
                    self.pending.pop();
                }
                Some(v) => {
                    top.remove(v);
                    self.sequence.push(v);
                    self.placed.insert(v);
                    if self.sequence.len() == n {
                        return Some(Ordering::from_sequence(self.sequence.clone()).unwrap());
                    }
                    let avail = self.available();
                    self.pending.push(avail);
                }
            }
        }
        None
    }
}

/// Every ordering satisfying the precedence constraints, each exactly once.
pub fn linear_extensions(inst: &Instance, cap: usize) -> Result<LinearExtensions<'_>> {
    if inst.n() > cap {
        return Err(Error::InstanceTooLarge {
            n: inst.n(),
            limit: cap,
        });
    }
    Ok(LinearExtensions {
        inst,
        placed: JobSet::EMPTY,
        sequence: Vec::with_capacity(inst.n()),
        pending: Vec::with_capacity(inst.n() + 1),
        started: false,
    })
}

/// Depth-first search over extensions keeping a running cost.
struct Search<'a, W> {
    inst: &'a Instance,
    times: &'a [W],
    /// Padded instance length; positions are counted in the padded schedule.
    slots: usize,
    /// Dummy jobs inserted before the first positive-time job (normalized mode).
    dummies: &'a [usize],
    zero: JobSet,
    sequence: Vec<usize>,
    best: Option<(W, Vec<usize>)>,
}

impl<W: Weight> Search<'_, W> {
    fn run(&mut self, placed: JobSet, acc: W, dummies_done: bool) {
        let n = self.inst.n();
        if placed.len() == n {
            let (acc, seq) = if dummies_done {
                (acc, self.sequence.clone())
            } else {
                self.append_dummies(acc, self.sequence.clone())
            };
            if self.best.as_ref().is_none_or(|(b, _)| acc < *b) {
                self.best = Some((acc, seq));
            }
            return;
        }
        for v in self.inst.all() - placed {
            if !self.inst.pred(v).is_subset(placed) {
                continue;
            }
            let (mut acc2, mut done) = (acc.clone(), dummies_done);
            if !done && !self.zero.contains(v) {
                let taken = std::mem::take(&mut self.sequence);
                let (a, seq) = self.append_dummies(acc2, taken);
                self.sequence = seq;
                acc2 = a;
                done = true;
            }
            let pos = self.sequence.len() + 1;
            let cost = acc2.add_scaled(&self.times[v], (self.slots + 1 - pos) as u64);
            self.sequence.push(v);
            self.run(placed.with(v), cost, done);
            self.sequence.pop();
            if done && !dummies_done {
                self.sequence
                    .truncate(self.sequence.len() - self.dummies.len());
            }
        }
    }

    fn append_dummies(&self, mut acc: W, mut seq: Vec<usize>) -> (W, Vec<usize>) {
        for &d in self.dummies {
            let pos = seq.len() + 1;
            acc = acc.add_scaled(&self.times[d], (self.slots + 1 - pos) as u64);
            seq.push(d);
        }
        (acc, seq)
    }
}

fn search<W: Weight>(
    inst: &Instance,
    times: &[W],
    slots: usize,
    dummies: &[usize],
    zero: JobSet,
) -> (W, Vec<usize>) {
    let mut s = Search {
        inst,
        times,
        slots,
        dummies,
        zero,
        sequence: Vec::with_capacity(slots),
        best: None,
    };
    s.run(JobSet::EMPTY, W::zero(), dummies.is_empty());
    s.best.expect("a closed order always has an extension")
}

/// Minimum-cost linear extension; ties go to the lexicographically first sequence.
pub fn brute_force_optimal(inst: &Instance) -> Result<(Ordering, ExactCost)> {
    brute_force_optimal_capped(inst, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_optimal_capped(inst: &Instance, cap: usize) -> Result<(Ordering, ExactCost)> {
    if inst.n() > cap {
        return Err(Error::InstanceTooLarge {
            n: inst.n(),
            limit: cap,
        });
    }
    let n = inst.n();
    let (cost, seq) = match inst.weights() {
        Weights::Narrow(t) => {
            let (c, s) = search(inst, t, n, &[], JobSet::EMPTY);
            (c.to_exact(), s)
        }
        Weights::Wide(t) => {
            let (c, s) = search(inst, t, n, &[], JobSet::EMPTY);
            (c.to_exact(), s)
        }
    };
    Ok((Ordering::from_sequence(seq)?, cost))
}

/// The unique optimum of a normalized instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedOptimum {
    /// Ordering of the padded instance.
    pub padded: Ordering,
    /// Cost of `padded` under perturbed times.
    pub perturbed_cost: ExactCost,
    /// `padded` restricted to the original jobs.
    pub ordering: Ordering,
    /// Unperturbed cost of `ordering` on the original instance.
    pub cost: ExactCost,
}

/// Brute-force optimum of `normalize(inst)` enumerating only extensions of the
/// original jobs.
///
/// Zero-time unconstrained dummies lower every later job's coefficient, so in
/// an optimum they all precede the first original job with positive time. Their
/// perturbation digits are the most significant, so they sit as late as that
/// allows, contiguously and in index order. That fixes the dummy placement for
/// each order of the original jobs.
pub fn normalized_optimum(inst: &Instance, cap: usize) -> Result<NormalizedOptimum> {
    if inst.n() > cap {
        return Err(Error::InstanceTooLarge {
            n: inst.n(),
            limit: cap,
        });
    }
    let norm = normalize(inst);
    normalized_optimum_of(&norm)
}

pub(crate) fn normalized_optimum_of(norm: &NormalizedInstance) -> Result<NormalizedOptimum> {
    let inst = norm.original();
    let base = norm.base();
    let n0 = inst.n();
    let slots = base.n();
    let dummies: Vec<usize> = (n0..slots).collect();
    let zero: JobSet = (0..n0)
        .filter(|&v| num_traits::Zero::is_zero(inst.time(v)))
        .collect();
    // Enumerate the original jobs while costing with padded times.
    let shell = norm.original();
    let (perturbed, seq) = match base.weights() {
        Weights::Narrow(t) => {
            let (c, s) = search(shell, t, slots, &dummies, zero);
            (c.to_exact(), s)
        }
        Weights::Wide(t) => {
            let (c, s) = search(shell, t, slots, &dummies, zero);
            (c.to_exact(), s)
        }
    };
    let padded = Ordering::from_sequence(seq)?;
    debug_assert_eq!(base.ordering_cost(&padded).unwrap(), perturbed);
    let ordering = norm.to_original(&padded);
    let cost = inst.ordering_cost(&ordering)?;
    Ok(NormalizedOptimum {
        padded,
        perturbed_cost: perturbed,
        ordering,
        cost,
    })
}
