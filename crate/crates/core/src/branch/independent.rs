//! The independent-quarters strategy.
//!
//! Once every job of `I2` outside the guessed `W_quarter` sets is known to
//! belong to one of two quarters on each side (`A` or `B` via `Q^A`/`Q^¬A`,
//! and `C` or `D` via `Q^¬D`/`Q^D`), each quarter can be arranged on its own.
//! The four quarters interact only through the four intersections of those
//! sets; guessing the two smaller ones decouples the other two.

use crate::cost::ExactCost;
use crate::dp::{BlockArrangement, BlockTable, DpSolution, DpStats};
use crate::error::{Error, Result};
use crate::instance::{Instance, Ordering};
use crate::jobset::JobSet;

use super::assignment::Quarter;
use super::context::BranchContext;

/// Guessed `W_quarter` sets: jobs of `P^A` placed in `B` and of `P^D` placed in `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuarterGuess {
    pub wq_b: JobSet,
    pub wq_c: JobSet,
}

/// Jobs fixed into each quarter and the free sets each may draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependentSets {
    /// `W^Γ`: guessed members of each quarter.
    pub fixed: [JobSet; 4],
    /// `Q^A, Q^¬A, Q^¬D, Q^D`.
    pub q: [JobSet; 4],
    /// Free slots `q^Γ = n/4 - |W^Γ|`.
    pub slots: [usize; 4],
}

impl IndependentSets {
    pub fn new(ctx: &BranchContext, guess: QuarterGuess) -> Option<Self> {
        let wq = guess.wq_b | guess.wq_c;
        let mut fixed = ctx.quarters.sets;
        fixed[1] |= guess.wq_b;
        fixed[2] |= guess.wq_c;
        let q = Quarter::ALL.map(|g| ctx.p_sets.domain(g) - wq);
        let quarter = ctx.n / 4;
        if fixed.iter().any(|f| f.len() > quarter) {
            return None;
        }
        Some(IndependentSets {
            fixed,
            q,
            slots: fixed.map(|f| quarter - f.len()),
        })
    }
}

/// One block table per quarter. Arrangements depend only on the set and the
/// quarter, so the tables can be shared by every branch of one instance.
pub struct QuarterTables {
    blocks: Vec<BlockTable>,
}

impl QuarterTables {
    pub fn new(inst: &Instance) -> Self {
        QuarterTables {
            blocks: Quarter::ALL
                .iter()
                .map(|g| BlockTable::new(inst, g.range(inst.n()).0))
                .collect(),
        }
    }
}

struct Tables<'a> {
    inst: &'a Instance,
    sets: IndependentSets,
    blocks: &'a mut [BlockTable],
    stats: DpStats,
}

impl Tables<'_> {
    /// Cost and sequence of quarter `g` holding `y` plus its fixed jobs.
    fn arrange(&mut self, g: usize, y: JobSet) -> Option<BlockArrangement> {
        if y.len() != self.sets.slots[g] {
            return None;
        }
        let set = y | self.sets.fixed[g];
        self.blocks[g].arrange(self.inst, set, &mut self.stats)
    }

    fn cost(&mut self, g: usize, y: JobSet) -> Option<ExactCost> {
        if y.len() != self.sets.slots[g] {
            return None;
        }
        let set = y | self.sets.fixed[g];
        self.blocks[g].cost(self.inst, set, &mut self.stats)
    }

    /// Best split of `shared` between quarters `g1` (taking `y1` plus its part)
    /// and `g2` (taking `y2` plus the rest).
    fn best_split(
        &mut self,
        shared: JobSet,
        g1: usize,
        y1: JobSet,
        g2: usize,
        y2: JobSet,
    ) -> Option<(ExactCost, JobSet)> {
        let need = self.sets.slots[g1].checked_sub(y1.len())?;
        let mut best: Option<(ExactCost, JobSet)> = None;
        for part in shared.subsets_of_size(need) {
            let Some(c1) = self.cost(g1, y1 | part) else {
                continue;
            };
            let Some(c2) = self.cost(g2, y2 | (shared - part)) else {
                continue;
            };
            let total = c1 + c2;
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, part));
            }
        }
        best
    }
}

/// Best ordering of the branch given the `W_quarter` guess.
pub fn solve_independent_case(
    inst: &Instance,
    ctx: &BranchContext,
    guess: QuarterGuess,
) -> Result<DpSolution> {
    solve_independent_with(inst, ctx, guess, &mut QuarterTables::new(inst))
}

/// [`solve_independent_case`] reusing `tables`, which must belong to `inst`.
pub fn solve_independent_with(
    inst: &Instance,
    ctx: &BranchContext,
    guess: QuarterGuess,
    tables: &mut QuarterTables,
) -> Result<DpSolution> {
    let sets = IndependentSets::new(ctx, guess).ok_or(Error::Infeasible)?;
    let n = ctx.n;
    let mut t = Tables {
        inst,
        sets,
        blocks: &mut tables.blocks,
        stats: DpStats::default(),
    };
    let [qa, qna, qnd, qd] = sets.q;
    let (ac, ad, bc, bd) = (qa & qnd, qa & qd, qna & qnd, qna & qd);
    let (a, b, c, d) = (0, 1, 2, 3);
    // Per quarter: the jobs it takes from each intersection.
    let mut best: Option<(ExactCost, [JobSet; 4])> = None;
    if ac.len().min(bd.len()) <= ad.len().min(bc.len()) {
        // Guess A's share of AC and B's share of BD; AD and BC then split independently.
        for y_ac in ac.subsets() {
            for y_bd in bd.subsets() {
                let Some((c_ad, y_ad)) = t.best_split(ad, a, y_ac, d, bd - y_bd) else {
                    continue;
                };
                let Some((c_bc, y_bc)) = t.best_split(bc, b, y_bd, c, ac - y_ac) else {
                    continue;
                };
                let total = c_ad + c_bc;
                if best.as_ref().is_none_or(|(bc_, _)| total < *bc_) {
                    best = Some((
                        total,
                        [
                            y_ac | y_ad,
                            y_bd | y_bc,
                            (ac - y_ac) | (bc - y_bc),
                            (bd - y_bd) | (ad - y_ad),
                        ],
                    ));
                }
            }
        }
    } else {
        // Guess A's share of AD and B's share of BC; AC and BD then split independently.
        for y_ad in ad.subsets() {
            for y_bc in bc.subsets() {
                let Some((c_ac, y_ac)) = t.best_split(ac, a, y_ad, c, bc - y_bc) else {
                    continue;
                };
                let Some((c_bd, y_bd)) = t.best_split(bd, b, y_bc, d, ad - y_ad) else {
                    continue;
                };
                let total = c_ac + c_bd;
                if best.as_ref().is_none_or(|(bc_, _)| total < *bc_) {
                    best = Some((
                        total,
                        [
                            y_ac | y_ad,
                            y_bd | y_bc,
                            (ac - y_ac) | (bc - y_bc),
                            (bd - y_bd) | (ad - y_ad),
                        ],
                    ));
                }
            }
        }
    }
    let (_, ys) = best.ok_or(Error::Infeasible)?;
    let mut sequence = Vec::with_capacity(n);
    for (g, y) in ys.into_iter().enumerate() {
        let arr = t
            .arrange(g, y)
            .expect("arrangement evaluated during the search");
        sequence.extend(arr.sequence);
    }
    let ordering = Ordering::from_sequence(sequence).map_err(|e| {
        Error::InternalInconsistency(format!("quarter assembly is not a bijection: {e}"))
    })?;
    if !inst.validate_ordering(&ordering) {
        return Err(Error::InternalInconsistency(format!(
            "quarter assembly {ordering} violates precedence"
        )));
    }
    let cost = inst.ordering_cost(&ordering)?;
    Ok(DpSolution {
        ordering,
        cost,
        stats: t.stats,
        label: JobSet::EMPTY,
    })
}
