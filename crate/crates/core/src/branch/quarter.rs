//! The quarter strategies: few jobs of a `P` set land in one quarter.
//!
//! The labeled DP tracks `L`, the jobs of the label domain `P^Δ` placed in
//! quarter `Γ`. Jobs of `P^Δ \ L` are scheduled entirely before (`Γ ∈ {A, B}`)
//! or entirely after (`Γ ∈ {C, D}`) that quarter, so the part of them inside a
//! prefix must be non-exchangeable, and there are few such parts.

use crate::dp::{solve_filtered_labeled, DpSolution, LabelMode, LabelRule};
use crate::error::Result;
use crate::exchange::{pred_exchangeable, succ_exchangeable};
use crate::instance::Instance;
use crate::jobset::JobSet;

use super::assignment::Quarter;
use super::context::BranchContext;

/// One quarter case: quarter `gamma`, its label domain, and exactly `p` domain
/// jobs guessed into the quarter.
#[derive(Clone, Copy, Debug)]
pub struct QuarterCase<'a> {
    pub inst: &'a Instance,
    pub ctx: &'a BranchContext,
    pub gamma: Quarter,
    pub p: usize,
}

impl<'a> QuarterCase<'a> {
    pub fn new(inst: &'a Instance, ctx: &'a BranchContext, gamma: Quarter, p: usize) -> Self {
        QuarterCase {
            inst,
            ctx,
            gamma,
            p,
        }
    }

    pub fn domain(&self) -> JobSet {
        self.ctx.p_sets.domain(self.gamma)
    }

    pub fn rule(&self) -> LabelRule {
        LabelRule {
            window: self.gamma.range(self.ctx.n),
            mode: match self.gamma {
                Quarter::A | Quarter::B => LabelMode::Prefix,
                Quarter::C | Quarter::D => LabelMode::Frozen,
            },
            size: Some(self.p),
        }
    }

    /// Whether the labeled prefix `(x, l)` may occur in an optimal ordering of
    /// this branch.
    pub fn accepts(&self, x: JobSet, l: JobSet) -> bool {
        if !self.inst.is_downward_closed(x) || !self.ctx.conforms_quarters(x) {
            return false;
        }
        let domain = self.domain();
        let (s, e) = self.gamma.range(self.ctx.n);
        let k = x.len();
        let rest = domain - l;
        match self.gamma {
            Quarter::A | Quarter::B => {
                if k <= e {
                    l == x & domain && l.len() <= self.p && (k > s || l.is_empty())
                } else {
                    l.len() == self.p && !succ_exchangeable(self.inst, x & rest, rest)
                }
            }
            Quarter::C | Quarter::D => {
                l.len() == self.p
                    && (k > s || !l.intersects(x))
                    && (k < e || l.is_subset(x))
                    && !pred_exchangeable(self.inst, x & rest, rest)
            }
        }
    }

    pub fn solve(&self) -> Result<DpSolution> {
        solve_filtered_labeled(
            self.inst,
            self.domain(),
            |x, l| self.accepts(x, l),
            self.rule(),
        )
    }
}

/// Best ordering of the branch with `p` jobs of quarter `gamma`'s label domain
/// placed in `gamma`.
pub fn solve_quarter_case(
    inst: &Instance,
    ctx: &BranchContext,
    gamma: Quarter,
    p: usize,
) -> Result<DpSolution> {
    QuarterCase::new(inst, ctx, gamma, p).solve()
}
