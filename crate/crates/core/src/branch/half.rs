//! The half strategy: many jobs forced into one half.

use serde::{Deserialize, Serialize};

use crate::dp::{solve_filtered, DpSolution};
use crate::error::Result;
use crate::instance::Instance;
use crate::jobset::JobSet;

use super::context::BranchContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HalfSide {
    /// Jobs forced into the first half.
    AB,
    /// Jobs forced into the second half.
    CD,
}

/// Prefix test for the half strategy: `x` is downward closed, respects the half
/// guesses, and leaves room for the forced jobs of `side`.
pub fn half_accepts(inst: &Instance, ctx: &BranchContext, side: HalfSide, x: JobSet) -> bool {
    let h = ctx.n / 2;
    let room = match side {
        // Forced first-half jobs still missing must fit in the remaining first-half slots.
        HalfSide::AB => (ctx.wh_ab - x).len() <= h.saturating_sub(x.len()),
        // Forced second-half jobs already placed must fit in the second-half slots used.
        HalfSide::CD => (ctx.wh_cd & x).len() <= x.len().saturating_sub(h),
    };
    room && ctx.conforms_halves(x) && inst.is_downward_closed(x)
}

/// Best ordering of the branch under the half strategy.
pub fn solve_half_case(inst: &Instance, ctx: &BranchContext, side: HalfSide) -> Result<DpSolution> {
    solve_filtered(inst, |x| half_accepts(inst, ctx, side, x))
}
