//! Per-branch guesses and the sets derived from them.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::{Instance, Ordering};
use crate::jobset::JobSet;

use super::assignment::{compute_w_half, HalfAssignment, Quarter, QuarterAssignment};

/// Jobs of `I2` that may (`a`, `d`) or may not (`not_a`, `not_d`) occupy the
/// first or last quarter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSets {
    pub a: JobSet,
    pub not_a: JobSet,
    pub not_d: JobSet,
    pub d: JobSet,
}

impl PSets {
    /// Label domain paired with quarter `q`: `P^A`, `P^¬A`, `P^¬D`, `P^D`.
    pub fn domain(&self, q: Quarter) -> JobSet {
        match q {
            Quarter::A => self.a,
            Quarter::B => self.not_a,
            Quarter::C => self.not_d,
            Quarter::D => self.d,
        }
    }
}

/// `P^¬A` holds jobs of `i2` above some job of `m_b`; `P^¬D` jobs below some
/// job of `m_c`. The other two sets are the complements within `i2`.
pub fn compute_p_partitions(inst: &Instance, i2: JobSet, m_b: JobSet, m_c: JobSet) -> PSets {
    let not_a = i2 & inst.succ_set(m_b);
    let not_d = i2 & inst.pred_set(m_c);
    PSets {
        a: i2 - not_a,
        not_a,
        not_d,
        d: i2 - not_d,
    }
}

/// Everything guessed or derived for one branch of the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchContext {
    pub n: usize,
    pub endpoints: (usize, usize),
    /// Matched jobs plus both endpoints.
    pub m: JobSet,
    /// The remaining antichain.
    pub i1: JobSet,
    pub half: HalfAssignment,
    pub wh_ab: JobSet,
    pub wh_cd: JobSet,
    /// Quarter of every job in `M ∪ W_half` (empty before refinement).
    pub quarters: QuarterAssignment,
    /// `I1` minus `W_half`.
    pub i2: JobSet,
    pub p_sets: PSets,
}

impl BranchContext {
    /// Context after guessing halves for `M`. Fails on a contradictory guess.
    pub fn for_halves(
        inst: &Instance,
        m: JobSet,
        endpoints: (usize, usize),
        half: HalfAssignment,
    ) -> Result<Self> {
        let i1 = inst.all() - m;
        let (wh_ab, wh_cd) = compute_w_half(inst, i1, &half)?;
        Ok(BranchContext {
            n: inst.n(),
            endpoints,
            m,
            i1,
            half,
            wh_ab,
            wh_cd,
            quarters: QuarterAssignment::default(),
            i2: i1 - wh_ab - wh_cd,
            p_sets: PSets::default(),
        })
    }

    /// Both halves fit into `n/2` positions.
    pub fn halves_fit(&self) -> bool {
        (self.half.ab | self.wh_ab).len() <= self.n / 2
            && (self.half.cd | self.wh_cd).len() <= self.n / 2
    }

    /// Refines to quarters; `quarters` must cover `M ∪ W_half`.
    pub fn with_quarters(&self, inst: &Instance, quarters: QuarterAssignment) -> Self {
        let m_b = quarters.get(Quarter::B) & self.m;
        let m_c = quarters.get(Quarter::C) & self.m;
        BranchContext {
            quarters,
            p_sets: compute_p_partitions(inst, self.i2, m_b, m_c),
            ..self.clone()
        }
    }

    /// Jobs of `M ∪ W_half` placed in `q`.
    pub fn fixed(&self, q: Quarter) -> JobSet {
        self.quarters.get(q)
    }

    /// Free slots left in `q` once its fixed jobs are placed; this is `p^A`
    /// and `p^D` for the outer quarters.
    pub fn free_slots(&self, q: Quarter) -> usize {
        (self.n / 4).saturating_sub(self.fixed(q).len())
    }

    /// Prefix `x` respects the half guesses and `W_half`.
    pub fn conforms_halves(&self, x: JobSet) -> bool {
        let h = self.n / 2;
        let first = self.half.ab | self.wh_ab;
        let second = self.half.cd | self.wh_cd;
        (x.len() > h || !x.intersects(second)) && (x.len() < h || first.is_subset(x))
    }

    /// Prefix `x` respects the quarter guesses of `M ∪ W_half`.
    pub fn conforms_quarters(&self, x: JobSet) -> bool {
        Quarter::ALL.into_iter().all(|q| {
            let (s, e) = q.range(self.n);
            let set = self.fixed(q);
            (x.len() < e || set.is_subset(x)) && (x.len() > s || !x.intersects(set))
        })
    }

    /// The branch whose guesses match where `sigma` actually places every job.
    /// `inst` must be the endpoint variant for `sigma`'s first and last job.
    pub fn consistent_with(inst: &Instance, matched: JobSet, sigma: &Ordering) -> Result<Self> {
        let n = inst.n();
        let endpoints = (sigma.job_at(1), sigma.job_at(n));
        let m = matched.with(endpoints.0).with(endpoints.1);
        let in_first = |v: usize| sigma.position(v) <= n / 2;
        let half = HalfAssignment {
            ab: m.iter().filter(|&v| in_first(v)).collect(),
            cd: m.iter().filter(|&v| !in_first(v)).collect(),
        };
        let ctx = BranchContext::for_halves(inst, m, endpoints, half)?;
        let mut quarters = QuarterAssignment::default();
        for v in ctx.m | ctx.wh_ab | ctx.wh_cd {
            quarters.sets[Quarter::of_position(sigma.position(v), n).index()].insert(v);
        }
        Ok(ctx.with_quarters(inst, quarters))
    }

    /// `p^Γ` for every quarter under `sigma`: the number of jobs of the
    /// quarter's label domain that `sigma` places there.
    pub fn p_counts_of(&self, sigma: &Ordering) -> [usize; 4] {
        Quarter::ALL.map(|q| {
            self.p_sets
                .domain(q)
                .iter()
                .filter(|&v| Quarter::of_position(sigma.position(v), self.n) == q)
                .count()
        })
    }

    /// Jobs of `P^A` that `sigma` places in `B`, and of `P^D` placed in `C`.
    pub fn wquarter_of(&self, sigma: &Ordering) -> (JobSet, JobSet) {
        let at = |v: usize| Quarter::of_position(sigma.position(v), self.n);
        let b = self
            .p_sets
            .a
            .iter()
            .filter(|&v| at(v) == Quarter::B)
            .collect();
        let c = self
            .p_sets
            .d
            .iter()
            .filter(|&v| at(v) == Quarter::C)
            .collect();
        (b, c)
    }
}
