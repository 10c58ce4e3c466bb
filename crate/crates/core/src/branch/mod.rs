//! The branching exact solver.
//!
//! With a large matching of comparable pairs the downward-closed DP is already
//! fast. Otherwise every admissible first/last job pair is tried; matched jobs
//! are guessed into halves and quarters, and each branch is handed to the first
//! applicable strategy: half, quarter (large `P` set or small `p` count), or
//! independent quarters. The answer is the best branch.

pub mod assignment;
pub mod config;
pub mod context;
pub mod half;
pub mod independent;
pub mod quarter;
pub mod report;

use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::cost::ExactCost;
use crate::dp::{solve_downward_closed, DpSolution, DpStats};
use crate::error::{Error, Result};
use crate::instance::{endpoint_variants, normalize, Instance, NormalizedInstance, Ordering};
use crate::jobset::JobSet;
use crate::structure::matching;

pub use assignment::{
    compute_w_half, enumerate_half_assignments, enumerate_quarter_assignments, refine_to_quarters,
    HalfAssignment, Quarter, QuarterAssignment,
};
pub use config::{parse_rational, EpsilonConfig, SolverConfig, DEFAULT_WQUARTER_CAP};
pub use context::{compute_p_partitions, BranchContext, PSets};
pub use half::{half_accepts, solve_half_case, HalfSide};
pub use independent::{
    solve_independent_case, solve_independent_with, IndependentSets, QuarterGuess, QuarterTables,
};
pub use quarter::{solve_quarter_case, QuarterCase};
pub use report::{BranchRecord, ChosenPath, SolveReport, REPORT_CSV_HEADER};

/// Result of any solver, in both the original and the normalized instance.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    /// Optimal ordering of the original jobs.
    pub ordering: Ordering,
    /// Unperturbed cost of `ordering`.
    pub cost: ExactCost,
    /// Optimal ordering of the normalized instance.
    pub padded: Ordering,
    /// Cost of `padded` under perturbed times.
    pub perturbed_cost: ExactCost,
    pub report: SolveReport,
}

impl SolveOutcome {
    /// Revalidates `padded` on the normalized instance and fills in both costs.
    pub(crate) fn finish(
        norm: &NormalizedInstance,
        padded: Ordering,
        algorithm: &str,
        chosen_path: ChosenPath,
        branches: Vec<BranchRecord>,
        diagnostics: Vec<String>,
        start: Instant,
    ) -> Result<SolveOutcome> {
        if !norm.base().validate_ordering(&padded) {
            return Err(Error::InternalInconsistency(format!(
                "{algorithm} returned invalid ordering {padded}"
            )));
        }
        let perturbed_cost = norm.base().ordering_cost(&padded)?;
        let ordering = norm.to_original(&padded);
        let cost = norm.original().ordering_cost(&ordering)?;
        let mut total = DpStats::default();
        for b in &branches {
            total.absorb(&b.stats);
        }
        Ok(SolveOutcome {
            ordering,
            cost,
            padded,
            perturbed_cost,
            report: SolveReport {
                algorithm: algorithm.to_string(),
                chosen_path,
                branches_explored: branches.len(),
                branches,
                total,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
                diagnostics,
            },
        })
    }
}

/// Accumulates strategy runs for one endpoint variant.
struct Collector<'a> {
    inst: &'a Instance,
    endpoints: Option<(usize, usize)>,
    records: Vec<BranchRecord>,
    best: Option<(ExactCost, Ordering, ChosenPath)>,
    diagnostics: Vec<String>,
}

impl<'a> Collector<'a> {
    fn new(inst: &'a Instance, endpoints: Option<(usize, usize)>) -> Self {
        Collector {
            inst,
            endpoints,
            records: Vec::new(),
            best: None,
            diagnostics: Vec::new(),
        }
    }

    fn run(
        &mut self,
        path: ChosenPath,
        detail: String,
        f: impl FnOnce() -> Result<DpSolution>,
    ) -> Result<()> {
        let (cost, stats) = match f() {
            Ok(sol) => {
                if !self.inst.validate_ordering(&sol.ordering) {
                    return Err(Error::InternalInconsistency(format!(
                        "{path} branch ({detail}) returned invalid ordering {}",
                        sol.ordering
                    )));
                }
                let cost = self.inst.ordering_cost(&sol.ordering)?;
                if cost != sol.cost {
                    return Err(Error::InternalInconsistency(format!(
                        "{path} branch ({detail}) reported cost {} but the ordering costs {cost}",
                        sol.cost
                    )));
                }
                if self.best.as_ref().is_none_or(|(b, _, _)| cost < *b) {
                    self.best = Some((cost.clone(), sol.ordering, path));
                }
                (Some(cost), sol.stats)
            }
            Err(Error::Infeasible) => (None, DpStats::default()),
            Err(e) => return Err(e),
        };
        self.records.push(BranchRecord {
            endpoints: self.endpoints,
            path,
            detail,
            perturbed_cost: cost,
            stats,
        });
        Ok(())
    }
}

/// Exact optimum of `inst` by the branching algorithm.
pub fn solve(inst: &Instance, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let start = Instant::now();
    let norm = normalize(inst);
    let base = norm.base();
    let n = base.n();
    let matched = matching(base);
    let pairs = matched.pairs.len();
    if n == 0 || cfg.eps.at_least(1, pairs, n) {
        let mut c = Collector::new(base, None);
        c.run(ChosenPath::Dcdp, format!("matching pairs={pairs}"), || {
            solve_downward_closed(base)
        })?;
        let (_, padded, path) = c.best.ok_or(Error::Infeasible)?;
        return SolveOutcome::finish(&norm, padded, "full", path, c.records, c.diagnostics, start);
    }
    let matched = matched.matched;
    let variants = endpoint_variants(&norm);
    let results: Vec<Result<Collector>> = if cfg.parallel {
        variants
            .par_iter()
            .map(|v| solve_variant(v, matched, cfg))
            .collect()
    } else {
        variants
            .iter()
            .map(|v| solve_variant(v, matched, cfg))
            .collect()
    };
    let mut records = Vec::new();
    let mut diagnostics = Vec::new();
    let mut best: Option<(ExactCost, Ordering, ChosenPath)> = None;
    for r in results {
        let c = r?;
        records.extend(c.records);
        diagnostics.extend(c.diagnostics);
        if let Some((cost, ord, path)) = c.best {
            if best.as_ref().is_none_or(|(b, _, _)| cost < *b) {
                best = Some((cost, ord, path));
            }
        }
    }
    let (_, padded, path) = best.ok_or(Error::Infeasible)?;
    SolveOutcome::finish(&norm, padded, "full", path, records, diagnostics, start)
}

fn solve_variant<'a>(
    variant: &'a NormalizedInstance,
    matched: JobSet,
    cfg: &SolverConfig,
) -> Result<Collector<'a>> {
    let inst = variant.base();
    let n = inst.n();
    let endpoints = variant.endpoints().expect("endpoint variant");
    let m = matched.with(endpoints.0).with(endpoints.1);
    let mut c = Collector::new(inst, Some(endpoints));
    let mut tables = QuarterTables::new(inst);
    for half in enumerate_half_assignments(inst, m, endpoints) {
        let ctx = match BranchContext::for_halves(inst, m, endpoints, half) {
            Ok(ctx) => ctx,
            Err(Error::ContradictoryBranch(_)) => continue,
            Err(e) => return Err(e),
        };
        if !ctx.halves_fit() {
            continue;
        }
        let detail = format!(
            "ab={} cd={} wh_ab={} wh_cd={}",
            half.ab, half.cd, ctx.wh_ab, ctx.wh_cd
        );
        if cfg.eps.at_least(2, ctx.wh_ab.len(), n) {
            c.run(ChosenPath::Half, format!("{detail} side=AB"), || {
                solve_half_case(inst, &ctx, HalfSide::AB)
            })?;
            continue;
        }
        if cfg.eps.at_least(2, ctx.wh_cd.len(), n) {
            c.run(ChosenPath::Half, format!("{detail} side=CD"), || {
                solve_half_case(inst, &ctx, HalfSide::CD)
            })?;
            continue;
        }
        for quarters in
            refine_to_quarters(inst, half.ab | ctx.wh_ab, half.cd | ctx.wh_cd, endpoints)
        {
            solve_quarter_stage(
                inst,
                &ctx.with_quarters(inst, quarters),
                cfg,
                &mut c,
                &mut tables,
            )?;
        }
    }
    Ok(c)
}

/// What a quarter-stage branch runs for given `p` values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Task {
    Quarter(Quarter, usize),
    Independent(usize, usize),
}

/// `|P^Δ| - 2 p^Γ`: how far the quarter case's premise `p^Γ < |P^Δ| / 2` holds.
fn margin(ctx: &BranchContext, p: &[usize; 4], q: Quarter) -> i64 {
    ctx.p_sets.domain(q).len() as i64 - 2 * p[q.index()] as i64
}

/// Largest margin among `candidates`, ties to the earliest quarter.
fn best_margin(
    ctx: &BranchContext,
    p: &[usize; 4],
    candidates: impl Iterator<Item = Quarter>,
) -> Option<Quarter> {
    let mut best: Option<(i64, Quarter)> = None;
    for q in candidates {
        let m = margin(ctx, p, q);
        if best.is_none_or(|(b, _)| m > b) {
            best = Some((m, q));
        }
    }
    best.map(|(_, q)| q)
}

fn choose_task(ctx: &BranchContext, p: &[usize; 4], cfg: &SolverConfig) -> Task {
    let n = ctx.n;
    if let Some(q) = cfg.force_quarter {
        return Task::Quarter(q, p[q.index()]);
    }
    let large = Quarter::ALL
        .into_iter()
        .filter(|&q| cfg.eps.large_p_set(ctx.p_sets.domain(q).len(), n));
    if let Some(q) = best_margin(ctx, p, large) {
        return Task::Quarter(q, p[q.index()]);
    }
    let small = Quarter::ALL
        .into_iter()
        .filter(|&q| cfg.eps.small_p_count(p[q.index()], n));
    if let Some(q) = best_margin(ctx, p, small) {
        return Task::Quarter(q, p[q.index()]);
    }
    Task::Independent(p[1], p[2])
}

fn solve_quarter_stage(
    inst: &Instance,
    ctx: &BranchContext,
    cfg: &SolverConfig,
    c: &mut Collector,
    tables: &mut QuarterTables,
) -> Result<()> {
    let ps = ctx.p_sets;
    let slots = Quarter::ALL.map(|q| ctx.free_slots(q));
    let (p_a, p_d) = (slots[0], slots[3]);
    if p_a > ps.a.len() || p_d > ps.d.len() {
        return Ok(());
    }
    let quarters = format!(
        "A={} B={} C={} D={}",
        ctx.quarters.sets[0], ctx.quarters.sets[1], ctx.quarters.sets[2], ctx.quarters.sets[3]
    );
    let mut done = FxHashSet::default();
    for p_b in 0..=slots[1].min(ps.not_a.len()) {
        for p_c in 0..=slots[2].min(ps.not_d.len()) {
            let (k_b, k_c) = (slots[1] - p_b, slots[2] - p_c);
            // B's remaining slots take jobs of P^A not in A, C's take jobs of P^D not in D.
            if k_b + p_a > ps.a.len() || k_c + p_d > ps.d.len() {
                continue;
            }
            let p = [p_a, p_b, p_c, p_d];
            let mut task = choose_task(ctx, &p, cfg);
            if let Task::Independent(..) = task {
                if k_b > cfg.wquarter_cap || k_c > cfg.wquarter_cap {
                    let q = best_margin(ctx, &p, Quarter::ALL.into_iter()).expect("four quarters");
                    c.diagnostics.push(format!(
                        "endpoints {:?} {quarters} p={p:?}: guessed quarter sets of sizes {k_b} and {k_c} exceed cap {}; using quarter {q}",
                        c.endpoints, cfg.wquarter_cap
                    ));
                    task = Task::Quarter(q, p[q.index()]);
                }
            }
            if !done.insert(task) {
                continue;
            }
            match task {
                Task::Quarter(q, pq) => {
                    c.run(
                        ChosenPath::Quarters(q),
                        format!("{quarters} gamma={q} p={pq}"),
                        || solve_quarter_case(inst, ctx, q, pq),
                    )?;
                }
                Task::Independent(..) => {
                    let detail = format!("{quarters} p={p:?} wquarter sizes {k_b},{k_c}");
                    c.run(ChosenPath::Independent, detail, || {
                        best_over_guesses(inst, ctx, ps.a, ps.d, k_b, k_c, tables)
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// Best independent-quarters result over every `W_quarter` guess of the given sizes.
fn best_over_guesses(
    inst: &Instance,
    ctx: &BranchContext,
    from_a: JobSet,
    from_d: JobSet,
    k_b: usize,
    k_c: usize,
    tables: &mut QuarterTables,
) -> Result<DpSolution> {
    let mut stats = DpStats::default();
    let mut best: Option<DpSolution> = None;
    for wq_b in from_a.subsets_of_size(k_b) {
        for wq_c in (from_d - wq_b).subsets_of_size(k_c) {
            match solve_independent_with(inst, ctx, QuarterGuess { wq_b, wq_c }, tables) {
                Ok(sol) => {
                    stats.absorb(&sol.stats);
                    if best.as_ref().is_none_or(|b| sol.cost < b.cost) {
                        best = Some(sol);
                    }
                }
                Err(Error::Infeasible) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let mut best = best.ok_or(Error::Infeasible)?;
    best.stats = stats;
    Ok(best)
}

/// The endpoint variant and branch whose guesses agree with the normalized
/// ordering `sigma`.
pub fn consistent_branch(
    norm: &NormalizedInstance,
    sigma: &Ordering,
) -> Result<(NormalizedInstance, BranchContext)> {
    let n = norm.base().n();
    let endpoints = (sigma.job_at(1), sigma.job_at(n));
    let variant = endpoint_variants(norm)
        .into_iter()
        .find(|v| v.endpoints() == Some(endpoints))
        .ok_or_else(|| {
            Error::InternalInconsistency(format!("no variant with endpoints {endpoints:?}"))
        })?;
    let matched = matching(norm.base()).matched;
    let ctx = BranchContext::consistent_with(variant.base(), matched, sigma)?;
    Ok((variant, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forced(eps: [&str; 4]) -> SolverConfig {
        SolverConfig::with_eps(EpsilonConfig::parse_unchecked(eps).unwrap())
    }

    #[test]
    fn chain_has_forced_ordering() {
        let inst = Instance::new(vec![4, 3, 2, 1], &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let out = solve(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(out.cost, ExactCost::from(30u64));
        assert_eq!(out.ordering.sequence(), &[0, 1, 2, 3]);
        assert_eq!(out.report.chosen_path, ChosenPath::Dcdp);
    }

    #[test]
    fn antichain_runs_shortest_first() {
        let inst = Instance::new(vec![1, 2, 3, 4], &[]).unwrap();
        for cfg in [
            SolverConfig::default(),
            forced(["0.2", "0.22", "0.24", "0.26"]),
        ] {
            let out = solve(&inst, &cfg).unwrap();
            assert_eq!(out.cost, ExactCost::from(20u64));
            assert_eq!(out.ordering.sequence(), &[0, 1, 2, 3]);
        }
    }

    #[test]
    fn empty_instance() {
        let inst = Instance::new(vec![], &[]).unwrap();
        let out = solve(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(out.cost, ExactCost::zero());
        assert!(out.ordering.is_empty());
    }
}
