mod common;

use std::collections::HashSet;

use precsched::branch::consistent_branch;
use precsched::dp::{solve_downward_closed, solve_filtered, solve_unfiltered, BlockTable};
use precsched::exchange::{decode, encode, ExchangeMode};
use precsched::instance::transitive_closure;
use precsched::oracle::{brute_force_optimal, linear_extensions, normalized_optimum};
use precsched::structure::matching;
use precsched::{
    normalize, run, solve, Algorithm, DpStats, Instance, JobSet, Quarter, SolverConfig,
};
use proptest::prelude::*;

use common::*;

/// Instances with edges only from lower to higher index, so never cyclic.
fn instance(max_n: usize, tmax: u64) -> impl Strategy<Value = Instance> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(0..=tmax, n),
            prop::collection::vec(prop::bool::weighted(0.3), pairs),
        )
            .prop_map(move |(times, bits)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Instance::new(times, &edges).unwrap()
            })
    })
}

fn any_set(n: usize) -> impl Strategy<Value = JobSet> {
    (0u64..1 << n).prop_map(move |m| (0..n).filter(|v| m >> v & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalized_orderings_have_distinct_costs(inst in instance(6, 5)) {
        let norm = normalize(&inst);
        let mut seen = HashSet::new();
        for o in linear_extensions(norm.base(), 12).unwrap() {
            prop_assert!(seen.insert(norm.base().ordering_cost(&o).unwrap()));
        }
    }

    #[test]
    fn perturbed_optimum_is_an_original_optimum(inst in instance(8, 9)) {
        let opt = normalized_optimum(&inst, 12).unwrap();
        let (_, reference) = ref_optimum(&inst);
        prop_assert_eq!(opt.cost.value(), &reference);
        prop_assert_eq!(opt.cost.value(), &ref_cost(&inst, opt.ordering.sequence()));
    }

    #[test]
    fn pred_and_succ_sets_are_monotone(inst in instance(8, 3), a in any_set(8), b in any_set(8)) {
        let all = inst.all();
        let (small, big) = (a & b & all, (a | b) & all);
        prop_assert!(inst.pred_set(small).is_subset(inst.pred_set(big)));
        prop_assert!(inst.succ_set(small).is_subset(inst.succ_set(big)));
    }

    #[test]
    fn closure_is_idempotent(inst in instance(10, 1)) {
        let pairs = inst.order().pairs();
        let again = transitive_closure(&pairs, inst.n()).unwrap();
        prop_assert_eq!(&again, inst.order());
    }

    #[test]
    fn linear_extensions_are_valid_and_complete(inst in instance(7, 1)) {
        let exts: Vec<_> = linear_extensions(&inst, 12).unwrap().collect();
        prop_assert!(exts.iter().all(|o| inst.validate_ordering(o)));
        // Count by the recursion over order ideals: e(X) = sum over maximal v of e(X - v).
        let n = inst.n();
        let mut ways = vec![0u64; 1 << n];
        ways[0] = 1;
        for mask in 1u64..1 << n {
            let x: JobSet = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if inst.is_downward_closed(x) {
                ways[mask as usize] = inst.max_elements(x).iter().map(|v| ways[(mask & !(1 << v)) as usize]).sum();
            }
        }
        prop_assert_eq!(exts.len() as u64, ways[(1usize << n) - 1]);
        let distinct: HashSet<Vec<usize>> = exts.iter().map(|o| o.sequence().to_vec()).collect();
        prop_assert_eq!(distinct.len(), exts.len());
    }

    #[test]
    fn brute_force_is_min_over_extensions(inst in instance(7, 9)) {
        let (_, cost) = brute_force_optimal(&inst).unwrap();
        let min = linear_extensions(&inst, 12).unwrap().map(|o| inst.ordering_cost(&o).unwrap()).min().unwrap();
        prop_assert_eq!(cost, min);
    }

    #[test]
    fn subset_dp_matches_brute_force(inst in instance(9, 9)) {
        let base = normalize(&inst);
        let base = base.base();
        let (order, cost) = brute_force_optimal(base).unwrap();
        let plain = solve_unfiltered(base).unwrap();
        let closed = solve_downward_closed(base).unwrap();
        prop_assert_eq!(&plain.cost, &cost);
        prop_assert_eq!(&plain.ordering, &order);
        prop_assert_eq!(&closed.ordering, &order);
    }

    #[test]
    fn downward_closed_states_equal_ideal_count(inst in instance(14, 1)) {
        let sol = solve_downward_closed(&inst).unwrap();
        prop_assert_eq!(sol.stats.states_expanded, ref_ideal_count(&inst));
    }

    #[test]
    fn stricter_filters_never_lower_the_cost(inst in instance(8, 9), bits in any::<u64>()) {
        let n = inst.n();
        // Reject a pseudo-random family of proper nonempty subsets.
        let reject = |x: JobSet| !x.is_empty() && x != inst.all() && (bits >> (x.iter().sum::<usize>() % 64)) & 1 == 1;
        let loose = solve_unfiltered(&inst).unwrap().cost;
        if let Ok(strict) = solve_filtered(&inst, |x| !reject(x)) {
            prop_assert!(strict.cost >= loose);
            prop_assert!(strict.ordering.len() == n);
        }
    }

    #[test]
    fn matching_leaves_an_antichain(inst in instance(12, 1)) {
        let m = matching(&inst);
        prop_assert!(inst.is_antichain(m.unmatched));
        prop_assert_eq!(m.matched | m.unmatched, inst.all());
        prop_assert_eq!(m.matched.len(), 2 * m.pairs.len());
    }

    #[test]
    fn encode_decode_sandwich(k in 1usize..9, m in 1usize..5, seed in any::<u64>(), mask in any::<u64>()) {
        let (inst, kset) = antichain_configuration(k, m, 0.6, seed);
        let y: JobSet = kset.iter().filter(|v| mask >> v & 1 == 1).collect();
        let succ = decode(&inst, encode(&inst, y, kset, ExchangeMode::Succ), kset, ExchangeMode::Succ);
        prop_assert!(succ.is_subset(y));
        let pred = decode(&inst, encode(&inst, y, kset, ExchangeMode::Pred), kset, ExchangeMode::Pred);
        prop_assert!(y.is_subset(pred));
        prop_assert!(encode(&inst, y, kset, ExchangeMode::Succ).len() <= m);
        prop_assert!(encode(&inst, y, kset, ExchangeMode::Pred).len() <= m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_configuration_matches_the_oracle(inst in instance(8, 9), which in 0usize..9) {
        let configs = forcing_configs();
        let opt = normalized_optimum(&inst, 12).unwrap();
        let cfg = if which == 0 { SolverConfig::default() } else { configs[which - 1].1.clone() };
        let out = solve(&inst, &cfg).unwrap();
        prop_assert_eq!(&out.cost, &opt.cost);
        prop_assert_eq!(&out.padded, &opt.padded);
        prop_assert_eq!(&out.ordering, &opt.ordering);
    }

    /// No branch reports less than the optimum, and some branch attains it.
    #[test]
    fn branch_results_bound_the_optimum(inst in instance(8, 9), which in 0usize..8) {
        let (_, cfg) = forcing_configs().swap_remove(which);
        let opt = normalized_optimum(&inst, 12).unwrap();
        let out = solve(&inst, &cfg).unwrap();
        let costs: Vec<_> = out.report.branches.iter().filter_map(|b| b.perturbed_cost.clone()).collect();
        prop_assert!(costs.iter().all(|c| *c >= opt.perturbed_cost));
        prop_assert!(costs.contains(&opt.perturbed_cost));
    }

    #[test]
    fn some_branch_is_consistent_with_the_optimum(inst in instance(8, 9)) {
        let opt = normalized_optimum(&inst, 12).unwrap();
        let norm = normalize(&inst);
        let (variant, ctx) = consistent_branch(&norm, &opt.padded).unwrap();
        let base = variant.base();
        prop_assert!(base.validate_ordering(&opt.padded));
        for (i, q) in Quarter::ALL.into_iter().enumerate() {
            let (lo, hi) = q.range(base.n());
            for pos in lo + 1..=hi {
                let v = opt.padded.job_at(pos);
                if ctx.m.contains(v) || ctx.wh_ab.contains(v) || ctx.wh_cd.contains(v) {
                    prop_assert!(ctx.quarters.sets[i].contains(v));
                }
            }
        }
    }

    /// The optimum restricted to one quarter is the best arrangement of that
    /// quarter's jobs inside its block of positions.
    #[test]
    fn quarter_blocks_reproduce_the_optimum(inst in instance(12, 9)) {
        let norm = normalize(&inst);
        let base = norm.base();
        let opt = run(&inst, Algorithm::Dcdp, &SolverConfig::default()).unwrap().padded;
        let mut stats = DpStats::default();
        for q in Quarter::ALL {
            let (lo, hi) = q.range(base.n());
            let jobs: Vec<usize> = (lo + 1..=hi).map(|p| opt.job_at(p)).collect();
            let set: JobSet = jobs.iter().copied().collect();
            let arr = BlockTable::new(base, lo).arrange(base, set, &mut stats).unwrap();
            prop_assert_eq!(arr.sequence, jobs);
        }
    }
}

#[test]
fn algorithms_agree_on_reference_optimum() {
    for seed in 0..40 {
        let inst = random(
            3 + seed as usize % 6,
            precsched::gen::Model::ALL[seed as usize % 3],
            0.4,
            7000 + seed,
        );
        let (_, reference) = ref_optimum(&inst);
        for algo in Algorithm::ALL {
            let out = run(&inst, algo, &SolverConfig::default()).unwrap();
            assert_eq!(out.cost.value(), &reference, "seed {seed} {algo}");
            assert_eq!(
                ref_cost(&inst, out.ordering.sequence()),
                reference,
                "seed {seed} {algo}"
            );
        }
    }
}
