//! Shared helpers and reference implementations for the integration tests.
//!
//! The reference functions re-derive each quantity straight from its
//! definition, without the bit-set shortcuts of the library.
#![allow(dead_code)]

use num_bigint::BigUint;
use precsched::gen::{generate, GenParams, Model};
use precsched::{EpsilonConfig, Instance, JobSet, Ordering, Quarter, SolverConfig};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random(n: usize, model: Model, density: f64, seed: u64) -> Instance {
    generate(&GenParams {
        n,
        model,
        density,
        tmax: 9,
        seed,
    })
    .unwrap()
}

fn eps(values: [&str; 4]) -> SolverConfig {
    SolverConfig::with_eps(EpsilonConfig::parse_unchecked(values).unwrap())
}

/// Configurations that steer the branching solver into each strategy.
/// A first threshold of 1 disables the matching shortcut.
pub fn forcing_configs() -> Vec<(&'static str, SolverConfig)> {
    let mut out = vec![
        ("moderate", eps(["0.2", "0.22", "0.24", "0.26"])),
        ("half", eps(["1", "0", "2", "2"])),
        ("large-p-set", eps(["1", "2", "-1/2", "2"])),
        ("small-p-count", eps(["1", "2", "2", "-1"])),
        ("independent", eps(["1", "2", "2", "1/4"])),
    ];
    for (name, q) in [
        ("quarter-A", Quarter::A),
        ("quarter-B", Quarter::B),
        ("quarter-C", Quarter::C),
        ("quarter-D", Quarter::D),
    ] {
        out.push((
            name,
            SolverConfig {
                force_quarter: Some(q),
                ..eps(["1", "2", "2", "1/4"])
            },
        ));
    }
    out
}

fn members(inst: &Instance, s: JobSet) -> Vec<usize> {
    (0..inst.n()).filter(|&v| s.contains(v)).collect()
}

/// Succ-exchangeability straight from the definition.
pub fn ref_succ_exchangeable(inst: &Instance, l: JobSet, k: JobSet) -> bool {
    members(inst, l).into_iter().any(|u| {
        (0..inst.n()).filter(|&w| inst.precedes(u, w)).all(|w| {
            members(inst, k)
                .into_iter()
                .any(|v| !l.contains(v) && inst.precedes(v, w) && inst.time(v) < inst.time(u))
        })
    })
}

/// Pred-exchangeability straight from the definition.
pub fn ref_pred_exchangeable(inst: &Instance, l: JobSet, k: JobSet) -> bool {
    members(inst, k)
        .into_iter()
        .filter(|&v| !l.contains(v))
        .any(|v| {
            (0..inst.n()).filter(|&w| inst.precedes(w, v)).all(|w| {
                members(inst, l)
                    .into_iter()
                    .any(|u| inst.precedes(w, u) && inst.time(u) > inst.time(v))
            })
        })
}

/// All subsets of `k` by explicit bit enumeration.
pub fn ref_subsets(k: JobSet, n: usize) -> Vec<JobSet> {
    let idx: Vec<usize> = (0..n).filter(|&v| k.contains(v)).collect();
    (0u64..1 << idx.len())
        .map(|mask| {
            idx.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

pub fn ref_non_exchangeable_count(inst: &Instance, k: JobSet, succ: bool) -> usize {
    ref_subsets(k, inst.n())
        .into_iter()
        .filter(|&l| {
            if succ {
                !ref_succ_exchangeable(inst, l, k)
            } else {
                !ref_pred_exchangeable(inst, l, k)
            }
        })
        .count()
}

/// Number of downward-closed subsets by checking every subset.
pub fn ref_ideal_count(inst: &Instance) -> u64 {
    let n = inst.n();
    (0u64..1 << n)
        .filter(|&mask| {
            (0..n).all(|v| {
                mask >> v & 1 == 0 || (0..n).all(|u| !inst.precedes(u, v) || mask >> u & 1 == 1)
            })
        })
        .count() as u64
}

/// `sum_{l <= m} C(k, l)` by Pascal's triangle.
pub fn ref_binomial_sum(k: usize, m: usize) -> BigUint {
    let mut row = vec![BigUint::from(1u8)];
    for _ in 0..k {
        let mut next = vec![BigUint::from(1u8); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row.iter().take(m + 1).sum()
}

/// Total weighted completion cost by summing completion times.
pub fn ref_cost(inst: &Instance, seq: &[usize]) -> BigUint {
    let mut clock = BigUint::from(0u8);
    let mut total = BigUint::from(0u8);
    for &v in seq {
        clock += inst.time(v);
        total += &clock;
    }
    total
}

/// Minimum cost over all permutations that respect precedence (first found wins ties).
pub fn ref_optimum(inst: &Instance) -> (Vec<usize>, BigUint) {
    fn rec(
        inst: &Instance,
        seq: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut Option<(Vec<usize>, BigUint)>,
    ) {
        let n = inst.n();
        if seq.len() == n {
            let c = ref_cost(inst, seq);
            if best.as_ref().is_none_or(|(_, b)| c < *b) {
                *best = Some((seq.clone(), c));
            }
            return;
        }
        for v in 0..n {
            if used[v] || (0..n).any(|u| inst.precedes(u, v) && !used[u]) {
                continue;
            }
            used[v] = true;
            seq.push(v);
            rec(inst, seq, used, best);
            seq.pop();
            used[v] = false;
        }
    }
    let mut best = None;
    rec(inst, &mut Vec::new(), &mut vec![false; inst.n()], &mut best);
    best.unwrap()
}

/// An antichain `K` of `k` jobs and `m` further jobs, each entirely below or
/// entirely above the jobs of `K` it is related to, with distinct times.
/// Jobs `0..k` form `K`.
pub fn antichain_configuration(k: usize, m: usize, density: f64, seed: u64) -> (Instance, JobSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = k + m;
    let mut times: Vec<u64> = (1..=n as u64).collect();
    times.shuffle(&mut rng);
    let mut edges = Vec::new();
    for j in k..n {
        let below = rng.random_bool(0.5);
        for v in 0..k {
            if rng.random_bool(density) {
                edges.push(if below { (j, v) } else { (v, j) });
            }
        }
    }
    let inst = Instance::new(times, &edges).unwrap();
    (inst, JobSet::full(k))
}

/// Labels traced by `sigma` for quarter `gamma` with the given label domain:
/// for each prefix length `i`, the domain jobs placed in the quarter, limited to
/// the first `i` positions when `prefix` is set.
pub fn label_trace(
    sigma: &Ordering,
    domain: JobSet,
    gamma: Quarter,
    prefix: bool,
) -> Vec<(JobSet, JobSet)> {
    let n = sigma.len();
    let (s, e) = gamma.range(n);
    (0..=n)
        .map(|i| {
            let hi = if prefix { e.min(i) } else { e };
            let l = domain
                .iter()
                .filter(|&v| {
                    let p = sigma.position(v);
                    p > s && p <= hi
                })
                .collect();
            (sigma.prefix(i), l)
        })
        .collect()
}
