//! Exchangeable subsets of an antichain and their encode/decode functions.
//!
//! `L ⊆ K` is succ-exchangeable if some `u ∈ L` can be swapped with a lighter
//! job of `K \ L` below each of `u`'s successors; pred-exchangeable is the
//! mirror image. Optimal schedules only ever produce non-exchangeable prefixes,
//! and there are few of those: each is determined by a fingerprint of at most
//! `|succ(K)|` (resp. `|pred(K)|`) jobs.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::jobset::JobSet;

/// Enumeration limit for [`enumerate_non_exchangeable`].
pub const ENUMERATION_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExchangeMode {
    Succ,
    Pred,
}

fn check_subset(l: JobSet, k: JobSet) -> Result<()> {
    if l.is_subset(k) {
        Ok(())
    } else {
        Err(Error::NotASubset {
            subset: l.to_string(),
            superset: k.to_string(),
        })
    }
}

/// Some `u ∈ L` has, for every successor `w`, a strictly lighter `v ∈ (K ∩ pred(w)) \ L`.
pub fn is_succ_exchangeable(inst: &Instance, l: JobSet, k: JobSet) -> Result<bool> {
    check_subset(l, k)?;
    Ok(succ_exchangeable(inst, l, k))
}

pub(crate) fn succ_exchangeable(inst: &Instance, l: JobSet, k: JobSet) -> bool {
    let outside = k - l;
    l.iter().any(|u| {
        let lighter = outside & inst.lighter_than(u);
        inst.succ(u)
            .iter()
            .all(|w| inst.pred(w).intersects(lighter))
    })
}

/// Some `v ∈ K \ L` has, for every predecessor `w`, a strictly heavier `u ∈ L ∩ succ(w)`.
pub fn is_pred_exchangeable(inst: &Instance, l: JobSet, k: JobSet) -> Result<bool> {
    check_subset(l, k)?;
    Ok(pred_exchangeable(inst, l, k))
}

pub(crate) fn pred_exchangeable(inst: &Instance, l: JobSet, k: JobSet) -> bool {
    (k - l).iter().any(|v| {
        let heavier = l & inst.heavier_than(v);
        inst.pred(v)
            .iter()
            .all(|w| inst.succ(w).intersects(heavier))
    })
}

pub fn is_exchangeable(inst: &Instance, l: JobSet, k: JobSet, mode: ExchangeMode) -> Result<bool> {
    match mode {
        ExchangeMode::Succ => is_succ_exchangeable(inst, l, k),
        ExchangeMode::Pred => is_pred_exchangeable(inst, l, k),
    }
}

/// Lightest member (ties to the smaller index).
fn argmin(inst: &Instance, set: JobSet) -> Option<usize> {
    set.iter()
        .min_by(|&a, &b| inst.time(a).cmp(inst.time(b)).then(a.cmp(&b)))
}

/// Heaviest member (ties to the smaller index).
fn argmax(inst: &Instance, set: JobSet) -> Option<usize> {
    set.iter()
        .max_by(|&a, &b| inst.time(a).cmp(inst.time(b)).then(b.cmp(&a)))
}

/// For each successor `w` of `K`, the lightest job of `(K \ Y) ∩ pred(w)`.
pub fn encode_succ(inst: &Instance, y: JobSet, k: JobSet) -> JobSet {
    let outside = k - y;
    inst.succ_set(k)
        .iter()
        .filter_map(|w| argmin(inst, outside & inst.pred(w)))
        .collect()
}

/// Jobs `v ∈ K` with a successor `w` such that every member of `Z ∩ pred(w)` is
/// strictly heavier than `v`.
pub fn decode_succ(inst: &Instance, z: JobSet, k: JobSet) -> JobSet {
    k.iter()
        .filter(|&v| {
            let heavier = inst.heavier_than(v);
            inst.succ(v)
                .iter()
                .any(|w| (z & inst.pred(w)).is_subset(heavier))
        })
        .collect()
}

/// For each predecessor `w` of `K`, the heaviest job of `Y ∩ succ(w)`.
pub fn encode_pred(inst: &Instance, y: JobSet, k: JobSet) -> JobSet {
    inst.pred_set(k)
        .iter()
        .filter_map(|w| argmax(inst, y & inst.succ(w)))
        .collect()
}

/// Jobs `v ∈ K` such that every predecessor `w` has some `z ∈ Z ∩ succ(w)` with
/// `t(z) ≥ t(v)`. Always contains `Z ∩ K`.
pub fn decode_pred(inst: &Instance, z: JobSet, k: JobSet) -> JobSet {
    k.iter()
        .filter(|&v| {
            let not_lighter = z - inst.lighter_than(v);
            inst.pred(v)
                .iter()
                .all(|w| inst.succ(w).intersects(not_lighter))
        })
        .collect()
}

pub fn encode(inst: &Instance, y: JobSet, k: JobSet, mode: ExchangeMode) -> JobSet {
    match mode {
        ExchangeMode::Succ => encode_succ(inst, y, k),
        ExchangeMode::Pred => encode_pred(inst, y, k),
    }
}

pub fn decode(inst: &Instance, z: JobSet, k: JobSet, mode: ExchangeMode) -> JobSet {
    match mode {
        ExchangeMode::Succ => decode_succ(inst, z, k),
        ExchangeMode::Pred => decode_pred(inst, z, k),
    }
}

/// All `L ⊆ K` that are not exchangeable in `mode`, in increasing bit-mask order.
pub fn enumerate_non_exchangeable(
    inst: &Instance,
    k: JobSet,
    mode: ExchangeMode,
) -> Result<Vec<JobSet>> {
    if k.len() > ENUMERATION_CAP {
        return Err(Error::SetTooLarge {
            size: k.len(),
            limit: ENUMERATION_CAP,
        });
    }
    Ok(k.subsets()
        .filter(|&l| match mode {
            ExchangeMode::Succ => !succ_exchangeable(inst, l, k),
            ExchangeMode::Pred => !pred_exchangeable(inst, l, k),
        })
        .collect())
}

/// Number of jobs an encoding can range over: `|succ(K)|` or `|pred(K)|`.
pub fn fingerprint_domain(inst: &Instance, k: JobSet, mode: ExchangeMode) -> usize {
    match mode {
        ExchangeMode::Succ => inst.succ_set(k).len(),
        ExchangeMode::Pred => inst.pred_set(k).len(),
    }
}

/// `sum_{l <= m} C(k, l)`, the number of possible fingerprints.
pub fn non_exchangeable_bound(k: usize, m: usize) -> BigUint {
    let mut total = BigUint::from(0u8);
    let mut binom = BigUint::from(1u8);
    for l in 0..=m.min(k) {
        total += &binom;
        binom = binom * (k - l) / (l + 1);
    }
    total
}
