//! Guessing where the matched jobs go: halves, then quarters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::jobset::JobSet;

/// One of the four consecutive blocks of `n/4` positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quarter {
    A,
    B,
    C,
    D,
}

impl Quarter {
    pub const ALL: [Quarter; 4] = [Quarter::A, Quarter::B, Quarter::C, Quarter::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Quarter {
        Quarter::ALL[i]
    }

    /// Positions `(start, end]` covered in an `n`-position schedule.
    pub fn range(self, n: usize) -> (usize, usize) {
        let i = self.index();
        (i * n / 4, (i + 1) * n / 4)
    }

    /// The quarter containing 1-based `position`.
    pub fn of_position(position: usize, n: usize) -> Quarter {
        Quarter::from_index(((position - 1) * 4 / n).min(3))
    }

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }
}

impl fmt::Display for Quarter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Jobs guessed into the first half (`ab`) or second half (`cd`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfAssignment {
    pub ab: JobSet,
    pub cd: JobSet,
}

/// Jobs guessed into each quarter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarterAssignment {
    pub sets: [JobSet; 4],
}

impl QuarterAssignment {
    pub fn get(&self, q: Quarter) -> JobSet {
        self.sets[q.index()]
    }

    pub fn jobs(&self) -> JobSet {
        self.sets.iter().fold(JobSet::EMPTY, |a, &s| a | s)
    }

    pub fn quarter_of(&self, v: usize) -> Option<Quarter> {
        Quarter::ALL.into_iter().find(|q| self.get(*q).contains(v))
    }

    pub fn halves(&self) -> HalfAssignment {
        HalfAssignment {
            ab: self.sets[0] | self.sets[1],
            cd: self.sets[2] | self.sets[3],
        }
    }
}

/// Every assignment of `jobs` to `levels` ordered levels such that `u < v`
/// implies `level(u) <= level(v)`, each job restricted to the levels in its
/// `allowed` bit mask, and no level holding more than `capacity` jobs.
///
/// Results are in lexicographic order of the level sequence over jobs sorted
/// by predecessor count.
pub(crate) fn monotone_levels(
    inst: &Instance,
    jobs: JobSet,
    levels: usize,
    capacity: usize,
    allowed: impl Fn(usize) -> u8,
) -> Vec<Vec<JobSet>> {
    let mut order: Vec<usize> = jobs.iter().collect();
    // Predecessor sets are nested along chains, so this is a topological order.
    order.sort_by_key(|&v| (inst.pred(v).len(), v));

    struct Search<'a, F> {
        inst: &'a Instance,
        order: Vec<usize>,
        jobs: JobSet,
        capacity: usize,
        allowed: F,
        sets: Vec<JobSet>,
        level_of: Vec<usize>,
        out: Vec<Vec<JobSet>>,
    }

    impl<F: Fn(usize) -> u8> Search<'_, F> {
        fn rec(&mut self, i: usize) {
            if i == self.order.len() {
                self.out.push(self.sets.clone());
                return;
            }
            let v = self.order[i];
            let floor = (self.inst.pred(v) & self.jobs)
                .iter()
                .map(|u| self.level_of[u])
                .max()
                .unwrap_or(0);
            let mask = (self.allowed)(v);
            for lvl in floor..self.sets.len() {
                if mask >> lvl & 1 == 0 || self.sets[lvl].len() >= self.capacity {
                    continue;
                }
                self.sets[lvl].insert(v);
                self.level_of[v] = lvl;
                self.rec(i + 1);
                self.sets[lvl].remove(v);
            }
        }
    }

    let mut search = Search {
        inst,
        order,
        jobs,
        capacity,
        allowed,
        sets: vec![JobSet::EMPTY; levels],
        level_of: vec![0; inst.n()],
        out: Vec::new(),
    };
    search.rec(0);
    search.out
}

/// Order-consistent splits of `m` into halves with `v_begin` first and `v_end`
/// second, at most `n/2` jobs per half.
pub fn enumerate_half_assignments(
    inst: &Instance,
    m: JobSet,
    endpoints: (usize, usize),
) -> Vec<HalfAssignment> {
    let (vb, ve) = endpoints;
    monotone_levels(inst, m, 2, inst.n() / 2, |v| {
        if v == vb {
            0b01
        } else if v == ve {
            0b10
        } else {
            0b11
        }
    })
    .into_iter()
    .map(|s| HalfAssignment { ab: s[0], cd: s[1] })
    .collect()
}

/// Every order-consistent assignment of `m` to quarters with `v_begin` in `A`
/// and `v_end` in `D`. Quarter capacity is not enforced here.
pub fn enumerate_quarter_assignments(
    inst: &Instance,
    m: JobSet,
    endpoints: (usize, usize),
) -> Vec<QuarterAssignment> {
    let (vb, ve) = endpoints;
    monotone_levels(inst, m, 4, usize::MAX, |v| {
        if v == vb {
            0b0001
        } else if v == ve {
            0b1000
        } else {
            0b1111
        }
    })
    .into_iter()
    .map(|s| QuarterAssignment {
        sets: [s[0], s[1], s[2], s[3]],
    })
    .collect()
}

/// Jobs of `i1` forced into the first half (they precede a first-half job of
/// `M`) and into the second half (they follow a second-half job).
pub fn compute_w_half(
    inst: &Instance,
    i1: JobSet,
    half: &HalfAssignment,
) -> Result<(JobSet, JobSet)> {
    let ab = i1 & inst.pred_set(half.ab);
    let cd = i1 & inst.succ_set(half.cd);
    if ab.intersects(cd) {
        return Err(Error::ContradictoryBranch(format!(
            "jobs {} are forced into both halves",
            ab & cd
        )));
    }
    Ok((ab, cd))
}

/// Splits each half of `M ∪ W_half` into its two quarters, order-consistently
/// and with at most `n/4` jobs per quarter.
pub fn refine_to_quarters(
    inst: &Instance,
    first_half: JobSet,
    second_half: JobSet,
    endpoints: (usize, usize),
) -> Vec<QuarterAssignment> {
    let (vb, ve) = endpoints;
    monotone_levels(inst, first_half | second_half, 4, inst.n() / 4, |v| {
        if v == vb {
            0b0001
        } else if v == ve {
            0b1000
        } else if first_half.contains(v) {
            0b0011
        } else {
            0b1100
        }
    })
    .into_iter()
    .map(|s| QuarterAssignment {
        sets: [s[0], s[1], s[2], s[3]],
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_endpoints(n: usize, edges: &[(usize, usize)], vb: usize, ve: usize) -> Instance {
        let mut all = edges.to_vec();
        for v in 0..n {
            if v != vb {
                all.push((vb, v));
            }
            if v != ve {
                all.push((v, ve));
            }
        }
        Instance::new(vec![1; n], &all).unwrap()
    }

    #[test]
    fn quarter_ranges() {
        assert_eq!(Quarter::B.range(8), (2, 4));
        assert_eq!(Quarter::of_position(1, 8), Quarter::A);
        assert_eq!(Quarter::of_position(5, 8), Quarter::C);
        assert_eq!(Quarter::of_position(8, 8), Quarter::D);
    }

    #[test]
    fn endpoints_only_give_one_assignment() {
        let inst = with_endpoints(4, &[], 0, 3);
        let m: JobSet = [0, 3].into_iter().collect();
        let all = enumerate_quarter_assignments(&inst, m, (0, 3));
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].get(Quarter::A), JobSet::singleton(0));
        assert_eq!(all[0].get(Quarter::D), JobSet::singleton(3));
    }

    #[test]
    fn comparable_pair_has_ten_placements() {
        let inst = with_endpoints(4, &[(1, 2)], 0, 3);
        let all = enumerate_quarter_assignments(&inst, inst.all(), (0, 3));
        assert_eq!(all.len(), 10);
    }

    #[test]
    fn free_job_has_four_placements() {
        let inst = with_endpoints(4, &[], 0, 3);
        let m: JobSet = [0, 1, 3].into_iter().collect();
        assert_eq!(enumerate_quarter_assignments(&inst, m, (0, 3)).len(), 4);
    }

    #[test]
    fn half_assignments_respect_order() {
        let inst = with_endpoints(8, &[(1, 2)], 0, 7);
        let m: JobSet = [0, 1, 2, 7].into_iter().collect();
        // Pair 1 < 2 has three order-consistent half placements.
        assert_eq!(enumerate_half_assignments(&inst, m, (0, 7)).len(), 3);
    }

    #[test]
    fn w_half_examples() {
        // Jobs: 0 = begin, 5 = end, 1 < 2 with 2 in M, 4 free.
        let inst = with_endpoints(6, &[(1, 2), (3, 4)], 0, 5);
        let i1: JobSet = [1, 4].into_iter().collect();
        let none = HalfAssignment {
            ab: JobSet::singleton(0),
            cd: JobSet::singleton(5),
        };
        // Only the endpoints: nothing beyond the global constraints is forced.
        let (ab, cd) = compute_w_half(&inst, i1, &none).unwrap();
        assert_eq!(ab, JobSet::EMPTY);
        assert_eq!(cd, JobSet::EMPTY);

        let half = HalfAssignment {
            ab: [0, 2].into_iter().collect(),
            cd: [3, 5].into_iter().collect(),
        };
        let (ab, cd) = compute_w_half(&inst, i1, &half).unwrap();
        assert_eq!(ab, JobSet::singleton(1));
        assert_eq!(cd, JobSet::singleton(4));

        // 2 < 1 < 3: with 3 first and 2 second, job 1 is squeezed both ways.
        let squeezed = with_endpoints(5, &[(2, 1), (1, 3)], 0, 4);
        let bad = HalfAssignment {
            ab: [0, 3].into_iter().collect(),
            cd: [2, 4].into_iter().collect(),
        };
        assert!(matches!(
            compute_w_half(&squeezed, JobSet::singleton(1), &bad),
            Err(Error::ContradictoryBranch(_))
        ));
    }
}
