//! Instances, orderings and the normalization that makes optima unique.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cost::{ExactCost, Weights};
use crate::error::{Error, Result};
use crate::jobset::{JobSet, MAX_JOBS};

/// A transitively closed strict partial order on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Precedence {
    preds: Vec<JobSet>,
    succs: Vec<JobSet>,
}

impl Precedence {
    pub fn n(&self) -> usize {
        self.preds.len()
    }

    /// `u < v`: `u` must run before `v`.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.succs[u].contains(v)
    }

    pub fn pred(&self, v: usize) -> JobSet {
        self.preds[v]
    }

    pub fn succ(&self, v: usize) -> JobSet {
        self.succs[v]
    }

    /// All pairs `(u, v)` with `u < v`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.succs[u].iter().map(move |v| (u, v)))
            .collect()
    }
}

impl fmt::Debug for Precedence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Closes `raw_edges` (pairs `(u, v)` meaning `u` before `v`) transitively.
///
/// Duplicate edges are harmless. A cycle is reported with one offending cycle
/// listed in traversal order.
pub fn transitive_closure(raw_edges: &[(usize, usize)], n: usize) -> Result<Precedence> {
    if n > MAX_JOBS {
        return Err(Error::InstanceTooLarge { n, limit: MAX_JOBS });
    }
    let mut adj = vec![JobSet::EMPTY; n];
    for &(u, v) in raw_edges {
        for index in [u, v] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        adj[u].insert(v);
    }
    let topo = topological_order(&adj)?;
    let mut succs = vec![JobSet::EMPTY; n];
    for &v in topo.iter().rev() {
        let mut s = adj[v];
        for w in adj[v] {
            s |= succs[w];
        }
        succs[v] = s;
    }
    let mut preds = vec![JobSet::EMPTY; n];
    for (u, s) in succs.iter().enumerate() {
        for v in *s {
            preds[v].insert(u);
        }
    }
    Ok(Precedence { preds, succs })
}

/// Depth-first topological sort; on failure returns the cycle found.
fn topological_order(adj: &[JobSet]) -> Result<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = adj.len();
    let mut mark = vec![Mark::New; n];
    let mut post = Vec::with_capacity(n);
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // Stack of (vertex, remaining successors to visit).
        let mut stack: Vec<(usize, JobSet)> = vec![(root, adj[root])];
        mark[root] = Mark::Active;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            match top.1.first() {
                Some(w) => {
                    top.1.remove(w);
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Active;
                            stack.push((w, adj[w]));
                        }
                        Mark::Active => {
                            let start = stack.iter().position(|&(x, _)| x == w).unwrap();
                            let cycle = stack[start..].iter().map(|&(x, _)| x).collect();
                            return Err(Error::CyclicPrecedence { cycle });
                        }
                        Mark::Done => {}
                    }
                }
                None => {
                    mark[v] = Mark::Done;
                    post.push(v);
                    stack.pop();
                }
            }
        }
    }
    post.reverse();
    Ok(post)
}

/// A scheduling instance: processing times plus a closed precedence order.
#[derive(Clone)]
pub struct Instance {
    times: Vec<BigUint>,
    order: Precedence,
    lighter: Vec<JobSet>,
    heavier: Vec<JobSet>,
    weights: Weights,
}

impl Instance {
    /// Builds an instance from integer times and raw precedence edges.
    pub fn new(times: Vec<u64>, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_big_times(times.into_iter().map(BigUint::from).collect(), edges)
    }

    pub fn with_big_times(times: Vec<BigUint>, edges: &[(usize, usize)]) -> Result<Self> {
        let order = transitive_closure(edges, times.len())?;
        Ok(Self::from_parts(times, order))
    }

    pub fn from_parts(times: Vec<BigUint>, order: Precedence) -> Self {
        assert_eq!(times.len(), order.n(), "times and order disagree on n");
        let n = times.len();
        let lighter = (0..n)
            .map(|u| (0..n).filter(|&v| times[v] < times[u]).collect())
            .collect();
        let heavier = (0..n)
            .map(|u| (0..n).filter(|&v| times[v] > times[u]).collect())
            .collect();
        let weights = Weights::for_times(&times);
        Instance {
            times,
            order,
            lighter,
            heavier,
            weights,
        }
    }

    pub fn n(&self) -> usize {
        self.times.len()
    }

    pub fn all(&self) -> JobSet {
        JobSet::full(self.n())
    }

    pub fn time(&self, v: usize) -> &BigUint {
        &self.times[v]
    }

    pub fn times(&self) -> &[BigUint] {
        &self.times
    }

    pub fn order(&self) -> &Precedence {
        &self.order
    }

    pub(crate) fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.order.precedes(u, v)
    }

    pub fn pred(&self, v: usize) -> JobSet {
        self.order.preds[v]
    }

    pub fn succ(&self, v: usize) -> JobSet {
        self.order.succs[v]
    }

    /// Union of the predecessors of the members of `set`.
    pub fn pred_set(&self, set: JobSet) -> JobSet {
        set.iter().fold(JobSet::EMPTY, |acc, v| acc | self.pred(v))
    }

    /// Union of the successors of the members of `set`.
    pub fn succ_set(&self, set: JobSet) -> JobSet {
        set.iter().fold(JobSet::EMPTY, |acc, v| acc | self.succ(v))
    }

    /// Jobs with strictly smaller processing time than `u`.
    pub fn lighter_than(&self, u: usize) -> JobSet {
        self.lighter[u]
    }

    /// Jobs with strictly larger processing time than `u`.
    pub fn heavier_than(&self, u: usize) -> JobSet {
        self.heavier[u]
    }

    /// Members of `set` that precede no other member of `set`.
    pub fn max_elements(&self, set: JobSet) -> JobSet {
        set.iter()
            .filter(|&v| self.succ(v).is_disjoint(set))
            .collect()
    }

    /// Whether `set` contains every predecessor of each of its members.
    pub fn is_downward_closed(&self, set: JobSet) -> bool {
        set.iter().all(|v| self.pred(v).is_subset(set))
    }

    /// Whether no two members of `set` are comparable.
    pub fn is_antichain(&self, set: JobSet) -> bool {
        set.iter().all(|v| self.succ(v).is_disjoint(set))
    }

    /// Cost of running `v` at 1-based position `i`: `(n - i + 1) * t(v)`.
    pub fn job_cost(&self, v: usize, i: usize) -> Result<ExactCost> {
        let n = self.n();
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        if i == 0 || i > n {
            return Err(Error::PositionOutOfRange { position: i, n });
        }
        Ok(ExactCost::scaled(&self.times[v], (n - i + 1) as u64))
    }

    /// Total completion time of `ordering`; precedence is not checked.
    pub fn ordering_cost(&self, ordering: &Ordering) -> Result<ExactCost> {
        let n = self.n();
        if ordering.len() != n {
            return Err(Error::NotABijection(format!(
                "ordering covers {} jobs, instance has {n}",
                ordering.len()
            )));
        }
        let mut total = BigUint::zero();
        for (v, t) in self.times.iter().enumerate() {
            total += t * (n - ordering.position(v) + 1) as u64;
        }
        Ok(ExactCost::new(total))
    }

    /// Whether `ordering` respects every precedence pair.
    pub fn validate_ordering(&self, ordering: &Ordering) -> bool {
        ordering.len() == self.n()
            && (0..self.n()).all(|u| {
                self.succ(u)
                    .iter()
                    .all(|v| ordering.position(u) < ordering.position(v))
            })
    }

    /// Copy of this instance with additional precedence edges, re-closed.
    pub fn with_constraints(&self, extra: &[(usize, usize)]) -> Result<Instance> {
        let mut edges = self.order.pairs();
        edges.extend_from_slice(extra);
        let order = transitive_closure(&edges, self.n())?;
        Ok(Instance::from_parts(self.times.clone(), order))
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("times", &self.times)
            .field("precedes", &self.order)
            .finish()
    }
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.times == other.times && self.order == other.order
    }
}

impl Eq for Instance {}

/// A schedule: a bijection from jobs to positions `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ordering {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl Ordering {
    /// From the jobs listed in schedule order.
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![0usize; n];
        for (i, &v) in sequence.iter().enumerate() {
            if v >= n {
                return Err(Error::NotABijection(format!(
                    "job {v} out of range for {n} jobs"
                )));
            }
            if position[v] != 0 {
                return Err(Error::NotABijection(format!("job {v} appears twice")));
            }
            position[v] = i + 1;
        }
        Ok(Ordering { sequence, position })
    }

    /// From 1-based positions indexed by job.
    pub fn from_positions(position: Vec<usize>) -> Result<Self> {
        let n = position.len();
        let mut sequence = vec![usize::MAX; n];
        for (v, &p) in position.iter().enumerate() {
            if p == 0 || p > n {
                return Err(Error::PositionOutOfRange { position: p, n });
            }
            if sequence[p - 1] != usize::MAX {
                return Err(Error::NotABijection(format!("position {p} used twice")));
            }
            sequence[p - 1] = v;
        }
        Ok(Ordering { sequence, position })
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            sequence: (0..n).collect(),
            position: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// 1-based position of job `v`.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Job at 1-based position `i`.
    pub fn job_at(&self, i: usize) -> usize {
        self.sequence[i - 1]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    /// Jobs occupying positions `1..=i`.
    pub fn prefix(&self, i: usize) -> JobSet {
        self.sequence[..i].iter().copied().collect()
    }
}

impl TryFrom<Vec<usize>> for Ordering {
    type Error = Error;
    fn try_from(sequence: Vec<usize>) -> Result<Self> {
        Ordering::from_sequence(sequence)
    }
}

impl From<Ordering> for Vec<usize> {
    fn from(o: Ordering) -> Vec<usize> {
        o.sequence
    }
}

impl fmt::Debug for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordering{:?}", self.sequence)
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.sequence.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// An instance padded to a multiple of four jobs with perturbed times, so that
/// any two distinct orderings have distinct total cost.
#[derive(Clone, Debug)]
pub struct NormalizedInstance {
    base: Instance,
    original: Instance,
    pi: Vec<usize>,
    origin_map: Vec<Option<usize>>,
    endpoints: Option<(usize, usize)>,
}

/// Pads with zero-time unconstrained dummy jobs and perturbs every time to
/// `t(v) * B^(n+2) + B^(pi(v)-1)` with `B = n + 1` (padded `n`, `pi(v) = v + 1`).
pub fn normalize(inst: &Instance) -> NormalizedInstance {
    let n0 = inst.n();
    let padding = (4 - n0 % 4) % 4;
    let n = n0 + padding;
    assert!(n <= MAX_JOBS, "padding {n0} jobs exceeds {MAX_JOBS}");
    let base_b = BigUint::from(n as u64 + 1);
    let shift = base_b.pow(n as u32 + 2);
    let mut digit = BigUint::one();
    let mut times = Vec::with_capacity(n);
    for v in 0..n {
        let t = if v < n0 {
            inst.time(v).clone()
        } else {
            BigUint::zero()
        };
        times.push(t * &shift + &digit);
        digit *= &base_b;
    }
    let pairs = inst.order().pairs();
    let order = transitive_closure(&pairs, n).expect("padding keeps the order acyclic");
    NormalizedInstance {
        base: Instance::from_parts(times, order),
        original: inst.clone(),
        pi: (1..=n).collect(),
        origin_map: (0..n).map(|v| (v < n0).then_some(v)).collect(),
        endpoints: None,
    }
}

impl NormalizedInstance {
    /// The padded, perturbed instance every solver runs on.
    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn original(&self) -> &Instance {
        &self.original
    }

    /// The numbering used for perturbation (1-based, by job index).
    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// Original index of each job, `None` for dummies.
    pub fn origin_map(&self) -> &[Option<usize>] {
        &self.origin_map
    }

    /// `(v_begin, v_end)` once fixed by [`endpoint_variants`].
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.endpoints
    }

    pub fn dummy_count(&self) -> usize {
        self.base.n() - self.original.n()
    }

    /// Drops dummy jobs and renumbers positions.
    pub fn to_original(&self, ordering: &Ordering) -> Ordering {
        let seq = ordering
            .sequence()
            .iter()
            .filter_map(|&v| self.origin_map[v])
            .collect();
        Ordering::from_sequence(seq).expect("restriction of a bijection")
    }

    /// Unperturbed objective of a padded ordering, evaluated on the original jobs.
    pub fn original_cost(&self, ordering: &Ordering) -> Result<ExactCost> {
        self.original.ordering_cost(&self.to_original(ordering))
    }
}

/// One variant per admissible `(v_begin, v_end)` pair, each with the extra
/// constraints `v_begin < v < v_end` for every other job.
///
/// `v_begin` must have no predecessors and `v_end` no successors.
pub fn endpoint_variants(norm: &NormalizedInstance) -> Vec<NormalizedInstance> {
    let base = &norm.base;
    let n = base.n();
    let firsts: Vec<usize> = (0..n).filter(|&v| base.pred(v).is_empty()).collect();
    let lasts: Vec<usize> = (0..n).filter(|&v| base.succ(v).is_empty()).collect();
    let mut out = Vec::new();
    for &vb in &firsts {
        for &ve in &lasts {
            if vb == ve {
                continue;
            }
            let mut extra = Vec::with_capacity(2 * n);
            for v in 0..n {
                if v != vb {
                    extra.push((vb, v));
                }
                if v != ve {
                    extra.push((v, ve));
                }
            }
            let inst = base
                .with_constraints(&extra)
                .expect("a source and a sink never close a cycle");
            out.push(NormalizedInstance {
                base: inst,
                original: norm.original.clone(),
                pi: norm.pi.clone(),
                origin_map: norm.origin_map.clone(),
                endpoints: Some((vb, ve)),
            });
        }
    }
    out
}

/// On-disk instance format: 0-based indices, `[u, v]` means `u` precedes `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub times: Vec<u64>,
    pub precedences: Vec<[usize; 2]>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.times.len() != self.n {
            return Err(Error::Malformed(format!(
                "n = {} but {} times given",
                self.n,
                self.times.len()
            )));
        }
        let edges: Vec<(usize, usize)> = self.precedences.iter().map(|&[u, v]| (u, v)).collect();
        Instance::new(self.times.clone(), &edges)
    }

    /// Serializes `inst` with its full (closed) precedence relation.
    pub fn from_instance(inst: &Instance) -> Result<Self> {
        let times = inst
            .times()
            .iter()
            .map(|t| {
                u64::try_from(t)
                    .map_err(|_| Error::Malformed(format!("time {t} does not fit in 64 bits")))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(InstanceFile {
            n: inst.n(),
            times,
            precedences: inst
                .order()
                .pairs()
                .into_iter()
                .map(|(u, v)| [u, v])
                .collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Parses the JSON instance format.
pub fn parse_instance(text: &str) -> Result<Instance> {
    InstanceFile::parse(text)?.to_instance()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Instance {
        Instance::new(vec![1, 1, 1], &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn closure_adds_transitive_pair() {
        let p = transitive_closure(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(p.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn closure_of_no_edges_is_empty() {
        assert!(transitive_closure(&[], 4).unwrap().pairs().is_empty());
    }

    #[test]
    fn two_cycle_is_rejected_and_named() {
        let err = transitive_closure(&[(0, 1), (1, 0)], 2).unwrap_err();
        assert_eq!(err, Error::CyclicPrecedence { cycle: vec![0, 1] });
        let err = transitive_closure(&[(0, 1), (1, 2), (2, 3), (3, 1)], 4).unwrap_err();
        assert_eq!(
            err,
            Error::CyclicPrecedence {
                cycle: vec![1, 2, 3]
            }
        );
        let err = transitive_closure(&[(2, 2)], 3).unwrap_err();
        assert_eq!(err, Error::CyclicPrecedence { cycle: vec![2] });
    }

    #[test]
    fn closure_rejects_out_of_range() {
        assert_eq!(
            transitive_closure(&[(0, 5)], 3).unwrap_err(),
            Error::IndexOutOfRange { index: 5, n: 3 }
        );
    }

    #[test]
    fn closure_is_idempotent_and_tolerates_duplicates() {
        let p = transitive_closure(&[(0, 1), (0, 1), (1, 3), (2, 3)], 4).unwrap();
        let again = transitive_closure(&p.pairs(), 4).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn pred_and_succ_sets() {
        let c = chain3();
        assert_eq!(
            c.pred_set(JobSet::singleton(2)),
            [0, 1].into_iter().collect()
        );
        assert_eq!(c.pred_set(JobSet::singleton(0)), JobSet::EMPTY);
        assert_eq!(
            c.succ_set(JobSet::singleton(0)),
            [1, 2].into_iter().collect()
        );
        let fork = Instance::new(vec![1, 1, 1], &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(
            fork.pred_set(JobSet::singleton(2)),
            [0, 1].into_iter().collect()
        );
    }

    #[test]
    fn job_cost_formula() {
        let inst = Instance::new(vec![3, 0, 0, 0], &[]).unwrap();
        assert_eq!(inst.job_cost(0, 1).unwrap(), ExactCost::from(12u64));
        assert_eq!(inst.job_cost(0, 4).unwrap(), ExactCost::from(3u64));
        assert_eq!(inst.job_cost(1, 2).unwrap(), ExactCost::zero());
        assert_eq!(
            inst.job_cost(0, 5).unwrap_err(),
            Error::PositionOutOfRange { position: 5, n: 4 }
        );
        assert!(matches!(
            inst.job_cost(0, 0),
            Err(Error::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn ordering_cost_examples() {
        let two = Instance::new(vec![3, 5], &[]).unwrap();
        let id = Ordering::from_positions(vec![1, 2]).unwrap();
        let swapped = Ordering::from_positions(vec![2, 1]).unwrap();
        assert_eq!(two.ordering_cost(&id).unwrap(), ExactCost::from(11u64));
        assert_eq!(two.ordering_cost(&swapped).unwrap(), ExactCost::from(13u64));
        let three = Instance::new(vec![1, 2, 3], &[]).unwrap();
        assert_eq!(
            three.ordering_cost(&Ordering::identity(3)).unwrap(),
            ExactCost::from(10u64)
        );
        assert!(matches!(
            three.ordering_cost(&Ordering::identity(2)),
            Err(Error::NotABijection(_))
        ));
    }

    #[test]
    fn ordering_rejects_non_bijections() {
        assert!(Ordering::from_sequence(vec![0, 0]).is_err());
        assert!(Ordering::from_sequence(vec![0, 2]).is_err());
        assert!(Ordering::from_positions(vec![1, 1]).is_err());
        assert!(Ordering::from_positions(vec![0, 1]).is_err());
    }

    #[test]
    fn validate_ordering_examples() {
        let inst = Instance::new(vec![1, 1], &[(0, 1)]).unwrap();
        assert!(inst.validate_ordering(&Ordering::from_positions(vec![1, 2]).unwrap()));
        assert!(!inst.validate_ordering(&Ordering::from_positions(vec![2, 1]).unwrap()));
        let free = Instance::new(vec![1, 1], &[]).unwrap();
        assert!(free.validate_ordering(&Ordering::from_positions(vec![2, 1]).unwrap()));
    }

    #[test]
    fn normalize_pads_to_multiple_of_four() {
        let inst = Instance::new(vec![5, 6, 7], &[(0, 1)]).unwrap();
        let norm = normalize(&inst);
        assert_eq!(norm.base().n(), 4);
        assert_eq!(norm.dummy_count(), 1);
        assert!(norm.base().pred(3).is_empty() && norm.base().succ(3).is_empty());
        assert_eq!(norm.origin_map(), &[Some(0), Some(1), Some(2), None]);
        assert!(norm.base().precedes(0, 1));

        let four = Instance::new(vec![1, 2, 3, 4], &[]).unwrap();
        assert_eq!(normalize(&four).base().n(), 4);
    }

    #[test]
    fn normalize_zero_times_become_powers_of_base() {
        let inst = Instance::new(vec![0, 0, 0, 0], &[]).unwrap();
        let norm = normalize(&inst);
        let expected: Vec<BigUint> = [1u64, 5, 25, 125]
            .iter()
            .map(|&x| BigUint::from(x))
            .collect();
        assert_eq!(norm.base().times(), expected.as_slice());
    }

    #[test]
    fn normalize_keeps_real_part_dominant() {
        let inst = Instance::new(vec![2, 1], &[]).unwrap();
        let norm = normalize(&inst);
        // n = 4, B = 5, shift = 5^6 = 15625.
        assert_eq!(norm.base().time(0), &BigUint::from(2u64 * 15625 + 1));
        assert_eq!(norm.base().time(1), &BigUint::from(15625u64 + 5));
    }

    #[test]
    fn endpoint_variant_counts() {
        let anti = normalize(&Instance::new(vec![1; 4], &[]).unwrap());
        assert_eq!(endpoint_variants(&anti).len(), 12);

        let chain = normalize(&Instance::new(vec![1; 4], &[(0, 1), (1, 2), (2, 3)]).unwrap());
        let vars = endpoint_variants(&chain);
        assert_eq!(vars.len(), 1);
        assert_eq!(vars[0].endpoints(), Some((0, 3)));

        // 0<1 plus free 2, 3: begin in {0,2,3}, end in {1,2,3}, distinct.
        let mixed = normalize(&Instance::new(vec![1; 4], &[(0, 1)]).unwrap());
        let mut brute = 0;
        for b in [0usize, 2, 3] {
            for e in [1usize, 2, 3] {
                if b != e {
                    brute += 1;
                }
            }
        }
        assert_eq!(endpoint_variants(&mixed).len(), brute);
        assert_eq!(brute, 7);
    }

    #[test]
    fn endpoint_variant_constraints() {
        let anti = normalize(&Instance::new(vec![1; 4], &[]).unwrap());
        for var in endpoint_variants(&anti) {
            let (b, e) = var.endpoints().unwrap();
            for v in 0..4 {
                if v != b {
                    assert!(var.base().precedes(b, v));
                }
                if v != e {
                    assert!(var.base().precedes(v, e));
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"n": 3, "times": [4, 3, 2], "precedences": [[0, 1], [1, 2], [0, 1]]}"#;
        let inst = parse_instance(text).unwrap();
        assert!(inst.precedes(0, 2));
        let file = InstanceFile::from_instance(&inst).unwrap();
        assert_eq!(file.precedences, vec![[0, 1], [0, 2], [1, 2]]);
        assert_eq!(parse_instance(&file.to_json()).unwrap(), inst);

        let cyclic = r#"{"n": 2, "times": [1, 1], "precedences": [[0, 1], [1, 0]]}"#;
        assert!(matches!(
            parse_instance(cyclic),
            Err(Error::CyclicPrecedence { .. })
        ));
        assert!(matches!(parse_instance("{"), Err(Error::Malformed(_))));
        let bad_n = r#"{"n": 2, "times": [1], "precedences": []}"#;
        assert!(matches!(parse_instance(bad_n), Err(Error::Malformed(_))));
    }
}
