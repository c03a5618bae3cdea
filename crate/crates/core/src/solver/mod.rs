//! Exact, brute-force and greedy computation of k-metric dimensions.
//!
//! `dim_k` is the least size of a set meeting every distinguisher set
//! `B^c(u|v)` at least `k` times, a set multicover problem. [`dim_exact`]
//! solves it by branch and bound seeded with [`greedy_upper`];
//! [`dim_bruteforce`] is an independent enumeration used as an oracle.

mod bits;
mod cover;

use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::metric::{pairs, FiniteMetricSpace};
use crate::pointset::PointSet;
use bits::Bits;
use cover::{CoverInstance, SearchOutcome, SearchParams};

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);
pub const DEFAULT_BRUTEFORCE_CAP: usize = 16;

/// A non-negative integer or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedNat {
    Finite(u64),
    Infinity,
}

impl ExtendedNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedNat::Finite(v) => Some(v),
            ExtendedNat::Infinity => None,
        }
    }

    pub fn saturating_add(self, other: ExtendedNat) -> ExtendedNat {
        match (self, other) {
            (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => {
                a.checked_add(b).map_or(ExtendedNat::Infinity, ExtendedNat::Finite)
            }
            _ => ExtendedNat::Infinity,
        }
    }
}

impl From<usize> for ExtendedNat {
    fn from(v: usize) -> Self {
        ExtendedNat::Finite(v as u64)
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(v) => f.pad(&v.to_string()),
            ExtendedNat::Infinity => f.pad("inf"),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedNat::Finite(v) => s.serialize_u64(*v),
            ExtendedNat::Infinity => s.serialize_str("inf"),
        }
    }
}

/// `(dim_1, dim_2, ...)`: the finite entries for `k = 1..`, then `+∞` from
/// `tail_start` on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionSequence {
    pub entries: Vec<ExtendedNat>,
    pub tail_start: Option<usize>,
}

impl DimensionSequence {
    /// `dim_k`, or `None` when `k` lies between the computed entries and the
    /// tail.
    pub fn get(&self, k: usize) -> Option<ExtendedNat> {
        if k == 0 {
            return None;
        }
        if let Some(v) = self.entries.get(k - 1) {
            return Some(*v);
        }
        match self.tail_start {
            Some(t) if k >= t => Some(ExtendedNat::Infinity),
            _ => None,
        }
    }

    /// Checks strict growth of the finite part, `dim_k >= k`, and that the
    /// tail stays infinite.
    pub fn check_shape(&self) -> Result<(), String> {
        for (i, e) in self.entries.iter().enumerate() {
            let k = i as u64 + 1;
            if let ExtendedNat::Finite(v) = e {
                if *v < k {
                    return Err(format!("dim_{k} = {v} < {k}"));
                }
            }
            if i > 0 {
                let prev = self.entries[i - 1];
                if prev == ExtendedNat::Infinity && *e != ExtendedNat::Infinity {
                    return Err(format!("dim_{k} finite after an infinite entry"));
                }
                if let (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) = (prev, *e) {
                    if b < a + 1 {
                        return Err(format!("dim_{k} = {b} < dim_{} + 1 = {}", k - 1, a + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for DimensionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        if self.tail_start.is_some() {
            if !self.entries.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "inf,...")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// `optimum` is the exact value of `dim_k`.
    Exact,
    /// Budget exhausted: `lower_bound <= dim_k <= optimum`.
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTerm {
    pub source: String,
    pub value: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub k: usize,
    pub status: SolveStatus,
    /// Exact value, or the incumbent size when `status` is bounded.
    pub optimum: ExtendedNat,
    pub lower_bound: ExtendedNat,
    /// A k-generator of size `optimum`, absent iff `optimum` is infinite.
    pub basis: Option<PointSet>,
    pub lower_bound_trace: Vec<BoundTerm>,
    pub nodes_explored: u64,
    pub greedy_value: Option<u64>,
    /// Wall time; left out of serialized reports so repeated runs agree.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SolveReport {
    pub fn is_exact(&self) -> bool {
        self.status == SolveStatus::Exact
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Wall-clock budget per `(space, k)`.
    pub budget: Duration,
    /// Share the search tree across the rayon pool. The optimum is the same
    /// as in sequential mode, the returned basis may differ.
    pub parallel: bool,
    /// Known lower bound, typically `dim_{k-1} + 1`.
    pub lower_hint: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, parallel: false, lower_hint: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("instance has {n} points, brute force is capped at {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
}

/// Greedy k-generator: repeatedly add the point that removes the most total
/// deficit `Σ max(0, k - coverage)`, ties to the smallest index. `None` when
/// `k > max_k`.
pub fn greedy_upper(space: &FiniteMetricSpace, k: usize) -> Option<(usize, PointSet)> {
    let map = space.all_distinguishers();
    if k > map.min_size() {
        return None;
    }
    let n = space.len();
    let sets: Vec<Bits> = map.sets().iter().map(|s| Bits::from_indices(n, s.iter())).collect();
    let mut coverage = vec![0usize; sets.len()];
    let mut chosen = Bits::empty(n);
    loop {
        let mut best: Option<(usize, usize)> = None;
        for x in (0..n).filter(|&x| !chosen.contains(x)) {
            let gain = sets
                .iter()
                .zip(&coverage)
                .filter(|(s, &c)| c < k && s.contains(x))
                .count();
            if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, x));
            }
        }
        let Some((_, x)) = best else { break };
        chosen.insert(x);
        for (s, c) in sets.iter().zip(coverage.iter_mut()) {
            if s.contains(x) {
                *c += 1;
            }
        }
    }
    debug_assert!(coverage.iter().all(|&c| c >= k));
    Some((chosen.count(), PointSet::new(chosen.iter())))
}

/// Exact `dim_k` by branch and bound.
///
/// In sequential mode the basis is the lexicographically smallest optimal
/// set; it is found by fixing points in index order, each time asking
/// whether an optimal cover extending the current prefix exists.
pub fn dim_exact(space: &FiniteMetricSpace, k: usize, opts: &SolveOptions) -> SolveReport {
    assert!(k >= 1, "k must be positive");
    let start = Instant::now();
    let deadline = start + opts.budget;
    let map = space.all_distinguishers();
    let n = space.len();
    let mut trace = vec![BoundTerm { source: "k".into(), value: k as u64 }];
    if k > map.min_size() {
        return SolveReport {
            k,
            status: SolveStatus::Exact,
            optimum: ExtendedNat::Infinity,
            lower_bound: ExtendedNat::Infinity,
            basis: None,
            lower_bound_trace: trace,
            nodes_explored: 0,
            greedy_value: None,
            elapsed: start.elapsed(),
        };
    }
    let (greedy_value, greedy_set) = greedy_upper(space, k).expect("k <= max_k");
    let inst = CoverInstance::new(&map, k);
    let mut lower = k;
    if let Some(h) = opts.lower_hint {
        trace.push(BoundTerm { source: "previous_level".into(), value: h });
        lower = lower.max(h as usize);
    }
    let packing = cover::root_bound(&inst);
    trace.push(BoundTerm { source: "packing".into(), value: packing as u64 });
    lower = lower.max(packing).min(greedy_value);

    let mut best = (greedy_value, Bits::from_indices(n, greedy_set.iter()));
    let mut nodes = 0;
    let mut exact = true;
    if lower < greedy_value {
        let result = cover::search(
            &inst,
            Bits::empty(n),
            Bits::full(n),
            &SearchParams {
                limit: greedy_value - 1,
                floor: lower,
                first_only: false,
                parallel: opts.parallel,
                deadline,
            },
        );
        nodes += result.nodes;
        if let Some(found) = result.best {
            best = found;
        }
        if matches!(result.outcome, SearchOutcome::TimedOut) {
            exact = false;
        }
    }
    if exact && !opts.parallel {
        let (basis, extra) = lex_smallest(&inst, best.0, best.1.clone(), lower, deadline);
        nodes += extra;
        best.1 = basis;
    }
    SolveReport {
        k,
        status: if exact { SolveStatus::Exact } else { SolveStatus::Bounded },
        optimum: ExtendedNat::from(best.0),
        lower_bound: ExtendedNat::from(if exact { best.0 } else { lower }),
        basis: Some(PointSet::new(best.1.iter())),
        lower_bound_trace: trace,
        nodes_explored: nodes,
        greedy_value: Some(greedy_value as u64),
        elapsed: start.elapsed(),
    }
}

/// Lexicographically smallest cover of size `size`, given one such cover.
/// Falls back to `known` if the deadline passes.
fn lex_smallest(
    inst: &CoverInstance,
    size: usize,
    known: Bits,
    floor: usize,
    deadline: Instant,
) -> (Bits, u64) {
    let n = inst.n;
    let mut chosen = Bits::empty(n);
    let mut free = Bits::full(n);
    let mut witness = known.clone();
    let mut nodes = 0;
    for i in 0..n {
        if chosen.count() == size {
            break;
        }
        free.remove(i);
        chosen.insert(i);
        if witness.contains(i) {
            continue;
        }
        let result = cover::search(
            inst,
            chosen.clone(),
            free.clone(),
            &SearchParams { limit: size, floor, first_only: true, parallel: false, deadline },
        );
        nodes += result.nodes;
        match (result.best, result.outcome) {
            (Some((_, found)), _) => witness = found,
            (None, SearchOutcome::Complete) => chosen.remove(i),
            (None, SearchOutcome::TimedOut) => return (known, nodes),
        }
    }
    (witness, nodes)
}

/// Independent oracle: tries every subset in order of size and returns the
/// first size admitting a k-generator. Works from the raw rational distances.
pub fn dim_bruteforce(
    space: &FiniteMetricSpace,
    k: usize,
    cap: usize,
) -> Result<ExtendedNat, SolveError> {
    let n = space.len();
    if n > cap || n > 63 {
        return Err(SolveError::InstanceTooLarge { n, cap: cap.min(63) });
    }
    let masks: Vec<u64> = pairs(n)
        .map(|(u, v)| {
            (0..n)
                .filter(|&x| space.dist(x, u) != space.dist(x, v))
                .fold(0u64, |m, x| m | 1 << x)
        })
        .collect();
    for size in k..=n {
        for combo in (0..n).combinations(size) {
            let s = combo.iter().fold(0u64, |m, &x| m | 1 << x);
            if masks.iter().all(|&m| (m & s).count_ones() as usize >= k) {
                return Ok(ExtendedNat::from(size));
            }
        }
    }
    Ok(ExtendedNat::Infinity)
}

/// Dimension sequence together with the per-level solver reports.
#[derive(Debug, Clone, Serialize)]
pub struct SequenceRun {
    pub max_k: usize,
    pub sequence: DimensionSequence,
    pub levels: Vec<SolveReport>,
}

impl SequenceRun {
    pub fn is_exact(&self) -> bool {
        self.levels.iter().all(SolveReport::is_exact)
    }
}

/// Computes `dim_k` for `k = 1..=min(k_max, max_k)`, feeding each level's
/// value (plus one) to the next as a lower bound. `k_max` defaults to
/// `max_k` capped at `n`.
pub fn dimension_sequence(
    space: &FiniteMetricSpace,
    k_max: Option<usize>,
    opts: &SolveOptions,
) -> SequenceRun {
    let max_k = space.max_k();
    let top = k_max.unwrap_or(usize::MAX).min(max_k).min(space.len());
    let mut levels: Vec<SolveReport> = Vec::with_capacity(top);
    for k in 1..=top {
        let hint = levels.last().and_then(|r| r.lower_bound.finite()).map(|v| v + 1);
        let level_opts = SolveOptions { lower_hint: hint, ..opts.clone() };
        levels.push(dim_exact(space, k, &level_opts));
    }
    SequenceRun {
        max_k,
        sequence: DimensionSequence {
            entries: levels.iter().map(|r| r.optimum).collect(),
            tail_start: Some(max_k + 1),
        },
        levels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_space(n: usize, d: impl Fn(usize, usize) -> i64) -> FiniteMetricSpace {
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect();
        FiniteMetricSpace::from_integers(labels, &rows).unwrap()
    }

    fn complete(n: usize) -> FiniteMetricSpace {
        graph_space(n, |i, j| i64::from(i != j))
    }

    fn cycle(n: usize) -> FiniteMetricSpace {
        graph_space(n, |i, j| {
            let d = (i as i64 - j as i64).abs();
            d.min(n as i64 - d)
        })
    }

    fn path(n: usize) -> FiniteMetricSpace {
        graph_space(n, |i, j| (i as i64 - j as i64).abs())
    }

    #[test]
    fn extended_nat_ordering_and_display() {
        assert!(ExtendedNat::Finite(u64::MAX) < ExtendedNat::Infinity);
        assert_eq!(ExtendedNat::Infinity.to_string(), "inf");
        assert_eq!(
            ExtendedNat::Finite(2).saturating_add(ExtendedNat::Infinity),
            ExtendedNat::Infinity
        );
        assert_eq!(serde_json::to_string(&ExtendedNat::Infinity).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&ExtendedNat::Finite(7)).unwrap(), "7");
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_upper(&complete(4), 1).unwrap().0, 3);
        assert_eq!(greedy_upper(&cycle(7), 2).unwrap().0, 3);
        assert!(greedy_upper(&complete(4), 3).is_none());
    }

    #[test]
    fn exact_examples() {
        let opts = SolveOptions::default();
        assert_eq!(dim_exact(&path(6), 3, &opts).optimum, ExtendedNat::Finite(4));
        assert_eq!(dim_exact(&cycle(8), 4, &opts).optimum, ExtendedNat::Finite(6));
        let r = dim_exact(&complete(5), 3, &opts);
        assert_eq!(r.optimum, ExtendedNat::Infinity);
        assert!(r.basis.is_none());
    }

    #[test]
    fn basis_is_lexicographically_smallest() {
        // P4, k = 1: both endpoints resolve; the smallest is {v0}
        let r = dim_exact(&path(4), 1, &SolveOptions::default());
        assert_eq!(r.basis.unwrap().as_slice(), &[0]);
        // C6, k = 1: any two adjacent vertices; smallest is {v0, v1}
        let r = dim_exact(&cycle(6), 1, &SolveOptions::default());
        assert_eq!(r.basis.unwrap().as_slice(), &[0, 1]);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(dim_bruteforce(&complete(5), 2, 16).unwrap(), ExtendedNat::Finite(5));
        assert_eq!(dim_bruteforce(&complete(5), 3, 16).unwrap(), ExtendedNat::Infinity);
        assert_eq!(
            dim_bruteforce(&complete(20), 1, 16),
            Err(SolveError::InstanceTooLarge { n: 20, cap: 16 })
        );
    }

    #[test]
    fn sequences_of_small_families() {
        let opts = SolveOptions::default();
        let run = dimension_sequence(&complete(6), None, &opts);
        assert_eq!(run.sequence.to_string(), "(5,6,inf,...)");
        assert_eq!(run.sequence.tail_start, Some(3));
        let run = dimension_sequence(&cycle(7), None, &opts);
        assert_eq!(run.sequence.to_string(), "(2,3,4,5,6,7,inf,...)");
        assert_eq!(run.sequence.get(7), Some(ExtendedNat::Infinity));
        assert!(run.sequence.check_shape().is_ok());
        let partial = dimension_sequence(&cycle(7), Some(2), &opts);
        assert_eq!(partial.sequence.entries.len(), 2);
        assert_eq!(partial.sequence.get(4), None);
    }

    #[test]
    fn parallel_mode_agrees_on_optimum() {
        let par = SolveOptions { parallel: true, ..SolveOptions::default() };
        for k in 1..=6 {
            let a = dim_exact(&cycle(8), k, &SolveOptions::default());
            let b = dim_exact(&cycle(8), k, &par);
            assert_eq!(a.optimum, b.optimum);
            if let Some(basis) = &b.basis {
                assert!(cycle(8).is_k_generator(basis, k).valid);
            }
        }
    }

    #[test]
    fn zero_budget_reports_bounds() {
        let opts = SolveOptions { budget: Duration::ZERO, ..SolveOptions::default() };
        let r = dim_exact(&cycle(10), 5, &opts);
        if r.status == SolveStatus::Bounded {
            assert!(r.lower_bound <= r.optimum);
        }
        let basis = r.basis.unwrap();
        assert!(cycle(10).is_k_generator(&basis, 5).valid);
    }
}
