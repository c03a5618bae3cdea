//! Branch and bound for the k-multicover formulation: pick the fewest points
//! meeting every distinguisher set at least `k` times.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;

use crate::metric::DistinguisherMap;
use crate::solver::bits::Bits;

/// Largest block considered by the block packing bound.
const BLOCK_CAP: usize = 8;
/// Nodes between deadline checks.
const CLOCK_INTERVAL: u64 = 256;

/// Covering instance after removing duplicate and dominated sets. A set that
/// contains another one is implied by it, since both carry the same
/// requirement `k`.
pub(crate) struct CoverInstance {
    pub n: usize,
    pub k: usize,
    pub sets: Vec<Bits>,
}

impl CoverInstance {
    pub fn new(map: &DistinguisherMap, k: usize) -> Self {
        let n = map.n();
        let mut sets: Vec<Bits> = map
            .sets()
            .iter()
            .map(|s| Bits::from_indices(n, s.iter()))
            .collect();
        sets.sort_by_key(|s| (s.count(), s.clone()));
        sets.dedup();
        let mut kept: Vec<Bits> = Vec::with_capacity(sets.len());
        for s in sets {
            if !kept.iter().any(|m| m.is_subset(&s)) {
                kept.push(s);
            }
        }
        CoverInstance { n, k, sets: kept }
    }

    /// Unsatisfied sets with their deficit and residual availability, or
    /// `None` when some set can no longer reach its requirement.
    fn residual(&self, chosen: &Bits, free: &Bits) -> Option<Vec<Residual>> {
        let mut out = Vec::new();
        for (idx, s) in self.sets.iter().enumerate() {
            let cov = s.and_count(chosen);
            if cov >= self.k {
                continue;
            }
            let deficit = self.k - cov;
            let avail = s.and_count(free);
            if avail < deficit {
                return None;
            }
            out.push(Residual { idx, deficit, avail });
        }
        Some(out)
    }

    /// Lower bound on the number of further points needed.
    ///
    /// Greedily packs pairwise disjoint blocks of free points. Each block
    /// starts from the smallest untouched residual set and absorbs
    /// overlapping residual sets while it stays within [`BLOCK_CAP`] points.
    /// Sets whose residual lies inside a block can only be served by that
    /// block, so the exact minimum for each block (by enumeration) adds up
    /// to a valid bound. A single set alone contributes its deficit, which is
    /// the plain packing bound.
    fn block_bound(&self, residual: &[Residual], free: &Bits) -> usize {
        let mut order: Vec<(usize, Bits, usize)> = residual
            .iter()
            .map(|r| (r.avail, self.sets[r.idx].and(free), r.deficit))
            .collect();
        order.sort_by_key(|(a, _, _)| *a);
        let mut used = Bits::empty(self.n);
        let mut total = 0;
        let max_deficit = residual.iter().map(|r| r.deficit).max().unwrap_or(0);
        for i in 0..order.len() {
            if order[i].1.intersects(&used) {
                continue;
            }
            let mut block = order[i].1.clone();
            if order[i].0 < BLOCK_CAP {
                for (_, other, _) in &order[i + 1..] {
                    if other.intersects(&block)
                        && !other.intersects(&used)
                        && block.union_count(other) <= BLOCK_CAP
                    {
                        block.union_with(other);
                    }
                }
            }
            let members: Vec<(&Bits, usize)> = order
                .iter()
                .filter(|(_, r, _)| r.is_subset(&block))
                .map(|(_, r, d)| (r, *d))
                .collect();
            total += block_minimum(&block, &members);
            used.union_with(&block);
        }
        total.max(max_deficit)
    }
}

struct Residual {
    idx: usize,
    deficit: usize,
    avail: usize,
}

/// Fewest points of `block` meeting each member residual `deficit` times.
fn block_minimum(block: &Bits, members: &[(&Bits, usize)]) -> usize {
    let points: Vec<usize> = block.iter().collect();
    if points.len() > BLOCK_CAP {
        // Oversized single set: its deficit is the best cheap bound.
        return members.iter().map(|(_, d)| *d).max().unwrap_or(0);
    }
    let local: Vec<(u32, usize)> = members
        .iter()
        .map(|(r, d)| {
            let mask = points
                .iter()
                .enumerate()
                .filter(|(_, &p)| r.contains(p))
                .fold(0u32, |m, (i, _)| m | 1 << i);
            (mask, *d)
        })
        .collect();
    let limit = 1u32 << points.len();
    for &mask in masks_by_popcount().iter().filter(|&&m| m < limit) {
        if local.iter().all(|&(r, d)| (r & mask).count_ones() as usize >= d) {
            return mask.count_ones() as usize;
        }
    }
    points.len()
}

fn masks_by_popcount() -> &'static [u32] {
    static MASKS: OnceLock<Vec<u32>> = OnceLock::new();
    MASKS.get_or_init(|| {
        let mut v: Vec<u32> = (0..(1u32 << BLOCK_CAP)).collect();
        v.sort_by_key(|m| (m.count_ones(), *m));
        v
    })
}

/// Outcome of a bounded search.
pub(crate) enum SearchOutcome {
    /// Search space exhausted; the incumbent (if any) is optimal.
    Complete,
    /// Deadline hit.
    TimedOut,
}

pub(crate) struct SearchResult {
    pub outcome: SearchOutcome,
    pub best: Option<(usize, Bits)>,
    pub nodes: u64,
}

struct Shared {
    /// Only solutions of size <= limit are of interest.
    limit: AtomicUsize,
    best: Mutex<Option<(usize, Bits)>>,
    stop: AtomicBool,
    timed_out: AtomicBool,
    nodes: AtomicU64,
    deadline: Instant,
    /// Stop at the first solution within the limit.
    first_only: bool,
    /// No solution can be smaller than this.
    floor: usize,
}

impl Shared {
    fn record(&self, size: usize, chosen: &Bits) {
        let mut best = self.best.lock().expect("incumbent lock");
        let better = match &*best {
            None => true,
            Some((s, b)) => size < *s || (size == *s && chosen.iter().lt(b.iter())),
        };
        if better {
            *best = Some((size, chosen.clone()));
        }
        if self.first_only || size <= self.floor {
            self.stop.store(true, Ordering::Relaxed);
        }
        if size > 0 {
            self.limit.fetch_min(size - 1, Ordering::Relaxed);
        } else {
            self.stop.store(true, Ordering::Relaxed);
        }
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n.is_multiple_of(CLOCK_INTERVAL) && Instant::now() >= self.deadline {
            self.timed_out.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
        self.stop.load(Ordering::Relaxed)
    }
}

/// Children of a node: include the i-th free point of the branching set,
/// excluding every earlier one. Later children cannot reach the deficit.
fn children(inst: &CoverInstance, chosen: &Bits, free: &Bits, r: &Residual) -> Vec<(Bits, Bits)> {
    let candidates: Vec<usize> = inst.sets[r.idx].and(free).iter().collect();
    let mut out = Vec::new();
    let mut free_child = free.clone();
    for &c in candidates.iter().take(r.avail - r.deficit + 1) {
        let mut chosen_child = chosen.clone();
        chosen_child.insert(c);
        free_child.remove(c);
        out.push((chosen_child, free_child.clone()));
    }
    out
}

enum Expansion {
    Leaf,
    Branch(Vec<(Bits, Bits)>),
}

fn expand(inst: &CoverInstance, shared: &Shared, chosen: &Bits, free: &Bits) -> Expansion {
    let size = chosen.count();
    let limit = shared.limit.load(Ordering::Relaxed);
    if size > limit {
        return Expansion::Leaf;
    }
    let Some(residual) = inst.residual(chosen, free) else {
        return Expansion::Leaf;
    };
    if residual.is_empty() {
        shared.record(size, chosen);
        return Expansion::Leaf;
    }
    if size + inst.block_bound(&residual, free) > limit {
        return Expansion::Leaf;
    }
    // fail-first: smallest residual set, ties by set order
    let pick = residual.iter().min_by_key(|r| (r.avail, r.idx)).expect("non-empty");
    Expansion::Branch(children(inst, chosen, free, pick))
}

fn dfs(inst: &CoverInstance, shared: &Shared, chosen: &Bits, free: &Bits) {
    if shared.tick() {
        return;
    }
    if let Expansion::Branch(kids) = expand(inst, shared, chosen, free) {
        for (c, f) in kids {
            dfs(inst, shared, &c, &f);
            if shared.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

pub(crate) struct SearchParams {
    pub limit: usize,
    pub floor: usize,
    pub first_only: bool,
    pub parallel: bool,
    pub deadline: Instant,
}

/// Searches for covers of size at most `params.limit` starting from the
/// partial assignment (`chosen`, `free`); points in neither are excluded.
pub(crate) fn search(
    inst: &CoverInstance,
    chosen: Bits,
    free: Bits,
    params: &SearchParams,
) -> SearchResult {
    let shared = Shared {
        limit: AtomicUsize::new(params.limit),
        best: Mutex::new(None),
        stop: AtomicBool::new(false),
        timed_out: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        deadline: params.deadline,
        first_only: params.first_only,
        floor: params.floor,
    };
    if params.parallel {
        // Expand the top of the tree until there is enough work to share.
        let mut frontier = vec![(chosen, free)];
        let target = rayon::current_num_threads() * 4;
        while frontier.len() < target && !shared.stop.load(Ordering::Relaxed) {
            let mut next = Vec::new();
            let mut expanded = false;
            for (c, f) in frontier {
                if shared.tick() {
                    break;
                }
                if let Expansion::Branch(kids) = expand(inst, &shared, &c, &f) {
                    expanded = true;
                    next.extend(kids);
                }
            }
            frontier = next;
            if !expanded {
                break;
            }
        }
        frontier.par_iter().for_each(|(c, f)| {
            if !shared.stop.load(Ordering::Relaxed) {
                dfs(inst, &shared, c, f);
            }
        });
    } else {
        dfs(inst, &shared, &chosen, &free);
    }
    let outcome = if shared.timed_out.load(Ordering::Relaxed) {
        SearchOutcome::TimedOut
    } else {
        SearchOutcome::Complete
    };
    SearchResult {
        outcome,
        best: shared.best.into_inner().expect("incumbent lock"),
        nodes: shared.nodes.load(Ordering::Relaxed),
    }
}

/// Root lower bound on the optimum (all points free).
pub(crate) fn root_bound(inst: &CoverInstance) -> usize {
    let free = Bits::full(inst.n);
    let chosen = Bits::empty(inst.n);
    match inst.residual(&chosen, &free) {
        Some(r) => inst.block_bound(&r, &free),
        None => usize::MAX,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_minimum_of_a_sibling_triple() {
        // three pairs over {a, b, c}, each distinguished only by its own two
        // points: any two points suffice, one does not
        let ab = Bits::from_indices(3, [0, 1]);
        let ac = Bits::from_indices(3, [0, 2]);
        let bc = Bits::from_indices(3, [1, 2]);
        let block = Bits::full(3);
        assert_eq!(block_minimum(&block, &[(&ab, 1), (&ac, 1), (&bc, 1)]), 2);
        assert_eq!(block_minimum(&block, &[(&ab, 2)]), 2);
        assert_eq!(block_minimum(&block, &[(&ab, 1)]), 1);
    }

    #[test]
    fn masks_are_ordered_by_popcount() {
        let m = masks_by_popcount();
        assert_eq!(m.len(), 1 << BLOCK_CAP);
        assert!(m.windows(2).all(|w| w[0].count_ones() <= w[1].count_ones()));
    }
}
