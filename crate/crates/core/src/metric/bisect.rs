use serde::Serialize;

use crate::metric::{FiniteMetricSpace, MetricError};
use crate::pointset::PointSet;

/// Position of the pair `(u, v)`, `u < v`, in lexicographic pair order.
pub fn pair_index(u: usize, v: usize, n: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// All pairs `(u, v)` with `u < v`, in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| ((u + 1)..n).map(move |v| (u, v)))
}

/// For every unordered pair, the points that distinguish it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguisherMap {
    n: usize,
    pairs: Vec<(usize, usize)>,
    sets: Vec<PointSet>,
}

impl DistinguisherMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn get(&self, u: usize, v: usize) -> &PointSet {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        &self.sets[pair_index(a, b, self.n)]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &PointSet)> {
        self.pairs.iter().copied().zip(self.sets.iter())
    }

    /// Size of the smallest distinguisher set, i.e. the largest `k` for
    /// which a k-metric generator exists.
    pub fn min_size(&self) -> usize {
        self.sets.iter().map(PointSet::len).min().unwrap_or(0)
    }
}

/// Outcome of checking a candidate set against the k-generator condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KGeneratorCertificate {
    pub k: usize,
    pub set: PointSet,
    /// `|set ∩ B^c(u|v)|` for every pair, in lexicographic pair order.
    pub coverage: Vec<usize>,
    pub valid: bool,
    /// First pair (lexicographically) whose coverage is below `k`.
    pub witness: Option<(usize, usize)>,
}

impl KGeneratorCertificate {
    pub fn min_coverage(&self) -> usize {
        self.coverage.iter().copied().min().unwrap_or(0)
    }
}

impl FiniteMetricSpace {
    fn check_pair(&self, u: usize, v: usize) -> Result<(), MetricError> {
        self.check_index(u)?;
        self.check_index(v)?;
        if u == v {
            return Err(MetricError::SamePoint(u));
        }
        Ok(())
    }

    /// Points equidistant from `u` and `v`.
    pub fn bisector(&self, u: usize, v: usize) -> Result<PointSet, MetricError> {
        self.check_pair(u, v)?;
        Ok((0..self.len()).filter(|&x| self.equidistant(x, u, v)).collect())
    }

    /// Points at different distances from `u` and `v`: the complement of the
    /// bisector, always containing `u` and `v`.
    pub fn distinguishers(&self, u: usize, v: usize) -> Result<PointSet, MetricError> {
        self.check_pair(u, v)?;
        Ok((0..self.len()).filter(|&x| !self.equidistant(x, u, v)).collect())
    }

    pub fn all_distinguishers(&self) -> DistinguisherMap {
        let n = self.len();
        let pairs: Vec<(usize, usize)> = pairs(n).collect();
        let sets = pairs
            .iter()
            .map(|&(u, v)| (0..n).filter(|&x| !self.equidistant(x, u, v)).collect())
            .collect();
        DistinguisherMap { n, pairs, sets }
    }

    /// Checks whether every pair of distinct points is distinguished by at
    /// least `k` points of `set`.
    pub fn is_k_generator(&self, set: &PointSet, k: usize) -> KGeneratorCertificate {
        let n = self.len();
        let members: Vec<usize> = set.iter().filter(|&x| x < n).collect();
        let mut coverage = Vec::with_capacity(n * (n - 1) / 2);
        let mut witness = None;
        for (u, v) in pairs(n) {
            let c = members.iter().filter(|&&x| !self.equidistant(x, u, v)).count();
            if c < k && witness.is_none() {
                witness = Some((u, v));
            }
            coverage.push(c);
        }
        KGeneratorCertificate {
            k,
            set: set.clone(),
            coverage,
            valid: witness.is_none(),
            witness,
        }
    }

    /// Largest `k` admitting a k-metric generator: the minimum distinguisher
    /// set size over all pairs. O(n³) distance comparisons.
    pub fn max_k(&self) -> usize {
        let n = self.len();
        pairs(n)
            .map(|(u, v)| (0..n).filter(|&x| !self.equidistant(x, u, v)).count())
            .min()
            .unwrap_or(0)
    }
}
