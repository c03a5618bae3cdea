use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::metric::rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("distance matrix must be {expected}x{expected}, got row {row} of length {len}")]
    NotSquare { expected: usize, row: usize, len: usize },
    #[error("distance matrix has {rows} rows but {expected} labels")]
    RowCount { expected: usize, rows: usize },
    #[error("a metric space needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("d({i},{j}) != d({j},{i})")]
    AsymmetricDistance { i: usize, j: usize },
    #[error("d({i},{j}) is negative")]
    NegativeDistance { i: usize, j: usize },
    #[error("d({i},{j}) is zero for distinct points")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error("d({i},{i}) is not zero")]
    NonzeroDiagonal { i: usize },
    #[error("triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("u and v must be distinct points (both are {0})")]
    SamePoint(usize),
    #[error("point index {index} out of range for a space of {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("parameter {name} must be positive, got {value}")]
    NonpositiveParameter { name: &'static str, value: String },
    #[error("label {0:?} occurs in both spaces")]
    LabelCollision(String),
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
    #[error("invalid metric space document: {0}")]
    Format(String),
}

/// A finite set of labelled points with an exact rational distance matrix.
///
/// Construction validates every metric axiom, so a value of this type is
/// always a genuine metric space. Besides the rationals themselves the space
/// keeps a rank matrix (the position of each distance among the sorted
/// distinct values) so equality tests in the hot paths are integer compares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<BigRational>,
    rank: Vec<u32>,
    meta: BTreeMap<String, String>,
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<BigRational>>) -> Result<Self, MetricError> {
        let n = labels.len();
        if dist.len() != n {
            return Err(MetricError::RowCount { expected: n, rows: dist.len() });
        }
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare { expected: n, row, len: r.len() });
            }
        }
        let mut seen = HashSet::with_capacity(n);
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(MetricError::DuplicateLabel(l.clone()));
            }
        }
        if n < 2 {
            return Err(MetricError::TooFewPoints(n));
        }
        let flat: Vec<BigRational> = dist.into_iter().flatten().collect();
        Self::from_flat(labels, flat, BTreeMap::new())
    }

    /// Like [`FiniteMetricSpace::new`] but takes a row-major matrix.
    pub(crate) fn from_flat(
        labels: Vec<String>,
        dist: Vec<BigRational>,
        meta: BTreeMap<String, String>,
    ) -> Result<Self, MetricError> {
        let n = labels.len();
        debug_assert_eq!(dist.len(), n * n);
        for i in 0..n {
            if !dist[i * n + i].is_zero() {
                return Err(MetricError::NonzeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (&dist[i * n + j], &dist[j * n + i]);
                if a != b {
                    return Err(MetricError::AsymmetricDistance { i, j });
                }
                if a.is_negative() {
                    return Err(MetricError::NegativeDistance { i, j });
                }
                if a.is_zero() {
                    return Err(MetricError::ZeroOffDiagonal { i, j });
                }
            }
        }
        check_triangle(n, &dist)?;
        if n == 2 {
            log::warn!("metric space with only two points; most results assume at least three");
        }
        let rank = rank_matrix(&dist);
        Ok(FiniteMetricSpace { labels, dist, rank, meta })
    }

    /// Builds a space from label/row pairs of integers. Convenient for graph
    /// metrics and tests.
    pub fn from_integers(labels: Vec<String>, dist: &[Vec<i64>]) -> Result<Self, MetricError> {
        let rows = dist
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        Self::new(labels, rows)
    }

    /// Euclidean point set ingestion. Coordinates are quantized to `digits`
    /// decimal digits. One-dimensional inputs get exact distances
    /// `|x - y|` of the quantized coordinates; higher dimensions quantize each
    /// Euclidean distance.
    pub fn from_points(
        labels: Vec<String>,
        points: &[Vec<f64>],
        digits: u32,
    ) -> Result<Self, MetricError> {
        let n = labels.len();
        if points.len() != n {
            return Err(MetricError::RowCount { expected: n, rows: points.len() });
        }
        let dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != dim || p.iter().any(|x| !x.is_finite())) {
            return Err(MetricError::Format(
                "points must be finite and share one dimension".into(),
            ));
        }
        let mut rows = vec![vec![BigRational::zero(); n]; n];
        if dim == 1 {
            let q: Vec<BigRational> =
                points.iter().map(|p| rational::quantize(p[0], digits)).collect();
            for i in 0..n {
                for j in 0..n {
                    rows[i][j] = (&q[i] - &q[j]).abs();
                }
            }
        } else {
            for i in 0..n {
                for j in (i + 1)..n {
                    let d: f64 = points[i]
                        .iter()
                        .zip(&points[j])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    let d = rational::quantize(d, digits);
                    rows[i][j] = d.clone();
                    rows[j][i] = d;
                }
            }
        }
        let mut space = Self::new(labels, rows)?;
        space.meta.insert("quantization_digits".into(), digits.to_string());
        Ok(space)
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dist(&self, i: usize, j: usize) -> &BigRational {
        &self.dist[i * self.len() + j]
    }

    /// `d(x,u) == d(x,v)`, by rank comparison.
    #[inline]
    pub fn equidistant(&self, x: usize, u: usize, v: usize) -> bool {
        let n = self.len();
        self.rank[x * n + u] == self.rank[x * n + v]
    }

    /// Rank of `d(i,j)` among the distinct distances of the space.
    #[inline]
    pub fn dist_rank(&self, i: usize, j: usize) -> u32 {
        self.rank[i * self.len() + j]
    }

    pub fn diameter(&self) -> BigRational {
        self.dist.iter().max().cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), MetricError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(MetricError::IndexOutOfRange { index, n: self.len() })
        }
    }

    /// The subspace on the given indices (kept in the given order).
    pub fn subspace(&self, indices: &[usize]) -> Result<Self, MetricError> {
        for &i in indices {
            self.check_index(i)?;
        }
        let labels: Vec<String> = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let mut dist = Vec::with_capacity(indices.len() * indices.len());
        for &i in indices {
            for &j in indices {
                dist.push(self.dist(i, j).clone());
            }
        }
        if labels.len() < 2 {
            return Err(MetricError::TooFewPoints(labels.len()));
        }
        Self::from_flat(labels, dist, self.meta.clone())
    }

    /// Reorders points so that old point `i` becomes new point `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.len();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut inverse = vec![usize::MAX; n];
        for (old, &new) in perm.iter().enumerate() {
            inverse[new] = old;
        }
        assert!(inverse.iter().all(|&x| x < n), "not a permutation");
        let labels = inverse.iter().map(|&o| self.labels[o].clone()).collect();
        let mut dist = Vec::with_capacity(n * n);
        let mut rank = Vec::with_capacity(n * n);
        for &oi in &inverse {
            for &oj in &inverse {
                dist.push(self.dist(oi, oj).clone());
                rank.push(self.dist_rank(oi, oj));
            }
        }
        FiniteMetricSpace { labels, dist, rank, meta: self.meta.clone() }
    }

    /// The truncated metric `min(d, 2t)`.
    pub fn truncate(&self, t: &BigRational) -> Result<Self, MetricError> {
        if !t.is_positive() {
            return Err(MetricError::NonpositiveParameter { name: "t", value: t.to_string() });
        }
        let cutoff = t * BigRational::from_integer(BigInt::from(2));
        self.truncate_at(&cutoff)
    }

    /// Caps every distance at `cutoff`. [`FiniteMetricSpace::truncate`] uses
    /// `cutoff = 2t`; this entry point exposes the cap directly so the
    /// alternative `min(d, t)` reading can be exercised too.
    pub fn truncate_at(&self, cutoff: &BigRational) -> Result<Self, MetricError> {
        if !cutoff.is_positive() {
            return Err(MetricError::NonpositiveParameter {
                name: "cutoff",
                value: cutoff.to_string(),
            });
        }
        let dist = self.dist.iter().map(|d| d.min(cutoff).clone()).collect();
        let mut meta = self.meta.clone();
        meta.insert("truncation_cutoff".into(), cutoff.to_string());
        Self::from_flat(self.labels.clone(), dist, meta)
    }
}

/// The join `a + b`: within each part the metric truncated at `2t`, across
/// parts exactly `t`.
pub fn join(
    a: &FiniteMetricSpace,
    b: &FiniteMetricSpace,
    t: &BigRational,
) -> Result<FiniteMetricSpace, MetricError> {
    if !t.is_positive() {
        return Err(MetricError::NonpositiveParameter { name: "t", value: t.to_string() });
    }
    let left: HashSet<&str> = a.labels.iter().map(String::as_str).collect();
    if let Some(l) = b.labels.iter().find(|l| left.contains(l.as_str())) {
        return Err(MetricError::LabelCollision(l.clone()));
    }
    let cutoff = t * BigRational::from_integer(BigInt::from(2));
    let (na, nb) = (a.len(), b.len());
    let n = na + nb;
    let mut dist = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let d = match (i < na, j < na) {
                (true, true) => a.dist(i, j).min(&cutoff).clone(),
                (false, false) => b.dist(i - na, j - na).min(&cutoff).clone(),
                _ => t.clone(),
            };
            dist.push(d);
        }
    }
    let labels = a.labels.iter().chain(&b.labels).cloned().collect();
    let mut meta = BTreeMap::new();
    meta.insert("join_t".into(), t.to_string());
    meta.insert("join_left_size".into(), na.to_string());
    FiniteMetricSpace::from_flat(labels, dist, meta)
}

fn rank_matrix(dist: &[BigRational]) -> Vec<u32> {
    let mut distinct: Vec<&BigRational> = dist.iter().collect();
    distinct.sort();
    distinct.dedup();
    dist.iter()
        .map(|d| distinct.binary_search(&d).expect("value present") as u32)
        .collect()
}

fn check_triangle(n: usize, dist: &[BigRational]) -> Result<(), MetricError> {
    // Integer fast path: scale by the common denominator when it fits.
    let common = dist.iter().fold(BigInt::one(), |acc, d| acc.lcm(d.denom()));
    let scaled: Option<Vec<i64>> = dist
        .iter()
        .map(|d| (d.numer() * (&common / d.denom())).to_i64())
        .collect();
    let first_violation = match scaled {
        Some(s) => find_violation(n, |i, j| s[i * n + j] as i128, |a, b| a + b),
        None => find_violation(n, |i, j| dist[i * n + j].clone(), |a, b| a + b),
    };
    match first_violation {
        Some((i, j, k)) => Err(MetricError::TriangleViolation { i, j, k }),
        None => Ok(()),
    }
}

fn find_violation<T: PartialOrd>(
    n: usize,
    d: impl Fn(usize, usize) -> T,
    add: impl Fn(T, T) -> T,
) -> Option<(usize, usize, usize)> {
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if d(i, k) > add(d(i, j), d(j, k)) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}
