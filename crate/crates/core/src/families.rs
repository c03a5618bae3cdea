//! Generators for the graph and metric-space families the toolkit analyzes,
//! including finite balls of infinite Cayley graphs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{shortest_path_metric, Graph, GraphError};
use crate::metric::{rational, FiniteMetricSpace, MetricError};
use crate::pointset::PointSet;
use crate::solver::{dim_exact, DimensionSequence, ExtendedNat, SolveOptions};

pub const DEFAULT_PRECISION: u32 = crate::metric::io::DEFAULT_PRECISION;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad family parameters: {0}")]
    BadFamilyParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadFamilyParams(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Petersen,
    /// A 5-cycle with a path of `tail` vertices hanging off one of its
    /// vertices (the shared vertex counts as the first path vertex).
    Lollipop { cycle: usize, tail: usize },
    /// L1 ball of `radius` around the origin in the grid graph of `Z^rank`.
    GridBall { rank: usize, radius: usize },
    /// Ball of `radius` in the Cayley tree of the free group on `rank`
    /// generators.
    FreeBall { rank: usize, radius: usize },
    /// Infinite ladder `m + i n` restricted to `m ∈ [-radius, radius]`.
    Ladder(usize),
    /// `{√p}` for the first `count` primes, on the real line.
    SqrtPrimes(usize),
    /// `count` equally spaced points `i / (count - 1)` of `[0, 1]`.
    Interval(usize),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::Path(n) if n < 2 => Err(bad("path needs n >= 2")),
            FamilySpec::Cycle(n) if n < 3 => Err(bad("cycle needs n >= 3")),
            FamilySpec::Complete(n) if n < 2 => Err(bad("complete needs n >= 2")),
            FamilySpec::Lollipop { cycle, .. } if cycle != 5 => {
                Err(bad("lollipop is defined for cycle length 5"))
            }
            FamilySpec::Lollipop { tail, .. } if tail < 1 => Err(bad("lollipop needs tail >= 1")),
            FamilySpec::GridBall { rank, radius } if rank < 1 || radius < 1 => {
                Err(bad("grid-ball needs rank >= 1 and radius >= 1"))
            }
            FamilySpec::FreeBall { rank, radius } if !(1..=26).contains(&rank) || radius < 1 => {
                Err(bad("free-ball needs 1 <= rank <= 26 and radius >= 1"))
            }
            FamilySpec::Ladder(r) if r < 1 => Err(bad("ladder needs radius >= 1")),
            FamilySpec::SqrtPrimes(m) if m < 2 => Err(bad("sqrt-primes needs at least 2 primes")),
            FamilySpec::Interval(m) if m < 2 => Err(bad("interval needs at least 2 points")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::Lollipop { cycle, tail } => write!(f, "lollipop:{cycle},{tail}"),
            FamilySpec::GridBall { rank, radius } => write!(f, "grid-ball:{rank},{radius}"),
            FamilySpec::FreeBall { rank, radius } => write!(f, "free-ball:{rank},{radius}"),
            FamilySpec::Ladder(r) => write!(f, "ladder:{r}"),
            FamilySpec::SqrtPrimes(m) => write!(f, "sqrt-primes:{m}"),
            FamilySpec::Interval(m) => write!(f, "interval:{m}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses `path:7`, `lollipop:5,4`, `petersen`, ...
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, a),
            None => (s, ""),
        };
        let params: Vec<usize> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<usize>().map_err(|_| bad(format!("{a:?} in {s:?}"))))
                .collect::<Result<_, _>>()?
        };
        let arity = |want: usize| -> Result<(), FamilyError> {
            if params.len() == want {
                Ok(())
            } else {
                Err(bad(format!("{name} takes {want} parameter(s), got {}", params.len())))
            }
        };
        let spec = match name.trim().replace('_', "-").as_str() {
            "path" => arity(1).map(|_| FamilySpec::Path(params[0]))?,
            "cycle" => arity(1).map(|_| FamilySpec::Cycle(params[0]))?,
            "complete" => arity(1).map(|_| FamilySpec::Complete(params[0]))?,
            "petersen" => arity(0).map(|_| FamilySpec::Petersen)?,
            "lollipop" => {
                arity(2).map(|_| FamilySpec::Lollipop { cycle: params[0], tail: params[1] })?
            }
            "grid-ball" => {
                arity(2).map(|_| FamilySpec::GridBall { rank: params[0], radius: params[1] })?
            }
            "free-ball" => {
                arity(2).map(|_| FamilySpec::FreeBall { rank: params[0], radius: params[1] })?
            }
            "ladder" => arity(1).map(|_| FamilySpec::Ladder(params[0]))?,
            "sqrt-primes" => arity(1).map(|_| FamilySpec::SqrtPrimes(params[0]))?,
            "interval" | "interval-sample" => arity(1).map(|_| FamilySpec::Interval(params[0]))?,
            other => return Err(bad(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A generated family member: a graph, or a metric space given directly.
#[derive(Debug, Clone)]
pub enum FamilyObject {
    Graph(Graph),
    Space(FiniteMetricSpace),
}

impl FamilyObject {
    pub fn graph(&self) -> Option<&Graph> {
        match self {
            FamilyObject::Graph(g) => Some(g),
            FamilyObject::Space(_) => None,
        }
    }

    pub fn metric(&self) -> Result<FiniteMetricSpace, FamilyError> {
        match self {
            FamilyObject::Graph(g) => Ok(shortest_path_metric(g)?),
            FamilyObject::Space(s) => Ok(s.clone()),
        }
    }
}

fn names(prefix: &str, range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

pub fn make(spec: &FamilySpec) -> Result<FamilyObject, FamilyError> {
    spec.validate()?;
    let obj = match *spec {
        FamilySpec::Path(n) => {
            let g = Graph::from_indices(names("v", 1..=n), (1..n).map(|i| (i - 1, i)))?;
            assert_eq!(g.edges().len(), n - 1);
            FamilyObject::Graph(g)
        }
        FamilySpec::Cycle(n) => {
            let g = Graph::from_indices(names("v", 0..n), (0..n).map(|i| (i, (i + 1) % n)))?;
            assert_eq!(g.edges().len(), n);
            FamilyObject::Graph(g)
        }
        FamilySpec::Complete(n) => {
            let edges = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)));
            let g = Graph::from_indices(names("v", 1..=n), edges)?;
            assert_eq!(g.edges().len(), n * (n - 1) / 2);
            FamilyObject::Graph(g)
        }
        FamilySpec::Petersen => FamilyObject::Graph(petersen()?),
        FamilySpec::Lollipop { tail, .. } => FamilyObject::Graph(lollipop(tail)?),
        FamilySpec::GridBall { rank, radius } => FamilyObject::Graph(grid_ball(rank, radius)?.0),
        FamilySpec::FreeBall { rank, radius } => FamilyObject::Graph(free_ball(rank, radius)?),
        FamilySpec::Ladder(r) => FamilyObject::Graph(ladder(r)?),
        FamilySpec::SqrtPrimes(m) => FamilyObject::Space(sqrt_primes(m, DEFAULT_PRECISION)?),
        FamilySpec::Interval(m) => FamilyObject::Space(interval(m)?),
    };
    Ok(obj)
}

/// Outer 5-cycle `u1..u5`, spokes `u_i v_i`, inner pentagram
/// `v1 v3 v5 v2 v4`.
fn petersen() -> Result<Graph, GraphError> {
    let mut labels = names("u", 1..=5);
    labels.extend(names("v", 1..=5));
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    let g = Graph::from_indices(labels, edges)?;
    assert_eq!(g.edges().len(), 15);
    assert!((0..10).all(|v| g.degree(v) == 3));
    Ok(g)
}

/// Cycle `u1 v1 v2 v3 v4 u1` with the path `u1 u2 .. u_t` attached at `u1`.
/// Vertices: `v1..v4, u1..u_t`, so `4 + t` vertices and `4 + t` edges.
fn lollipop(tail: usize) -> Result<Graph, GraphError> {
    let mut labels = names("v", 1..=4);
    labels.extend(names("u", 1..=tail));
    let u = |i: usize| 3 + i;
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (u(1), 0), (u(1), 3)];
    edges.extend((2..=tail).map(|i| (u(i - 1), u(i))));
    let g = Graph::from_indices(labels, edges)?;
    assert_eq!(g.len(), 4 + tail);
    assert_eq!(g.edges().len(), 4 + tail);
    Ok(g)
}

fn coord_label(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Induced subgraph of the `Z^rank` grid on the L1 ball. Returns the graph
/// and the coordinates of each vertex (lexicographic order).
fn grid_ball(rank: usize, radius: usize) -> Result<(Graph, Vec<Vec<i64>>), GraphError> {
    let r = radius as i64;
    let mut coords: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..rank {
        coords = coords
            .into_iter()
            .flat_map(|c| {
                (-r..=r).filter_map(move |x| {
                    let mut d = c.clone();
                    d.push(x);
                    (d.iter().map(|v| v.abs()).sum::<i64>() <= r).then_some(d)
                })
            })
            .collect();
    }
    // |ball| = Σ_i 2^i C(rank, i) C(radius, i)
    let expected: usize =
        (0..=rank).map(|i| (1 << i) * binomial(rank, i) * binomial(radius, i)).sum();
    assert_eq!(coords.len(), expected);
    let index: HashMap<Vec<i64>, usize> =
        coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut edges = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        for axis in 0..rank {
            let mut d = c.clone();
            d[axis] += 1;
            if let Some(&j) = index.get(&d) {
                edges.push((i, j));
            }
        }
    }
    let labels = coords.iter().map(|c| coord_label(c)).collect();
    Ok((Graph::from_indices(labels, edges)?, coords))
}

fn letter(gen: usize, inverse: bool) -> char {
    let c = (b'a' + gen as u8) as char;
    if inverse {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

fn is_inverse(a: char, b: char) -> bool {
    a != b && a.eq_ignore_ascii_case(&b)
}

/// Reduced words of length <= radius over `a, A, b, B, ...` (uppercase is
/// the inverse), in breadth-first order; the identity is `e`.
fn free_ball(rank: usize, radius: usize) -> Result<Graph, GraphError> {
    let mut words = vec![String::new()];
    let mut edges = Vec::new();
    let mut layer = vec![0usize];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &w in &layer {
            let last = words[w].chars().last();
            for gen in 0..rank {
                for inv in [false, true] {
                    let c = letter(gen, inv);
                    if last.is_some_and(|l| is_inverse(l, c)) {
                        continue;
                    }
                    let mut child = words[w].clone();
                    child.push(c);
                    words.push(child);
                    edges.push((w, words.len() - 1));
                    next.push(words.len() - 1);
                }
            }
        }
        layer = next;
    }
    let expected = if rank == 1 {
        2 * radius + 1
    } else {
        let b = 2 * rank - 1;
        1 + 2 * rank * (b.pow(radius as u32) - 1) / (b - 1)
    };
    assert_eq!(words.len(), expected);
    let labels = words
        .into_iter()
        .map(|w| if w.is_empty() { "e".to_string() } else { w })
        .collect();
    let g = Graph::from_indices(labels, edges)?;
    assert_eq!(g.edges().len(), g.len() - 1);
    Ok(g)
}

/// Label of the ladder vertex `m + i n`: `"3"`, `"i"`, `"1+i"`, `"-2+i"`.
pub fn ladder_label(m: i64, n: i64) -> String {
    match (m, n) {
        (m, 0) => m.to_string(),
        (0, _) => "i".to_string(),
        (m, _) => format!("{m}+i"),
    }
}

/// Vertices `m` then `m + i` for `m = -r..=r`; rails and rungs as edges.
/// `2(2r+1)` vertices, `6r + 1` edges.
fn ladder(radius: usize) -> Result<Graph, GraphError> {
    let r = radius as i64;
    let width = 2 * radius + 1;
    let mut labels = Vec::with_capacity(2 * width);
    for n in 0..2 {
        for m in -r..=r {
            labels.push(ladder_label(m, n));
        }
    }
    let mut edges = Vec::new();
    for n in 0..2 {
        for j in 0..width - 1 {
            edges.push((n * width + j, n * width + j + 1));
        }
    }
    edges.extend((0..width).map(|j| (j, width + j)));
    let g = Graph::from_indices(labels, edges)?;
    assert_eq!(g.len(), 2 * width);
    assert_eq!(g.edges().len(), 6 * radius + 1);
    Ok(g)
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut c = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
            primes.push(c);
        }
        c += 1;
    }
    primes
}

/// `{√p : p among the first m primes}` with `|√p - √q|`; each root is
/// rounded to `digits` decimals so distances are exact differences.
pub fn sqrt_primes(m: usize, digits: u32) -> Result<FiniteMetricSpace, FamilyError> {
    if m < 2 {
        return Err(bad("sqrt-primes needs at least 2 primes"));
    }
    let primes = first_primes(m);
    let roots: Vec<BigRational> = primes.iter().map(|&p| rational::sqrt_quantized(p, digits)).collect();
    let rows = roots
        .iter()
        .map(|a| roots.iter().map(|b| (a - b).abs()).collect())
        .collect();
    let labels = primes.iter().map(|p| format!("sqrt{p}")).collect();
    Ok(FiniteMetricSpace::new(labels, rows)?.with_meta("quantization_digits", digits.to_string()))
}

/// Points `i / (m - 1)` of `[0, 1]`, labelled by their exact value.
pub fn interval(m: usize) -> Result<FiniteMetricSpace, FamilyError> {
    if m < 2 {
        return Err(bad("interval needs at least 2 points"));
    }
    let denom = BigInt::from(m - 1);
    let pts: Vec<BigRational> =
        (0..m).map(|i| BigRational::new(BigInt::from(i), denom.clone())).collect();
    let rows = pts.iter().map(|a| pts.iter().map(|b| (a - b).abs()).collect()).collect();
    let labels = pts.iter().map(rational::format).collect();
    Ok(FiniteMetricSpace::new(labels, rows)?)
}

/// What is known in closed form about a family's dimension sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    /// The whole sequence, tail included.
    Known(DimensionSequence),
    /// `dim_1 .. dim_j` only.
    Prefix { entries: Vec<ExtendedNat> },
    Unknown,
}

impl Expectation {
    /// Expected `dim_k`, if stated.
    pub fn get(&self, k: usize) -> Option<ExtendedNat> {
        match self {
            Expectation::Known(seq) => seq.get(k),
            Expectation::Prefix { entries } => k.checked_sub(1).and_then(|i| entries.get(i)).copied(),
            Expectation::Unknown => None,
        }
    }
}

fn known(entries: impl IntoIterator<Item = usize>) -> Expectation {
    let entries: Vec<ExtendedNat> = entries.into_iter().map(ExtendedNat::from).collect();
    let tail = entries.len() + 1;
    Expectation::Known(DimensionSequence { entries, tail_start: Some(tail) })
}

pub fn expected_sequence(spec: &FamilySpec) -> Expectation {
    match *spec {
        FamilySpec::Complete(n) => known([n - 1, n]),
        FamilySpec::Path(n) if n <= 3 => known([1, 2]),
        FamilySpec::Path(n) => known([1, 2].into_iter().chain(4..=n)),
        FamilySpec::Cycle(n) if n % 2 == 1 => known((1..n).map(|k| k + 1)),
        FamilySpec::Cycle(n) => {
            let q = n / 2;
            known((2..=q).chain((q + 2)..=(2 * q)))
        }
        FamilySpec::Petersen => known([3, 4, 7, 8, 9, 10]),
        FamilySpec::Lollipop { cycle: 5, .. } => Expectation::Prefix {
            entries: (1..=4).map(|k| ExtendedNat::from(k + 1)).collect(),
        },
        FamilySpec::SqrtPrimes(m) => known(1..=m),
        _ => Expectation::Unknown,
    }
}

/// The bases named for the lollipop: `S1 = {v1,v2}`, `S2 = {v1,v2,u_t}`,
/// `S3 = {v1,v2,v3,u_t}`, `S4 = {v1,v2,v3,v4,u_t}`.
pub fn lollipop_bases(tail: usize) -> Vec<Vec<String>> {
    let ut = format!("u{tail}");
    vec![
        vec!["v1".into(), "v2".into()],
        vec!["v1".into(), "v2".into(), ut.clone()],
        vec!["v1".into(), "v2".into(), "v3".into(), ut.clone()],
        vec!["v1".into(), "v2".into(), "v3".into(), "v4".into(), ut],
    ]
}

/// Families whose balls are inspected for growth of `dim_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceFamily {
    GridBall { rank: usize },
    FreeBall { rank: usize },
    Ladder,
}

impl DivergenceFamily {
    fn spec(&self, radius: usize) -> FamilySpec {
        match *self {
            DivergenceFamily::GridBall { rank } => FamilySpec::GridBall { rank, radius },
            DivergenceFamily::FreeBall { rank } => FamilySpec::FreeBall { rank, radius },
            DivergenceFamily::Ladder => FamilySpec::Ladder(radius),
        }
    }
}

impl TryFrom<FamilySpec> for DivergenceFamily {
    type Error = FamilyError;

    fn try_from(spec: FamilySpec) -> Result<Self, FamilyError> {
        match spec {
            FamilySpec::GridBall { rank, .. } => Ok(DivergenceFamily::GridBall { rank }),
            FamilySpec::FreeBall { rank, .. } => Ok(DivergenceFamily::FreeBall { rank }),
            FamilySpec::Ladder(_) => Ok(DivergenceFamily::Ladder),
            other => Err(bad(format!("{other} has no divergence evidence"))),
        }
    }
}

/// A pair whose bisector should contain a given set of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BisectorWitness {
    pub pair: (String, String),
    pub bisector_size: usize,
    /// Size of the set claimed to lie in the bisector.
    pub claimed: usize,
    pub contained: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RadiusEvidence {
    pub radius: usize,
    pub points: usize,
    pub dim1: ExtendedNat,
    pub dim1_exact: bool,
    /// Claimed sets, nested and growing along the chain.
    pub witnesses: Vec<BisectorWitness>,
    /// Largest claimed set as a fraction of the ball.
    pub covered_fraction: f64,
    /// Pairs whose distance inside the ball differs from the distance in
    /// the infinite graph.
    pub boundary_mismatches: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergenceReport {
    pub family: DivergenceFamily,
    pub radii: Vec<RadiusEvidence>,
    pub dim1_non_decreasing: bool,
    pub dim1_strictly_increasing: bool,
    pub witnesses_hold: bool,
}

fn witness(
    space: &FiniteMetricSpace,
    a: &str,
    b: &str,
    claimed: &[usize],
) -> Result<BisectorWitness, FamilyError> {
    let idx = |l: &str| space.index_of(l).ok_or_else(|| bad(format!("missing vertex {l}")));
    let (u, v) = (idx(a)?, idx(b)?);
    let bis = space.bisector(u, v)?;
    Ok(BisectorWitness {
        pair: (a.to_string(), b.to_string()),
        bisector_size: bis.len(),
        claimed: claimed.len(),
        contained: PointSet::new(claimed.iter().copied()).is_subset(&bis),
    })
}

/// For `ζ = (m, .., m)`, the quadrant `x1 >= m+1, x2 >= m+1` lies in
/// `B(ζ+e1 | ζ+e2)`. Walks `m = 0, -1, ...` while both points stay in the
/// ball.
fn grid_witnesses(
    space: &FiniteMetricSpace,
    rank: usize,
    radius: usize,
    coords: &[Vec<i64>],
) -> Result<Vec<BisectorWitness>, FamilyError> {
    if rank < 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let r = radius as i64;
    for m in (-r..=0).rev() {
        let mut a = vec![m; rank];
        a[0] += 1;
        let mut b = vec![m; rank];
        b[1] += 1;
        let norm = |c: &Vec<i64>| c.iter().map(|x| x.abs()).sum::<i64>();
        if norm(&a) > r || norm(&b) > r {
            break;
        }
        let claimed: Vec<usize> = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c[0] > m && c[1] > m)
            .map(|(i, _)| i)
            .collect();
        out.push(witness(space, &coord_label(&a), &coord_label(&b), &claimed)?);
    }
    Ok(out)
}

/// Along the ray `v_j = B^j`: with `a_j = v_j a`, `b_j = v_j A`, every vertex
/// outside the subtree of `v_j` (for `j = 0`, the subtree of `b`) is
/// equidistant from `a_j` and `b_j`. These sets grow with `j`.
fn free_witnesses(space: &FiniteMetricSpace, radius: usize) -> Result<Vec<BisectorWitness>, FamilyError> {
    let mut out = Vec::new();
    for j in 0..radius {
        let v = "B".repeat(j);
        let a = format!("{v}a");
        let b = format!("{v}A");
        let claimed: Vec<usize> = space
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| {
                let w = if l.as_str() == "e" { "" } else { l.as_str() };
                if j == 0 {
                    w.starts_with('b')
                } else {
                    !w.starts_with(&v)
                }
            })
            .map(|(i, _)| i)
            .collect();
        out.push(witness(space, &a, &b, &claimed)?);
    }
    Ok(out)
}

/// `B(0 | 1+i) ⊇ {1, .., r} ∪ {i, -1+i, .., -r+i}`.
fn ladder_witnesses(space: &FiniteMetricSpace, radius: usize) -> Result<Vec<BisectorWitness>, FamilyError> {
    let r = radius as i64;
    let claimed: Vec<usize> = (1..=r)
        .map(|m| ladder_label(m, 0))
        .chain((-r..=0).map(|m| ladder_label(m, 1)))
        .filter_map(|l| space.index_of(&l))
        .collect();
    Ok(vec![witness(space, "0", "1+i", &claimed)?])
}

/// Computes `dim_1` and bisector witness chains on growing balls. This is
/// evidence about the infinite graph, not a proof.
pub fn divergence_evidence(
    family: DivergenceFamily,
    radii: &[usize],
    opts: &SolveOptions,
) -> Result<DivergenceReport, FamilyError> {
    if radii.len() < 2 || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("radii must be strictly increasing with at least two values"));
    }
    let mut evidence = Vec::with_capacity(radii.len());
    for &radius in radii {
        let spec = family.spec(radius);
        spec.validate()?;
        let (space, witnesses, mismatches) = match family {
            DivergenceFamily::GridBall { rank } => {
                let (g, coords) = grid_ball(rank, radius)?;
                let space = shortest_path_metric(&g)?;
                let n = space.len();
                let mismatches = crate::metric::pairs(n)
                    .filter(|&(i, j)| {
                        let l1: i64 = coords[i].iter().zip(&coords[j]).map(|(a, b)| (a - b).abs()).sum();
                        *space.dist(i, j) != BigRational::from_integer(l1.into())
                    })
                    .count();
                let w = grid_witnesses(&space, rank, radius, &coords)?;
                (space, w, mismatches)
            }
            DivergenceFamily::FreeBall { .. } => {
                let space = make(&spec)?.metric()?;
                let w = free_witnesses(&space, radius)?;
                (space, w, 0)
            }
            DivergenceFamily::Ladder => {
                let space = make(&spec)?.metric()?;
                let w = ladder_witnesses(&space, radius)?;
                (space, w, 0)
            }
        };
        let report = dim_exact(&space, 1, opts);
        let n = space.len();
        let covered = witnesses.iter().map(|w| w.claimed).max().unwrap_or(0);
        evidence.push(RadiusEvidence {
            radius,
            points: n,
            dim1: report.optimum,
            dim1_exact: report.is_exact(),
            covered_fraction: covered as f64 / n as f64,
            witnesses,
            boundary_mismatches: mismatches,
        });
    }
    let dims: Vec<ExtendedNat> = evidence.iter().map(|e| e.dim1).collect();
    Ok(DivergenceReport {
        family,
        dim1_non_decreasing: dims.windows(2).all(|w| w[0] <= w[1]),
        dim1_strictly_increasing: dims.windows(2).all(|w| w[0] < w[1]),
        witnesses_hold: evidence.iter().all(|e| e.witnesses.iter().all(|w| w.contained)),
        radii: evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(spec: &str) -> Graph {
        make(&spec.parse().unwrap()).unwrap().graph().unwrap().clone()
    }

    #[test]
    fn parses_specifiers() {
        assert_eq!("path:7".parse::<FamilySpec>().unwrap(), FamilySpec::Path(7));
        assert_eq!(
            "lollipop:5,4".parse::<FamilySpec>().unwrap(),
            FamilySpec::Lollipop { cycle: 5, tail: 4 }
        );
        assert_eq!("grid_ball:2,4".parse::<FamilySpec>().unwrap().to_string(), "grid-ball:2,4");
        for bad in ["path", "path:1", "cycle:2", "lollipop:6,2", "nope:3", "petersen:3", "path:x"] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
        for s in ["petersen", "free-ball:2,3", "ladder:6", "sqrt-primes:8", "interval:11"] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn counts_match_definitions() {
        let c8 = graph("cycle:8");
        assert_eq!((c8.len(), c8.edges().len()), (8, 8));
        let p = graph("petersen");
        assert_eq!((p.len(), p.edges().len()), (10, 15));
        let l = graph("lollipop:5,4");
        assert_eq!((l.len(), l.edges().len()), (8, 8));
        assert_eq!(graph("free-ball:2,1").len(), 5);
        assert_eq!(graph("free-ball:2,2").len(), 17);
        assert_eq!(graph("free-ball:2,3").len(), 53);
        assert_eq!(graph("grid-ball:2,4").len(), 41);
        assert_eq!(graph("grid-ball:3,2").len(), 25);
        assert_eq!(graph("ladder:3").len(), 14);
    }

    #[test]
    fn petersen_has_diameter_two() {
        let s = make(&FamilySpec::Petersen).unwrap().metric().unwrap();
        assert_eq!(s.diameter(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn sqrt_primes_bisectors_are_empty() {
        let s = sqrt_primes(8, DEFAULT_PRECISION).unwrap();
        for (u, v) in crate::metric::pairs(8) {
            assert!(s.bisector(u, v).unwrap().is_empty());
        }
    }

    #[test]
    fn interval_is_exact() {
        let s = interval(11).unwrap();
        assert_eq!(s.labels()[1], "1/10");
        assert_eq!(s.dist(0, 10), &BigRational::from_integer(1.into()));
    }

    #[test]
    fn cycle_bisector_shapes() {
        for n in [5, 7, 9] {
            let s = make(&FamilySpec::Cycle(n)).unwrap().metric().unwrap();
            for (u, v) in crate::metric::pairs(n) {
                assert_eq!(s.bisector(u, v).unwrap().len(), 1);
            }
        }
        for q in [3, 4, 5] {
            let n = 2 * q;
            let s = make(&FamilySpec::Cycle(n)).unwrap().metric().unwrap();
            for (u, v) in crate::metric::pairs(n) {
                let b = s.bisector(u, v).unwrap();
                if !b.is_empty() {
                    let x = b.as_slice();
                    assert_eq!(x.len(), 2);
                    assert_eq!(x[1] - x[0], q, "bisector {b} of ({u},{v}) in C{n}");
                }
            }
        }
    }

    #[test]
    fn expected_sequences() {
        let e = expected_sequence(&FamilySpec::Complete(5));
        assert_eq!(e.get(1), Some(ExtendedNat::Finite(4)));
        assert_eq!(e.get(3), Some(ExtendedNat::Infinity));
        match expected_sequence(&FamilySpec::Cycle(8)) {
            Expectation::Known(s) => assert_eq!(s.to_string(), "(2,3,4,6,7,8,inf,...)"),
            other => panic!("{other:?}"),
        }
        match expected_sequence(&FamilySpec::Path(6)) {
            Expectation::Known(s) => assert_eq!(s.to_string(), "(1,2,4,5,6,inf,...)"),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            expected_sequence(&FamilySpec::GridBall { rank: 2, radius: 4 }),
            Expectation::Unknown
        );
        let lolli = expected_sequence(&FamilySpec::Lollipop { cycle: 5, tail: 3 });
        assert_eq!(lolli.get(4), Some(ExtendedNat::Finite(5)));
        assert_eq!(lolli.get(5), None);
    }

    #[test]
    fn grid_ball_witnesses_contain_quadrants() {
        let r = divergence_evidence(
            DivergenceFamily::GridBall { rank: 2 },
            &[2, 3],
            &SolveOptions::default(),
        )
        .unwrap();
        assert!(r.witnesses_hold);
        for e in &r.radii {
            assert_eq!(e.boundary_mismatches, 0);
            assert!(!e.witnesses.is_empty());
            // nested chain: claimed sizes grow
            assert!(e.witnesses.windows(2).all(|w| w[0].claimed < w[1].claimed));
        }
    }

    #[test]
    fn bad_radii_are_rejected() {
        let opts = SolveOptions::default();
        assert!(divergence_evidence(DivergenceFamily::Ladder, &[3], &opts).is_err());
        assert!(divergence_evidence(DivergenceFamily::Ladder, &[3, 3], &opts).is_err());
    }

    #[test]
    fn ladder_truncations_are_resolved_by_two_ends() {
        // brute force is the oracle; the solver must agree
        for r in 2..=3 {
            let space = make(&FamilySpec::Ladder(r)).unwrap().metric().unwrap();
            let brute = crate::solver::dim_bruteforce(&space, 1, 16).unwrap();
            assert_eq!(brute, ExtendedNat::Finite(2), "ladder:{r}");
            assert_eq!(dim_exact(&space, 1, &SolveOptions::default()).optimum, brute);
            let ends = PointSet::new([
                space.index_of(&ladder_label(-(r as i64), 0)).unwrap(),
                space.index_of(&ladder_label(r as i64, 0)).unwrap(),
            ]);
            assert!(space.is_k_generator(&ends, 1).valid);
            let three = PointSet::new(["0", "1", "i"].map(|l| space.index_of(l).unwrap()));
            assert!(space.is_k_generator(&three, 1).valid);
        }
    }
}
