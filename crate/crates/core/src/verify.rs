//! Executable property suites for the structural theorems on k-metric
//! dimensions, run on seeded random instances and on family instances.
//!
//! Every property here is a theorem; a failure means an implementation bug.
//! Failing instances are shrunk by deleting points while the property still
//! fails, and the smallest one is reported.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::families::{make, FamilyError, FamilySpec};
use crate::graph::{check_odd_distance_bisectors, shortest_path_metric, Graph};
use crate::metric::io::SpaceDocument;
use crate::metric::{join, pairs, FiniteMetricSpace};
use crate::solver::{
    dim_bruteforce, dim_exact, dimension_sequence, greedy_upper, ExtendedNat, SolveOptions,
    DEFAULT_BRUTEFORCE_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Monotonicity,
    Truncation,
    Nesting,
    Join,
    TrivialJoin,
    Bipartite,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Monotonicity,
        Suite::Truncation,
        Suite::Nesting,
        Suite::Join,
        Suite::TrivialJoin,
        Suite::Bipartite,
        Suite::Oracle,
    ];

    /// Instance count used when none is given.
    pub fn default_cases(self) -> usize {
        match self {
            Suite::Monotonicity => 100,
            Suite::Truncation | Suite::Nesting | Suite::Join => 50,
            Suite::TrivialJoin | Suite::Bipartite => 20,
            Suite::Oracle => 200,
        }
    }

    /// Largest random instance size used when none is given.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Oracle => 12,
            Suite::Join | Suite::TrivialJoin => 5,
            _ => 8,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Monotonicity => "monotonicity",
            Suite::Truncation => "truncation",
            Suite::Nesting => "nesting",
            Suite::Join => "join",
            Suite::TrivialJoin => "trivial-join",
            Suite::Bipartite => "bipartite",
            Suite::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s.replace('_', "-"))
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Number of random instances (joins, for the join suites).
    pub random: usize,
    /// Random instance sizes are drawn from `3..=max_n`.
    pub max_n: usize,
    pub seed: u64,
    /// `(s, t)` with `s < t` for the truncation and nesting suites.
    pub truncations: Vec<(BigRational, BigRational)>,
    /// Run on this family instance instead of the built-in instance set.
    pub family: Option<FamilySpec>,
    pub solve: SolveOptions,
}

impl SuiteConfig {
    pub fn defaults(suite: Suite, seed: u64) -> Self {
        let r = |a: i64| BigRational::from_integer(BigInt::from(a));
        SuiteConfig {
            random: suite.default_cases(),
            max_n: suite.default_max_n(),
            seed,
            truncations: vec![(r(1), r(2)), (r(1), r(4)), (r(2), r(4))],
            family: None,
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub detail: String,
    pub spaces: Vec<SpaceDocument>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub property: String,
    pub cases: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl PropertyResult {
    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::ok)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Erdős–Rényi `G(n, p)` conditioned on connectivity (resampled until
/// connected; `p` creeps up after repeated failures).
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut p = p;
    loop {
        for _ in 0..64 {
            let edges: Vec<(usize, usize)> =
                pairs(n).filter(|_| rng.gen_bool(p)).collect();
            let g = Graph::from_indices(names("x", n), edges).expect("valid edge list");
            if g.bfs(0).iter().all(Option::is_some) {
                return g;
            }
        }
        p = (p + 0.1).min(1.0);
    }
}

/// Random spanning tree plus random edges across its 2-coloring.
pub fn random_bipartite_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    let mut depth = vec![0usize; n];
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        depth[v] = depth[parent] + 1;
        edges.push((parent, v));
    }
    for (u, v) in pairs(n) {
        if depth[u] % 2 != depth[v] % 2 && !edges.contains(&(u, v)) && rng.gen_bool(p) {
            edges.push((u, v));
        }
    }
    Graph::from_indices(names("b", n), edges).expect("valid edge list")
}

/// Shortest-path closure of a complete graph with random rational weights
/// `a/b`, `a ∈ 1..=8`, `b ∈ 1..=2`.
pub fn random_rational_metric<R: Rng>(rng: &mut R, n: usize) -> FiniteMetricSpace {
    let zero = BigRational::from_integer(BigInt::from(0));
    let mut d = vec![vec![zero; n]; n];
    for (u, v) in pairs(n) {
        let w = BigRational::new(BigInt::from(rng.gen_range(1..=8)), BigInt::from(rng.gen_range(1..=2)));
        d[u][v] = w.clone();
        d[v][u] = w;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][m] + &d[m][j];
                if i != j && via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::new(names("p", n), d).expect("closure is a metric")
}

/// A random graph metric or random rational metric, evenly mixed.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> FiniteMetricSpace {
    if rng.gen_bool(0.5) {
        let g = random_connected_graph(rng, n, 0.35);
        shortest_path_metric(&g).expect("connected")
    } else {
        random_rational_metric(rng, n)
    }
}

fn random_size<R: Rng>(rng: &mut R, max_n: usize) -> usize {
    rng.gen_range(3..=max_n.max(3))
}

fn with_prefix(space: &FiniteMetricSpace, prefix: &str) -> FiniteMetricSpace {
    let labels = space.labels().iter().map(|l| format!("{prefix}{l}")).collect();
    let n = space.len();
    let rows = (0..n).map(|i| (0..n).map(|j| space.dist(i, j).clone()).collect()).collect();
    FiniteMetricSpace::new(labels, rows).expect("relabelling keeps the metric")
}

/// Accumulates pass counts and the first (shrunk) counterexample.
struct Tally {
    property: String,
    cases: usize,
    passed: usize,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new(property: &str) -> Self {
        Tally { property: property.into(), cases: 0, passed: 0, counterexample: None }
    }

    /// Runs `check` on `space`; on failure, shrinks by point deletion.
    fn check_space<F>(&mut self, space: &FiniteMetricSpace, check: F)
    where
        F: Fn(&FiniteMetricSpace) -> Result<(), String>,
    {
        self.cases += 1;
        match check(space) {
            Ok(()) => self.passed += 1,
            Err(detail) if self.counterexample.is_none() => {
                let (small, detail) = shrink(space.clone(), detail, &check);
                self.counterexample =
                    Some(Counterexample { detail, spaces: vec![SpaceDocument::from_space(&small)] });
            }
            Err(_) => {}
        }
    }

    /// Like [`Tally::check_space`] for properties of two spaces; shrinks
    /// each side in turn.
    fn check_pair<F>(&mut self, a: &FiniteMetricSpace, b: &FiniteMetricSpace, check: F)
    where
        F: Fn(&FiniteMetricSpace, &FiniteMetricSpace) -> Result<(), String>,
    {
        self.cases += 1;
        match check(a, b) {
            Ok(()) => self.passed += 1,
            Err(detail) if self.counterexample.is_none() => {
                let (sa, detail) = shrink(a.clone(), detail, |x| check(x, b));
                let (sb, detail) = shrink(b.clone(), detail, |y| check(&sa, y));
                self.counterexample = Some(Counterexample {
                    detail,
                    spaces: vec![SpaceDocument::from_space(&sa), SpaceDocument::from_space(&sb)],
                });
            }
            Err(_) => {}
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            property: self.property,
            cases: self.cases,
            passed: self.passed,
            counterexample: self.counterexample,
        }
    }
}

fn shrink<F>(mut space: FiniteMetricSpace, mut detail: String, check: F) -> (FiniteMetricSpace, String)
where
    F: Fn(&FiniteMetricSpace) -> Result<(), String>,
{
    'outer: while space.len() > 2 {
        for drop in 0..space.len() {
            let keep: Vec<usize> = (0..space.len()).filter(|&i| i != drop).collect();
            let Ok(smaller) = space.subspace(&keep) else { continue };
            if let Err(d) = check(&smaller) {
                space = smaller;
                detail = d;
                continue 'outer;
            }
        }
        break;
    }
    (space, detail)
}

/// `dim_k` for every `k` in `1..=k_top`, using the sequence solver.
fn dims(space: &FiniteMetricSpace, k_top: usize, opts: &SolveOptions) -> Vec<ExtendedNat> {
    let run = dimension_sequence(space, None, opts);
    (1..=k_top)
        .map(|k| run.sequence.get(k).unwrap_or(ExtendedNat::Infinity))
        .collect()
}

fn instances(cfg: &SuiteConfig) -> Result<Vec<FiniteMetricSpace>, FamilyError> {
    if let Some(spec) = &cfg.family {
        return Ok(vec![make(spec)?.metric()?]);
    }
    let mut r = rng(cfg.seed);
    Ok((0..cfg.random)
        .map(|_| {
            let n = random_size(&mut r, cfg.max_n);
            random_space(&mut r, n)
        })
        .collect())
}

fn monotonicity(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, FamilyError> {
    let opts = &cfg.solve;
    let mut shape = Tally::new("dim_{k+1} >= dim_k + 1");
    let mut envelope = Tally::new("dim_k >= dim_1 + k - 1");
    let mut sandwich = Tally::new("k <= dim_k <= n, infinite beyond max_k");
    let mut certs = Tally::new("bases are k-generators of the optimal size");
    let mut greedy = Tally::new("greedy >= exact");
    let mut perm = Tally::new("relabelling preserves dim_k and max_k");
    let mut r = rng(cfg.seed ^ 0x5eed);
    for space in instances(cfg)? {
        let run = dimension_sequence(&space, None, opts);
        let seq = run.sequence.clone();
        shape.check_space(&space, |s| dimension_sequence(s, None, opts).sequence.check_shape());
        envelope.check_space(&space, |s| {
            let seq = dimension_sequence(s, None, opts).sequence;
            let Some(ExtendedNat::Finite(d1)) = seq.get(1) else { return Ok(()) };
            for (i, e) in seq.entries.iter().enumerate() {
                if let ExtendedNat::Finite(v) = e {
                    if *v < d1 + i as u64 {
                        return Err(format!("dim_{} = {v} < dim_1 + {i} = {}", i + 1, d1 + i as u64));
                    }
                }
            }
            Ok(())
        });
        sandwich.check_space(&space, |s| {
            let run = dimension_sequence(s, None, opts);
            let n = s.len() as u64;
            for (i, e) in run.sequence.entries.iter().enumerate() {
                let k = i as u64 + 1;
                match e {
                    ExtendedNat::Finite(v) if k <= *v && *v <= n => {}
                    other => return Err(format!("dim_{k} = {other} outside [{k}, {n}]")),
                }
            }
            if run.sequence.tail_start != Some(run.max_k + 1) {
                return Err("tail does not start at max_k + 1".into());
            }
            let beyond = dim_exact(s, run.max_k + 1, opts).optimum;
            if beyond != ExtendedNat::Infinity {
                return Err(format!("dim_{} = {beyond}, expected inf", run.max_k + 1));
            }
            Ok(())
        });
        certs.check_space(&space, |s| {
            for level in dimension_sequence(s, None, opts).levels {
                let basis = level.basis.as_ref().ok_or("missing basis")?;
                let cert = s.is_k_generator(basis, level.k);
                if !cert.valid || ExtendedNat::from(basis.len()) != level.optimum {
                    return Err(format!("basis {basis} fails for k = {}", level.k));
                }
            }
            Ok(())
        });
        greedy.check_space(&space, |s| {
            for level in dimension_sequence(s, None, opts).levels {
                let (g, _) = greedy_upper(s, level.k).ok_or("greedy infeasible")?;
                if ExtendedNat::from(g) < level.optimum {
                    return Err(format!("greedy {g} < exact {} at k = {}", level.optimum, level.k));
                }
            }
            Ok(())
        });
        let mut p: Vec<usize> = (0..space.len()).collect();
        p.shuffle(&mut r);
        let expected = seq.clone();
        perm.check_space(&space, |s| {
            if s.len() != p.len() {
                // shrunk instance: compare against its own relabelling
                let rev: Vec<usize> = (0..s.len()).rev().collect();
                let a = dimension_sequence(s, None, opts).sequence;
                let b = dimension_sequence(&s.permute(&rev), None, opts).sequence;
                return if a == b { Ok(()) } else { Err(format!("{a} vs {b}")) };
            }
            let other = s.permute(&p);
            let b = dimension_sequence(&other, None, opts).sequence;
            if b != expected || other.max_k() != s.max_k() {
                return Err(format!("{expected} vs relabelled {b}"));
            }
            Ok(())
        });
    }
    Ok(vec![shape.finish(), envelope.finish(), sandwich.finish(), certs.finish(), greedy.finish(), perm.finish()])
}

fn truncation(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, FamilyError> {
    let opts = &cfg.solve;
    let mut chain = Tally::new("dim^s_k >= dim^t_k >= dim_k");
    for space in instances(cfg)? {
        for (s, t) in &cfg.truncations {
            chain.check_space(&space, |x| {
                let n = x.len();
                let base = dims(x, n + 1, opts);
                let at_t = dims(&x.truncate(t).map_err(|e| e.to_string())?, n + 1, opts);
                let at_s = dims(&x.truncate(s).map_err(|e| e.to_string())?, n + 1, opts);
                for k in 0..=n {
                    if !(at_s[k] >= at_t[k] && at_t[k] >= base[k]) {
                        return Err(format!(
                            "k = {}: dim^{s} = {}, dim^{t} = {}, dim = {}",
                            k + 1,
                            at_s[k],
                            at_t[k],
                            base[k]
                        ));
                    }
                }
                Ok(())
            });
        }
    }
    Ok(vec![chain.finish()])
}

fn nesting(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, FamilyError> {
    let mut nest = Tally::new("B(u|v) ⊆ B^t(u|v) ⊆ B^s(u|v)");
    let mut idem = Tally::new("truncation is idempotent");
    let mut sym = Tally::new("B(u|v) = B(v|u), u,v ∉ B(u|v), B ∪ B^c = X");
    for space in instances(cfg)? {
        for (s, t) in &cfg.truncations {
            nest.check_space(&space, |x| {
                let xt = x.truncate(t).map_err(|e| e.to_string())?;
                let xs = x.truncate(s).map_err(|e| e.to_string())?;
                for (u, v) in pairs(x.len()) {
                    let b = x.bisector(u, v).map_err(|e| e.to_string())?;
                    let bt = xt.bisector(u, v).map_err(|e| e.to_string())?;
                    let bs = xs.bisector(u, v).map_err(|e| e.to_string())?;
                    if !b.is_subset(&bt) || !bt.is_subset(&bs) {
                        return Err(format!("pair ({u},{v}): {b} / {bt} / {bs}"));
                    }
                }
                Ok(())
            });
            idem.check_space(&space, |x| {
                let once = x.truncate(t).map_err(|e| e.to_string())?;
                let twice = once.truncate(t).map_err(|e| e.to_string())?;
                let n = x.len();
                let same = pairs(n).all(|(i, j)| once.dist(i, j) == twice.dist(i, j));
                if same { Ok(()) } else { Err(format!("truncation at t = {t} not idempotent")) }
            });
        }
        sym.check_space(&space, |x| {
            let n = x.len();
            for (u, v) in pairs(n) {
                let b = x.bisector(u, v).map_err(|e| e.to_string())?;
                let c = x.distinguishers(u, v).map_err(|e| e.to_string())?;
                if b != x.bisector(v, u).map_err(|e| e.to_string())?
                    || b.contains(u)
                    || b.contains(v)
                    || b.len() + c.len() != n
                    || b.union(&c).len() != n
                {
                    return Err(format!("pair ({u},{v})"));
                }
            }
            Ok(())
        });
    }
    Ok(vec![nest.finish(), idem.finish(), sym.finish()])
}

fn random_t<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(1..=6)), BigInt::from(2))
}

/// Random pairs, or the family instance joined with a copy of itself.
fn join_pairs(cfg: &SuiteConfig) -> Result<Vec<(FiniteMetricSpace, FiniteMetricSpace)>, FamilyError> {
    if let Some(spec) = &cfg.family {
        let space = make(spec)?.metric()?;
        return Ok(vec![(with_prefix(&space, "L"), with_prefix(&space, "R"))]);
    }
    let mut r = rng(cfg.seed);
    Ok(
    (0..cfg.random)
        .map(|_| {
            let (n1, n2) = (random_size(&mut r, cfg.max_n), random_size(&mut r, cfg.max_n));
            let a = with_prefix(&random_space(&mut r, n1), "L");
            let b = with_prefix(&random_space(&mut r, n2), "R");
            (a, b)
        })
        .collect())
}

fn join_inequality(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, FamilyError> {
    let opts = &cfg.solve;
    let mut ineq = Tally::new("dim_k(X1)+dim_k(X2) <= dim^t_k(X1)+dim^t_k(X2) <= dim^t_k(X1+X2)");
    let mut r = rng(cfg.seed ^ 0x701);
    for (a, b) in join_pairs(cfg)? {
        let t = random_t(&mut r);
        ineq.check_pair(&a, &b, |a, b| {
            let top = a.len() + b.len() + 1;
            let joined = join(a, b, &t).map_err(|e| e.to_string())?;
            let (da, db) = (dims(a, top, opts), dims(b, top, opts));
            let dta = dims(&a.truncate(&t).map_err(|e| e.to_string())?, top, opts);
            let dtb = dims(&b.truncate(&t).map_err(|e| e.to_string())?, top, opts);
            let dj = dims(&joined, top, opts);
            for k in 0..top {
                let lhs = da[k].saturating_add(db[k]);
                let mid = dta[k].saturating_add(dtb[k]);
                if !(lhs <= mid && mid <= dj[k]) {
                    return Err(format!("t = {t}, k = {}: {lhs} / {mid} / {}", k + 1, dj[k]));
                }
            }
            Ok(())
        });
    }
    Ok(vec![ineq.finish()])
}

fn trivial_join(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, FamilyError> {
    let opts = &cfg.solve;
    let mut eq = Tally::new("dim^t_k(X1+X2) = dim_k(X1)+dim_k(X2) when diameters < t");
    let mut r = rng(cfg.seed ^ 0x702);
    for (a, b) in join_pairs(cfg)? {
        let extra = random_t(&mut r);
        eq.check_pair(&a, &b, |a, b| {
            let t = a.diameter().max(b.diameter()) + &extra;
            let top = a.len() + b.len() + 1;
            let joined = join(a, b, &t).map_err(|e| e.to_string())?;
            let (da, db, dj) = (dims(a, top, opts), dims(b, top, opts), dims(&joined, top, opts));
            for k in 0..top {
                if dj[k] != da[k].saturating_add(db[k]) {
                    return Err(format!("t = {t}, k = {}: {} != {} + {}", k + 1, dj[k], da[k], db[k]));
                }
            }
            Ok(())
        });
    }
    Ok(vec![eq.finish()])
}

fn bipartite(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, FamilyError> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    match &cfg.family {
        Some(spec) => {
            let g = make(spec)?
                .graph()
                .cloned()
                .ok_or_else(|| FamilyError::BadFamilyParams(format!("{spec} is not a graph")))?;
            graphs.push((spec.to_string(), g));
        }
        None => {
            for spec in [FamilySpec::Cycle(8), FamilySpec::GridBall { rank: 2, radius: 3 }] {
                graphs.push((spec.to_string(), make(&spec)?.graph().cloned().expect("graph family")));
            }
            let mut r = rng(cfg.seed);
            for i in 0..cfg.random {
                let n = random_size(&mut r, cfg.max_n.max(4));
                graphs.push((format!("random-bipartite#{i}"), random_bipartite_graph(&mut r, n, 0.3)));
            }
        }
    }
    let mut odd = Tally::new("B(u|v) empty when d(u,v) is odd (bipartite graphs)");
    for (name, g) in graphs {
        odd.cases += 1;
        let report = check_odd_distance_bisectors(&g)?;
        if report.lemma_holds() {
            odd.passed += 1;
        } else if odd.counterexample.is_none() {
            let detail = if report.bipartite {
                format!("{name}: odd-distance pairs with non-empty bisectors {:?}", report.violations)
            } else {
                format!("{name}: graph is not bipartite")
            };
            let space = shortest_path_metric(&g)?;
            odd.counterexample =
                Some(Counterexample { detail, spaces: vec![SpaceDocument::from_space(&space)] });
        }
    }
    Ok(vec![odd.finish()])
}

fn oracle(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, FamilyError> {
    let opts = &cfg.solve;
    let mut eq = Tally::new("dim_exact = dim_bruteforce");
    let spaces = match &cfg.family {
        Some(_) => instances(cfg)?,
        None => {
            let mut r = rng(cfg.seed);
            (0..cfg.random)
                .map(|_| {
                    let n = random_size(&mut r, cfg.max_n.min(DEFAULT_BRUTEFORCE_CAP));
                    shortest_path_metric(&random_connected_graph(&mut r, n, 0.35)).expect("connected")
                })
                .collect()
        }
    };
    for space in spaces {
        eq.check_space(&space, |s| {
            for k in 1..=s.max_k() + 1 {
                let exact = dim_exact(s, k, opts).optimum;
                let brute = dim_bruteforce(s, k, DEFAULT_BRUTEFORCE_CAP).map_err(|e| e.to_string())?;
                if exact != brute {
                    return Err(format!("k = {k}: exact {exact}, brute force {brute}"));
                }
            }
            Ok(())
        });
    }
    Ok(vec![eq.finish()])
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport, FamilyError> {
    let properties = match suite {
        Suite::Monotonicity => monotonicity(cfg)?,
        Suite::Truncation => truncation(cfg)?,
        Suite::Nesting => nesting(cfg)?,
        Suite::Join => join_inequality(cfg)?,
        Suite::TrivialJoin => trivial_join(cfg)?,
        Suite::Bipartite => bipartite(cfg)?,
        Suite::Oracle => oracle(cfg)?,
    };
    Ok(SuiteReport { suite, seed: cfg.seed, properties })
}
