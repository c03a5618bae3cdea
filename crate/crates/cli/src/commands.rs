use std::io::Write;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;

use kmetric_core::families::{expected_sequence, Expectation};
use kmetric_core::metric::io::SpaceDocument;
use kmetric_core::metric::{pairs, rational};
use kmetric_core::solver::SolveStatus;
use kmetric_core::verify::{run_suite, SuiteConfig, SuiteReport};
use kmetric_core::{
    dim_exact, dimension_sequence, join as join_spaces, ExtendedNat, FiniteMetricSpace, PointSet,
    SolveOptions, SolveReport,
};

use crate::{exit, input_err, internal, AnalyzeArgs, CliError, Format, JoinArgs, Loaded, SequenceArgs, VerifyArgs, SCHEMA};

pub(crate) struct Context {
    pub format: Format,
    pub opts: SolveOptions,
    pub timings: bool,
}

fn labels(space: &FiniteMetricSpace, set: &PointSet) -> Vec<String> {
    set.iter().map(|i| space.label(i).to_string()).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn emit_json<W: Write, T: Serialize>(out: &mut W, doc: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc).map_err(internal)?;
    writeln!(out, "{text}").map_err(internal)
}

fn maybe_truncate(space: FiniteMetricSpace, t: &Option<BigRational>) -> Result<FiniteMetricSpace, CliError> {
    match t {
        Some(t) => space.truncate(t).map_err(input_err),
        None => Ok(space),
    }
}

#[derive(Serialize)]
struct Certificate {
    valid: bool,
    min_coverage: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<(String, String)>,
}

#[derive(Serialize)]
struct Level {
    k: usize,
    status: SolveStatus,
    dim_k: ExtendedNat,
    lower_bound: ExtendedNat,
    basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
    greedy: Option<u64>,
    nodes_explored: u64,
    lower_bound_trace: Vec<kmetric_core::solver::BoundTerm>,
}

impl Level {
    fn new(space: &FiniteMetricSpace, r: &SolveReport) -> Self {
        let certificate = r.basis.as_ref().map(|b| {
            let c = space.is_k_generator(b, r.k);
            Certificate {
                valid: c.valid,
                min_coverage: c.min_coverage(),
                witness: c.witness.map(|(u, v)| (space.label(u).to_string(), space.label(v).to_string())),
            }
        });
        Level {
            k: r.k,
            status: r.status,
            dim_k: r.optimum,
            lower_bound: r.lower_bound,
            basis: r.basis.as_ref().map(|b| labels(space, b)),
            certificate,
            greedy: r.greedy_value,
            nodes_explored: r.nodes_explored,
            lower_bound_trace: r.lower_bound_trace.clone(),
        }
    }

    fn plain(&self) -> String {
        let value = match self.status {
            SolveStatus::Exact => format!("dim_{} = {}", self.k, self.dim_k),
            SolveStatus::Bounded => {
                format!("dim_{} in [{}, {}] (budget exhausted)", self.k, self.lower_bound, self.dim_k)
            }
        };
        match (&self.basis, &self.certificate) {
            (Some(b), Some(c)) => format!(
                "{value}  basis {}  certificate {} (min coverage {})",
                braces(b),
                if c.valid { "valid" } else { "INVALID" },
                c.min_coverage
            ),
            _ => value,
        }
    }
}

#[derive(Serialize)]
struct BisectorRow {
    pair: (String, String),
    bisector: Vec<String>,
}

#[derive(Serialize)]
struct AnalyzeDoc {
    schema: u32,
    command: &'static str,
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<String>,
    n: usize,
    max_k: usize,
    results: Vec<Level>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bisectors: Option<Vec<BisectorRow>>,
}

pub(crate) fn analyze<W: Write>(ctx: &Context, a: &AnalyzeArgs, input: Loaded, out: &mut W) -> Result<i32, CliError> {
    if a.k.contains(&0) {
        return Err(CliError::Input("k must be positive".into()));
    }
    let space = maybe_truncate(input.space, &a.t)?;
    let start = Instant::now();
    let reports: Vec<SolveReport> = a.k.iter().map(|&k| dim_exact(&space, k, &ctx.opts)).collect();
    let elapsed = start.elapsed();
    let bisectors = a.bisectors.then(|| {
        pairs(space.len())
            .map(|(u, v)| BisectorRow {
                pair: (space.label(u).to_string(), space.label(v).to_string()),
                bisector: labels(&space, &space.bisector(u, v).expect("distinct in-range pair")),
            })
            .collect::<Vec<_>>()
    });
    let doc = AnalyzeDoc {
        schema: SCHEMA,
        command: "analyze",
        source: input.name,
        t: a.t.as_ref().map(rational::format),
        n: space.len(),
        max_k: space.max_k(),
        results: reports.iter().map(|r| Level::new(&space, r)).collect(),
        bisectors,
    };
    match ctx.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Csv => {
            writeln!(out, "k,dim_k").map_err(internal)?;
            for l in &doc.results {
                writeln!(out, "{},{}", l.k, l.dim_k).map_err(internal)?;
            }
        }
        Format::Plain => {
            let w = |out: &mut W, s: String| writeln!(out, "{s}").map_err(internal);
            w(out, format!("source: {} ({} points)", doc.source, doc.n))?;
            if let Some(t) = &doc.t {
                w(out, format!("truncated at t = {t}"))?;
            }
            w(out, format!("max_k: {}", doc.max_k))?;
            for l in &doc.results {
                w(out, l.plain())?;
            }
            if let Some(rows) = &doc.bisectors {
                for r in rows {
                    w(out, format!("B({}|{}) = {}", r.pair.0, r.pair.1, braces(&r.bisector)))?;
                }
            }
            if ctx.timings {
                w(out, format!("elapsed: {:.3}s", elapsed.as_secs_f64()))?;
            }
        }
    }
    Ok(if reports.iter().all(SolveReport::is_exact) { exit::OK } else { exit::TIMEOUT })
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "UPPERCASE")]
enum Verdict {
    Pass,
    Fail,
    /// Expected value lies inside the bounds of a timed-out level.
    Open,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Open => "OPEN",
            Verdict::Unknown => "UNKNOWN",
        };
        f.write_str(s)
    }
}

#[derive(Serialize)]
struct Comparison {
    k: usize,
    dim_k: ExtendedNat,
    lower_bound: ExtendedNat,
    expected: Option<ExtendedNat>,
    verdict: Verdict,
}

#[derive(Serialize)]
struct SequenceDoc {
    schema: u32,
    command: &'static str,
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<String>,
    n: usize,
    max_k: usize,
    sequence: Vec<ExtendedNat>,
    tail_start: Option<usize>,
    exact: bool,
    expectation: &'static str,
    comparison: Vec<Comparison>,
    verdict: Verdict,
    levels: Vec<Level>,
}

fn compare(value: ExtendedNat, lower: ExtendedNat, exact: bool, expected: Option<ExtendedNat>) -> Verdict {
    match expected {
        None => Verdict::Unknown,
        Some(e) if exact => {
            if e == value {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        Some(e) if lower <= e && e <= value => Verdict::Open,
        Some(_) => Verdict::Fail,
    }
}

pub(crate) fn sequence<W: Write>(ctx: &Context, a: &SequenceArgs, input: Loaded, out: &mut W) -> Result<i32, CliError> {
    if a.k_max == Some(0) {
        return Err(CliError::Input("k-max must be positive".into()));
    }
    let space = maybe_truncate(input.space, &a.t)?;
    let start = Instant::now();
    let run = dimension_sequence(&space, a.k_max, &ctx.opts);
    let elapsed = start.elapsed();
    // the closed forms describe the untruncated family
    let expectation = match (&input.family, &a.t) {
        (Some(spec), None) => expected_sequence(spec),
        _ => Expectation::Unknown,
    };
    let mut comparison: Vec<Comparison> = run
        .levels
        .iter()
        .map(|r| Comparison {
            k: r.k,
            dim_k: r.optimum,
            lower_bound: r.lower_bound,
            expected: expectation.get(r.k),
            verdict: compare(r.optimum, r.lower_bound, r.is_exact(), expectation.get(r.k)),
        })
        .collect();
    let reached_tail = a.k_max.is_none_or(|m| m > run.max_k);
    if reached_tail {
        let k = run.max_k + 1;
        let inf = ExtendedNat::Infinity;
        comparison.push(Comparison {
            k,
            dim_k: inf,
            lower_bound: inf,
            expected: expectation.get(k),
            verdict: compare(inf, inf, true, expectation.get(k)),
        });
    }
    let judged: Vec<Verdict> =
        comparison.iter().map(|c| c.verdict).filter(|v| *v != Verdict::Unknown).collect();
    let verdict = if judged.contains(&Verdict::Fail) {
        Verdict::Fail
    } else if judged.contains(&Verdict::Open) {
        Verdict::Open
    } else if judged.is_empty() {
        Verdict::Unknown
    } else {
        Verdict::Pass
    };
    let doc = SequenceDoc {
        schema: SCHEMA,
        command: "sequence",
        source: input.name,
        t: a.t.as_ref().map(rational::format),
        n: space.len(),
        max_k: run.max_k,
        sequence: run.sequence.entries.clone(),
        tail_start: run.sequence.tail_start,
        exact: run.is_exact(),
        expectation: match expectation {
            Expectation::Known(_) => "known",
            Expectation::Prefix { .. } => "prefix",
            Expectation::Unknown => "unknown",
        },
        comparison,
        verdict,
        levels: run.levels.iter().map(|r| Level::new(&space, r)).collect(),
    };
    let cell = |e: Option<ExtendedNat>| e.map(|v| v.to_string()).unwrap_or_default();
    match ctx.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Csv => {
            writeln!(out, "k,dim_k,expected,verdict").map_err(internal)?;
            for c in &doc.comparison {
                writeln!(out, "{},{},{},{}", c.k, c.dim_k, cell(c.expected), c.verdict).map_err(internal)?;
            }
        }
        Format::Plain => {
            let w = |out: &mut W, s: String| writeln!(out, "{s}").map_err(internal);
            w(out, format!("source: {} ({} points)", doc.source, doc.n))?;
            if let Some(t) = &doc.t {
                w(out, format!("truncated at t = {t}"))?;
            }
            w(out, format!("max_k: {}", doc.max_k))?;
            w(out, format!("sequence: {}", run.sequence))?;
            if let Some(ts) = doc.tail_start {
                w(out, format!("tail_start: {ts}"))?;
            }
            w(out, format!("{:>4}  {:>6}  {:>8}  verdict", "k", "dim_k", "expected"))?;
            for c in &doc.comparison {
                let value = if c.lower_bound == c.dim_k {
                    c.dim_k.to_string()
                } else {
                    format!("[{},{}]", c.lower_bound, c.dim_k)
                };
                let expected = c.expected.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
                w(out, format!("{:>4}  {:>6}  {:>8}  {}", c.k, value, expected, c.verdict))?;
            }
            w(out, format!("verdict: {}", doc.verdict))?;
            if ctx.timings {
                w(out, format!("elapsed: {:.3}s", elapsed.as_secs_f64()))?;
            }
        }
    }
    Ok(match doc.verdict {
        Verdict::Fail => exit::VIOLATION,
        _ if !doc.exact => exit::TIMEOUT,
        _ => exit::OK,
    })
}

#[derive(Serialize)]
struct VerifyDoc {
    schema: u32,
    command: &'static str,
    seed: u64,
    passed: bool,
    suites: Vec<SuiteReport>,
}

pub(crate) fn verify<W: Write>(ctx: &Context, a: &VerifyArgs, out: &mut W) -> Result<i32, CliError> {
    if let (Some(s), Some(t)) = (&a.s, &a.t) {
        if s >= t {
            return Err(CliError::Input("--s must be smaller than --t".into()));
        }
    }
    if a.n.is_some_and(|n| n < 3) {
        return Err(CliError::Input("--n must be at least 3".into()));
    }
    let start = Instant::now();
    let mut suites = Vec::new();
    for suite in a.suite.suites() {
        let mut cfg = SuiteConfig::defaults(suite, a.seed);
        cfg.solve = ctx.opts.clone();
        cfg.family = a.family;
        if let Some(r) = a.random {
            cfg.random = r;
        }
        if let Some(n) = a.n {
            cfg.max_n = n;
        }
        if let (Some(s), Some(t)) = (&a.s, &a.t) {
            cfg.truncations = vec![(s.clone(), t.clone())];
        }
        suites.push(run_suite(suite, &cfg).map_err(input_err)?);
    }
    let elapsed = start.elapsed();
    let doc = VerifyDoc {
        schema: SCHEMA,
        command: "verify",
        seed: a.seed,
        passed: suites.iter().all(SuiteReport::passed),
        suites,
    };
    match ctx.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Csv => {
            writeln!(out, "suite,property,cases,passed").map_err(internal)?;
            for s in &doc.suites {
                for p in &s.properties {
                    writeln!(out, "{},\"{}\",{},{}", s.suite, p.property, p.cases, p.passed).map_err(internal)?;
                }
            }
        }
        Format::Plain => {
            for s in &doc.suites {
                for p in &s.properties {
                    let tag = if p.ok() { "PASS" } else { "FAIL" };
                    writeln!(out, "[{tag}] {}: {}  {}/{}", s.suite, p.property, p.passed, p.cases)
                        .map_err(internal)?;
                    if let Some(c) = &p.counterexample {
                        writeln!(out, "  counterexample: {}", c.detail).map_err(internal)?;
                        let text = serde_json::to_string_pretty(&c.spaces).map_err(internal)?;
                        writeln!(out, "{text}").map_err(internal)?;
                    }
                }
            }
            writeln!(out, "{}", if doc.passed { "all properties hold" } else { "PROPERTY VIOLATION" })
                .map_err(internal)?;
            if ctx.timings {
                writeln!(out, "elapsed: {:.3}s", elapsed.as_secs_f64()).map_err(internal)?;
            }
        }
    }
    Ok(if doc.passed { exit::OK } else { exit::VIOLATION })
}

#[derive(Serialize)]
struct Side {
    source: String,
    n: usize,
    diameter: String,
}

#[derive(Serialize)]
struct JoinRow {
    k: usize,
    left: ExtendedNat,
    right: ExtendedNat,
    left_t: ExtendedNat,
    right_t: ExtendedNat,
    sum: ExtendedNat,
    sum_t: ExtendedNat,
    join: ExtendedNat,
    /// How `sum` compares with `join`.
    relation: &'static str,
    exact: bool,
}

#[derive(Serialize)]
struct JoinDoc {
    schema: u32,
    command: &'static str,
    t: String,
    left: Side,
    right: Side,
    /// Both diameters are below `t`, where `join = sum` must hold.
    trivial_case: bool,
    table: Vec<JoinRow>,
    space: SpaceDocument,
}

fn prefixed(space: FiniteMetricSpace, prefix: &str) -> Result<FiniteMetricSpace, CliError> {
    let n = space.len();
    let rows = (0..n).map(|i| (0..n).map(|j| space.dist(i, j).clone()).collect()).collect();
    let labels = space.labels().iter().map(|l| format!("{prefix}{l}")).collect();
    FiniteMetricSpace::new(labels, rows).map_err(internal)
}

pub(crate) fn join<W: Write>(
    ctx: &Context,
    a: &JoinArgs,
    left: Loaded,
    right: Loaded,
    out: &mut W,
) -> Result<i32, CliError> {
    if a.k.contains(&0) {
        return Err(CliError::Input("k must be positive".into()));
    }
    let (x1, x2) = if a.disambiguate {
        (prefixed(left.space, "L.")?, prefixed(right.space, "R.")?)
    } else {
        (left.space, right.space)
    };
    let t = &a.t;
    let joined = join_spaces(&x1, &x2, t).map_err(input_err)?;
    let (t1, t2) = (x1.truncate(t).map_err(input_err)?, x2.truncate(t).map_err(input_err)?);
    let start = Instant::now();
    let mut all_exact = true;
    let mut violated = false;
    let mut table = Vec::new();
    for &k in &a.k {
        let mut solve = |s: &FiniteMetricSpace| {
            let r = dim_exact(s, k, &ctx.opts);
            all_exact &= r.is_exact();
            (r.optimum, r.is_exact())
        };
        let results = [solve(&x1), solve(&x2), solve(&t1), solve(&t2), solve(&joined)];
        let exact = results.iter().all(|r| r.1);
        let [l, r, lt, rt, j] = results.map(|r| r.0);
        let (sum, sum_t) = (l.saturating_add(r), lt.saturating_add(rt));
        if exact && !(sum <= sum_t && sum_t <= j) {
            violated = true;
        }
        let relation = match sum.cmp(&j) {
            std::cmp::Ordering::Less => "<",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Greater => ">",
        };
        table.push(JoinRow { k, left: l, right: r, left_t: lt, right_t: rt, sum, sum_t, join: j, relation, exact });
    }
    let elapsed = start.elapsed();
    let trivial_case = x1.diameter() < *t && x2.diameter() < *t;
    if trivial_case && table.iter().any(|r| r.exact && r.sum != r.join) {
        violated = true;
    }
    let side = |name: String, s: &FiniteMetricSpace| Side {
        source: name,
        n: s.len(),
        diameter: rational::format(&s.diameter()),
    };
    let doc = JoinDoc {
        schema: SCHEMA,
        command: "join",
        t: rational::format(t),
        left: side(left.name, &x1),
        right: side(right.name, &x2),
        trivial_case,
        table,
        space: SpaceDocument::from_space(&joined),
    };
    match ctx.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Csv => {
            writeln!(out, "k,left,right,left_t,right_t,sum,sum_t,join,relation").map_err(internal)?;
            for r in &doc.table {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.k, r.left, r.right, r.left_t, r.right_t, r.sum, r.sum_t, r.join, r.relation
                )
                .map_err(internal)?;
            }
        }
        Format::Plain => {
            let w = |out: &mut W, s: String| writeln!(out, "{s}").map_err(internal);
            w(out, format!("join of {} ({} points) and {} ({} points), t = {}", doc.left.source, doc.left.n, doc.right.source, doc.right.n, doc.t))?;
            if doc.trivial_case {
                w(out, "both diameters are below t".into())?;
            }
            w(out, format!("{:>3}  {:>9}  {:>11}  {:>4}", "k", "dim_k sum", "dim^t_k sum", "join"))?;
            for r in &doc.table {
                w(out, format!("{:>3}  {:>9}  {:>11}  {:>4}   sum {} join", r.k, r.sum, r.sum_t, r.join, r.relation))?;
            }
            w(out, "joined space:".into())?;
            w(out, serde_json::to_string_pretty(&doc.space).map_err(internal)?)?;
            if ctx.timings {
                w(out, format!("elapsed: {:.3}s", elapsed.as_secs_f64()))?;
            }
        }
    }
    Ok(if violated {
        exit::VIOLATION
    } else if all_exact {
        exit::OK
    } else {
        exit::TIMEOUT
    })
}
