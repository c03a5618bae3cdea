//! Command-line front end: ingest graphs and metric spaces, compute k-metric
//! dimensions, and run the property suites.

mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use kmetric_core::families::make;
use kmetric_core::graph::shortest_path_metric;
use kmetric_core::metric::{io, rational};
use kmetric_core::solver::DEFAULT_BUDGET;
use kmetric_core::verify::Suite;
use kmetric_core::{FamilySpec, FiniteMetricSpace, Graph, SolveOptions};

/// Version of every JSON document this tool emits.
pub const SCHEMA: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const TIMEOUT: i32 = 3;
    pub const VIOLATION: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "kmetric", version, about = "k-metric dimensions of finite metric spaces and graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Solver budget per (space, k) in seconds [default: 60]
    #[arg(long, env = "KMETRIC_BUDGET_SECS", global = true)]
    pub budget_secs: Option<f64>,

    /// Share the branch-and-bound tree across threads
    #[arg(long, global = true)]
    pub parallel: bool,

    /// Print wall times (plain output only)
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// max_k and dim_k with basis and certificate
    Analyze(AnalyzeArgs),
    /// Full dimension sequence, compared with the closed form when known
    Sequence(SequenceArgs),
    /// Run property suites on random and family instances
    Verify(VerifyArgs),
    /// Join two spaces and compare dim_k on both sides
    Join(JoinArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Family specifier, e.g. petersen, cycle:8, lollipop:5,4
    #[arg(long)]
    pub family: Option<FamilySpec>,
    /// Edge-list file or JSON space document
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: Source,
    /// Values of k (comma separated or repeated)
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub k: Vec<usize>,
    /// Analyse the truncated metric min(d, 2t)
    #[arg(long, value_parser = positive_rational)]
    pub t: Option<BigRational>,
    /// List every bisector
    #[arg(long)]
    pub bisectors: bool,
}

#[derive(Args, Debug)]
pub struct SequenceArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Use the truncated metric min(d, 2t)
    #[arg(long, value_parser = positive_rational)]
    pub t: Option<BigRational>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: SuiteChoice,
    /// Number of random instances
    #[arg(long)]
    pub random: Option<usize>,
    /// Largest random instance
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check this family instance instead of the built-in instances
    #[arg(long)]
    pub family: Option<FamilySpec>,
    /// Smaller truncation parameter (with --t)
    #[arg(long, value_parser = positive_rational, requires = "t")]
    pub s: Option<BigRational>,
    /// Larger truncation parameter (with --s)
    #[arg(long, value_parser = positive_rational, requires = "s")]
    pub t: Option<BigRational>,
}

#[derive(Args, Debug)]
pub struct JoinArgs {
    /// Family specifiers; families come before files
    #[arg(long)]
    pub family: Vec<FamilySpec>,
    /// Edge-list files or JSON space documents
    #[arg(long)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_parser = positive_rational)]
    pub t: BigRational,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub k: Vec<usize>,
    /// Prefix labels with "L." and "R." so equal labels do not collide
    #[arg(long)]
    pub disambiguate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteChoice {
    All,
    One(Suite),
}

impl std::str::FromStr for SuiteChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            Ok(SuiteChoice::All)
        } else {
            s.parse().map(SuiteChoice::One)
        }
    }
}

impl SuiteChoice {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteChoice::All => Suite::ALL.to_vec(),
            SuiteChoice::One(s) => vec![s],
        }
    }
}

fn positive_rational(s: &str) -> Result<BigRational, String> {
    let r = rational::parse(s).map_err(|e| e.to_string())?;
    if r <= BigRational::from_integer(0.into()) {
        return Err(format!("{s} is not positive"));
    }
    Ok(r)
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or invalid input.
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub(crate) fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub(crate) fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

/// A loaded input: the metric, plus the graph and family when known.
pub struct Loaded {
    pub name: String,
    pub space: FiniteMetricSpace,
    pub graph: Option<Graph>,
    pub family: Option<FamilySpec>,
}

pub fn load_family(spec: &FamilySpec) -> Result<Loaded, CliError> {
    let obj = make(spec).map_err(input_err)?;
    let space = obj.metric().map_err(input_err)?;
    Ok(Loaded {
        name: spec.to_string(),
        space,
        graph: obj.graph().cloned(),
        family: Some(*spec),
    })
}

/// JSON documents start with `{`; anything else is read as an edge list.
pub fn load_file(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let name = path.display().to_string();
    if text.trim_start().starts_with('{') {
        let space = io::from_json(&text).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
        Ok(Loaded { name, space, graph: None, family: None })
    } else {
        let graph = Graph::parse_edge_list(&text).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
        let space = shortest_path_metric(&graph).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
        Ok(Loaded { name, space, graph: Some(graph), family: None })
    }
}

fn load(source: &Source) -> Result<Loaded, CliError> {
    match (&source.family, &source.input) {
        (Some(spec), None) => load_family(spec),
        (None, Some(path)) => load_file(path),
        _ => Err(CliError::Input("give exactly one of --family or --input".into())),
    }
}

impl Cli {
    pub fn solve_options(&self) -> Result<SolveOptions, CliError> {
        let budget = match self.budget_secs {
            None => DEFAULT_BUDGET,
            Some(s) if s.is_finite() && s >= 0.0 => Duration::from_secs_f64(s),
            Some(s) => return Err(CliError::Input(format!("invalid budget {s}"))),
        };
        Ok(SolveOptions { budget, parallel: self.parallel, lower_hint: None })
    }
}

/// Runs a parsed command, writing the report to `out`; returns the exit code.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<i32, CliError> {
    let opts = cli.solve_options()?;
    let ctx = commands::Context { format: cli.format, opts, timings: cli.timings };
    match &cli.command {
        Command::Analyze(a) => commands::analyze(&ctx, a, load(&a.source)?, out),
        Command::Sequence(a) => commands::sequence(&ctx, a, load(&a.source)?, out),
        Command::Verify(a) => commands::verify(&ctx, a, out),
        Command::Join(a) => {
            let mut sides: Vec<Loaded> = a.family.iter().map(load_family).collect::<Result<_, _>>()?;
            for path in &a.input {
                sides.push(load_file(path)?);
            }
            if sides.len() != 2 {
                return Err(CliError::Input(format!("join needs two inputs, got {}", sides.len())));
            }
            let right = sides.pop().expect("two sides");
            let left = sides.pop().expect("two sides");
            commands::join(&ctx, a, left, right, out)
        }
    }
}

/// Parses `args`, runs, and maps errors to exit codes with a message on
/// stderr.
pub fn main_with<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => exit::OK,
                _ => exit::INPUT,
            };
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kmetric: {e}");
            e.code()
        }
    }
}
