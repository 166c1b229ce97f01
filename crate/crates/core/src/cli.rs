//! The `twocst` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad input
//! (usage, parse or I/O), 3 a solver or generator precondition failed.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{parse_rational, Rational, WeightedInstance};
use crate::io::{format_instance, load_instance, parse_instance};
use crate::lab::{generate, qi_table, region_scan, GeneratorSpec};
use crate::run::{check_budget, env_memory_limit, run_algorithm, Algorithm, AlgorithmReport};
use crate::suites::{self, SuiteReport};

// Standard output writes that treat a closed pipe as success.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Debug, Parser)]
#[command(name = "twocst", version, about = "Optimal two-way comparison search trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance file and print the optimal cost.
    Solve(SolveArgs),
    /// Run a verification suite and print a JSON summary.
    Verify(VerifyArgs),
    /// Write the quadrangle-inequality table of an instance as CSV and PGM.
    Qi(QiArgs),
    /// Run algorithms over a grid of instances and print CSV.
    Bench(BenchArgs),
    /// Print a generated instance in the text instance format.
    Generate(GenerateArgs),
    /// Classify optimal roots over a grid of (alpha, beta) and print CSV.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance file: one weight per line, or a JSON array.
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Full)]
    pub alg: Algorithm,
    /// Weight bound for bounded-const (default: the largest weight).
    #[arg(long)]
    pub r: Option<u64>,
    /// Write the optimal tree as JSON.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Write the optimal tree as Graphviz DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Omit wall-clock time so output is byte-reproducible.
    #[arg(long)]
    pub no_time: bool,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub suite: Suite,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Exact values of every known counter-example.
    Counterexamples,
    /// Threshold implications on random instances and tightness witnesses.
    Thresholds {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Exact solvers against brute force on random instances.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cases: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Cost identity and minimizer relations on the (1, 3) pattern.
    PatternClaims {
        #[arg(long)]
        p: u32,
    },
    /// Root types and chain cost on truncated geometric instances.
    Geometric {
        #[arg(long, default_value_t = 25)]
        n: usize,
    },
}

/// Where instances come from. Exactly one source must be given.
#[derive(Debug, Args, Default)]
pub struct SourceArgs {
    /// Instance file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Inline weights, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<String>>,
    /// Repeating cycle of weights, comma separated; needs --n.
    #[arg(long, value_delimiter = ',')]
    pub pattern: Option<Vec<u64>>,
    /// Ratio gamma of a truncated geometric sequence; needs --n.
    #[arg(long)]
    pub geometric: Option<String>,
    /// Uniform random weights; needs --seed, --range and --n.
    #[arg(long)]
    pub random: bool,
    /// Hard instances of the given sizes (multiples of 7).
    #[arg(long, value_delimiter = ',')]
    pub hard: Option<Vec<usize>>,
    /// 2^s ones, one key of weight V, 2^s ones: `V,s`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub heavy_mid: Option<Vec<u64>>,
    /// Number of keys; a comma-separated list gives one instance per size.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Inclusive weight range `lo,hi` for --random.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub range: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct QiArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Output prefix; `<out>.csv` and `<out>.pgm` are written.
    #[arg(long, default_value = "qi")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "full")]
    pub alg: Vec<Algorithm>,
    /// Weight bound for bounded-const.
    #[arg(long)]
    pub r: Option<u64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave the wall_us column empty.
    #[arg(long)]
    pub no_time: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Tight four-key instance `alpha,beta,eps`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub tight4: Option<Vec<String>>,
    /// Tight eight-key instance `alpha,beta`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub tight8: Option<Vec<String>>,
    /// Print a JSON array instead of the text format.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 12)]
    pub steps: u64,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
}

enum Failure {
    Check,
    Err(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Err(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::NegativeWeight { .. } | Error::Io(_) | Error::Json(_) | Error::EmptyInstance => 2,
        _ => 3,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Err(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

fn dispatch(cmd: Command) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Solve(a) => solve(a)?,
        Command::Verify(a) => return verify(a),
        Command::Qi(a) => qi(a)?,
        Command::Bench(a) => bench(a)?,
        Command::Generate(a) => generate_cmd(a)?,
        Command::Scan(a) => scan(a)?,
    }
    Ok(())
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s.trim()).map_err(|msg| Error::Parse { line: 0, msg: format!("{s:?}: {msg}") })
}

fn single_n(n: &Option<Vec<usize>>, flag: &str) -> Result<Vec<usize>> {
    match n {
        Some(v) if !v.is_empty() => Ok(v.clone()),
        _ => Err(Error::InvalidParameter(format!("{flag} needs --n"))),
    }
}

impl SourceArgs {
    /// All instances named by the flags, labelled, in argument order.
    pub fn instances(&self) -> Result<Vec<(String, WeightedInstance)>> {
        let given = [
            self.file.is_some(),
            self.weights.is_some(),
            self.pattern.is_some(),
            self.geometric.is_some(),
            self.random,
            self.hard.is_some(),
            self.heavy_mid.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if given != 1 {
            return Err(Error::InvalidParameter(
                "give exactly one of --file, --weights, --pattern, --geometric, --random, --hard, --heavy-mid".into(),
            ));
        }
        if let Some(path) = &self.file {
            return Ok(vec![(path.display().to_string(), load_instance(path)?)]);
        }
        if let Some(w) = &self.weights {
            return Ok(vec![(format!("weights-{}", w.join("_")), parse_instance(&w.join("\n"))?)]);
        }
        let specs: Vec<GeneratorSpec> = if let Some(cycle) = &self.pattern {
            single_n(&self.n, "--pattern")?
                .into_iter()
                .map(|n| GeneratorSpec::Pattern { cycle: cycle.clone(), n })
                .collect()
        } else if let Some(g) = &self.geometric {
            let gamma = rational(g)?;
            single_n(&self.n, "--geometric")?
                .into_iter()
                .map(|n| GeneratorSpec::Geometric { gamma: gamma.clone(), n })
                .collect()
        } else if self.random {
            let seed = self.seed.ok_or_else(|| Error::InvalidParameter("--random needs --seed".into()))?;
            let (lo, hi) = match self.range.as_deref() {
                Some(&[lo, hi]) => (lo, hi),
                _ => return Err(Error::InvalidParameter("--random needs --range lo,hi".into())),
            };
            single_n(&self.n, "--random")?.into_iter().map(|n| GeneratorSpec::Random { seed, lo, hi, n }).collect()
        } else if let Some(sizes) = &self.hard {
            sizes.iter().map(|&n| GeneratorSpec::hard(n)).collect()
        } else {
            match self.heavy_mid.as_deref() {
                Some(&[v, s]) => vec![GeneratorSpec::HeavyMid { v, s: s as u32 }],
                _ => return Err(Error::InvalidParameter("--heavy-mid takes V,s".into())),
            }
        };
        specs.iter().map(|s| Ok((s.label(), generate(s)?))).collect()
    }

    fn one(&self) -> Result<(String, WeightedInstance)> {
        let mut all = self.instances()?;
        if all.len() != 1 {
            return Err(Error::InvalidParameter(format!("expected one instance, the flags name {}", all.len())));
        }
        Ok(all.remove(0))
    }
}

fn solve(a: SolveArgs) -> Result<()> {
    let inst = load_instance(&a.file)?;
    check_budget(a.alg, inst.n(), env_memory_limit()?)?;
    let rep = run_algorithm(&inst, a.alg, a.r)?;
    if let Some(tree) = &rep.tree {
        if let Some(path) = &a.tree {
            std::fs::write(path, serde_json::to_string_pretty(tree)?)?;
        }
        if let Some(path) = &a.dot {
            std::fs::write(path, tree.to_dot())?;
        }
    } else if a.tree.is_some() || a.dot.is_some() {
        return Err(Error::InvalidParameter(format!("{} builds no two-way tree to export", a.alg)));
    }
    if a.json {
        let mut v = serde_json::to_value(&rep)?;
        if !a.no_time {
            v["wall_us"] = serde_json::Value::from(rep.wall.as_micros() as u64);
        }
        outln!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        out!("{}", solve_text(&rep, a.no_time));
    }
    Ok(())
}

fn solve_text(rep: &AlgorithmReport, no_time: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algorithm: {}", rep.algorithm);
    let _ = writeln!(s, "n: {}", rep.n);
    let _ = writeln!(s, "scale: {}", rep.scale);
    let _ = writeln!(s, "cost: {}", rep.cost);
    let _ = writeln!(s, "root: {}", rep.root.map_or("n/a".to_string(), |r| r.to_string()));
    let st = &rep.stats;
    let _ = writeln!(s, "subproblems_evaluated: {}", st.subproblems_evaluated);
    let _ = writeln!(s, "cutpoints_scanned: {}", st.cutpoints_scanned);
    let _ = writeln!(s, "eq_prunes: {}", st.eq_prunes);
    let _ = writeln!(s, "lt_prunes: {}", st.lt_prunes);
    let _ = writeln!(s, "max_holes: {}", st.max_holes);
    if !no_time {
        let _ = writeln!(s, "wall_us: {}", rep.wall.as_micros());
    }
    s
}

fn verify(a: VerifyArgs) -> std::result::Result<(), Failure> {
    let report: SuiteReport = match a.suite {
        Suite::Counterexamples => suites::counterexamples()?,
        Suite::Thresholds { n, cases, seed } => suites::thresholds(n, cases, seed)?,
        Suite::Oracle { n, cases, seed } => suites::oracle(n, cases, seed)?,
        Suite::PatternClaims { p } => suites::pattern_claims(p)?,
        Suite::Geometric { n } => suites::geometric(n)?,
    };
    outln!("{}", serde_json::to_string_pretty(&report).map_err(Error::from)?);
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn qi(a: QiArgs) -> Result<()> {
    let (label, inst) = a.source.one()?;
    let table = qi_table(&inst)?;
    let with_ext = |ext: &str| {
        let mut p = a.out.clone().into_os_string();
        p.push(ext);
        PathBuf::from(p)
    };
    let (csv, pgm) = (with_ext(".csv"), with_ext(".pgm"));
    std::fs::write(&csv, table.to_csv())?;
    std::fs::write(&pgm, table.to_pgm())?;
    outln!(
        "{label}: n={} red={} gray={} -> {} {}",
        table.n,
        table.red_count(),
        table.gray_count(),
        csv.display(),
        pgm.display()
    );
    Ok(())
}

/// Column order of `twocst bench`.
pub const BENCH_HEADER: &str = "instance,n,algorithm,cost,scale,subproblems_evaluated,cutpoints_scanned,\
eq_prunes,lt_prunes,max_holes,root,wall_us,error";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn bench_row(
    label: &str,
    inst: &WeightedInstance,
    alg: Algorithm,
    r: Option<u64>,
    limit: Option<u64>,
    no_time: bool,
) -> String {
    let run = check_budget(alg, inst.n(), limit).and_then(|()| run_algorithm(inst, alg, r));
    let label = csv_field(label);
    match run {
        Ok(rep) => {
            let st = rep.stats;
            let wall = if no_time { String::new() } else { rep.wall.as_micros().to_string() };
            let root = rep.root.map_or(String::new(), |k| k.to_string());
            format!(
                "{label},{},{alg},{},{},{},{},{},{},{},{root},{wall},",
                rep.n,
                rep.cost,
                rep.scale,
                st.subproblems_evaluated,
                st.cutpoints_scanned,
                st.eq_prunes,
                st.lt_prunes,
                st.max_holes
            )
        }
        Err(e) => format!("{label},{},{alg},,{},,,,,,,,{}", inst.n(), inst.scale(), csv_field(&e.to_string())),
    }
}

fn bench(a: BenchArgs) -> Result<()> {
    let instances = a.source.instances()?;
    let limit = env_memory_limit()?;
    let jobs: Vec<(usize, Algorithm)> =
        (0..instances.len()).flat_map(|i| a.alg.iter().map(move |&alg| (i, alg))).collect();
    let rows: Vec<String> = jobs
        .par_iter()
        .map(|&(i, alg)| bench_row(&instances[i].0, &instances[i].1, alg, a.r, limit, a.no_time))
        .collect();
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    match &a.out {
        Some(p) => std::fs::write(p, out)?,
        None => out!("{out}"),
    }
    Ok(())
}

fn generate_cmd(a: GenerateArgs) -> Result<()> {
    let tight = |v: &[String]| v.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>();
    let inst = match (&a.tight4, &a.tight8) {
        (Some(v), None) => match tight(v)?.as_slice() {
            [alpha, beta, eps] => {
                generate(&GeneratorSpec::Tight4 { alpha: alpha.clone(), beta: beta.clone(), eps: eps.clone() })?
            }
            _ => return Err(Error::InvalidParameter("--tight4 takes alpha,beta,eps".into())),
        },
        (None, Some(v)) => match tight(v)?.as_slice() {
            [alpha, beta] => generate(&GeneratorSpec::Tight8 { alpha: alpha.clone(), beta: beta.clone() })?,
            _ => return Err(Error::InvalidParameter("--tight8 takes alpha,beta".into())),
        },
        (None, None) => a.source.one()?.1,
        _ => return Err(Error::InvalidParameter("give at most one of --tight4, --tight8".into())),
    };
    if a.json {
        let w: Vec<String> = inst.weights().iter().map(ToString::to_string).collect();
        outln!("[{}]", w.join(","));
    } else {
        out!("{}", format_instance(&inst));
    }
    Ok(())
}

fn scan(a: ScanArgs) -> Result<()> {
    let cells = region_scan(a.n, a.steps, a.samples, a.seed)?;
    let mut out = String::from("alpha_steps,beta_steps,steps,instances,eq_root,eq_eq_prefix\n");
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            c.alpha_steps, c.beta_steps, a.steps, c.instances, c.eq_root, c.eq_eq_prefix
        );
    }
    out!("{out}");
    Ok(())
}
