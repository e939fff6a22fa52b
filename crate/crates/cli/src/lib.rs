//! Command-line surface over the library: generators, solvers, the
//! extraction procedure, format verification, bound tables and the bench
//! harness.
//!
//! Exit codes: 0 ok, 2 usage, 3 format, 4 node budget exceeded, 1 anything
//! else (I/O and friends).

pub mod bench;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hvc::approx::approx_dense;
use hvc::bounds::gap_table;
use hvc::error::Error;
use hvc::format::{from_hvc_str, to_hvc_string, ParseError};
use hvc::generators::{pad_to_dense, random_dense, random_lwise_dense, tight_family};
use hvc::hypergraph::{KPartiteHypergraph, VertexRef};
use hvc::rational::{display, parse as parse_rational, to_f64, Rational};
use hvc::solvers::{baseline_cover, BaselineStrategy, ExactConfig};

use bench::{default_node_budget, records_to_csv, records_to_json, run_suite, SuiteConfig};
use report::{
    bounds_csv, bounds_report, extract_report, InstanceSummary, LwiseJson, SolutionReport,
    VerifyReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Argument combinations clap cannot reject on its own.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

macro_rules! usage_bail {
    ($($arg:tt)*) => {
        return Err(UsageError(format!($($arg)*)).into())
    };
}

#[derive(Parser)]
#[command(
    name = "hvc",
    about = "Vertex cover tooling for dense k-partite k-uniform hypergraphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances in the canonical text format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Pad a balanced instance to a requested density.
    Pad(PadArgs),
    /// Run the candidate extraction and emit the collection as JSON.
    Extract(ExtractArgs),
    /// Compute a vertex cover with the chosen method.
    Solve(SolveArgs),
    /// Parse a file strictly and report instance facts.
    Verify(VerifyArgs),
    /// Tabulate guarantee and hardness factors over a parameter grid.
    Bounds(BoundsArgs),
    /// Run a benchmark suite described by a JSON config.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum GenCommand {
    /// The tight family: parts of size l, edges through the first u
    /// vertices of the last part.
    Tight(GenTightArgs),
    /// Seeded uniform instance with exactly ceil(eps * prod sizes) edges.
    Random(GenRandomArgs),
    /// Seeded instance that is ell-wise eps-dense by construction.
    Lwise(GenLwiseArgs),
}

#[derive(Args)]
struct GenTightArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    u: usize,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct GenRandomArgs {
    /// Arity; must match the number of sizes.
    #[arg(long)]
    k: usize,
    /// Comma-separated part sizes, non-increasing.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Density as an exact rational, e.g. 1/2.
    #[arg(long)]
    epsilon: String,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct GenLwiseArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Size of the witness index set (the first ell parts).
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    epsilon: String,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct PadArgs {
    /// Target density as an exact rational in (0, 1).
    #[arg(long)]
    epsilon: String,
    /// Input file; `-` reads standard input.
    input: PathBuf,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct ExtractArgs {
    input: PathBuf,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Baseline for the residual step of approx-dense.
    #[arg(long, value_enum, default_value_t = BaselineArg::Exact)]
    baseline: BaselineArg,
    input: PathBuf,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    /// Also report the best ell-wise density for this subset size.
    #[arg(long)]
    ell: Option<usize>,
    /// Emit the report as JSON instead of a text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Inclusive arity range, e.g. 3..10.
    #[arg(long, value_parser = parse_range)]
    k_range: (usize, usize),
    /// Comma-separated exact rationals, e.g. 1/10,1/2,9/10.
    #[arg(long, value_delimiter = ',')]
    epsilon_grid: Vec<String>,
    /// Comma-separated subset sizes for the prior-work columns.
    #[arg(long, value_delimiter = ',', default_values_t = Vec::<usize>::new())]
    ell_grid: Vec<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct BenchArgs {
    /// Suite config (JSON).
    config: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Include wall-clock columns (off by default so reports are
    /// byte-reproducible).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct OutArg {
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    LpThreshold,
    TrivialPart,
    ApproxDense,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaselineArg {
    Exact,
    LpThreshold,
    TrivialPart,
}

impl BaselineArg {
    fn strategy(self) -> BaselineStrategy {
        match self {
            BaselineArg::Exact => BaselineStrategy::Exact,
            BaselineArg::LpThreshold => BaselineStrategy::LpThreshold,
            BaselineArg::TrivialPart => BaselineStrategy::TrivialPart,
        }
    }

    fn label(self) -> &'static str {
        match self {
            BaselineArg::Exact => "exact",
            BaselineArg::LpThreshold => "lp-threshold",
            BaselineArg::TrivialPart => "trivial-part",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `lo..hi`, got `{s}`"))?;
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message (including --help/--version,
            // which are not errors).
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e:#}");
            classify_exit(&e)
        }
    }
}

fn classify_exit(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if cause.downcast_ref::<ParseError>().is_some() {
            return EXIT_FORMAT;
        }
        if cause.downcast_ref::<UsageError>().is_some() {
            return EXIT_USAGE;
        }
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
        }
    }
    1
}

fn dispatch(cmd: Command) -> anyhow::Result<()> {
    match cmd {
        Command::Gen(g) => run_gen(g),
        Command::Pad(a) => run_pad(a),
        Command::Extract(a) => run_extract(a),
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Bounds(a) => run_bounds(a),
        Command::Bench(a) => run_bench(a),
    }
}

fn read_instance(path: &PathBuf) -> anyhow::Result<KPartiteHypergraph> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?
    };
    Ok(from_hvc_str(&text)?)
}

fn write_output(out: &OutArg, content: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn parse_eps(text: &str) -> anyhow::Result<Rational> {
    parse_rational(text).ok_or_else(|| {
        UsageError(format!("cannot parse exact rational `{text}` (use e.g. 1/2)")).into()
    })
}

fn exact_config() -> ExactConfig {
    ExactConfig {
        node_budget: default_node_budget(),
    }
}

fn run_gen(cmd: GenCommand) -> anyhow::Result<()> {
    let (h, out) = match cmd {
        GenCommand::Tight(a) => (tight_family(a.k, a.l, a.u)?, a.out),
        GenCommand::Random(a) => {
            if a.k != a.sizes.len() {
                usage_bail!("--k {} does not match {} sizes", a.k, a.sizes.len());
            }
            let eps = parse_eps(&a.epsilon)?;
            (random_dense(&a.sizes, &eps, a.seed)?, a.out)
        }
        GenCommand::Lwise(a) => {
            if a.k != a.sizes.len() {
                usage_bail!("--k {} does not match {} sizes", a.k, a.sizes.len());
            }
            let eps = parse_eps(&a.epsilon)?;
            (random_lwise_dense(&a.sizes, a.ell, &eps, a.seed)?, a.out)
        }
    };
    write_output(&out, &to_hvc_string(&h))
}

fn run_pad(a: PadArgs) -> anyhow::Result<()> {
    let h = read_instance(&a.input)?;
    let eps = parse_eps(&a.epsilon)?;
    let padded = pad_to_dense(&h, &eps)?;
    write_output(&a.out, &to_hvc_string(&padded))
}

fn run_extract(a: ExtractArgs) -> anyhow::Result<()> {
    let original = read_instance(&a.input)?;
    let (normalized, perm) = original.normalize();
    let was_normalized = original.is_normalized();
    let collection = hvc::extract::extract(&normalized)?;
    let report = extract_report(&original, &normalized, &perm, &collection, !was_normalized);
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    write_output(&a.out, &json)
}

fn run_solve(a: SolveArgs) -> anyhow::Result<()> {
    let original = read_instance(&a.input)?;
    let (normalized, perm) = original.normalize();
    let was_normalized = original.is_normalized();
    let cfg = exact_config();
    let map_back = |vs: &[VertexRef]| -> Vec<VertexRef> {
        let mut out: Vec<VertexRef> = vs
            .iter()
            .map(|&v| KPartiteHypergraph::from_normalized(&perm, v))
            .collect();
        out.sort();
        out
    };
    let report = match a.method {
        MethodArg::Exact => {
            let c = hvc::solvers::exact_cover(&normalized, &cfg)?;
            SolutionReport::for_cover(&original, &c, "exact", map_back(c.vertices()), !was_normalized)
        }
        MethodArg::TrivialPart => {
            let c = baseline_cover(&normalized, BaselineStrategy::TrivialPart, &cfg)?;
            SolutionReport::for_cover(
                &original,
                &c,
                "trivial-part",
                map_back(c.vertices()),
                !was_normalized,
            )
        }
        MethodArg::LpThreshold => {
            let x = hvc::solvers::lp_relax(&normalized);
            let c = hvc::solvers::round_threshold(&normalized, &x);
            SolutionReport::for_cover(
                &original,
                &c,
                "lp-threshold",
                map_back(c.vertices()),
                !was_normalized,
            )
            .with_lp(&x)
        }
        MethodArg::ApproxDense => {
            let r = approx_dense(&normalized, a.baseline.strategy(), &cfg)?;
            if let Some(w) = &r.warning {
                eprintln!("warning: {w}");
            }
            SolutionReport::for_cover(
                &original,
                &r.chosen,
                "approx-dense",
                map_back(r.chosen.vertices()),
                !was_normalized,
            )
            .with_approx(&r, a.baseline.label())
        }
    };
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    write_output(&a.out, &json)
}

fn run_verify(a: VerifyArgs) -> anyhow::Result<()> {
    let h = read_instance(&a.input)?;
    let lwise = a
        .ell
        .map(|ell| h.lwise_density(ell))
        .transpose()?
        .map(|(index_set, density)| LwiseJson {
            subset_size: a.ell.unwrap(),
            index_set,
            density: (&density).into(),
        });
    let report = VerifyReport {
        schema: "hvc-verify",
        version: 1,
        instance: InstanceSummary::of(&h),
        normalized: h.is_normalized(),
        balanced: h.is_balanced(),
        lwise,
        provenance: h.provenance().cloned(),
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "ok: k={} parts={:?} n={} m={} density={} ({:.6})",
            report.instance.k,
            report.instance.part_sizes,
            report.instance.n,
            report.instance.m,
            display(&h.density()),
            to_f64(&h.density()),
        );
        println!(
            "   normalized={} balanced={} sha256={}",
            report.normalized, report.balanced, report.instance.sha256
        );
        if let Some(lw) = &report.lwise {
            println!(
                "   {}-wise density {}/{} at index set {:?}",
                lw.subset_size, lw.density.num, lw.density.den, lw.index_set
            );
        }
        if let Some(p) = &report.provenance {
            println!("   provenance: {}", serde_json::to_string(p)?);
        }
    }
    Ok(())
}

fn run_bounds(a: BoundsArgs) -> anyhow::Result<()> {
    let (lo, hi) = a.k_range;
    if lo < 3 {
        usage_bail!("factor formulas require k >= 3 (got k-range starting at {lo})");
    }
    let ks: Vec<usize> = (lo..=hi).collect();
    let eps_grid: Vec<Rational> = a
        .epsilon_grid
        .iter()
        .map(|s| parse_eps(s))
        .collect::<anyhow::Result<_>>()?;
    let rows = gap_table(&ks, &eps_grid, &a.ell_grid)?;
    let content = match a.format {
        FormatArg::Csv => bounds_csv(&rows, &a.ell_grid)?,
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&bounds_report(&rows))?;
            s.push('\n');
            s
        }
    };
    write_output(&a.out, &content)
}

fn run_bench(a: BenchArgs) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(&a.config)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", a.config.display()))?;
    let config: SuiteConfig = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("bad suite config: {e}"))?;
    let records = run_suite(&config, a.timing)?;
    let content = match a.format {
        FormatArg::Csv => records_to_csv(&records)?,
        FormatArg::Json => {
            let mut s = records_to_json(&records);
            s.push('\n');
            s
        }
    };
    write_output(&a.out, &content)
}
