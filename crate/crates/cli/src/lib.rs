//! Command-line front end: compare distributions, run axiom suites, emit
//! region scans, answer graded entailment queries, compare density
//! matrices, and ingest co-occurrence counts.
//!
//! Exit codes: 0 success (incomparability is a result, not an error),
//! 1 usage error, 2 validation error, 3 axiom-suite violations.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use simplex_orders::density::{lift_compare, CMatrix, DensityMatrix, DEFAULT_MATRIX_TOL};
use simplex_orders::suite::{
    check_information_ordering, region_scan, sample, Relation, SampleConfig, SampleStrategy,
    ScanGrid,
};
use simplex_orders::{
    graded_leq, graded_sup_p, Distribution, OrderSpec, RestrictedParams, DEFAULT_VALIDATION_TOL,
};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_VIOLATIONS: i32 = 3;

#[derive(Parser)]
#[command(
    name = "simplex-orders",
    version,
    about = "Information orderings on probability distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two distributions under an order
    Compare(CompareArgs),
    /// Graded entailment queries
    Entail(EntailArgs),
    /// Run the axiom suite and write a report
    Check(CheckArgs),
    /// Classify a barycentric grid against a base point
    Scan(ScanArgs),
    /// Compare two density matrices by lifting a simplex order
    Lift(LiftArgs),
    /// Normalize co-occurrence count rows into distributions
    Ingest(IngestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderKind {
    Bayesian,
    LownerPlus,
    LownerMinus,
    Restricted,
    Majorization,
}

#[derive(Args)]
struct OrderOpts {
    /// Which order to use
    #[arg(long, value_enum)]
    order: OrderKind,
    /// JSON file with restricted-order parameters (restricted only;
    /// defaults to all zeros, the Bayesian order)
    #[arg(long)]
    params: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    order: OrderOpts,
    /// First distribution, comma-separated decimals
    #[arg(long)]
    x: String,
    /// Second distribution, comma-separated decimals
    #[arg(long)]
    y: Option<String>,
    /// Validation tolerance for distribution entries
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("query").required(true).args(["p", "max_p"])))]
struct EntailArgs {
    #[command(flatten)]
    order: OrderOpts,
    /// Entailment strength in [0, 1]
    #[arg(long)]
    p: Option<f64>,
    /// Report the supremal p instead (bisection to 1e-6)
    #[arg(long)]
    max_p: bool,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("pool").required(true).args(["grid", "random"])))]
struct CheckArgs {
    #[command(flatten)]
    order: OrderOpts,
    /// Dimension of the simplex
    #[arg(long)]
    n: usize,
    /// Full grid with this denominator
    #[arg(long)]
    grid: Option<u32>,
    /// Random pool of this many samples
    #[arg(long, requires = "seed")]
    random: Option<usize>,
    /// Seed for the random pool
    #[arg(long)]
    seed: Option<u64>,
    /// Include the boundary of the simplex in grid pools
    #[arg(long)]
    boundary: bool,
    /// Where to write the JSON report
    #[arg(long)]
    report: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanFormat {
    Csv,
    Svg,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    order: OrderOpts,
    /// Base distribution on the 3-simplex, comma-separated
    #[arg(long)]
    base: String,
    /// Grid subdivisions per edge
    #[arg(long)]
    resolution: u32,
    #[arg(long, value_enum)]
    format: ScanFormat,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct LiftArgs {
    #[command(flatten)]
    order: OrderOpts,
    /// JSON file holding the first density matrix
    #[arg(long)]
    rho: PathBuf,
    /// JSON file holding the second density matrix
    #[arg(long)]
    pi: PathBuf,
    /// Matrix validation and commutation tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct IngestArgs {
    /// Tab-separated rows: word, then nonnegative counts
    #[arg(long)]
    counts: PathBuf,
    /// Output path, one JSON object per word
    #[arg(long)]
    out: PathBuf,
}

/// A failure carrying the exit code to report.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<simplex_orders::Error> for Failure {
    fn from(e: simplex_orders::Error) -> Failure {
        Failure::validation(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::validation(e.to_string())
    }
}

/// Parses the argument list and runs the selected subcommand, returning
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Compare(args) => cmd_compare(args),
        Command::Entail(args) => cmd_entail(args),
        Command::Check(args) => cmd_check(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Lift(args) => cmd_lift(args),
        Command::Ingest(args) => cmd_ingest(args),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn parse_distribution(text: &str, tol: f64) -> Result<Distribution, Failure> {
    let values = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Failure::validation(format!("cannot parse {part:?} as a number")))
        })
        .collect::<Result<Vec<f64>, Failure>>()?;
    Ok(Distribution::new(&values, tol)?)
}

fn build_spec(opts: &OrderOpts, n: usize) -> Result<OrderSpec, Failure> {
    if opts.order != OrderKind::Restricted && opts.params.is_some() {
        return Err(Failure::validation(
            "--params only applies to --order restricted",
        ));
    }
    let spec = match opts.order {
        OrderKind::Bayesian => OrderSpec::Bayesian,
        OrderKind::LownerPlus => OrderSpec::LownerPlus,
        OrderKind::LownerMinus => OrderSpec::LownerMinus,
        OrderKind::Majorization => OrderSpec::Majorization,
        OrderKind::Restricted => {
            let params = match &opts.params {
                None => RestrictedParams::zeros(n),
                Some(path) => {
                    let text = fs::read_to_string(path)?;
                    let mut params: RestrictedParams = serde_json::from_str(&text)
                        .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
                    params.fill_missing();
                    params.check_shape()?;
                    if params.dim() != n {
                        return Err(Failure::validation(format!(
                            "parameter file is for dimension {}, data has dimension {n}",
                            params.dim()
                        )));
                    }
                    params
                }
            };
            OrderSpec::Restricted(params)
        }
    };
    spec.validate_for(n)?;
    Ok(spec)
}

fn cmd_compare(args: CompareArgs) -> Result<i32, Failure> {
    let tol = args.tol.unwrap_or(DEFAULT_VALIDATION_TOL);
    // x is validated before the presence of y so a malformed x is
    // reported as a validation error, not a usage one
    let x = parse_distribution(&args.x, tol)?;
    let y_text = args.y.ok_or(Failure {
        code: EXIT_USAGE,
        message: "--y is required".into(),
    })?;
    let y = parse_distribution(&y_text, tol)?;
    let spec = build_spec(&args.order, x.dim())?;
    let result = spec.compare(&x, &y)?;
    println!("{result}");
    Ok(EXIT_OK)
}

fn cmd_entail(args: EntailArgs) -> Result<i32, Failure> {
    let tol = args.tol.unwrap_or(DEFAULT_VALIDATION_TOL);
    let x = parse_distribution(&args.x, tol)?;
    let y = parse_distribution(&args.y, tol)?;
    let spec = build_spec(&args.order, x.dim())?;
    if args.max_p {
        match graded_sup_p(&spec, &x, &y)? {
            Some(p) => println!("max-p {p:.6}"),
            None => println!("max-p none"),
        }
        return Ok(EXIT_OK);
    }
    let p = args
        .p
        .ok_or_else(|| Failure::validation("one of --p or --max-p is required"))?;
    if graded_leq(&spec, p, &x, &y)? {
        println!("entails@{p}");
    } else {
        println!("no-entailment@{p}");
    }
    Ok(EXIT_OK)
}

fn cmd_check(args: CheckArgs) -> Result<i32, Failure> {
    let strategy = match (args.grid, args.random) {
        (Some(0), None) => {
            return Err(Failure::validation("--grid must be at least 1"));
        }
        (Some(denominator), None) => SampleStrategy::Grid { denominator },
        (None, Some(0)) => {
            return Err(Failure::validation("--random must be at least 1"));
        }
        (None, Some(count)) => SampleStrategy::Random {
            count,
            seed: args.seed.unwrap_or(0),
        },
        _ => return Err(Failure::validation("choose exactly one of --grid or --random")),
    };
    if args.n == 0 {
        return Err(Failure::validation("--n must be at least 1"));
    }
    let config = SampleConfig {
        n: args.n,
        strategy,
        include_boundary: args.boundary,
    };
    let spec = build_spec(&args.order, args.n)?;
    let samples = sample(&config);
    if samples.is_empty() {
        return Err(Failure::validation(
            "the configured pool is empty; lower --n or raise --grid, or pass --boundary",
        ));
    }
    let mut report = check_information_ordering(&spec, &samples)?;
    report.seed = match config.strategy {
        SampleStrategy::Random { seed, .. } => Some(seed),
        SampleStrategy::Grid { .. } => None,
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::validation(e.to_string()))?;
    fs::write(&args.report, json.as_bytes())?;
    for check in &report.checks {
        println!(
            "{} {} (checked {}, violations {})",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.checked,
            check.violation_count
        );
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    })
}

fn cmd_scan(args: ScanArgs) -> Result<i32, Failure> {
    let tol = args.tol.unwrap_or(DEFAULT_VALIDATION_TOL);
    let base = parse_distribution(&args.base, tol)?;
    let spec = build_spec(&args.order, base.dim())?;
    let scan = region_scan(&spec, &base, args.resolution)?;
    let rendered = match args.format {
        ScanFormat::Csv => scan_to_csv(&scan),
        ScanFormat::Svg => scan_to_svg(&scan),
    };
    fs::write(&args.out, rendered.as_bytes())?;
    Ok(EXIT_OK)
}

fn scan_to_csv(scan: &ScanGrid) -> String {
    let mut out = String::from("a,b,c,relation\n");
    for cell in &scan.cells {
        let _ = writeln!(out, "{},{},{},{}", cell.a, cell.b, cell.c, cell.relation);
    }
    out
}

/// Renders the scan as a ternary plot: first coordinate at the top
/// vertex, second at the lower left, third at the lower right. Upperset
/// cells are red, downset cells blue, the base cell green, incomparable
/// cells white.
fn scan_to_svg(scan: &ScanGrid) -> String {
    let side = 720.0;
    let margin = 40.0;
    let height = side * 3f64.sqrt() / 2.0;
    let (w, h) = (side + 2.0 * margin, height + 2.0 * margin);
    let top = (margin + side / 2.0, margin);
    let left = (margin, margin + height);
    let right = (margin + side, margin + height);
    let radius = 0.62 * side / scan.resolution as f64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg version="1.1" width="{w:.0}" height="{h:.0}" xmlns="http://www.w3.org/2000/svg">"#
    );
    let _ = writeln!(
        out,
        "<desc>base {:?} resolution {}</desc>",
        scan.base, scan.resolution
    );
    let _ = writeln!(
        out,
        r#"<rect width="{w:.0}" height="{h:.0}" fill="white"/>"#
    );
    for cell in &scan.cells {
        let x = cell.a * top.0 + cell.b * left.0 + cell.c * right.0;
        let y = cell.a * top.1 + cell.b * left.1 + cell.c * right.1;
        let fill = match cell.relation {
            Relation::Up => "#d64541",
            Relation::Down => "#4169e1",
            Relation::Equal => "#2e8b57",
            Relation::Incomparable => "#ffffff",
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{radius:.2}" fill="{fill}"/>"#
        );
    }
    let _ = writeln!(
        out,
        r#"<path d="M {:.1} {:.1} L {:.1} {:.1} L {:.1} {:.1} Z" stroke="black" fill="none"/>"#,
        top.0, top.1, left.0, left.1, right.0, right.1
    );
    out.push_str("</svg>\n");
    out
}

#[derive(Deserialize)]
struct MatrixFile {
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

fn load_density(path: &Path, tol: f64) -> Result<DensityMatrix, Failure> {
    let text = fs::read_to_string(path)?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    let n = file.re.len();
    if file.re.iter().any(|row| row.len() != n) {
        return Err(Failure::validation(format!(
            "{}: re is not a square matrix",
            path.display()
        )));
    }
    if let Some(im) = &file.im {
        if im.len() != n || im.iter().any(|row| row.len() != n) {
            return Err(Failure::validation(format!(
                "{}: im does not match the shape of re",
                path.display()
            )));
        }
    }
    let mat = CMatrix::from_fn(n, n, |i, j| {
        let re = file.re[i][j];
        let im = file.im.as_ref().map_or(0.0, |m| m[i][j]);
        num_complex::Complex64::new(re, im)
    });
    Ok(DensityMatrix::new(mat, tol)?)
}

fn cmd_lift(args: LiftArgs) -> Result<i32, Failure> {
    let tol = args.tol.unwrap_or(DEFAULT_MATRIX_TOL);
    let rho = load_density(&args.rho, tol)?;
    let pi = load_density(&args.pi, tol)?;
    let spec = build_spec(&args.order, rho.dim())?;
    let result = lift_compare(&spec, &rho, &pi, tol)?;
    println!("{result}");
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct WordDistribution<'a> {
    word: &'a str,
    values: Vec<f64>,
}

fn cmd_ingest(args: IngestArgs) -> Result<i32, Failure> {
    let text = fs::read_to_string(&args.counts)?;
    let mut out = String::new();
    let mut rejected = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let word = fields.next().unwrap_or("");
        let counts: Result<Vec<f64>, _> = fields.map(|f| f.trim().parse::<f64>()).collect();
        let reject = |reason: &str, rejected: &mut usize| {
            eprintln!("line {}: rejected {word:?}: {reason}", lineno + 1);
            *rejected += 1;
        };
        let Ok(counts) = counts else {
            reject("unparsable count", &mut rejected);
            continue;
        };
        if counts.is_empty() {
            reject("no counts", &mut rejected);
            continue;
        }
        if counts.iter().any(|&c| c < 0.0 || !c.is_finite()) {
            reject("negative or non-finite count", &mut rejected);
            continue;
        }
        let sum: f64 = counts.iter().sum();
        if sum <= 0.0 {
            reject("all-zero counts", &mut rejected);
            continue;
        }
        let values: Vec<f64> = counts.iter().map(|&c| c / sum).collect();
        let row = WordDistribution { word, values };
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string(&row).map_err(|e| Failure::validation(e.to_string()))?
        );
    }
    fs::write(&args.out, out.as_bytes())?;
    Ok(if rejected == 0 { EXIT_OK } else { EXIT_VALIDATION })
}
