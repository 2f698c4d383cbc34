//! `minertia` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input data,
//! 3 internal inconsistency or a failed self-check.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use minertia::bounds::{best_bound, catalog, Assumptions, BoundReport, PencilData};
use minertia::degree::parity_record_with;
use minertia::search::{grow_subspace, random_subspace, search_report, SearchConfig, SubspaceBasis};
use minertia::strata::classify;
use minertia::{inertia, selfcheck, Error, HermitianMatrix};

#[derive(Parser, Debug)]
#[command(name = "minertia", version, about = "Exact inertia, strata, degree parity and h^{1,1} bounds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact inertia (n_plus, n_minus, n_zero) of a Hermitian matrix.
    Inertia {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Membership in the rank-<=2 strata and, optionally, the cone over them.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
        /// Also classify the cone with vertex at the identity (q >= 5).
        #[arg(long)]
        cone: bool,
    },
    /// Degree of the rank-<=2 determinantal locus and its 2-adic valuation.
    Degree(DegreeArgs),
    /// Lower bounds on h^{1,1} for an irregular surface.
    Bound(BoundArgs),
    /// Look for an element of minimal inertia <= 1 in a subspace.
    Search(SearchArgs),
    /// Greedily grow a candidate subspace with minimal inertia >= 2.
    Grow(GrowArgs),
    /// Known surfaces with their invariants.
    Catalog,
    /// Built-in self-test suite.
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random cases per randomized check.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "which")]
struct Which {
    #[arg(long)]
    q: Option<u64>,
    /// Inclusive range A..B.
    #[arg(long, alias = "range", value_parser = parse_range)]
    table: Option<RangeInclusive<u64>>,
}

#[derive(Args, Debug)]
struct DegreeArgs {
    #[command(flatten)]
    which: Which,
    /// Skip the exact degree; report only valuation and parity.
    #[arg(long)]
    parity_only: bool,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    which: Which,
    /// Geometric genus.
    #[arg(long)]
    pg: Option<u64>,
    /// The surface has no irregular pencil of genus >= 2.
    #[arg(long)]
    no_irregular_pencils: bool,
    /// An irregular pencil: b=B,fibers=l1,l2,...
    #[arg(long, value_parser = parse_pencil)]
    pencil: Option<PencilData>,
    /// The surface is minimal.
    #[arg(long)]
    minimal: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, required_unless_present = "basis")]
    q: Option<usize>,
    #[arg(long, required_unless_present = "basis")]
    dim: Option<usize>,
    /// Read the subspace from a JSON file instead of drawing it at random.
    #[arg(long, conflicts_with_all = ["q", "dim"])]
    basis: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    descent_steps: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Include the minimal-inertia histogram of sampled elements.
    #[arg(long)]
    histogram: bool,
}

#[derive(Args, Debug)]
struct GrowArgs {
    #[arg(long)]
    q: usize,
    #[arg(long)]
    target: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn parse_pencil(s: &str) -> Result<PencilData, String> {
    let mut b = None;
    let mut fibers = Vec::new();
    let mut in_fibers = false;
    for part in s.split(',') {
        let part = part.trim();
        if let Some(v) = part.strip_prefix("b=") {
            b = Some(v.parse::<u64>().map_err(|e| format!("b: {e}"))?);
            in_fibers = false;
        } else if let Some(v) = part.strip_prefix("fibers=") {
            in_fibers = true;
            if !v.is_empty() {
                fibers.push(v.parse::<u64>().map_err(|e| format!("fibers: {e}"))?);
            }
        } else if in_fibers {
            fibers.push(part.parse::<u64>().map_err(|e| format!("fibers: {e}"))?);
        } else {
            return Err(format!("unexpected {part:?} (expected b=B,fibers=l1,l2,...)"));
        }
    }
    let b = b.ok_or("missing b=B")?;
    Ok(PencilData { b, fiber_component_counts: fibers })
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl Failure {
    fn io(path: &Path, e: impl fmt::Display) -> Self {
        Failure::Input(format!("{}: {e}", path.display()))
    }
}

type Outcome = Result<String, Failure>;

fn json<T: Serialize + ?Sized>(value: &T) -> Outcome {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Outcome {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
}

fn read_matrix(path: &Path) -> Result<HermitianMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    Ok(HermitianMatrix::from_json(&text)?)
}

fn read_basis(path: &Path) -> Result<SubspaceBasis, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::io(path, e))
}

fn values(which: &Which) -> RangeInclusive<u64> {
    match (&which.q, &which.table) {
        (Some(q), _) => *q..=*q,
        (None, Some(r)) => r.clone(),
        (None, None) => unreachable!("clap enforces the group"),
    }
}

#[derive(Serialize)]
struct InertiaRow {
    n_plus: usize,
    n_minus: usize,
    n_zero: usize,
    minimal: usize,
}

#[derive(Serialize)]
struct ClassifyRow {
    q: usize,
    n_plus: usize,
    n_minus: usize,
    n_zero: usize,
    d2: minertia::strata::D2Label,
    cone: Option<minertia::strata::ConeKind>,
    apex_shift: Option<String>,
}

#[derive(Serialize)]
struct DegreeRow {
    q: u64,
    degree: String,
    v2: u64,
    is_odd: bool,
    q_is_2k_plus_1: bool,
}

#[derive(Serialize)]
struct BoundRow {
    q: u64,
    best: i64,
    best_names: String,
    bounds: String,
}

impl From<&BoundReport> for BoundRow {
    fn from(r: &BoundReport) -> Self {
        let bounds = r
            .bounds
            .iter()
            .filter_map(|b| b.value.filter(|_| b.applicable).map(|v| format!("{}={v}", b.name)))
            .collect::<Vec<_>>()
            .join(";");
        BoundRow { q: r.q, best: r.best, best_names: r.best_names.join(";"), bounds }
    }
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    q: u64,
    p_g: Option<u64>,
    h11: u64,
    no_irregular_pencils_genus_ge2: bool,
    pencil: Option<String>,
    best_bound: i64,
}

#[derive(Serialize)]
struct SearchRow {
    q: usize,
    dim: usize,
    seed: u64,
    found: bool,
    n_plus: Option<usize>,
    n_minus: Option<usize>,
    n_zero: Option<usize>,
    samples_used: usize,
    dimension_limit: Option<u64>,
}

fn search_config(seed: u64, samples: Option<usize>, steps: Option<usize>, workers: Option<usize>) -> Result<SearchConfig, Failure> {
    let mut cfg = SearchConfig::with_seed(seed);
    if let Some(s) = samples {
        cfg.samples = s;
    }
    if let Some(s) = steps {
        cfg.descent_steps = s;
    }
    if let Some(w) = workers {
        cfg.workers = w;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Inertia { matrix } => {
            let i = inertia(&read_matrix(&matrix)?);
            match fmt {
                Format::Json => json(&i),
                Format::Csv => csv([InertiaRow { n_plus: i.n_plus, n_minus: i.n_minus, n_zero: i.n_zero, minimal: i.minimal() }]),
            }
        }
        Command::Classify { matrix, cone } => {
            let c = classify(&read_matrix(&matrix)?, cone)?;
            match fmt {
                Format::Json => json(&c),
                Format::Csv => csv([ClassifyRow {
                    q: c.q,
                    n_plus: c.inertia.n_plus,
                    n_minus: c.inertia.n_minus,
                    n_zero: c.inertia.n_zero,
                    d2: c.d2,
                    cone: c.cone,
                    apex_shift: c.apex_shift.map(|s| s.to_string()),
                }]),
            }
        }
        Command::Degree(args) => {
            let records = values(&args.which)
                .map(|q| parity_record_with(q, !args.parity_only))
                .collect::<Result<Vec<_>, _>>()?;
            match (fmt, args.which.q.is_some()) {
                (Format::Json, true) => json(&records[0]),
                (Format::Json, false) => json(&records),
                (Format::Csv, _) => csv(records.into_iter().map(|r| DegreeRow {
                    q: r.q,
                    degree: r.degree.unwrap_or_else(|| "omitted".into()),
                    v2: r.v2,
                    is_odd: r.is_odd,
                    q_is_2k_plus_1: r.q_is_2k_plus_1,
                })),
            }
        }
        Command::Bound(args) => {
            let reports = values(&args.which)
                .map(|q| {
                    best_bound(&Assumptions {
                        q,
                        p_g: args.pg,
                        no_irregular_pencils_genus_ge2: args.no_irregular_pencils,
                        pencil: args.pencil.clone(),
                        minimal_surface: args.minimal,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            match (fmt, args.which.q.is_some()) {
                (Format::Json, true) => json(&reports[0]),
                (Format::Json, false) => json(&reports),
                (Format::Csv, _) => csv(reports.iter().map(BoundRow::from)),
            }
        }
        Command::Search(args) => {
            let cfg = search_config(args.seed, args.samples, args.descent_steps, args.workers)?;
            let basis = match &args.basis {
                Some(path) => read_basis(path)?,
                None => random_subspace(args.q.unwrap_or_default(), args.dim.unwrap_or_default(), args.seed)?,
            };
            let r = search_report(&basis, &cfg, args.histogram)?;
            match fmt {
                Format::Json => json(&r),
                Format::Csv => {
                    let i = r.witness.as_ref().map(|w| w.inertia);
                    csv([SearchRow {
                        q: r.q,
                        dim: r.dim,
                        seed: r.seed,
                        found: i.is_some(),
                        n_plus: i.map(|i| i.n_plus),
                        n_minus: i.map(|i| i.n_minus),
                        n_zero: i.map(|i| i.n_zero),
                        samples_used: r.samples_used,
                        dimension_limit: r.dimension_limit,
                    }])
                }
            }
        }
        Command::Grow(args) => {
            let cfg = search_config(args.seed, args.samples, None, args.workers)?;
            let r = grow_subspace(args.q, args.target, &cfg)?;
            if let Some(w) = &r.warning {
                eprintln!("warning: {w}");
            }
            match fmt {
                Format::Json => json(&r),
                Format::Csv => csv(&r.steps),
            }
        }
        Command::Catalog => {
            let records = catalog();
            match fmt {
                Format::Json => json(&records),
                Format::Csv => {
                    let mut rows = Vec::new();
                    for r in &records {
                        rows.push(CatalogRow {
                            name: r.name.clone(),
                            q: r.q,
                            p_g: r.p_g,
                            h11: r.h11,
                            no_irregular_pencils_genus_ge2: r.no_irregular_pencils_genus_ge2,
                            pencil: r.pencil.as_ref().map(|p| {
                                let f: Vec<_> = p.fiber_component_counts.iter().map(u64::to_string).collect();
                                format!("b={};fibers={}", p.b, f.join(" "))
                            }),
                            best_bound: best_bound(&r.assumptions())?.best,
                        });
                    }
                    csv(rows)
                }
            }
        }
        Command::Check { seed, trials } => {
            let report = selfcheck::run(seed, trials);
            let out = match fmt {
                Format::Json => json(&report)?,
                Format::Csv => csv(&report.checks)?,
            };
            if report.passed {
                Ok(out)
            } else {
                print!("{out}");
                let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                Err(Failure::Internal(format!("self-check failed: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
