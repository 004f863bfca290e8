//! Command-line front end. Reports are `key=value` lines on stdout;
//! diagnostics go to stderr.
//!
//! Exit statuses: 0 success or valid, 1 violation found, 2 usage or parse
//! error, 3 resource or search budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{cff_bounds_report, universal_bounds_report, BoundsReport};
use crate::cff::{construct_cff, derandomized_row_bound, CffMethod};
use crate::error::Error;
use crate::format::{read_array, write_array, ArrayFileHeader, ArrayKind};
use crate::matrix::{CffSpec, SymbolMatrix, UniversalSpec};
use crate::oracle::{minimal_cff_size, minimal_universal_size, SearchBudget, SearchOutcome};
use crate::universal::{
    build_universal_lemma1, construct_universal_greedy, greedy_universal_row_bound, require_binary,
    ComponentMethod,
};
use crate::verify::{verify_cff, verify_universal, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "unisets", version, about = "Universal sets and cover-free families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and self-verify a universal set or cover-free family.
    #[command(subcommand)]
    Construct(Construct),
    /// Exhaustively verify an array file.
    Verify(VerifyArgs),
    /// Print closed-form size bounds.
    Bounds(ParamArgs),
    /// Exact minimum size by exhaustive search (tiny instances only).
    Minimal(MinimalArgs),
}

#[derive(Debug, Subcommand)]
enum Construct {
    Universal(ConstructUniversal),
    Cff(ConstructCff),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum UniversalMethod {
    Lemma1,
    Greedy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyMethod {
    Derand,
    Random,
    Sperner,
}

impl FamilyMethod {
    fn name(self) -> &'static str {
        match self {
            FamilyMethod::Derand => "derand",
            FamilyMethod::Random => "random",
            FamilyMethod::Sperner => "sperner",
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Seed for the randomized constructor.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rows sampled per batch by the randomized constructor.
    #[arg(long, default_value_t = 1)]
    batch: usize,
    /// Write the array here (atomically); rows are printed otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConstructUniversal {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long, value_enum)]
    method: UniversalMethod,
    /// Component constructor for the lemma1 method.
    #[arg(long, value_enum, default_value_t = FamilyMethod::Derand)]
    cff_method: FamilyMethod,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ConstructCff {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    #[arg(long, value_enum)]
    method: FamilyMethod,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, conflicts_with_all = ["r", "s"])]
    d: Option<usize>,
    #[arg(long, requires = "s")]
    r: Option<usize>,
    #[arg(long, requires = "r")]
    s: Option<usize>,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with_all = ["r", "s"], required_unless_present = "r")]
    d: Option<usize>,
    #[arg(long, conflicts_with_all = ["r", "s"])]
    q: Option<usize>,
    #[arg(long, requires = "s")]
    r: Option<usize>,
    #[arg(long, requires = "r")]
    s: Option<usize>,
}

#[derive(Debug, Args)]
struct MinimalArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    max_rows: Option<usize>,
    #[arg(long)]
    node_limit: Option<u64>,
}

enum Params {
    Universal(UniversalSpec),
    Cff(CffSpec),
}

impl ParamArgs {
    fn resolve(&self) -> Result<Params, Error> {
        match (self.d, self.r, self.s) {
            (Some(d), None, None) => Ok(Params::Universal(UniversalSpec::new(
                self.n,
                d,
                self.q.unwrap_or(2),
            )?)),
            (None, Some(r), Some(s)) => Ok(Params::Cff(CffSpec::new(self.n, r, s)?)),
            _ => Err(Error::Parameter("give either --d [--q] or --r and --s".into())),
        }
    }
}

/// A failure carrying its exit status.
struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Resource(_) | Error::NonConvergence { .. } => EXIT_RESOURCE,
            Error::Alphabet(_) | Error::Parameter(_) | Error::Domain(_) => EXIT_USAGE,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

/// Run the CLI on `args` (program name first), writing to the given
/// streams, and return the exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return status;
        }
    };
    let result = match cli.command {
        Command::Construct(Construct::Universal(args)) => construct_universal(args, out, err),
        Command::Construct(Construct::Cff(args)) => construct_family(args, out, err),
        Command::Verify(args) => verify_file(args, out),
        Command::Bounds(args) => print_bounds(args, out),
        Command::Minimal(args) => minimal(args, out),
    };
    match result {
        Ok(status) => status,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

fn emit(out: &mut dyn Write, lines: impl IntoIterator<Item = String>) -> Result<(), Failure> {
    for line in lines {
        writeln!(out, "{line}").map_err(|e| usage(format!("cannot write output: {e}")))?;
    }
    Ok(())
}

fn write_atomically(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn deliver(
    m: &SymbolMatrix,
    header: &ArrayFileHeader,
    report: Result<BoundsReport, Error>,
    extra: Vec<String>,
    target: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let text = write_array(m, header).map_err(|e| usage(e.to_string()))?;
    let mut lines = vec![
        format!("kind={}", header.kind.as_str()),
        format!("n={}", header.n),
        format!("q={}", header.q),
    ];
    lines.extend(header.d.map(|d| format!("d={d}")));
    lines.extend(header.r.map(|r| format!("r={r}")));
    lines.extend(header.s.map(|s| format!("s={s}")));
    lines.extend(header.method.as_ref().map(|m| format!("method={m}")));
    lines.extend(header.seed.map(|s| format!("seed={s}")));
    lines.push(format!("size={}", m.len()));
    lines.push("verified=true".into());
    lines.extend(extra);
    match report {
        Ok(report) => lines.extend(report.to_lines()),
        Err(e) => {
            let _ = writeln!(err, "note: no bounds report: {e}");
        }
    }
    match target {
        Some(path) => {
            write_atomically(path, &text)?;
            lines.push(format!("file={}", path.display()));
        }
        None => lines.extend((0..m.len()).map(|i| format!("row={}", m.row_digits(i)))),
    }
    emit(out, lines)?;
    Ok(EXIT_OK)
}

fn self_check(verdict: Verdict) -> Result<(), Failure> {
    match verdict {
        Verdict::Valid => Ok(()),
        Verdict::Violated(w) => Err(Failure {
            status: EXIT_VIOLATION,
            message: format!("constructed array failed self-verification: {w}"),
        }),
    }
}

fn construct_universal(args: ConstructUniversal, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let spec = UniversalSpec::new(args.n, args.d, args.q)?;
    let mut extra = Vec::new();
    let (m, method, seed) = match args.method {
        UniversalMethod::Greedy => {
            let (m, _) = construct_universal_greedy(spec)?;
            extra.push(format!("greedy_row_bound={}", greedy_universal_row_bound(spec)));
            (m, "greedy".to_string(), None)
        }
        UniversalMethod::Lemma1 => {
            require_binary(spec)?;
            let components = match args.cff_method {
                FamilyMethod::Derand => ComponentMethod::Derandomized,
                FamilyMethod::Random => ComponentMethod::Randomized {
                    seed: args.common.seed,
                    batch: args.common.batch,
                },
                FamilyMethod::Sperner => ComponentMethod::SpernerWhereApplicable,
            };
            let m = build_universal_lemma1(spec.n(), spec.d(), components)?;
            let seed = matches!(args.cff_method, FamilyMethod::Random).then_some(args.common.seed);
            (m, format!("lemma1-{}", args.cff_method.name()), seed)
        }
    };
    self_check(verify_universal(&m, spec.d())?)?;
    let mut header = ArrayFileHeader::universal(&m, spec.d()).with_method(method);
    header.seed = seed;
    deliver(
        &m,
        &header,
        universal_bounds_report(spec),
        extra,
        args.common.out.as_deref(),
        out,
        err,
    )
}

fn construct_family(args: ConstructCff, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let spec = CffSpec::new(args.n, args.r, args.s)?;
    let method = match args.method {
        FamilyMethod::Derand => CffMethod::Derandomized,
        FamilyMethod::Random => CffMethod::Randomized {
            seed: args.common.seed,
            batch: args.common.batch,
        },
        FamilyMethod::Sperner => CffMethod::Sperner,
    };
    let m = construct_cff(spec, method)?;
    self_check(verify_cff(&m, spec.r(), spec.s())?)?;
    let mut header = ArrayFileHeader::cff(&m, spec.r(), spec.s()).with_method(args.method.name());
    let mut extra = Vec::new();
    match args.method {
        FamilyMethod::Random => header.seed = Some(args.common.seed),
        FamilyMethod::Derand => extra.push(format!("greedy_row_bound={}", derandomized_row_bound(spec))),
        FamilyMethod::Sperner => {}
    }
    deliver(
        &m,
        &header,
        cff_bounds_report(spec),
        extra,
        args.common.out.as_deref(),
        out,
        err,
    )
}

fn verify_file(args: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| usage(format!("cannot read {}: {e}", args.file.display())))?;
    let (m, header) = read_array(&text).map_err(|e| usage(format!("{}: {e}", args.file.display())))?;
    let verdict = match (args.d, args.r.zip(args.s), header.kind) {
        (Some(d), _, _) => verify_universal(&m, d)?,
        (None, Some((r, s)), _) => verify_cff(&m, r, s)?,
        (None, None, ArrayKind::Universal) => verify_universal(&m, header.d.expect("validated header"))?,
        (None, None, ArrayKind::Cff) => verify_cff(
            &m,
            header.r.expect("validated header"),
            header.s.expect("validated header"),
        )?,
        (None, None, ArrayKind::Raw) => {
            return Err(usage("kind=raw files need --d or --r and --s"));
        }
    };
    match verdict {
        Verdict::Valid => {
            emit(out, ["status=valid".to_string()])?;
            Ok(EXIT_OK)
        }
        Verdict::Violated(w) => {
            emit(out, ["status=violated".to_string(), w.to_string()])?;
            Ok(EXIT_VIOLATION)
        }
    }
}

fn print_bounds(args: ParamArgs, out: &mut dyn Write) -> Outcome {
    let (mut lines, report) = match args.resolve()? {
        Params::Universal(spec) => (
            vec![
                "kind=universal".to_string(),
                format!("n={}", spec.n()),
                format!("d={}", spec.d()),
                format!("q={}", spec.q()),
            ],
            universal_bounds_report(spec)?,
        ),
        Params::Cff(spec) => (
            vec![
                "kind=cff".to_string(),
                format!("n={}", spec.n()),
                format!("r={}", spec.r()),
                format!("s={}", spec.s()),
            ],
            cff_bounds_report(spec)?,
        ),
    };
    lines.extend(report.to_lines());
    emit(out, lines)?;
    Ok(EXIT_OK)
}

fn minimal(args: MinimalArgs, out: &mut dyn Write) -> Outcome {
    let defaults = SearchBudget::default();
    let budget = SearchBudget {
        max_rows: args.max_rows.unwrap_or(defaults.max_rows),
        node_limit: args.node_limit.unwrap_or(defaults.node_limit),
    };
    let outcome = match args.params.resolve()? {
        Params::Universal(spec) => minimal_universal_size(spec, budget)?,
        Params::Cff(spec) => minimal_cff_size(spec, budget)?,
    };
    match outcome {
        SearchOutcome::Minimum { size, certificate } => {
            let mut lines = vec![format!("size={size}")];
            lines.extend((0..certificate.len()).map(|i| format!("row={}", certificate.row_digits(i))));
            emit(out, lines)?;
            Ok(EXIT_OK)
        }
        SearchOutcome::Infeasible { max_rows } => {
            emit(out, [format!("infeasible_up_to={max_rows}")])?;
            Err(Failure {
                status: EXIT_RESOURCE,
                message: format!("no solution with at most {max_rows} rows; raise --max-rows"),
            })
        }
        SearchOutcome::BudgetExceeded { reason } => Err(Failure {
            status: EXIT_RESOURCE,
            message: format!("search budget exceeded: {reason}"),
        }),
    }
}
