//! Command-line front end for the `union-free` crate.
//!
//! Exit codes: 0 when the command succeeds or the checked property holds,
//! 1 when a `verify` property fails, 2 on usage, parse, or validation errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use union_free::approx::{
    central_report, cushion_split_estimate, dominance_ratio, stirling_report, ApproxReport,
};
use union_free::constructors::spec_json::{parse_cushion_spec, parse_layered_spec};
use union_free::bounds::{bounds_table, filibuster_duration, table_to_csv, table_to_markdown};
use union_free::constructors::{
    canonical_chain, chain_family, cushion_family, layered_compose,

};
use union_free::{
    max_union_free, parse_family, serialize_family, ChainSpec, Family, Maximality, Permutation,
    SearchConfig, SearchStatus, TableMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "unionfree", version, about = "Union-free families of finite sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family and write it in .uff format
    Construct(ConstructArgs),
    /// Check a property of a .uff family
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Bound tables for M(n)
    Bounds {
        #[command(subcommand)]
        command: BoundsCommand,
    },
    /// Evaluate the Stirling-type estimates
    Approx(ApproxArgs),
    /// Compute M(n) exactly for small n
    Exact(ExactArgs),
    /// Apply a permutation of [n] to a family
    Relabel(RelabelArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
    /// Output file (standard output if omitted)
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ConstructKind {
    /// Chain family q(n; m1, m2, ...)
    Chain {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
    },
    /// Canonical chain family q(n)
    Canonical {
        #[arg(long)]
        n: u32,
    },
    /// Cushioned family from a JSON spec
    Cushion {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Layered composition from a JSON spec
    Compose {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCheck {
    UnionFree(InputArg),
    Antichain(InputArg),
    Maximal(InputArg),
    Lym(InputArg),
}

#[derive(Args, Debug)]
struct InputArg {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    Table {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value = "best-known")]
        mode: TableMode,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    Filibuster {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1.0)]
        minutes: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
}

#[derive(Args, Debug)]
struct ApproxArgs {
    #[command(subcommand)]
    kind: ApproxKind,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text, global = true)]
    format: ReportFormat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum ApproxKind {
    Stirling {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
    },
    Central {
        #[arg(long)]
        n: u32,
    },
    Dominance {
        #[arg(long)]
        n: u32,
    },
    CushionSplit {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
    },
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long)]
    n: u32,
    /// Time limit in seconds
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    symmetry: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Write a JSON report with status, size, and node count
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RelabelArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    perm: Vec<u32>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure(String);

impl From<union_free::Error> for Failure {
    fn from(e: union_free::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn read_family(path: &Path) -> Result<Family, Failure> {
    let text = read_text(path)?;
    parse_family(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure(format!("cannot write output: {e}"))),
    }
}

fn say(out: &mut dyn Write, text: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", text.as_ref()).map_err(|e| Failure(format!("cannot write output: {e}")))
}

fn construct(args: ConstructArgs, out: &mut dyn Write) -> Outcome {
    let family = match args.kind {
        ConstructKind::Chain { n, m } => chain_family(&ChainSpec::new(n, m)?),
        ConstructKind::Canonical { n } => chain_family(&canonical_chain(n)?),
        ConstructKind::Cushion { spec } => {
            let s = parse_cushion_spec(&read_text(&spec)?)
                .map_err(|e| Failure(format!("{}: {e}", spec.display())))?;
            cushion_family(&s)?
        }
        ConstructKind::Compose { spec } => {
            let s = parse_layered_spec(&read_text(&spec)?)
                .map_err(|e| Failure(format!("{}: {e}", spec.display())))?;
            layered_compose(&s)?
        }
    };
    emit(out, args.output.as_deref(), &serialize_family(&family))?;
    Ok(EXIT_OK)
}

fn verify(check: VerifyCheck, out: &mut dyn Write) -> Outcome {
    match check {
        VerifyCheck::UnionFree(a) => {
            let f = read_family(&a.input)?;
            match f.union_free_witness() {
                None => say(out, "union-free")?,
                Some(w) => {
                    say(out, format!("not union-free\n{w}"))?;
                    return Ok(EXIT_FAILED);
                }
            }
        }
        VerifyCheck::Antichain(a) => {
            let f = read_family(&a.input)?;
            match f.antichain_witness() {
                None => say(out, "antichain")?,
                Some(w) => {
                    say(out, format!("not an antichain\n{w}"))?;
                    return Ok(EXIT_FAILED);
                }
            }
        }
        VerifyCheck::Maximal(a) => {
            let f = read_family(&a.input)?;
            match f.maximality()? {
                Maximality::Maximal => say(out, "maximal union-free")?,
                Maximality::Extendable(s) => {
                    say(out, format!("not maximal\nnot-maximal: {s}"))?;
                    return Ok(EXIT_FAILED);
                }
            }
        }
        VerifyCheck::Lym(a) => {
            let f = read_family(&a.input)?;
            let sum = f.lym_sum();
            say(out, format!("lym sum = {sum}"))?;
            if sum.numer() > sum.denom() {
                return Ok(EXIT_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn bounds(command: BoundsCommand, out: &mut dyn Write) -> Outcome {
    match command {
        BoundsCommand::Table { n_max, mode, format } => {
            let rows = bounds_table(n_max, mode)?;
            let text = match format {
                TableFormat::Csv => table_to_csv(&rows),
                TableFormat::Md => table_to_markdown(&rows),
            };
            emit(out, None, &text)?;
        }
        BoundsCommand::Filibuster { n, minutes } => {
            let e = filibuster_duration(n, minutes)?;
            say(out, format!("amendments={} minutes={} years={:.1}", e.amendments, e.minutes, e.years))?;
        }
    }
    Ok(EXIT_OK)
}

fn report_line(r: &ApproxReport, label: &str, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => format!(
            "{label}  exact={}  approx={:.6e}  rel_error={:.6}",
            r.exact, r.approx, r.rel_error
        ),
        ReportFormat::Csv => format!("{label},{},{:.6e},{:.6}", r.exact, r.approx, r.rel_error),
    }
}

fn approx(args: ApproxArgs, out: &mut dyn Write) -> Outcome {
    let csv = matches!(args.format, ReportFormat::Csv);
    match args.kind {
        ApproxKind::Stirling { k, j } => {
            let r = stirling_report(k, j)?;
            if csv {
                say(out, "k,j,exact,approx,rel_error")?;
                say(out, report_line(&r, &format!("{k},{j}"), args.format))?;
            } else {
                say(out, report_line(&r, &format!("C({k},{j})"), args.format))?;
            }
        }
        ApproxKind::Central { n } => {
            let r = central_report(n)?;
            if csv {
                say(out, "n,exact,approx,rel_error")?;
                say(out, report_line(&r, &n.to_string(), args.format))?;
            } else {
                say(out, report_line(&r, &format!("C({n},{})", n.div_ceil(2)), args.format))?;
            }
        }
        ApproxKind::Dominance { n } => {
            let (ratio, estimate) = dominance_ratio(n)?;
            if csv {
                say(out, "n,ratio,estimate,quotient")?;
                say(out, format!("{n},{ratio:.6e},{estimate:.6e},{:.6}", ratio / estimate))?;
            } else {
                say(out, format!("n={n}  ratio={ratio:.6e}  estimate={estimate:.6e}  quotient={:.6}", ratio / estimate))?;
            }
        }
        ApproxKind::CushionSplit { n, t } => {
            let v = cushion_split_estimate(n, t)?;
            if csv {
                say(out, "n,t,estimate")?;
                say(out, format!("{n},{t},{v:.6e}"))?;
            } else {
                say(out, format!("n={n}  t={t}  estimate={v:.6e}"))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn exact(args: ExactArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let time_limit = match args.time_limit {
        Some(s) if !(s.is_finite() && s > 0.0) => {
            return Err(Failure(format!("--time-limit must be a positive number of seconds, got {s}")))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let config = SearchConfig { n: args.n, time_limit, thread_hint: args.threads, symmetry: args.symmetry };
    let r = max_union_free(&config)?;
    emit(out, args.output.as_deref(), &serialize_family(&r.witness))?;
    let report = serde_json::json!({
        "n": args.n,
        "status": r.status.to_string(),
        "best_size": r.best_size,
        "explored": r.explored,
        "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
        "symmetry": args.symmetry,
        "threads": args.threads.unwrap_or(1),
    });
    let text = serde_json::to_string_pretty(&report).expect("serializable report") + "\n";
    match args.report {
        Some(p) => emit(out, Some(&p), &text)?,
        None => {
            let rel = if r.status == SearchStatus::Exact { "=" } else { ">=" };
            let _ = writeln!(err, "{}: M({}) {rel} {}", r.status, args.n, r.best_size);
        }
    }
    Ok(EXIT_OK)
}

fn relabel(args: RelabelArgs, out: &mut dyn Write) -> Outcome {
    let f = read_family(&args.input)?;
    let perm = Permutation::new(args.perm)?;
    emit(out, args.output.as_deref(), &serialize_family(&f.relabel(&perm)?))?;
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Verify { check } => verify(check, out),
        Command::Bounds { command } => bounds(command, out),
        Command::Approx(a) => approx(a, out),
        Command::Exact(a) => exact(a, out, err),
        Command::Relabel(a) => relabel(a, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
