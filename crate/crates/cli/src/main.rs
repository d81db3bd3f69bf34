//! `weightcalc`: condition suites, nuclearity analyses and curve export for
//! weight functions and weight sequences.

mod output;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use weightcalc_core::koethe::{sample_ks, KoetheMatrix, KoetheSource};
use weightcalc_core::numerics::LogGrid;
use weightcalc_core::sequences::{AssociatedFunction, DEFAULT_ORDER};
use weightcalc_core::subject::{load_family, load_sequence};
use weightcalc_core::weights::{order_for_range, sequence_from_weight, young_conjugate};

use report::{parse_suites, Request, Subject};

#[derive(Parser)]
#[command(
    name = "weightcalc",
    version,
    about = "Weight sequences and weight functions: conditions, conjugates, nuclearity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run condition suites and write a report.
    Analyze(AnalyzeArgs),
    /// Write plot data as CSV.
    Export(ExportArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SubjectArgs {
    /// omega0 | power:<a> | log^<a> | gevrey:<s> | table:<path>
    #[arg(long)]
    family: Option<String>,
    /// gevreyseq:<s> | file:<path>
    #[arg(long)]
    sequence: Option<String>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1.0)]
    tmin: f64,
    #[arg(long, default_value_t = 1e8)]
    tmax: f64,
    #[arg(long = "grid-n", default_value_t = 512)]
    grid_n: usize,
    /// Truncation order P of derived sequences (default: enough to cover
    /// the grid for weights, 256 for built-in sequences).
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct KoetheArgs {
    #[arg(long, default_value_t = 8)]
    jmax: u32,
    #[arg(long, default_value_t = 1_000_000)]
    kmax: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    subject: SubjectArgs,
    /// Comma-separated: axioms, bmm, cond4, conjugate, bridge, nuclearity, all
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    koethe: KoetheArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    subject: SubjectArgs,
    /// omega | M | phistar | summand:<j>,<m> | trace:<j>,<m>
    #[arg(long)]
    what: String,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    koethe: KoetheArgs,
    /// Largest slope for phistar.
    #[arg(long, default_value_t = 16.0)]
    smax: f64,
    /// Number of slopes for phistar.
    #[arg(long, default_value_t = 257)]
    slopes: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Errors in the request itself (exit code 2).
#[derive(Debug)]
struct InputError(anyhow::Error);

fn input<T>(r: Result<T>) -> std::result::Result<T, InputError> {
    r.map_err(InputError)
}

fn load_subject(args: &SubjectArgs, grid: &GridArgs) -> Result<(Subject, usize)> {
    if let Some(spec) = &args.family {
        let w = load_family(spec).with_context(|| format!("family {spec:?}"))?;
        let order = grid.order.unwrap_or_else(|| order_for_range(&w, grid.tmax));
        return Ok((Subject::Weight { spec: spec.clone(), w }, order));
    }
    let spec = args
        .sequence
        .as_ref()
        .ok_or_else(|| anyhow!("need --family or --sequence"))?;
    let order = grid.order.unwrap_or(DEFAULT_ORDER);
    let seq = load_sequence(spec, order).with_context(|| format!("sequence {spec:?}"))?;
    let order = seq.order();
    Ok((
        Subject::Sequence {
            spec: spec.clone(),
            seq,
        },
        order,
    ))
}

fn make_grid(g: &GridArgs) -> Result<LogGrid> {
    Ok(LogGrid::new(g.tmin, g.tmax, g.grid_n)?)
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn analyze(args: AnalyzeArgs) -> std::result::Result<(), InputError> {
    if matches!(args.format, Format::Csv) {
        return Err(InputError(anyhow!(
            "analyze writes json or text; use `export` for CSV curves"
        )));
    }
    let suites = input(parse_suites(&args.suite).map_err(|e| anyhow!(e)))?;
    let grid = input(make_grid(&args.grid))?;
    let (subject, order) = input(load_subject(&args.subject, &args.grid))?;
    if args.koethe.jmax < 1 || args.koethe.kmax < 1 {
        return Err(InputError(anyhow!("--jmax and --kmax must be at least 1")));
    }
    let req = Request {
        subject,
        suites,
        grid,
        j_max: args.koethe.jmax,
        k_max: args.koethe.kmax,
        order,
    };
    let rep = report::run(&req);
    let text = match args.format {
        Format::Json => output::to_json(&rep),
        _ => output::to_text(&rep),
    };
    input(write_out(&args.out, &text))
}

fn parse_pair(s: &str) -> Result<(u32, u32)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("expected <j>,<m>, got {s:?}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn export(args: ExportArgs) -> std::result::Result<(), InputError> {
    let grid = input(make_grid(&args.grid))?;
    let (subject, order) = input(load_subject(&args.subject, &args.grid))?;
    let csv = input(export_csv(&args, &grid, subject, order))?;
    input(write_out(&args.out, &csv))
}

fn export_csv(args: &ExportArgs, grid: &LogGrid, subject: Subject, order: usize) -> Result<String> {
    let what = args.what.as_str();
    let matrix = |subject: Subject| -> Result<KoetheMatrix> {
        let source = match subject {
            Subject::Weight { w, .. } => KoetheSource::Weight(w),
            Subject::Sequence { seq, .. } => KoetheSource::sequence(&seq),
        };
        Ok(KoetheMatrix::new(source, args.koethe.jmax, args.koethe.kmax)?)
    };
    let mut out = String::new();
    match what {
        "omega" => {
            let Subject::Weight { w, .. } = subject else {
                bail!("omega export needs --family");
            };
            out.push_str("t,omega\n");
            for &t in grid.points() {
                out.push_str(&format!("{t},{}\n", w.evaluate(t)?));
            }
        }
        "M" => {
            let m = match subject {
                Subject::Weight { w, .. } => AssociatedFunction::new(&sequence_from_weight(&w, order)),
                Subject::Sequence { seq, .. } => AssociatedFunction::new(&seq),
            };
            out.push_str("t,M\n");
            for &t in grid.points() {
                if t > m.reliable_max() {
                    bail!(
                        "t = {t} is beyond the reliable range {} of {}; raise --order",
                        m.reliable_max(),
                        m.label()
                    );
                }
                out.push_str(&format!("{t},{}\n", m.eval(t)?.value));
            }
        }
        "phistar" => {
            let Subject::Weight { w, .. } = subject else {
                bail!("phistar export needs --family");
            };
            out = young_conjugate(&w, args.smax, args.slopes)?.to_csv();
        }
        _ => {
            if let Some(pair) = what.strip_prefix("summand:") {
                let (j, m) = parse_pair(pair)?;
                let mat = matrix(subject)?;
                out.push_str("k,exponent\n");
                for k in sample_ks(args.koethe.kmax) {
                    out.push_str(&format!("{k},{}\n", mat.exponent(j, k)? - mat.exponent(m, k)?));
                }
            } else if let Some(pair) = what.strip_prefix("trace:") {
                let (j, m) = parse_pair(pair)?;
                out = matrix(subject)?.gp_series_test(j, m, args.koethe.kmax)?.trace_csv();
            } else {
                bail!("unknown export {what:?} (expected omega, M, phistar, summand:<j>,<m>, trace:<j>,<m>)");
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Export(e) => export(e),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(InputError(e)) => {
            eprintln!("weightcalc: {e:#}");
            ExitCode::from(2)
        }
    }
}
