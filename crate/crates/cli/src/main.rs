mod failure;
mod oracle;
mod problem;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use specblock::gp::{gp_character_filter, gp_classify, gp_cover_lift, BaseGraph, VoltageBase};
use specblock::partition::{classify_extreme, GTripleJson, PartitionJson};
use specblock::perm::DEFAULT_CAP;
use specblock::spectral::{eigen_decomposition, DEFAULT_TOL};
use specblock::symbol::SymbolJson;

use failure::Failure;
use problem::{Problem, ProblemSpec};
use report::{
    characters_json, elements_json, BlockRow, BlocksReport, LiftReport, SpectrumReport, SpectrumRow,
};

#[derive(Parser)]
#[command(
    name = "specblock",
    version,
    about = "Spectral block systems of vertex-transitive digraphs"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Eigenvalue clustering tolerance, relative to max(1, |lambda|).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Largest group that may be enumerated.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run brute-force cross-checks; disagreement exits with code 4.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues with their character sets.
    Spectrum { spec: PathBuf },
    /// Spectral block systems with their G-triples.
    Blocks {
        spec: PathBuf,
        /// Restrict to one eigenvalue, written `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Generalized Petersen graphs.
    Gp {
        #[command(subcommand)]
        command: GpCommand,
    },
}

#[derive(Subcommand)]
enum GpCommand {
    /// Edge-transitive GP(n,s) for n up to a bound, with exact search for
    /// every pair of order at most 64.
    Classify {
        #[arg(long, default_value_t = 30)]
        max_n: usize,
    },
    /// Character filter for a single GP(n,s).
    Filter { n: usize, s: usize },
    /// Lifts of the cube or the Petersen graph along Z_m-voltages.
    Lift {
        #[arg(long)]
        base: String,
        #[arg(long)]
        m: usize,
    },
}

struct Settings {
    tol: f64,
    cap: usize,
}

fn settings(opts: &Opts, spec: Option<&ProblemSpec>) -> Result<Settings, Failure> {
    let tol = opts.tol.or(spec.and_then(|s| s.tol)).unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Validation(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let cap = opts.cap.or(spec.and_then(|s| s.cap)).unwrap_or(DEFAULT_CAP);
    Ok(Settings { tol, cap })
}

fn load(path: &Path) -> Result<ProblemSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    problem::parse(&text, &path.display().to_string())
}

fn parse_lambda(text: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::Validation(format!("cannot parse eigenvalue {text:?}"));
    let mut parts = text
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()));
    let re = parts.next().ok_or_else(bad)??;
    let im = parts.next().transpose()?.unwrap_or(0.0);
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn emit<T: Serialize>(
    format: Format,
    value: &T,
    text: impl FnOnce(&T) -> String,
) -> Result<(), Failure> {
    let body = match format {
        Format::Json => {
            serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?
                + "\n"
        }
        Format::Text => text(value),
    };
    match std::io::stdout().lock().write_all(body.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::Internal(e.to_string()))
        }
        _ => Ok(()),
    }
}

fn spectrum_command(opts: &Opts, path: &Path) -> Result<(), Failure> {
    let spec = load(path)?;
    let st = settings(opts, Some(&spec))?;
    let p = Problem::resolve(&spec)?;
    let (spectrum, data) = eigen_decomposition(&p.symbol, st.tol)?;
    if opts.oracle {
        oracle::check_spectrum(&p.digraph, &spectrum)?;
    }
    let h = p.symbol.group();
    let report = SpectrumReport {
        vertices: p.digraph.order(),
        symbol: SymbolJson::from_symbol(&p.symbol),
        spectrum: spectrum
            .entries
            .iter()
            .zip(&data)
            .map(|(e, d)| SpectrumRow {
                lambda: e.lambda.into(),
                multiplicity: e.multiplicity,
                dimension: d.dim(),
                characters: characters_json(h, &e.characters),
            })
            .collect(),
        warnings: spectrum.warnings.clone(),
    };
    emit(opts.format, &report, SpectrumReport::text)
}

fn blocks_command(opts: &Opts, path: &Path, lambda: Option<&str>) -> Result<(), Failure> {
    let spec = load(path)?;
    let st = settings(opts, Some(&spec))?;
    let p = Problem::resolve(&spec)?;
    let g = p.group(st.cap)?;
    let group_order = g.order(st.cap)?;
    let (spectrum, _) = eigen_decomposition(&p.symbol, st.tol)?;
    let entries = match lambda {
        Some(text) => vec![spectrum.entry(parse_lambda(text)?, st.tol)?.clone()],
        None => spectrum.entries.clone(),
    };
    let systems = if opts.oracle {
        oracle::check_spectrum(&p.digraph, &spectrum)?;
        Some(oracle::block_systems(&g)?)
    } else {
        None
    };
    let h = p.symbol.group();
    let mut rows = Vec::new();
    for e in &entries {
        let r = classify_extreme(&g, &p.symbol, &p.frame, e.lambda, st.tol, st.cap)?;
        if let Some(systems) = &systems {
            oracle::check_blocks(&g, &p.frame, e, &r.blocks, systems, st.cap)?;
        }
        let kernel_order = r.blocks.kernel.order(st.cap)?;
        rows.push(BlockRow {
            lambda: e.lambda.into(),
            characters: characters_json(h, &e.characters),
            case: r.case,
            blocks: PartitionJson::from(&r.blocks.partition),
            triple: GTripleJson::from_triple(&r.blocks.triple, &p.frame),
            kernel_order,
            kernel_in_h: elements_json(h, &r.blocks.kernel_in_h),
            violations: r.violations.clone(),
        });
    }
    let report = BlocksReport {
        vertices: p.digraph.order(),
        group_order,
        oracle_checked: opts.oracle,
        systems: rows,
    };
    emit(opts.format, &report, BlocksReport::text)
}

fn gp_command(opts: &Opts, command: &GpCommand) -> Result<(), Failure> {
    match command {
        GpCommand::Classify { max_n } => {
            let c = gp_classify(*max_n, true)?;
            if !c.oracle_agrees() {
                let bad: Vec<String> = c
                    .pairs
                    .iter()
                    .filter(|p| !p.agrees())
                    .map(|p| format!("GP({},{})", p.n, p.s))
                    .collect();
                return Err(Failure::Oracle(format!(
                    "exact search disagrees on {}",
                    bad.join(", ")
                )));
            }
            emit(opts.format, &c, report::classify_text)
        }
        GpCommand::Filter { n, s } => {
            let r = gp_character_filter(*n, *s)?;
            emit(opts.format, &r, report::filter_text)
        }
        GpCommand::Lift { base, m } => {
            let kind: BaseGraph = base.parse()?;
            let vb = VoltageBase::new(kind);
            let report = LiftReport {
                base: kind.to_string(),
                m: *m,
                system: vb.system()?.iter().map(ToString::to_string).collect(),
                solutions: gp_cover_lift(kind, *m)?,
            };
            emit(opts.format, &report, LiftReport::text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(cap) = cli.opts.cap {
        if cap == 0 {
            eprintln!("error: --cap must be positive");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Spectrum { spec } => spectrum_command(&cli.opts, spec),
        Command::Blocks { spec, lambda } => blocks_command(&cli.opts, spec, lambda.as_deref()),
        Command::Gp { command } => gp_command(&cli.opts, command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
