//! `holevo`: correlation measures of Bell-diagonal two-qubit states.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing case, 2 on
//! usage or input errors.

mod csv;
mod grid;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holevo_core::channels::{self, ChannelKind, ChannelSpec, NoiseSide};
use holevo_core::correlations::{MeasureReport, Physicality};
use holevo_core::optimizer::MIN_GRID_POINTS;
use holevo_core::{CorrelationTriple, WeakStrength, WernerParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::csv::CsvWriter;
use crate::grid::{parse_grid, sorted_unique};

const THREADS_ENV: &str = "HOLEVO_THREADS";

#[derive(Parser)]
#[command(name = "holevo", version, about = "Correlation measures of Bell-diagonal two-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every correlation measure of one state, as JSON.
    Measures(MeasuresArgs),
    /// Werner-state measures over a (z, x) grid, as CSV.
    SweepWerner(SweepWernerArgs),
    /// Maximal Holevo quantities of Werner states under generalized
    /// amplitude damping over a (z, gamma, x) grid, as CSV.
    GadSurface(GadSurfaceArgs),
    /// Run the self-verification suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(id = "state", required = true, multiple = false)]
struct StateArgs {
    /// Correlation triple `c1,c2,c3`.
    #[arg(long, value_name = "C1,C2,C3", allow_hyphen_values = true, group = "state")]
    c: Option<String>,
    /// Werner state with correlation triple (-z, -z, -z), z in [0, 1].
    #[arg(long, value_name = "Z", allow_hyphen_values = true, group = "state")]
    werner_z: Option<f64>,
    /// Werner state given by its singlet weight alpha in [-1, 1].
    #[arg(long, value_name = "A", allow_hyphen_values = true, group = "state")]
    werner_alpha: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Bf,
    Pf,
    Bpf,
    Gad,
    Depol1,
}

impl From<ChannelArg> for ChannelKind {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Bf => ChannelKind::Bf,
            ChannelArg::Pf => ChannelKind::Pf,
            ChannelArg::Bpf => ChannelKind::Bpf,
            ChannelArg::Gad => ChannelKind::Gad,
            ChannelArg::Depol1 => ChannelKind::Depol1,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    A,
    B,
}

#[derive(Args)]
struct MeasuresArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Weak-measurement strength x > 0; adds the weak measures.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// Apply a channel before evaluating the measures.
    #[arg(long, value_enum)]
    channel: Option<ChannelArg>,
    /// Channel probability in [0, 1]. GAD defaults to 1/2, the only value at
    /// which it keeps the state Bell-diagonal.
    #[arg(long, requires = "channel", allow_hyphen_values = true)]
    p: Option<f64>,
    /// GAD damping rate in [0, 1].
    #[arg(long, requires = "channel", allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// Qubit hit by single-qubit depolarizing noise.
    #[arg(long, value_enum, default_value = "a")]
    side: SideArg,
    /// Evaluate the formulas even when the triple is not a valid state.
    #[arg(long)]
    allow_unphysical: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepWernerArgs {
    /// `start:end:step` or a comma-separated list, within [0, 1].
    #[arg(long, default_value = "0:1:0.01")]
    z_grid: String,
    /// Weak-measurement strengths.
    #[arg(long, default_value = "0.25,2.5")]
    x: String,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GadSurfaceArgs {
    /// `start:end:step` or a comma-separated list, within [0, 1].
    #[arg(long, default_value = "0:1:0.02")]
    z_grid: String,
    /// `start:end:step` or a comma-separated list, within (0, 1).
    #[arg(long, default_value = "0.01:0.99:0.0196")]
    gamma_grid: String,
    /// Weak-measurement strengths.
    #[arg(long, default_value = "0.5,1")]
    x: String,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Random inputs drawn per suite.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Sphere grid size for the numerical optimizer.
    #[arg(long, default_value_t = 20_000)]
    grid_points: usize,
    /// Perturb the oracle suite's reference values.
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// Failure that ends the process with the given exit code.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

impl From<holevo_core::Error> for Failure {
    fn from(e: holevo_core::Error) -> Self {
        input_error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A closed downstream pipe (`| head`) is not an error.
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure {
                code: 0,
                message: String::new(),
            };
        }
        Failure {
            code: 2,
            message: format!("I/O error: {e}"),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            input_error(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> CmdResult {
    let mut out = open_output(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(input_error)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

fn weak_strength(x: f64) -> Result<WeakStrength, Failure> {
    WeakStrength::new(x).map_err(Failure::from)
}

/// Parses a grid and checks every point against `accept`.
fn checked_grid(
    flag: &str,
    spec: &str,
    domain: &str,
    accept: impl Fn(f64) -> bool,
) -> Result<Vec<f64>, Failure> {
    let values = parse_grid(spec).map_err(|e| input_error(format!("--{flag}: {e}")))?;
    if let Some(bad) = values.iter().find(|&&v| !accept(v)) {
        return Err(input_error(format!("--{flag}: {bad} is outside {domain}")));
    }
    Ok(sorted_unique(values))
}

fn parse_triple(s: &str) -> Result<CorrelationTriple, Failure> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| input_error(format!("--c '{s}': expected three numbers c1,c2,c3")))?;
    let [a, b, c] = parts[..] else {
        return Err(input_error(format!(
            "--c '{s}': expected three numbers, got {}",
            parts.len()
        )));
    };
    Ok(CorrelationTriple::new(a, b, c)?)
}

#[derive(Serialize)]
struct ChannelInfo {
    kind: ChannelKind,
    p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    side: Option<NoiseSide>,
    /// Triple before the channel; `c` in the report is the triple after it.
    input_c: [f64; 3],
}

#[derive(Serialize)]
struct MeasuresOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    channel: Option<ChannelInfo>,
    #[serde(flatten)]
    report: MeasureReport,
}

fn cmd_measures(args: &MeasuresArgs) -> CmdResult {
    let physicality = if args.allow_unphysical {
        Physicality::AllowUnphysical
    } else {
        Physicality::Enforce
    };
    let (input, werner) = match (&args.state.c, args.state.werner_z, args.state.werner_alpha) {
        (Some(s), _, _) => (parse_triple(s)?, None),
        (_, Some(z), _) => {
            let w = WernerParams::from_z(z)?;
            (w.triple(), Some(w))
        }
        (_, _, Some(a)) => {
            let w = WernerParams::from_alpha(a)?;
            (w.triple(), Some(w))
        }
        _ => unreachable!("clap requires one state flag"),
    };
    if physicality == Physicality::Enforce {
        input.ensure_physical()?;
    }
    let x = args.x.map(weak_strength).transpose()?;

    let mut channel = None;
    let c = match args.channel {
        None => input,
        Some(kind) => {
            let kind = ChannelKind::from(kind);
            let spec = match kind {
                ChannelKind::Gad => ChannelSpec::gad(
                    args.p.unwrap_or(0.5),
                    args.gamma
                        .ok_or_else(|| input_error("--channel gad requires --gamma"))?,
                )?,
                _ => {
                    if args.gamma.is_some() {
                        return Err(input_error("--gamma only applies to --channel gad"));
                    }
                    let p = args
                        .p
                        .ok_or_else(|| input_error(format!("--channel {} requires --p", kind.name())))?;
                    ChannelSpec::new(kind, p)?
                }
            };
            let out = channels::transformed_c(&input, &spec)?;
            channel = Some(ChannelInfo {
                kind,
                p: spec.p(),
                gamma: spec.gamma(),
                side: (kind == ChannelKind::Depol1).then_some(match args.side {
                    SideArg::A => NoiseSide::A,
                    SideArg::B => NoiseSide::B,
                }),
                input_c: input.as_array(),
            });
            out
        }
    };

    let report = match werner {
        Some(w) if channel.is_none() => MeasureReport::werner(&w, x)?,
        _ => MeasureReport::compute(&c, x, physicality)?,
    };
    write_json(&args.out, &MeasuresOutput { channel, report })
}

fn cmd_sweep_werner(args: &SweepWernerArgs) -> CmdResult {
    let zs = checked_grid("z-grid", &args.z_grid, "[0, 1]", |z| (0.0..=1.0).contains(&z))?;
    let xs = checked_grid("x", &args.x, "(0, inf)", |x| x > 0.0)?;
    let points: Vec<(f64, f64)> = zs
        .iter()
        .flat_map(|&z| xs.iter().map(move |&x| (z, x)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&(z, x)| -> Result<[f64; 7], holevo_core::Error> {
            let r = MeasureReport::werner(&WernerParams::from_z(z)?, Some(WeakStrength::new(x)?))?;
            Ok([
                z,
                x,
                r.eof.expect("Werner reports carry eof"),
                r.classical_correlation,
                r.weak_maximal_holevo.expect("x given"),
                r.discord,
                r.super_discord.expect("x given"),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = CsvWriter::new(
        open_output(&args.out)?,
        &[
            "z",
            "x",
            "eof",
            "classical_correlation",
            "weak_maximal_holevo",
            "discord",
            "super_discord",
        ],
    )?;
    for row in &rows {
        out.row(row)?;
    }
    out.finish()?;
    Ok(())
}

fn cmd_gad_surface(args: &GadSurfaceArgs) -> CmdResult {
    let zs = checked_grid("z-grid", &args.z_grid, "[0, 1]", |z| (0.0..=1.0).contains(&z))?;
    let gammas = checked_grid("gamma-grid", &args.gamma_grid, "(0, 1)", |g| g > 0.0 && g < 1.0)?;
    let xs = checked_grid("x", &args.x, "(0, inf)", |x| x > 0.0)?;
    let mut points = Vec::with_capacity(zs.len() * gammas.len() * xs.len());
    for &z in &zs {
        for &g in &gammas {
            for &x in &xs {
                points.push((z, g, x));
            }
        }
    }
    let rows = points
        .par_iter()
        .map(|&(z, g, x)| -> Result<[f64; 5], holevo_core::Error> {
            Ok([
                z,
                g,
                x,
                channels::gad_maximal_holevo_werner(z, g)?,
                channels::gad_weak_maximal_holevo_werner(z, g, WeakStrength::new(x)?)?,
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = CsvWriter::new(open_output(&args.out)?, &["z", "gamma", "x", "nc1", "nc1w"])?;
    for row in &rows {
        out.row(row)?;
    }
    out.finish()?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    if args.samples == 0 {
        return Err(input_error("--samples must be at least 1"));
    }
    if args.grid_points < MIN_GRID_POINTS {
        return Err(input_error(format!(
            "--grid-points must be at least {MIN_GRID_POINTS}"
        )));
    }
    let report = verify::run(&verify::VerifyOptions {
        seed: args.seed,
        samples: args.samples,
        grid_points: args.grid_points,
        inject_fault: args.inject_fault,
    });
    write_json(&args.out, &report)?;
    match &report.first_failure {
        None => Ok(()),
        Some(f) => Err(Failure {
            code: 1,
            message: format!(
                "verification failed in {}: inputs {}, expected {}, got {}",
                f.suite, f.case.inputs, f.case.expected, f.case.got
            ),
        }),
    }
}

fn configure_threads() -> CmdResult {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| input_error(format!("{THREADS_ENV}='{value}' is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| input_error(format!("cannot configure thread pool: {e}")))
}

fn run(cli: &Cli) -> CmdResult {
    configure_threads()?;
    match &cli.command {
        Command::Measures(a) => cmd_measures(a),
        Command::SweepWerner(a) => cmd_sweep_werner(a),
        Command::GadSurface(a) => cmd_gad_surface(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
