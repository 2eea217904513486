//! `linq`: compile, sweep, generate and replay tape programs.
//!
//! Exit codes: 0 success, 1 replay found violations, 2 input error,
//! 3 capacity or contract error, 4 internal invariant failure.

mod fsio;

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tilt_core::artifacts::{parse_routed, parse_schedule, routed_text, schedule_text, RunReport};
use tilt_core::bench::{generate, BenchmarkSpec, Family};
use tilt_core::frontend::compile_source;
use tilt_core::oracle::replay_check;
use tilt_core::pipeline::{compile_with, sweep, sweep_csv, RouterKind};
use tilt_core::{DeviceSpec, Error};

#[derive(Parser)]
#[command(
    name = "linq",
    version,
    about = "Compiler for linear-tape trapped-ion devices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouterArg {
    Lookahead,
    Baseline,
}

#[derive(Subcommand)]
enum Cmd {
    /// Route, schedule and price one circuit; writes schedule.txt,
    /// routed.lqasm and report.json.
    Compile {
        circuit: PathBuf,
        #[arg(long)]
        device: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        max_swap_len: Option<usize>,
        #[arg(long, value_enum, default_value = "lookahead")]
        router: RouterArg,
        /// Print report.json to stdout as well.
        #[arg(long)]
        json: bool,
    },
    /// One compile per max_swap_len value; CSV to stdout or --out.
    Sweep {
        circuit: PathBuf,
        #[arg(long)]
        device: PathBuf,
        /// Inclusive range such as `3..7`; defaults to every valid value.
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit rows as JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Emit a seeded benchmark circuit.
    Gen {
        family: Family,
        qubits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Family parameter, e.g. `--param layers=4`; repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check compile artifacts against the original circuit.
    Replay {
        circuit: PathBuf,
        /// Directory holding routed.lqasm and schedule.txt.
        artifacts: PathBuf,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } | Error::Contract(_) | Error::Unschedulable { .. } => 3,
            Error::OracleOverflow(_) => 4,
            _ => 2,
        };
        Fail(code, e.to_string())
    }
}

type Outcome = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(Fail(code, msg)) = init_threads().and_then(|()| run(cli.cmd)) {
        eprintln!("linq: {msg}");
        return ExitCode::from(code);
    }
    ExitCode::SUCCESS
}

fn init_threads() -> Outcome {
    let Ok(raw) = std::env::var("LINQ_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Fail(
            2,
            format!("LINQ_THREADS must be a positive integer, got `{raw}`"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Fail(4, e.to_string()))
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Compile {
            circuit,
            device,
            out,
            max_swap_len,
            router,
            json,
        } => {
            let mut device = load_device(&device)?;
            if let Some(v) = max_swap_len {
                device = device.with_max_swap_len(v);
            }
            let router = match router {
                RouterArg::Lookahead => RouterKind::Lookahead,
                RouterArg::Baseline => RouterKind::Baseline,
            };
            let c = compile_with(&load_circuit(&circuit)?, &device, router)?;
            let verdict = replay_check(&c.logical, &c.routed, &c.schedule);
            if !verdict.passed() {
                return Err(Fail(
                    4,
                    format!("compiled output fails its own replay:\n{verdict}"),
                ));
            }
            let report = RunReport::of(&c).to_json();
            fsio::create_dir(&out)?;
            fsio::write_atomic(&out.join("schedule.txt"), &schedule_text(&c))?;
            fsio::write_atomic(&out.join("routed.lqasm"), &routed_text(&c))?;
            fsio::write_atomic(&out.join("report.json"), &report)?;
            if json {
                print!("{report}");
            }
            Ok(())
        }
        Cmd::Sweep {
            circuit,
            device,
            range,
            out,
            json,
        } => {
            let device = load_device(&device)?;
            let range = match range {
                Some(r) => parse_range(&r)?,
                None => 2..=tilt_core::router::RouterConfig::max_swap_len_ceiling(device.head_size),
            };
            let rows = sweep(&load_circuit(&circuit)?, &device, range)?;
            let text = if json {
                let mut s =
                    serde_json::to_string_pretty(&rows).map_err(|e| Fail(4, e.to_string()))?;
                s.push('\n');
                s
            } else {
                sweep_csv(&rows)
            };
            emit(out.as_deref(), &text)
        }
        Cmd::Gen {
            family,
            qubits,
            seed,
            params,
            out,
        } => {
            let mut spec = BenchmarkSpec::new(family, qubits, seed);
            for p in &params {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| Fail(2, format!("--param expects KEY=VALUE, got `{p}`")))?;
                spec.params.set(k.trim(), v.trim())?;
            }
            emit(out.as_deref(), &generate(&spec)?)
        }
        Cmd::Replay { circuit, artifacts } => {
            let original = load_circuit(&circuit)?;
            let routed = parse_routed(&fsio::read(&artifacts.join("routed.lqasm"))?)?;
            let schedule = parse_schedule(&fsio::read(&artifacts.join("schedule.txt"))?, &routed)?;
            let verdict = replay_check(&original, &routed, &schedule);
            println!("{verdict}");
            if verdict.passed() {
                Ok(())
            } else {
                Err(Fail(
                    1,
                    format!("{} violation(s)", verdict.violations.len()),
                ))
            }
        }
    }
}

fn load_device(path: &Path) -> Result<DeviceSpec, Fail> {
    fsio::read(path)?
        .parse()
        .map_err(|e: Error| Fail(2, format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<tilt_core::Circuit, Fail> {
    compile_source(&fsio::read(path)?).map_err(|e| {
        let Fail(code, msg) = Fail::from(e);
        Fail(code, format!("{}: {msg}", path.display()))
    })
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fsio::write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Accepts `a..b`, `a..=b` and `a-b`, all inclusive.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Fail> {
    let bad = || Fail(2, format!("bad range `{s}`; expected e.g. 3..7"));
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    Ok(a..=b)
}
