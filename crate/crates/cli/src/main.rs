//! `cyclident`: verify root-of-unity sum identities exactly or numerically.

mod eval;
mod output;
mod sweep;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclident::acceptance::{run_all, AcceptanceConfig, DEFAULT_SEED};
use cyclident::numeric::{BigFloat, PrecisionContext};
use cyclident::{Error, IdentityId, IdentityReport, Mode, Result, Status};
use rayon::prelude::*;

use eval::{angle_for_root, check_accepted, evaluate, IntParams};
use output::{emit, Format, Summary};
use sweep::{integer_grid, parse_range, sample_angles, Cell};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
    Both,
}

#[derive(Parser)]
#[command(name = "cyclident", version, about, allow_negative_numbers = true)]
struct Cli {
    /// Evaluation mode; defaults to exact where the identity supports it.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,

    /// Reported precision of numeric evaluations, in bits (at least 64).
    #[arg(long, global = true, env = "CYCLIDENT_PRECISION_BITS", default_value_t = 128)]
    precision_bits: usize,

    /// Seed for sampled angles.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    parallelism: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity at one parameter point.
    Verify {
        #[arg(value_parser = parse_identity)]
        identity: IdentityId,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Verify an identity over a parameter grid.
    Sweep {
        #[arg(value_parser = parse_identity)]
        identity: IdentityId,
        /// `name=min:max[:step]`, `name=v1,v2,...` or `root-exp=all[:cap]`; repeatable.
        #[arg(long = "range", value_name = "SPEC")]
        ranges: Vec<String>,
        /// Sampled angles per cell for numeric evaluations without a fixed angle.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the built-in acceptance suite.
    Selftest {
        /// Print the scorecard as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Default)]
struct ParamArgs {
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    l: Option<i64>,
    #[arg(long)]
    delta: Option<i64>,
    /// Root order N.
    #[arg(long)]
    order: Option<i64>,
    /// Exponent a of the root ζ_N^a (default 1).
    #[arg(long)]
    root_exp: Option<i64>,
    /// Angle θ or x: a decimal, or a rational multiple of π such as `2/7pi`.
    #[arg(long, visible_alias = "x")]
    theta: Option<String>,
}

impl ParamArgs {
    fn ints(&self) -> IntParams {
        IntParams([self.l, self.m, self.n, self.delta, self.order, self.root_exp])
    }
}

fn parse_identity(s: &str) -> std::result::Result<IdentityId, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = IdentityId::ALL.iter().map(|id| id.as_str()).collect();
        format!("unknown identity '{s}'; expected one of {}", names.join(", "))
    })
}

/// Modes to run for an identity under the `--mode` flag.
fn modes_for(id: IdentityId, mode: Option<ModeArg>) -> Result<Vec<Mode>> {
    let wanted = match mode {
        None => vec![id.default_mode()],
        Some(ModeArg::Exact) => vec![Mode::Exact],
        Some(ModeArg::Numeric) => vec![Mode::Numeric],
        Some(ModeArg::Both) => vec![Mode::Exact, Mode::Numeric],
    };
    let modes: Vec<Mode> = wanted.into_iter().filter(|&m| id.supports(m)).collect();
    if modes.is_empty() {
        return Err(Error::InvalidParameter(format!("{id} has no {} mode", mode.map_or("default", |m| match m {
            ModeArg::Exact => "exact",
            ModeArg::Numeric => "numeric",
            ModeArg::Both => "matching",
        }))));
    }
    Ok(modes)
}

fn invalid(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    eprintln!("run `cyclident --help` for usage");
    ExitCode::from(EXIT_INVALID)
}

fn exit_for(reports: &[IdentityReport]) -> ExitCode {
    let s = Summary::of(reports);
    if s.failed > 0 {
        ExitCode::from(EXIT_FAIL)
    } else if s.passed == 0 {
        ExitCode::from(EXIT_INVALID)
    } else {
        ExitCode::from(EXIT_PASS)
    }
}

fn report_notes(reports: &[IdentityReport]) {
    for r in reports {
        if r.status != Status::Pass {
            if let Some(note) = &r.note {
                eprintln!("{} {}: {note}", r.identity, r.status);
            }
        }
    }
}

fn parse_angle(p: &ParamArgs, ctx: &PrecisionContext) -> Result<Option<BigFloat>> {
    p.theta.as_deref().map(|t| ctx.parse_real(t)).transpose()
}

/// Numeric companion angle for an exact root cell, when `--mode both` pairs them.
fn paired_angle(id: IdentityId, p: &IntParams, ctx: &PrecisionContext) -> Result<Option<BigFloat>> {
    match (p.get("order"), p.get("root_exp")) {
        (Some(order), Some(a)) => angle_for_root(id, order, a, ctx).map(Some),
        _ => Ok(None),
    }
}

fn cmd_verify(cli: &Cli, id: IdentityId, params: &ParamArgs) -> Result<Vec<IdentityReport>> {
    let ctx = PrecisionContext::new(cli.precision_bits)?;
    let ints = params.ints();
    let angle = parse_angle(params, &ctx)?;
    check_accepted(id, &ints, angle.is_some())?;
    let mut reports = Vec::new();
    for mode in modes_for(id, cli.mode)? {
        reports.push(evaluate(id, mode, &ints, angle.as_ref(), &ctx)?);
    }
    Ok(reports)
}

fn build_cells(id: IdentityId, mode: Mode, grid: &[IntParams], angle: Option<&BigFloat>, samples: usize, cli: &Cli, ctx: &PrecisionContext) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for p in grid {
        if mode == Mode::Exact {
            cells.push(Cell { params: *p, angle: None });
            continue;
        }
        if let Some(t) = angle {
            cells.push(Cell { params: *p, angle: Some(t.clone()) });
        } else if let Some(t) = paired_angle(id, p, ctx)? {
            cells.push(Cell { params: *p, angle: Some(t) });
        } else {
            let n = p.get("n").ok_or_else(|| Error::InvalidParameter(format!("{id} requires --n")))?;
            for t in sample_angles(id, n, cli.seed, samples, ctx)? {
                cells.push(Cell { params: *p, angle: Some(t) });
            }
        }
    }
    Ok(cells)
}

fn cmd_sweep(cli: &Cli, id: IdentityId, ranges: &[String], samples: usize, params: &ParamArgs) -> Result<Vec<IdentityReport>> {
    let ctx = PrecisionContext::new(cli.precision_bits)?;
    let ranges = ranges.iter().map(|r| parse_range(r)).collect::<Result<Vec<_>>>()?;
    let angle = parse_angle(params, &ctx)?;
    check_accepted(id, &params.ints(), angle.is_some())?;
    let grid = integer_grid(id, &params.ints(), &ranges)?;
    let mut jobs = Vec::new();
    for p in &grid {
        for mode in modes_for(id, cli.mode)? {
            for cell in build_cells(id, mode, std::slice::from_ref(p), angle.as_ref(), samples, cli, &ctx)? {
                jobs.push((mode, cell));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.parallelism as usize)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    // Collecting an indexed parallel iterator keeps grid order.
    pool.install(|| jobs.par_iter().map(|(mode, c)| evaluate(id, *mode, &c.params, c.angle.as_ref(), &ctx)).collect())
}

fn cmd_selftest(cli: &Cli, json: bool) -> ExitCode {
    let card = run_all(&AcceptanceConfig { seed: cli.seed, ..AcceptanceConfig::default() });
    if json || cli.format == Format::Json {
        println!("{}", card.to_json());
    } else {
        println!("{card}");
    }
    ExitCode::from(if card.all_passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (reports, summary) = match &cli.command {
        Command::Selftest { json } => return cmd_selftest(&cli, *json),
        Command::Verify { identity, params } => (cmd_verify(&cli, *identity, params), false),
        Command::Sweep { identity, ranges, samples, params } => (cmd_sweep(&cli, *identity, ranges, *samples, params), true),
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    let s = summary.then(|| Summary::of(&reports));
    if let Err(e) = emit(cli.format, &reports, s) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    if summary {
        if s.is_some_and(|s| s.total == s.inapplicable) {
            eprintln!("error: empty effective grid: no applicable parameter combination");
            return ExitCode::from(EXIT_INVALID);
        }
    } else {
        report_notes(&reports);
    }
    exit_for(&reports)
}
