use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use relqi::cli::{
    cmd_bell_transform, cmd_entropy_demo, cmd_generators_check, cmd_invariance_sweep, cmd_wigner,
    parse_amplitudes, parse_vector3, BellArgs, CmdResult, Format, GeneratorArgs, LambdaFactor,
    OutputSpec, RunConfig, SweepArgs, Tolerances, UsageError, WignerArgs, EXIT_USAGE,
};
use relqi::generators::GridSpec;

#[derive(Parser, Debug)]
#[command(
    name = "relqi",
    version,
    about = "Wigner rotations, Bell-state transformations and entropy checks"
)]
struct Cli {
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// json | csv
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override a tolerance, e.g. `--tol oracle=1e-9` (repeatable)
    #[arg(long = "tol", global = true)]
    tol: Vec<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// `--rotate ψ,nx,ny,nz` and `--boost α,nx,ny,nz`, multiplied in the order given.
#[derive(Args, Debug)]
struct LambdaArgs {
    #[arg(long, allow_hyphen_values = true)]
    rotate: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    boost: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Wigner rotation of Λ at momentum p
    Wigner {
        #[command(flatten)]
        lambda: LambdaArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0,0")]
        momentum: String,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
    },
    /// SO(4) rotation of Bell amplitudes
    BellTransform {
        #[command(flatten)]
        lambda: LambdaArgs,
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, allow_hyphen_values = true)]
        p2: String,
        #[arg(long, default_value_t = 1.0)]
        m1: f64,
        #[arg(long, default_value_t = 1.0)]
        m2: f64,
        /// `a0,a1,a2,a3` or `re0,im0,…,re3,im3`
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0,0")]
        amps: String,
    },
    /// Entropies of the two worked examples by every route
    EntropyDemo,
    /// Seeded sweep of entropy changes under random Λ
    InvarianceSweep {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 3.0)]
        max_rapidity: f64,
    },
    /// Generator commutators, convergence order and Hermiticity
    GeneratorsCheck {
        #[arg(long, default_value_t = 33)]
        n: usize,
        /// Half-width P of the momentum box (default 4m)
        #[arg(long)]
        extent: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 2)]
        levels: usize,
    },
}

/// Factors in command-line order, regardless of flag kind.
fn lambda_factors(m: &ArgMatches) -> relqi::Result<Vec<LambdaFactor>> {
    let mut out: Vec<(usize, LambdaFactor)> = Vec::new();
    for (flag, make) in [
        (
            "rotate",
            LambdaFactor::rotate as fn(&str) -> relqi::Result<LambdaFactor>,
        ),
        ("boost", LambdaFactor::boost),
    ] {
        if let (Some(idx), Some(vals)) = (m.indices_of(flag), m.get_many::<String>(flag)) {
            for (i, v) in idx.zip(vals) {
                out.push((i, make(v)?));
            }
        }
    }
    out.sort_by_key(|(i, _)| *i);
    Ok(out.into_iter().map(|(_, f)| f).collect())
}

fn run(cli: Cli, matches: &ArgMatches) -> Result<(relqi::cli::Report, OutputSpec), UsageError> {
    let mut tolerances = Tolerances::default();
    for t in &cli.tol {
        tolerances.set_from_str(t)?;
    }
    let output = OutputSpec {
        path: cli.output.clone(),
        format: cli.format.parse::<Format>()?,
    };
    let mut cfg = RunConfig {
        seed: cli.seed,
        tolerances,
        output: output.clone(),
        ..RunConfig::default()
    };
    let sub = matches.subcommand().map(|(_, m)| m);
    let report: CmdResult = match cli.cmd {
        Cmd::Wigner { momentum, mass, .. } => {
            let args = WignerArgs {
                lambda: lambda_factors(sub.expect("subcommand matches"))?,
                momentum: parse_vector3(&momentum)?,
                mass,
            };
            cmd_wigner(&cfg, &args)
        }
        Cmd::BellTransform {
            p1,
            p2,
            m1,
            m2,
            amps,
            ..
        } => {
            let args = BellArgs {
                p1: parse_vector3(&p1)?,
                p2: parse_vector3(&p2)?,
                masses: (m1, m2),
                lambda: lambda_factors(sub.expect("subcommand matches"))?,
                amplitudes: parse_amplitudes(&amps)?,
            };
            cmd_bell_transform(&cfg, &args)
        }
        Cmd::EntropyDemo => cmd_entropy_demo(&cfg),
        Cmd::InvarianceSweep {
            samples,
            max_rapidity,
        } => cmd_invariance_sweep(
            &cfg,
            &SweepArgs {
                n_samples: samples,
                max_rapidity,
            },
        ),
        Cmd::GeneratorsCheck {
            n,
            extent,
            mass,
            levels,
        } => {
            cfg.grid = GridSpec::new(n, extent.unwrap_or(4.0 * mass), mass)?;
            cmd_generators_check(&cfg, &GeneratorArgs { levels })
        }
    };
    Ok((report?, output))
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli, &matches) {
        Ok((report, output)) => {
            if let Err(e) = report.write(&output) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
            if !report.pass {
                let failed: Vec<_> = report
                    .checks
                    .iter()
                    .filter(|(_, ok)| !**ok)
                    .map(|(k, _)| k)
                    .collect();
                eprintln!("check failed: {failed:?}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
