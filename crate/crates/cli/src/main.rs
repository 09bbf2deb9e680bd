//! `qswitch`: run the controlled-gate schemes, the fixed-circuit search, and
//! export preset schemes as JSON.

mod gate;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qswitch_core::nogo::{self, AscentMethod, Oracle, OracleSampling, SearchConfig, TargetKind};
use qswitch_core::photonic::{self, PresetId};
use qswitch_core::{ion, Operator};

#[derive(Parser, Debug)]
#[command(name = "qswitch", version, about = "Quantum control of unknown gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scheme and compare its output with the ideal controlled state
    Run(run::RunArgs),
    /// Optimize fixed circuits that call the gate as 𝟙 ⊗ U
    Nogo(NogoArgs),
    /// Print a preset as a scheme or pulse-sequence file
    EmitScheme(EmitArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Gradient,
    Simplex,
}

#[derive(Args, Debug)]
struct NogoArgs {
    /// ctrl-u or switch
    #[arg(long)]
    kind: TargetKind,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 2)]
    ancilla: usize,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 400)]
    max_iters: usize,
    #[arg(long, value_enum, default_value_t = Method::Gradient)]
    method: Method,
    /// Softmin temperature of the ascent objective
    #[arg(long, default_value_t = 0.01)]
    smoothing: f64,
    /// Use the identity as a known gate instead of Haar samples
    #[arg(long)]
    known_oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EmitArgs {
    /// fig2, fig2-bb, fig5, fig5-bb, ion-ctrl-u or ion-ctrl-switch
    #[arg(long)]
    preset: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn nogo(args: &NogoArgs) -> Result<()> {
    let oracles = if args.known_oracle {
        let id = Operator::identity(args.dim);
        let one = match args.kind {
            TargetKind::CtrlU => Oracle::Single(id),
            TargetKind::Switch => Oracle::Pair {
                f: id.clone(),
                g: id,
            },
        };
        OracleSampling::Fixed(vec![one; args.samples])
    } else {
        OracleSampling::Haar
    };
    let config = SearchConfig {
        ancilla: args.ancilla,
        system: args.dim,
        restarts: args.restarts,
        max_iters: args.max_iters,
        sample_count: args.samples,
        seed: args.seed,
        smoothing: args.smoothing,
        method: match args.method {
            Method::Gradient => AscentMethod::Gradient,
            Method::Simplex => AscentMethod::Simplex,
        },
        oracles,
        ..SearchConfig::default()
    };
    let report = nogo::optimize(args.kind, &config)?;
    output::emit(args.out.as_deref(), &report.to_json()?)
}

fn emit_scheme(args: &EmitArgs) -> Result<()> {
    let text = match args.preset.as_str() {
        "ion-ctrl-u" => ion::seq_ctrl_u().to_json(),
        "ion-ctrl-switch" => ion::seq_ctrl_switch().to_json(),
        other => {
            if args.dim == 0 {
                bail!("--dim must be positive");
            }
            let id: PresetId = other.parse()?;
            photonic::preset(id, args.dim).to_json()
        }
    };
    output::emit(args.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => run::run(args),
        Command::Nogo(args) => nogo(args).map(|()| true),
        Command::EmitScheme(args) => emit_scheme(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
