use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;

use qswitch_core::hilbert::fidelity_mixed;
use qswitch_core::ion::{self, PulseSequence, TrapSpace};
use qswitch_core::nogo::TargetKind;
use qswitch_core::photonic::{self, Network, PresetId, SchemeOutcome, INPUT_PATH};
use qswitch_core::{seeded_rng, Bindings, Operator, StateVector, C64};

use crate::gate::{parse_gate_spec, parse_state_spec};

#[derive(Args, Debug)]
pub struct RunArgs {
    /// fig2, fig2-bb, fig5, fig5-bb, ion-ctrl-u or ion-ctrl-switch
    #[arg(long, conflicts_with_all = ["scheme", "sequence"])]
    pub preset: Option<String>,
    /// Photonic network file (JSON); input and output on path `u`
    #[arg(long, requires = "target", conflicts_with = "sequence")]
    pub scheme: Option<PathBuf>,
    /// Ion pulse-sequence file (JSON)
    #[arg(long, requires = "target")]
    pub sequence: Option<PathBuf>,
    /// Target for file schemes: ctrl-u or switch
    #[arg(long)]
    pub target: Option<TargetKind>,
    /// Gate bound to slot `U`
    #[arg(long)]
    pub u: Option<String>,
    /// Gate bound to slot `Uf`
    #[arg(long)]
    pub uf: Option<String>,
    /// Gate bound to slot `Ug`
    #[arg(long)]
    pub ug: Option<String>,
    /// Control amplitude on the "off" branch
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Control amplitude on the "on" branch
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2, allow_negative_numbers = true)]
    pub beta: f64,
    /// Phase of beta in radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta_phase: f64,
    /// Internal state: basis:k, haar:N or amps:[[re,im],...] (default haar:<seed>)
    #[arg(long)]
    pub psi: Option<String>,
    /// Internal dimension of the photon (ion schemes are fixed at 2)
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample big-brother measurements with the seed instead of keeping the ensemble
    #[arg(long)]
    pub sample: bool,
    /// Pass threshold: fidelity >= 1 - tolerance
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

enum Scheme {
    Photonic(Network),
    Ion(PulseSequence),
}

#[derive(Serialize)]
struct BindingEcho {
    spec: String,
    matrix: Operator,
}

#[derive(Serialize)]
struct InputEcho {
    alpha: [f64; 2],
    beta: [f64; 2],
    psi: Vec<[f64; 2]>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum OutputEcho {
    Pure {
        amplitudes: Vec<[f64; 2]>,
    },
    Mixed {
        density_matrix: Vec<Vec<[f64; 2]>>,
    },
    Sampled {
        outcome: usize,
        probability: f64,
        amplitudes: Vec<[f64; 2]>,
    },
}

#[derive(Serialize)]
struct RunReport {
    tool: &'static str,
    version: &'static str,
    scheme: String,
    platform: &'static str,
    target: TargetKind,
    dim: usize,
    /// Amplitude ordering of the output, leftmost factor slowest.
    basis: Vec<(String, usize)>,
    bindings: BTreeMap<String, BindingEcho>,
    input: InputEcho,
    output: OutputEcho,
    fidelity: f64,
    tolerance: f64,
    /// `null` when a measurement makes the fidelity informational only.
    passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ground_mode: Option<bool>,
    seed: u64,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn amps(s: &StateVector) -> Vec<[f64; 2]> {
    s.amps().iter().copied().map(pair).collect()
}

fn load_scheme(args: &RunArgs) -> Result<(String, Scheme, TargetKind)> {
    if let Some(name) = &args.preset {
        let d = args.dim.unwrap_or(2);
        return match name.as_str() {
            "ion-ctrl-u" => Ok((
                name.clone(),
                Scheme::Ion(ion::seq_ctrl_u()),
                TargetKind::CtrlU,
            )),
            "ion-ctrl-switch" => Ok((
                name.clone(),
                Scheme::Ion(ion::seq_ctrl_switch()),
                TargetKind::Switch,
            )),
            other => {
                let id: PresetId = other.parse()?;
                if d == 0 {
                    bail!("--dim must be positive");
                }
                let kind = if id.is_switch() {
                    TargetKind::Switch
                } else {
                    TargetKind::CtrlU
                };
                Ok((
                    name.clone(),
                    Scheme::Photonic(photonic::preset(id, d)),
                    kind,
                ))
            }
        };
    }
    let target = args
        .target
        .context("--target is required with a scheme file")?;
    if let Some(path) = &args.scheme {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let net = Network::from_json(&text)
            .with_context(|| format!("invalid scheme {}", path.display()))?;
        if net.space().path_index(INPUT_PATH).is_err() {
            bail!("scheme must have a path named `{INPUT_PATH}`");
        }
        return Ok((path.display().to_string(), Scheme::Photonic(net), target));
    }
    if let Some(path) = &args.sequence {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let seq = PulseSequence::from_json(&text)
            .with_context(|| format!("invalid sequence {}", path.display()))?;
        return Ok((path.display().to_string(), Scheme::Ion(seq), target));
    }
    bail!("one of --preset, --scheme or --sequence is required")
}

fn control(args: &RunArgs) -> Result<(C64, C64)> {
    for (flag, v) in [
        ("alpha", args.alpha),
        ("beta", args.beta),
        ("beta-phase", args.beta_phase),
    ] {
        if !v.is_finite() {
            bail!("--{flag} must be finite");
        }
    }
    let norm = args.alpha.hypot(args.beta);
    if norm == 0.0 {
        bail!("alpha and beta cannot both be zero");
    }
    if (norm - 1.0).abs() > 1e-12 {
        eprintln!(
            "warning: |alpha|^2 + |beta|^2 = {}; normalizing",
            norm * norm
        );
    }
    Ok((
        C64::new(args.alpha / norm, 0.0),
        C64::from_polar(args.beta / norm, args.beta_phase),
    ))
}

fn bind(
    args: &RunArgs,
    kind: TargetKind,
    dim: usize,
) -> Result<(Bindings, BTreeMap<String, BindingEcho>)> {
    let wanted: &[(&str, &Option<String>, &str)] = match kind {
        TargetKind::CtrlU => &[("U", &args.u, "--u")],
        TargetKind::Switch => &[("Uf", &args.uf, "--uf"), ("Ug", &args.ug, "--ug")],
    };
    let mut bindings = Bindings::new();
    let mut echo = BTreeMap::new();
    for (slot, spec, flag) in wanted {
        let spec = spec
            .as_ref()
            .with_context(|| format!("{flag} is required for this scheme"))?;
        let op = parse_gate_spec(spec, dim).with_context(|| flag.to_string())?;
        bindings.bind(*slot, op.clone());
        echo.insert(
            slot.to_string(),
            BindingEcho {
                spec: spec.clone(),
                matrix: op,
            },
        );
    }
    Ok((bindings, echo))
}

/// Runs the scheme, writes the report and returns whether it passed.
pub fn run(args: &RunArgs) -> Result<bool> {
    if !(args.tolerance >= 0.0 && args.tolerance.is_finite()) {
        bail!("--tolerance must be non-negative");
    }
    let (name, scheme, kind) = load_scheme(args)?;
    let dim = match &scheme {
        Scheme::Photonic(net) => net.space().internal_dim(),
        Scheme::Ion(_) => 2,
    };
    if let Some(d) = args.dim {
        if d != dim {
            bail!("--dim {d} does not match the scheme's internal dimension {dim}");
        }
    }
    let (alpha, beta) = control(args)?;
    let (bindings, echo) = bind(args, kind, dim)?;
    let psi_spec = args
        .psi
        .clone()
        .unwrap_or_else(|| format!("haar:{}", args.seed));
    let internal = qswitch_core::HilbertSpace::single("internal", dim)?;
    let (psi, renormalized) = parse_state_spec(&psi_spec, internal).context("--psi")?;
    if renormalized {
        eprintln!("warning: --psi was not normalized; normalizing");
    }
    let op = |slot: &str| bindings.get(slot).expect("bound above").clone();

    let (platform, basis, output, target, measured, ground_mode) = match &scheme {
        Scheme::Photonic(net) => {
            let space = net.space();
            let input = space.control_input(INPUT_PATH, alpha, beta, &psi)?;
            let out = if args.sample {
                photonic::propagate_sampled(net, &input, &bindings, &mut seeded_rng(args.seed))?
            } else {
                photonic::propagate(net, &input, &bindings)?
            };
            let target = match kind {
                TargetKind::CtrlU => photonic::ctrl_u_target(space, alpha, beta, &psi, &op("U"))?,
                TargetKind::Switch => {
                    photonic::switch_target(space, alpha, beta, &psi, &op("Uf"), &op("Ug"))?
                }
            };
            let echo = match &out {
                SchemeOutcome::Pure(s) => OutputEcho::Pure {
                    amplitudes: amps(s),
                },
                SchemeOutcome::Mixed(rho) => OutputEcho::Mixed {
                    density_matrix: rho
                        .matrix()
                        .row_iter()
                        .map(|r| r.iter().copied().map(pair).collect())
                        .collect(),
                },
                SchemeOutcome::Sampled {
                    outcome,
                    state,
                    probability,
                } => OutputEcho::Sampled {
                    outcome: *outcome,
                    probability: *probability,
                    amplitudes: amps(state),
                },
            };
            let basis = space
                .hilbert()
                .factors()
                .iter()
                .map(|f| (f.label.clone(), f.dim))
                .collect();
            (
                "photonic",
                basis,
                echo,
                (out.density_matrix(), target),
                net.has_big_brother(),
                None,
            )
        }
        Scheme::Ion(seq) => {
            let space = TrapSpace::default();
            let init = space.product_state(
                TrapSpace::qubit(alpha, beta),
                TrapSpace::qubit(psi.amps()[0], psi.amps()[1]),
                0,
            )?;
            let (fin, _) = ion::run_sequence(seq, &space, &init, &bindings)?;
            let target = match kind {
                TargetKind::CtrlU => ion::ctrl_u_target(&space, alpha, beta, &psi, &op("U"))?,
                TargetKind::Switch => {
                    ion::ctrl_switch_target(&space, alpha, beta, &psi, &op("Uf"), &op("Ug"))?
                }
            };
            let ground = ion::is_in_ground_mode(&fin, args.tolerance.max(f64::MIN_POSITIVE));
            let basis = space
                .hilbert()
                .factors()
                .iter()
                .map(|f| (f.label.clone(), f.dim))
                .collect();
            let echo = OutputEcho::Pure {
                amplitudes: amps(&fin),
            };
            let rho = qswitch_core::DensityMatrix::from_pure(&fin);
            ("ion", basis, echo, (rho, target), false, Some(ground))
        }
    };

    let fidelity = fidelity_mixed(&target.0, &target.1)?.clamp(0.0, 1.0);
    let passed = if measured {
        None
    } else {
        Some(fidelity >= 1.0 - args.tolerance && ground_mode.unwrap_or(true))
    };
    let report = RunReport {
        tool: "qswitch",
        version: env!("CARGO_PKG_VERSION"),
        scheme: name,
        platform,
        target: kind,
        dim,
        basis,
        bindings: echo,
        input: InputEcho {
            alpha: pair(alpha),
            beta: pair(beta),
            psi: amps(&psi),
        },
        output,
        fidelity,
        tolerance: args.tolerance,
        passed,
        ground_mode,
        seed: args.seed,
    };
    crate::output::emit(args.out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
    if passed == Some(false) {
        eprintln!("fidelity {fidelity} is below 1 - {}", args.tolerance);
    }
    Ok(passed != Some(false))
}
