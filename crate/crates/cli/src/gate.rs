//! Text forms for gates and input states.

use std::f64::consts::FRAC_PI_4;

use anyhow::{anyhow, bail, Context, Result};
use qswitch_core::hilbert::{haar_state, haar_unitary};
use qswitch_core::{seeded_rng, CMatrix, CVector, HilbertSpace, Operator, StateVector, C64};

/// Tolerance for unitarity of matrix literals.
pub const LITERAL_TOL: f64 = 1e-8;

fn number(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .with_context(|| format!("malformed number `{s}`"))?;
    if !v.is_finite() {
        bail!("malformed number `{s}`");
    }
    Ok(v)
}

fn seed(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .with_context(|| format!("malformed seed `{s}`"))
}

fn pairs(s: &str) -> Result<Vec<C64>> {
    let raw: Vec<[f64; 2]> =
        serde_json::from_str(s).with_context(|| format!("expected [[re,im],...], got `{s}`"))?;
    Ok(raw.into_iter().map(|[re, im]| C64::new(re, im)).collect())
}

fn qubit(entries: [[f64; 2]; 4]) -> CMatrix {
    CMatrix::from_row_iterator(2, 2, entries.into_iter().map(|[re, im]| C64::new(re, im)))
}

fn rotation(axis: char, theta: f64) -> CMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    match axis {
        'x' => qubit([[c, 0.0], [0.0, -s], [0.0, -s], [c, 0.0]]),
        'y' => qubit([[c, 0.0], [-s, 0.0], [s, 0.0], [c, 0.0]]),
        _ => qubit([[c, -s], [0.0, 0.0], [0.0, 0.0], [c, s]]),
    }
}

/// Parses a gate such as `x`, `rz:0.5`, `haar:7` or
/// `matrix:[[0,0],[1,0],[1,0],[0,0]]`. `dim` sizes `haar:` draws and is
/// checked against everything else.
pub fn parse_gate_spec(text: &str, dim: usize) -> Result<Operator> {
    let text = text.trim();
    let (head, arg) = match text.split_once(':') {
        Some((h, a)) => (h.to_ascii_lowercase(), Some(a)),
        None => (text.to_ascii_lowercase(), None),
    };
    let op = match (head.as_str(), arg) {
        ("i", None) => Operator::identity(dim),
        ("x", None) => Operator::pauli_x(),
        ("y", None) => Operator::pauli_y(),
        ("z", None) => Operator::pauli_z(),
        ("h", None) => Operator::hadamard(),
        ("s", None) => Operator::unitary(qubit([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 1.0]]))?,
        ("t", None) => {
            let p = C64::from_polar(1.0, FRAC_PI_4);
            Operator::unitary(qubit([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [p.re, p.im]]))?
        }
        ("rx" | "ry" | "rz", Some(a)) => {
            Operator::unitary(rotation(head.chars().nth(1).unwrap(), number(a)?))?
        }
        ("haar", Some(a)) => haar_unitary(dim, &mut seeded_rng(seed(a)?))?,
        ("matrix", Some(a)) => {
            let entries = pairs(a)?;
            let n = (entries.len() as f64).sqrt().round() as usize;
            if n == 0 || n * n != entries.len() {
                bail!(
                    "matrix literal needs a square number of entries, got {}",
                    entries.len()
                );
            }
            let m = CMatrix::from_row_iterator(n, n, entries);
            Operator::unitary_with_tol(m, LITERAL_TOL).map_err(|e| anyhow!("gate `{text}`: {e}"))?
        }
        _ => bail!("unknown gate `{text}`"),
    };
    if op.dim() != dim {
        bail!("gate `{text}` has dimension {}, expected {dim}", op.dim());
    }
    Ok(op)
}

/// Parses an internal state: `basis:k`, `haar:N` or `amps:[[re,im],...]`.
/// Amplitude lists are normalized; the returned flag says whether that
/// changed them.
pub fn parse_state_spec(text: &str, space: HilbertSpace) -> Result<(StateVector, bool)> {
    let dim = space.total_dim();
    let (head, arg) = text
        .trim()
        .split_once(':')
        .ok_or_else(|| anyhow!("state `{text}` must be basis:k, haar:N or amps:[...]"))?;
    match head {
        "basis" => {
            let k: usize = arg
                .trim()
                .parse()
                .with_context(|| format!("malformed index `{arg}`"))?;
            if k >= dim {
                bail!("basis index {k} out of range for dimension {dim}");
            }
            Ok((StateVector::basis(space, &[k])?, false))
        }
        "haar" => Ok((haar_state(space, &mut seeded_rng(seed(arg)?)), false)),
        "amps" => {
            let amps = CVector::from_vec(pairs(arg)?);
            if amps.len() != dim {
                bail!("state has {} amplitudes, expected {dim}", amps.len());
            }
            let norm = amps.norm();
            if norm == 0.0 {
                bail!("state `{text}` is zero");
            }
            let renormalized = (norm - 1.0).abs() > 1e-12;
            Ok((StateVector::normalized(space, amps)?, renormalized))
        }
        _ => bail!("state `{text}` must be basis:k, haar:N or amps:[...]"),
    }
}
