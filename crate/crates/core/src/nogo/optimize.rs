use std::collections::VecDeque;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::{
    circuit_on_ancilla_zero, process_fidelity_kraus, sample_oracles, target_unitary, Oracle,
    OracleInsertion,
};
use super::circuit::{hermitian_exp, hermitian_from_params, CircuitDims, ParamCircuit, TargetKind};
use crate::error::{Error, Result};
use crate::hilbert::CMatrix;
use crate::rng::{derive_seed, seeded_rng};

/// Local search used inside each restart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AscentMethod {
    /// Quasi-Newton (L-BFGS) ascent on a central-difference gradient.
    #[default]
    Gradient,
    /// Derivative-free Nelder-Mead.
    Simplex,
}

/// Where the oracle set comes from.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleSampling {
    /// `sample_count` Haar-random draws from the run seed.
    #[default]
    Haar,
    /// An explicit list, e.g. a single known gate.
    Fixed(Vec<Oracle>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub ancilla: usize,
    pub system: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub sample_count: usize,
    pub seed: u64,
    /// Central-difference step for the gradient.
    pub fd_step: f64,
    /// Stop once a step moves no parameter by more than this.
    pub step_tolerance: f64,
    /// Stop once an iteration improves the objective by less than this.
    pub convergence_tolerance: f64,
    /// Standard deviation of the initial parameters.
    pub init_scale: f64,
    /// Softmin temperature of the ascent surrogate; `0` ascends on the plain
    /// minimum.
    pub smoothing: f64,
    pub method: AscentMethod,
    pub oracles: OracleSampling,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            ancilla: 2,
            system: 2,
            restarts: 20,
            max_iters: 400,
            sample_count: 16,
            seed: 42,
            fd_step: 1e-6,
            step_tolerance: 1e-10,
            convergence_tolerance: 1e-11,
            init_scale: 1.0,
            smoothing: 0.01,
            method: AscentMethod::Gradient,
            oracles: OracleSampling::Haar,
        }
    }
}

impl SearchConfig {
    pub fn dims(&self) -> Result<CircuitDims> {
        CircuitDims::new(self.ancilla, self.system)
    }

    pub fn validate(&self) -> Result<()> {
        self.dims()?;
        let positive = [
            ("restarts", self.restarts as f64),
            ("max_iters", self.max_iters as f64),
            ("sample_count", self.sample_count as f64),
            ("fd_step", self.fd_step),
            ("step_tolerance", self.step_tolerance),
            ("convergence_tolerance", self.convergence_tolerance),
            ("init_scale", self.init_scale),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if !(self.smoothing >= 0.0 && self.smoothing.is_finite()) {
            return Err(Error::InvalidConfig(
                "smoothing must be non-negative".into(),
            ));
        }
        if let OracleSampling::Fixed(list) = &self.oracles {
            if list.len() != self.sample_count {
                return Err(Error::InvalidConfig(format!(
                    "sample_count is {} but {} fixed oracles were given",
                    self.sample_count,
                    list.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartRecord {
    pub index: usize,
    pub seed: u64,
    /// Worst-case fidelity at the final parameters.
    pub final_value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub kind: TargetKind,
    pub dims: CircuitDims,
    pub config: SearchConfig,
    pub best_worst_case_fidelity: f64,
    pub best_restart: usize,
    pub restarts: Vec<RestartRecord>,
}

impl SearchReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Worst-case fidelity over a fixed oracle set as a function of the circuit
/// parameters, plus the smooth surrogate that the gradient ascent climbs.
#[derive(Clone, Debug)]
pub struct Objective {
    kind: TargetKind,
    dims: CircuitDims,
    samples: Vec<Oracle>,
    targets: Vec<CMatrix>,
    insertion: OracleInsertion,
    smoothing: f64,
}

impl Objective {
    pub fn new(
        kind: TargetKind,
        dims: CircuitDims,
        samples: Vec<Oracle>,
        insertion: OracleInsertion,
        smoothing: f64,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidConfig("no oracle samples".into()));
        }
        let targets = samples
            .iter()
            .map(|o| {
                if o.dim() != dims.system {
                    return Err(Error::DimensionMismatch {
                        expected: dims.system,
                        actual: o.dim(),
                    });
                }
                Ok(target_unitary(kind, o)?.into_matrix())
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            kind,
            dims,
            samples,
            targets,
            insertion,
            smoothing,
        })
    }

    pub fn param_count(&self) -> usize {
        ParamCircuit::param_count(self.kind, self.dims)
    }

    fn slots(&self, params: &[f64]) -> Vec<CMatrix> {
        let n = self.dims.full();
        params
            .chunks(n * n)
            .map(|c| hermitian_exp(&hermitian_from_params(c, n)))
            .collect()
    }

    fn fidelities(&self, slots: &[CMatrix]) -> Vec<f64> {
        let l = self.dims.logical();
        self.samples
            .iter()
            .zip(&self.targets)
            .map(|(oracle, target)| {
                let cols =
                    circuit_on_ancilla_zero(self.kind, self.dims, slots, oracle, self.insertion);
                let kraus: Vec<CMatrix> = (0..self.dims.ancilla)
                    .map(|k| cols.rows(k * l, l).into_owned())
                    .collect();
                process_fidelity_kraus(&kraus, target)
            })
            .collect()
    }

    fn softmin(&self, f: &[f64]) -> f64 {
        let m = f.iter().copied().fold(f64::INFINITY, f64::min);
        if self.smoothing == 0.0 {
            return m;
        }
        let t = self.smoothing;
        let s: f64 = f.iter().map(|&x| (-(x - m) / t).exp()).sum();
        m - t * s.ln()
    }

    /// Minimum fidelity over the samples.
    pub fn worst_case(&self, params: &[f64]) -> f64 {
        self.fidelities(&self.slots(params))
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// Softmin of the per-sample fidelities; a lower bound on
    /// [`Objective::worst_case`] within `smoothing · ln(samples)`.
    pub fn surrogate(&self, params: &[f64]) -> f64 {
        self.softmin(&self.fidelities(&self.slots(params)))
    }

    /// Central-difference gradient of [`Objective::surrogate`]. Only the slot
    /// holding the perturbed parameter is re-exponentiated.
    pub fn gradient(&self, params: &[f64], step: f64) -> Vec<f64> {
        let n = self.dims.full();
        let per_slot = n * n;
        let mut slots = self.slots(params);
        let mut p = params.to_vec();
        let mut grad = vec![0.0; params.len()];
        for (i, g) in grad.iter_mut().enumerate() {
            let s = i / per_slot;
            let range = s * per_slot..(s + 1) * per_slot;
            let x0 = p[i];
            p[i] = x0 + step;
            slots[s] = hermitian_exp(&hermitian_from_params(&p[range.clone()], n));
            let up = self.softmin(&self.fidelities(&slots));
            p[i] = x0 - step;
            slots[s] = hermitian_exp(&hermitian_from_params(&p[range.clone()], n));
            let down = self.softmin(&self.fidelities(&slots));
            p[i] = x0;
            slots[s] = hermitian_exp(&hermitian_from_params(&p[range], n));
            *g = (up - down) / (2.0 * step);
        }
        grad
    }
}

struct LocalResult {
    params: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// L-BFGS ascent with Armijo backtracking.
fn lbfgs_ascent(obj: &Objective, x0: Vec<f64>, cfg: &SearchConfig) -> LocalResult {
    const MEMORY: usize = 10;
    const ARMIJO: f64 = 1e-4;
    let mut x = x0;
    let mut fx = obj.surrogate(&x);
    let mut g = obj.gradient(&x, cfg.fd_step);
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();

    for iter in 0..cfg.max_iters {
        // Two-loop recursion on the negated problem, then flipped back.
        let mut q: Vec<f64> = g.clone();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * dot(s, &q);
            for (qi, yi) in q.iter_mut().zip(y) {
                *qi += a * yi;
            }
            alphas.push(a);
        }
        let gamma = history
            .back()
            .map(|(s, y, _)| -dot(s, y) / dot(y, y))
            .unwrap_or_else(|| 1.0 / g.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-12));
        for qi in q.iter_mut() {
            *qi *= gamma;
        }
        for ((s, y, rho), a) in history.iter().zip(alphas.into_iter().rev()) {
            let b = -rho * dot(y, &q);
            for (qi, si) in q.iter_mut().zip(s) {
                *qi += (a - b) * si;
            }
        }
        let mut dir = q;
        let mut slope = dot(&g, &dir);
        if slope.is_nan() || slope <= 0.0 {
            history.clear();
            let scale = 1.0 / g.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-12);
            dir = g.iter().map(|v| v * scale).collect();
            slope = dot(&g, &dir);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + step * di).collect();
            let ft = obj.surrogate(&trial);
            if ft >= fx + ARMIJO * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else {
            return LocalResult {
                params: x,
                iterations: iter,
                converged: true,
            };
        };

        let moved = dir.iter().fold(0.0f64, |m, d| m.max((step * d).abs()));
        let gain = f_new - fx;
        let g_new = obj.gradient(&x_new, cfg.fd_step);
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        // Curvature of the negated objective must be positive.
        let sy = -dot(&s, &y);
        if sy > 1e-14 {
            if history.len() == MEMORY {
                history.pop_front();
            }
            let y_neg: Vec<f64> = y.iter().map(|v| -v).collect();
            history.push_back((s, y_neg, 1.0 / sy));
        }
        x = x_new;
        fx = f_new;
        g = g_new;
        if moved < cfg.step_tolerance || gain < cfg.convergence_tolerance {
            return LocalResult {
                params: x,
                iterations: iter + 1,
                converged: true,
            };
        }
    }
    LocalResult {
        params: x,
        iterations: cfg.max_iters,
        converged: false,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Nelder-Mead maximization of `f` from `x0` with initial edge length
/// `scale`. Uses dimension-adapted coefficients so it stays usable for a
/// few hundred parameters. Converges when the spread of values across the
/// simplex drops below `tol`.
pub fn nelder_mead_max<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    scale: f64,
    max_iters: usize,
    tol: f64,
) -> SimplexResult {
    let n = x0.len();
    let nf = n.max(1) as f64;
    let (reflect, expand) = (1.0, 1.0 + 2.0 / nf);
    let contract = 0.75 - 1.0 / (2.0 * nf);
    let shrink = 1.0 - 1.0 / nf;
    // Minimize the negation.
    let g = |x: &[f64]| -f(x);

    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += scale;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| g(p)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        if (vals[n] - vals[0]).abs() <= tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for p in &pts[..n] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / nf;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(reflect);
        let fr = g(&xr);
        if fr < vals[0] {
            let xe = along(reflect * expand);
            let fe = g(&xe);
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
        } else {
            let (xc, fc) = if fr < vals[n] {
                let xc = along(reflect * contract);
                let fc = g(&xc);
                (xc, fc)
            } else {
                let xc = along(-contract);
                let fc = g(&xc);
                (xc, fc)
            };
            if fc < vals[n].min(fr) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                let best = pts[0].clone();
                for i in 1..=n {
                    for (p, b) in pts[i].iter_mut().zip(&best) {
                        *p = b + shrink * (*p - b);
                    }
                    vals[i] = g(&pts[i]);
                }
            }
        }
    }
    let best = (0..=n)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap();
    SimplexResult {
        x: pts[best].clone(),
        value: -vals[best],
        iterations,
        converged,
    }
}

fn draw_samples(kind: TargetKind, cfg: &SearchConfig) -> Result<Vec<Oracle>> {
    match &cfg.oracles {
        OracleSampling::Haar => {
            let mut rng = seeded_rng(cfg.seed);
            sample_oracles(kind, cfg.system, cfg.sample_count, &mut rng)
        }
        OracleSampling::Fixed(list) => Ok(list.clone()),
    }
}

/// Multi-restart maximization of the worst-case process fidelity between
/// the fixed circuit of `kind` and its controlled target.
///
/// The oracle set is drawn once from `config.seed`. Restart `r` starts from
/// Gaussian parameters drawn with its own derived seed, so the report does
/// not depend on how restarts are scheduled across threads.
pub fn optimize(kind: TargetKind, config: &SearchConfig) -> Result<SearchReport> {
    config.validate()?;
    let dims = config.dims()?;
    let samples = draw_samples(kind, config)?;
    let obj = Objective::new(
        kind,
        dims,
        samples,
        OracleInsertion::Subsystem,
        config.smoothing,
    )?;

    let restarts: Vec<(RestartRecord, Vec<f64>)> = (0..config.restarts)
        .into_par_iter()
        .map(|index| {
            let seed = derive_seed(config.seed, index as u64);
            let mut rng = seeded_rng(seed);
            let x0: Vec<f64> = (0..obj.param_count())
                .map(|_| config.init_scale * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let local = match config.method {
                AscentMethod::Gradient => lbfgs_ascent(&obj, x0, config),
                AscentMethod::Simplex => {
                    let r = nelder_mead_max(
                        |p| obj.surrogate(p),
                        &x0,
                        config.init_scale,
                        config.max_iters,
                        config.convergence_tolerance,
                    );
                    LocalResult {
                        params: r.x,
                        iterations: r.iterations,
                        converged: r.converged,
                    }
                }
            };
            let final_value = obj.worst_case(&local.params).clamp(0.0, 1.0);
            let record = RestartRecord {
                index,
                seed,
                final_value,
                iterations: local.iterations,
                converged: local.converged,
            };
            (record, local.params)
        })
        .collect();

    let records: Vec<RestartRecord> = restarts.into_iter().map(|(r, _)| r).collect();
    let best = records
        .iter()
        .max_by(|a, b| {
            a.final_value
                .total_cmp(&b.final_value)
                .then(b.index.cmp(&a.index))
        })
        .expect("at least one restart");
    Ok(SearchReport {
        kind,
        dims,
        config: config.clone(),
        best_worst_case_fidelity: best.final_value,
        best_restart: best.index,
        restarts: records,
    })
}
