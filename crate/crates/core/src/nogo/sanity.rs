use serde::{Deserialize, Serialize};

use crate::bindings::Bindings;
use crate::error::Result;
use crate::hilbert::{fidelity_mixed, haar_state, haar_unitary, HilbertSpace};
use crate::photonic::{
    ctrl_u_target, preset_fig2, preset_fig5, propagate, switch_target, INPUT_PATH,
};
use crate::rng::seeded_rng;

/// Minimum output fidelities of the photonic pipelines, which get the
/// unknown gates as devices rather than as `𝟙 ⊗ U`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSanity {
    pub ctrl_u: f64,
    pub switch: f64,
}

impl OracleSanity {
    pub fn min(&self) -> f64 {
        self.ctrl_u.min(self.switch)
    }
}

/// Runs both photonic presets on `samples` random inputs (control state,
/// internal state and gates all Haar-random) and reports the worst fidelity
/// with the ideal output.
pub fn oracle_sanity(d: usize, samples: usize, seed: u64) -> Result<OracleSanity> {
    let mut rng = seeded_rng(seed);
    let control = HilbertSpace::single("c", 2)?;

    let fig2 = preset_fig2(d);
    let fig5 = preset_fig5(d);
    let mut ctrl_u = 1.0f64;
    let mut switch = 1.0f64;
    for _ in 0..samples {
        let c = haar_state(control.clone(), &mut rng);
        let (alpha, beta) = (c.amps()[0], c.amps()[1]);
        let psi = haar_state(fig2.space().internal_space(), &mut rng);
        let input = fig2.space().control_input(INPUT_PATH, alpha, beta, &psi)?;

        let u = haar_unitary(d, &mut rng)?;
        let out = propagate(&fig2, &input, &Bindings::new().with("U", u.clone()))?;
        let target = ctrl_u_target(fig2.space(), alpha, beta, &psi, &u)?;
        ctrl_u = ctrl_u.min(fidelity_mixed(&out.density_matrix(), &target)?);

        let uf = haar_unitary(d, &mut rng)?;
        let ug = haar_unitary(d, &mut rng)?;
        let bind = Bindings::new()
            .with("Uf", uf.clone())
            .with("Ug", ug.clone());
        let out = propagate(&fig5, &input, &bind)?;
        let target = switch_target(fig5.space(), alpha, beta, &psi, &uf, &ug)?;
        switch = switch.min(fidelity_mixed(&out.density_matrix(), &target)?);
    }
    Ok(OracleSanity { ctrl_u, switch })
}
