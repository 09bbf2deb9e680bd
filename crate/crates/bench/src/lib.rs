//! Seeded inputs shared by the benchmarks.

use qswitch_core::hilbert::{haar_state, haar_unitary};
use qswitch_core::ion::TrapSpace;
use qswitch_core::nogo::{
    sample_oracles, CircuitDims, Objective, OracleInsertion, ParamCircuit, TargetKind,
};
use qswitch_core::photonic::{preset_fig5, Network, INPUT_PATH};
use qswitch_core::{seeded_rng, Bindings, HilbertSpace, StateVector, C64};

/// Switch interferometer with Haar gates and a Haar input.
pub fn fig5_instance(d: usize, seed: u64) -> (Network, StateVector, Bindings) {
    let mut rng = seeded_rng(seed);
    let net = preset_fig5(d);
    let psi = haar_state(net.space().internal_space(), &mut rng);
    let c = haar_state(HilbertSpace::single("c", 2).unwrap(), &mut rng);
    let input = net
        .space()
        .control_input(INPUT_PATH, c.amps()[0], c.amps()[1], &psi)
        .unwrap();
    let b = Bindings::new()
        .with("Uf", haar_unitary(d, &mut rng).unwrap())
        .with("Ug", haar_unitary(d, &mut rng).unwrap());
    (net, input, b)
}

/// Ion input `(|g⟩ + |e⟩)/√2 ⊗ |ψ⟩ ⊗ |0⟩` with Haar gates on both slots.
pub fn ion_instance(seed: u64) -> (TrapSpace, StateVector, Bindings) {
    let mut rng = seeded_rng(seed);
    let space = TrapSpace::default();
    let psi = haar_state(HilbertSpace::single("q", 2).unwrap(), &mut rng);
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let init = space
        .product_state(
            TrapSpace::qubit(h, h),
            TrapSpace::qubit(psi.amps()[0], psi.amps()[1]),
            0,
        )
        .unwrap();
    let b = Bindings::new()
        .with("Uf", haar_unitary(2, &mut rng).unwrap())
        .with("Ug", haar_unitary(2, &mut rng).unwrap());
    (space, init, b)
}

/// Search objective at the default size (`a = d = 2`) and a random point.
pub fn objective_instance(kind: TargetKind, samples: usize, seed: u64) -> (Objective, Vec<f64>) {
    let mut rng = seeded_rng(seed);
    let dims = CircuitDims::new(2, 2).unwrap();
    let oracles = sample_oracles(kind, 2, samples, &mut rng).unwrap();
    let obj = Objective::new(kind, dims, oracles, OracleInsertion::Subsystem, 0.01).unwrap();
    let n = ParamCircuit::param_count(kind, dims);
    let x = (0..n).map(|i| ((i as f64) * 0.618).sin()).collect();
    (obj, x)
}
