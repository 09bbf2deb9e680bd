use proptest::prelude::*;
use qswitch_core::hilbert::{
    fidelity_pure, haar_state, haar_unitary, max_abs_diff, DensityMatrix, HilbertSpace, Operator,
};
use qswitch_core::ion::{run_sequence, seq_ctrl_switch, seq_ctrl_u, TrapSpace};
use qswitch_core::nogo::{
    sample_oracles, worst_case_fidelity, CircuitDims, ParamCircuit, TargetKind,
};
use qswitch_core::photonic::{preset, propagate, Network, PresetId, INPUT_PATH};
use qswitch_core::{seeded_rng, Bindings};

fn kind_strategy() -> impl Strategy<Value = TargetKind> {
    prop_oneof![Just(TargetKind::CtrlU), Just(TargetKind::Switch)]
}

fn preset_strategy() -> impl Strategy<Value = PresetId> {
    prop::sample::select(PresetId::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn haar_unitaries_preserve_norm(dim in 1usize..6, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let u = haar_unitary(dim, &mut rng).unwrap();
        prop_assert!(u.is_unitary(1e-10));
        let psi = haar_state(HilbertSpace::single("x", dim).unwrap(), &mut rng);
        prop_assert!((psi.apply(&u).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_recovers_factors(da in 1usize..4, db in 1usize..4, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let a = haar_state(HilbertSpace::single("a", da).unwrap(), &mut rng);
        let b = haar_state(HilbertSpace::single("b", db).unwrap(), &mut rng);
        let rho = DensityMatrix::from_pure(&a.tensor(&b).unwrap());
        let ra = rho.partial_trace(&["a"]).unwrap();
        let rb = rho.partial_trace(&["b"]).unwrap();
        prop_assert!(max_abs_diff(ra.matrix(), DensityMatrix::from_pure(&a).matrix()) < 1e-12);
        prop_assert!(max_abs_diff(rb.matrix(), DensityMatrix::from_pure(&b).matrix()) < 1e-12);
        prop_assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn presets_conserve_probability(id in preset_strategy(), d in 1usize..4, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let net = preset(id, d);
        let c = haar_state(HilbertSpace::single("c", 2).unwrap(), &mut rng);
        let psi = haar_state(net.space().internal_space(), &mut rng);
        let input = net.space().control_input(INPUT_PATH, c.amps()[0], c.amps()[1], &psi).unwrap();
        let bind = Bindings::new()
            .with("U", haar_unitary(d, &mut rng).unwrap())
            .with("Uf", haar_unitary(d, &mut rng).unwrap())
            .with("Ug", haar_unitary(d, &mut rng).unwrap());
        let rho = propagate(&net, &input, &bind).unwrap().density_matrix();
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-10);
        prop_assert!(rho.purity() <= 1.0 + 1e-10);
    }

    #[test]
    fn preset_json_round_trips(id in preset_strategy(), d in 1usize..5) {
        let net = preset(id, d);
        let back = Network::from_json(&net.to_json()).unwrap();
        prop_assert_eq!(&back, &net);
    }

    #[test]
    fn identity_gates_leave_ion_input_unchanged(seed in any::<u64>(), cutoff in 2usize..5) {
        let mut rng = seeded_rng(seed);
        let space = TrapSpace::new(cutoff).unwrap();
        let q = |rng: &mut qswitch_core::SimRng| haar_state(HilbertSpace::single("q", 2).unwrap(), rng);
        let (c, psi) = (q(&mut rng), q(&mut rng));
        let init = space
            .product_state(
                TrapSpace::qubit(c.amps()[0], c.amps()[1]),
                TrapSpace::qubit(psi.amps()[0], psi.amps()[1]),
                0,
            )
            .unwrap();
        let id = Operator::identity(2);
        let bind = Bindings::new().with("U", id.clone()).with("Uf", id.clone()).with("Ug", id);
        for seq in [seq_ctrl_u(), seq_ctrl_switch()] {
            let (fin, _) = run_sequence(&seq, &space, &init, &bind).unwrap();
            prop_assert!((fidelity_pure(&fin, &init).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn worst_case_fidelity_is_a_probability(
        kind in kind_strategy(),
        a in 1usize..3,
        seed in any::<u64>(),
        scale in 0.0f64..3.0,
    ) {
        let mut rng = seeded_rng(seed);
        let dims = CircuitDims::new(a, 2).unwrap();
        let n = ParamCircuit::param_count(kind, dims);
        let params = (0..n).map(|i| scale * ((i as f64 * 0.37 + seed as f64).sin())).collect();
        let pc = ParamCircuit::new(kind, dims, params).unwrap();
        let samples = sample_oracles(kind, 2, 4, &mut rng).unwrap();
        let f = worst_case_fidelity(&pc, &samples).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn operator_json_is_exact(dim in 1usize..5, seed in any::<u64>()) {
        let u = haar_unitary(dim, &mut seeded_rng(seed)).unwrap();
        let back: Operator = serde_json::from_str(&serde_json::to_string(&u).unwrap()).unwrap();
        prop_assert_eq!(back, u);
    }
}

#[test]
fn phases_are_the_only_one_dimensional_unitaries() {
    let u = haar_unitary(1, &mut seeded_rng(0)).unwrap();
    assert!((u.matrix()[(0, 0)].norm() - 1.0).abs() < 1e-12);
}
