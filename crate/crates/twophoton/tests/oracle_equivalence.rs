//! Closed form against the brute-force oracle.

use twophoton::oracle::{build_hamiltonian, propagate, reduce_atoms, thermal_reduce, FockSpace, JointState, Propagator};
use twophoton::twophoton_core::{
    evolve, evolve_pure, fock_term, negativity_general, negativity_x, BasisState, FockCutoff, GeneralTwoQubitState,
    InitialAtomicState, ModelParams, Subsystem,
};

fn deviation(closed: &twophoton::twophoton_core::XState, oracle: &GeneralTwoQubitState) -> f64 {
    closed.max_abs_diff(&oracle.x_part()).max(oracle.off_x_magnitude())
}

#[test]
fn per_fock_term_matches_oracle() {
    let space = FockSpace::new(8, 8);
    let prop = Propagator::new(space, 1.0);
    let mut worst = 0.0f64;
    for s in BasisState::ALL {
        for n1 in 0..=6 {
            for n2 in 0..=6 {
                let psi = JointState::basis(space, s, n1, n2);
                for gt in [0.3, 1.0, 2.7, 5.0] {
                    let oracle = reduce_atoms(&prop.propagate(&psi, gt));
                    worst = worst.max(deviation(&fock_term(s, n1, n2, gt), &oracle));
                }
            }
        }
    }
    assert!(worst < 1e-10, "max deviation {worst:e}");
}

#[test]
fn coupling_only_rescales_time() {
    let g = 2.5;
    let space = FockSpace::new(5, 5);
    let h = build_hamiltonian(5, 5, g);
    let psi = JointState::basis(space, BasisState::Gg, 2, 3);
    let gt = 1.7;
    let oracle = reduce_atoms(&propagate(&psi, &h, gt / g));
    assert!(deviation(&fock_term(BasisState::Gg, 2, 3, gt), &oracle) < 1e-10);
}

#[test]
fn thermal_average_matches_oracle() {
    let params = ModelParams::symmetric(1.0);
    let oracle = thermal_reduce(BasisState::Eg.into(), &params, 1.0, 14, 14);
    let closed = evolve_pure(BasisState::Eg, &params, 1.0, &FockCutoff::fixed(&params, 12, 12));
    assert!(deviation(&closed, &oracle) < 1e-10);
    assert!((negativity_x(&closed) - negativity_general(&oracle)).abs() < 1e-10);
}

#[test]
fn asymmetric_modes_and_mixtures_match_oracle() {
    let params = ModelParams::new(0.7, 0.4, 1.3);
    let space = FockSpace::new(9, 11);
    let prop = Propagator::new(space, params.g);
    let cutoff = FockCutoff::fixed(&params, 7, 9);
    let gts = [0.0, 0.9, 3.3, 6.1];
    for init in [
        InitialAtomicState::Pure(BasisState::Ge),
        InitialAtomicState::Pure(BasisState::Ee),
        InitialAtomicState::Mixed(0.05),
        InitialAtomicState::Mixed(0.6),
    ] {
        for (gt, o) in gts.iter().zip(prop.thermal_reduce(init, &params, &gts)) {
            let c = evolve(init, &params, *gt, &cutoff);
            assert!(deviation(&c, &o) < 1e-10, "{init:?} gt={gt}");
        }
    }
}

#[test]
fn oracle_states_stay_physical() {
    let params = ModelParams::symmetric(1.0);
    let space = FockSpace::new(10, 10);
    let prop = Propagator::new(space, 1.0);
    let gts: Vec<f64> = (0..=40).map(|k| 0.25 * k as f64).collect();
    let init = InitialAtomicState::Mixed(0.3);
    let rho0 = JointState::thermal(space, init, &params);
    let mass = rho0.trace();
    for (gt, s) in gts.iter().zip(prop.thermal_reduce(init, &params, &gts)) {
        assert!((s.trace() - mass).abs() < 1e-10, "gt={gt}");
        // Positivity of the reduced state: the eigenvalues of a partial
        // transpose of the partial transpose are those of the state.
        let pt = GeneralTwoQubitState::new(s.partial_transpose(Subsystem::Second)).unwrap();
        let spec = pt.partial_transpose_spectrum(Subsystem::Second);
        assert!(spec[0] > -1e-10, "gt={gt}: {spec:?}");
    }
}
