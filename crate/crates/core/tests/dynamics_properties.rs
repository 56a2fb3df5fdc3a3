mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use qmi_orbits::collision::{
    collide_once, heat_flow_check, run_collisions, run_collisions_with, sample_energy_conserving_unitary,
    sample_thermal_state, CollisionMode,
};
use qmi_orbits::extremal::{rho_max, rho_min};
use qmi_orbits::orbit::{haar_unitary, sweep, tau_states, u_odd, Family};
use qmi_orbits::states::{energy, qmi, two_qubit_hamiltonian};
use qmi_orbits::{DensityMatrix, Pattern, Region, Shape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sorted_table_min(s: &qmi_orbits::Spectrum) -> f64 {
    let t = Pattern::identity(Shape::new(2, 2).unwrap()).fill(s).unwrap();
    rho_min(s, &t).unwrap().qmi_value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbit_qmi_lies_between_the_extremes(s in spectrum((2, 2)), seed in any::<u64>()) {
        let lo = sorted_table_min(&s);
        let max = rho_max(&s).unwrap();
        prop_assert!((max.qmi_value - (2.0 - entropy_bits(s.values()))).abs() < 1e-9);
        let l = s.values();
        prop_assert!((lo - (h2(l[2] + l[3]) + h2(l[1] + l[3]) - entropy_bits(l))).abs() < 1e-9);
        for ev in [max.state.eigenvalues(), DensityMatrix::diagonal_of(&s).eigenvalues()] {
            for (e, x) in ev.iter().zip(l) {
                prop_assert!((e - x).abs() < 1e-9);
            }
        }
        let rho0 = DensityMatrix::diagonal_of(&s);
        for k in 0..20u64 {
            let i = qmi(&haar_unitary(4, seed.wrapping_add(k)).unwrap().apply(&rho0).unwrap());
            prop_assert!(i >= lo - 1e-9 && i <= max.qmi_value + 1e-9);
        }
    }

    #[test]
    fn sweeps_stay_in_region(s in spectrum((2, 2)), fam in prop_oneof![Just(Family::Odd), Just(Family::Even), Just(Family::Tilde)]) {
        let r = Region::new(&s).unwrap();
        for tau in tau_states(&s).unwrap() {
            let trace = sweep(&tau, fam, 64).unwrap();
            for p in &trace.points {
                prop_assert!(r.contains_tol(p, 1e-8));
            }
        }
    }

    #[test]
    fn odd_sweep_qmi_is_concave_in_cos_theta(s in spectrum((2, 2))) {
        let n = 201;
        for tau in tau_states(&s).unwrap() {
            let vals: Vec<f64> = (0..n)
                .map(|k| {
                    let c = -1.0 + 2.0 * k as f64 / (n - 1) as f64;
                    qmi(&u_odd(c.clamp(-1.0, 1.0).acos()).apply(&tau).unwrap())
                })
                .collect();
            for w in vals.windows(3) {
                prop_assert!(w[0] + w[2] - 2.0 * w[1] <= 1e-9);
            }
        }
    }

    #[test]
    fn odd_rotations_conserve_energy(s in spectrum((2, 2)), seed in any::<u64>(), theta in 0.0f64..(2.0 * PI)) {
        let h = two_qubit_hamiltonian();
        let rho = haar_unitary(4, seed).unwrap().apply(&DensityMatrix::diagonal_of(&s)).unwrap();
        let after = u_odd(theta).apply(&rho).unwrap();
        prop_assert!((energy(&after, &h).unwrap() - energy(&rho, &h).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn dephasing_never_lowers_entropy(s in spectrum((2, 2)), seed in any::<u64>()) {
        let rho = haar_unitary(4, seed).unwrap().apply(&DensityMatrix::diagonal_of(&s)).unwrap();
        prop_assert!(rho.dephased().entropy() >= rho.entropy() - 1e-10);
    }

    #[test]
    fn collisions_keep_minimal_form_and_contract_the_gap(
        s in spectrum((2, 2)),
        schedule in prop::collection::vec(0.1f64..=0.9, 50),
    ) {
        let traj = run_collisions(&DensityMatrix::diagonal_of(&s), &schedule).unwrap();
        let g0 = traj.steps[0].gap;
        for (n, st) in traj.steps.iter().enumerate() {
            prop_assert!(st.entropy >= st.entropy_before_dephasing - 1e-10);
            let best = brute_force_minimum(&st.diagonal, 2, 2);
            prop_assert!((st.qmi - best).abs() < 1e-9);
            prop_assert!(st.gap <= 0.8f64.powi(n as i32) * g0 + 1e-12);
        }
        for w in traj.steps.windows(2) {
            let p = w[1].p;
            prop_assert!((w[1].gap - (2.0 * p - 1.0).abs() * w[0].gap).abs() < 1e-12);
        }
    }

    #[test]
    fn decorrelating_collisions_contract_too(s in spectrum((2, 2)), p in 0.1f64..=0.9) {
        let sigma = DensityMatrix::diagonal_of(&s);
        let t = run_collisions_with(&sigma, &[p; 40], CollisionMode::Decorrelate).unwrap();
        let last = t.last();
        prop_assert!(qmi_orbits::states::qmi(&DensityMatrix::from_diagonal(&last.diagonal, (2, 2)).unwrap()) < 1e-9);
        let one = collide_once(&sigma, p).unwrap();
        prop_assert!((one.diagonal()[0] - s.values()[0]).abs() < 1e-12);
    }

    #[test]
    fn heat_flow_inequality(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = sample_thermal_state(&mut rng);
        let u = sample_energy_conserving_unitary(&mut rng, &rho).unwrap();
        let r = heat_flow_check(&rho, &u).unwrap();
        prop_assert!(r.holds, "{r:?}");
        prop_assert!((r.q_a + r.q_b).abs() < 1e-9);
    }
}

#[test]
fn equilibrium_marginals_agree() {
    let s = qmi_orbits::Spectrum::qubits([0.6, 0.3, 0.1, 0.0]).unwrap();
    let t = run_collisions(&DensityMatrix::diagonal_of(&s), &[0.7; 200]).unwrap();
    let last = t.last();
    assert!((last.s_a - last.s_b).abs() < 1e-6);
}
