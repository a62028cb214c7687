mod common;

use std::f64::consts::FRAC_PI_2;

use common::{pair_channel, qubit_channel};
use reservoir_entanglement::channel::{
    apply_local_channels, choi_channel, closed_form_output, evolve_pair, kraus_paper, kraus_repaired,
    propagator_choi, KrausSet,
};
use reservoir_entanglement::lindblad::{integrate, integrate_single, single_qubit_steady_state, LindbladSpec, CHOI_TOL};
use reservoir_entanglement::linalg::{basis_op, partial_trace, ComplexMat, Subsystem, C64};
use reservoir_entanglement::measures::{negativity, trace_distance};
use reservoir_entanglement::reservoir::ReservoirParams;
use reservoir_entanglement::states::{product_state, state_from_correlations, Bell, CorrelationTriple, DensityMatrix};

fn params() -> Vec<ReservoirParams> {
    let mut out = vec![ReservoirParams::thermal(1.0, 0.0).unwrap()];
    for n in [0.2, 0.6, 6.0] {
        for f in [0.0, 0.2, 0.9] {
            for theta in [0.0, 0.7, FRAC_PI_2] {
                out.push(ReservoirParams::squeezed_fraction(1.0, n, f, theta).unwrap());
            }
        }
    }
    out.push(ReservoirParams::squeezed_fraction(2.5, 0.3, 1.0, -1.1).unwrap());
    out
}

#[test]
fn integrator_matches_closed_form_single_qubit() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let inputs = [
        ComplexMat::diag(&[0.0, 1.0]),
        ComplexMat::projector(&[C64::new(h, 0.0), C64::new(h, 0.0)]),
        ComplexMat::projector(&[C64::new(0.6, 0.0), C64::new(0.0, 0.8)]),
        basis_op(0, 1),
    ];
    for p in params() {
        for t in [0.1, 0.8, 3.0] {
            for x in &inputs {
                let got = integrate_single(x, &p, t, 1e-11).unwrap().state;
                let want = qubit_channel(&p, t, x);
                // integrate_single Hermitizes, so compare the Hermitian part.
                let d = got.max_abs_diff(&want.hermitian_part());
                assert!(d < 1e-9, "n={} |M|={} θ={} t={t}: {d:e}", p.n, p.m_abs, p.theta);
            }
        }
    }
}

#[test]
fn choi_channel_matches_closed_form_on_basis_operators() {
    for p in params() {
        for t in [0.05, 0.5, 2.0, 7.0] {
            let k = choi_channel(&p, t).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let e = basis_op(i, j);
                    let d = k.apply(&e).max_abs_diff(&qubit_channel(&p, t, &e));
                    assert!(d < 1e-8, "n={} |M|={} θ={} t={t} E{i}{j}: {d:e}", p.n, p.m_abs, p.theta);
                }
            }
            assert!(k.completeness_defect <= 1e-10);
        }
    }
}

#[test]
fn thermal_choi_set_has_four_operators_matching_the_integrator() {
    let p = ReservoirParams::thermal(1.0, 0.2).unwrap();
    let k = choi_channel(&p, 1.0).unwrap();
    assert_eq!(k.ops.len(), 4);
    for i in 0..2 {
        for j in 0..2 {
            let e = basis_op(i, j);
            let direct = reservoir_entanglement::lindblad::integrate_operator(&e, &LindbladSpec::single(p), 1.0, 1e-11)
                .unwrap()
                .state;
            assert!(k.apply(&e).max_abs_diff(&direct) < 1e-8);
        }
    }
}

#[test]
fn pair_evolution_matches_closed_form_product_channel() {
    let rhos = [
        Bell::PhiPlus.state(),
        state_from_correlations(&CorrelationTriple::PARTIAL).unwrap(),
        reservoir_entanglement::sweep::oracle_inputs().unwrap()[1],
    ];
    let ps = params();
    for (a, b) in ps.iter().zip(ps.iter().rev()) {
        for t in [0.3, 1.7] {
            for rho in &rhos {
                let got = evolve_pair(rho, a, b, t).unwrap().state;
                let want = pair_channel(a, b, t, rho.mat());
                let d = trace_distance(got.mat(), &want);
                assert!(d < 1e-8, "{d:e}");
            }
        }
    }
}

#[test]
fn pair_integration_matches_channel_at_moderate_time() {
    let p = ReservoirParams::thermal(1.0, 0.2).unwrap();
    let rho = Bell::PhiPlus.state();
    let t = 1.0; // Γt = 2 on the pair axis
    let direct = integrate(&rho, &LindbladSpec::pair(p, p), t, CHOI_TOL).unwrap().state;
    let channel = evolve_pair(&rho, &p, &p, t).unwrap().state;
    assert!(trace_distance(direct.mat(), channel.mat()) < 1e-6);
}

#[test]
fn semigroup_composition() {
    for p in params().into_iter().step_by(4) {
        let (s, u) = (0.4, 1.1);
        let ks = choi_channel(&p, s).unwrap();
        let ku = choi_channel(&p, u).unwrap();
        let kt = choi_channel(&p, s + u).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = basis_op(i, j);
                assert!(ku.apply(&ks.apply(&e)).max_abs_diff(&kt.apply(&e)) < 1e-9);
            }
        }
    }
}

#[test]
fn maximally_mixed_input_factorizes() {
    let p = ReservoirParams::thermal(1.0, 0.6).unwrap();
    let q = ReservoirParams::squeezed_fraction(1.0, 0.2, 0.5, 0.3).unwrap();
    let t = 0.9;
    let out = evolve_pair(&DensityMatrix::maximally_mixed(), &p, &q, t).unwrap().state;
    let half = ComplexMat::identity(2).scale(0.5);
    let ra = qubit_channel(&p, t, &half);
    let rb = qubit_channel(&q, t, &half);
    let expected = product_state(&ra, &rb).unwrap();
    assert!(out.mat().max_abs_diff(expected.mat()) < 1e-9);
    assert!(partial_trace(out.mat(), Subsystem::A).max_abs_diff(&ra) < 1e-9);
    assert!(partial_trace(out.mat(), Subsystem::B).max_abs_diff(&rb) < 1e-9);
}

#[test]
fn identity_sets_return_the_input() {
    let rho = state_from_correlations(&CorrelationTriple::PARTIAL).unwrap();
    let out = apply_local_channels(&rho, &KrausSet::identity(), &KrausSet::identity()).unwrap();
    assert!(out.mat().max_abs_diff(rho.mat()) < 1e-14);
}

#[test]
fn vacuum_damping_negativity_decreases_at_short_times() {
    let p = ReservoirParams::thermal(1.0, 0.0).unwrap();
    let rho = Bell::PhiPlus.state();
    let mut last = negativity(&rho);
    for k in 1..=20 {
        let doe = negativity(&evolve_pair(&rho, &p, &p, 0.01 * k as f64).unwrap().state);
        assert!(doe < last, "step {k}: {doe} !< {last}");
        last = doe;
    }
    assert!(last < 1.0);
}

#[test]
fn long_time_choi_is_reset_channel() {
    for (n, pe) in [(0.0, 0.0), (0.5, 0.25)] {
        let p = ReservoirParams::thermal(1.0, n).unwrap();
        let choi = propagator_choi(&p, 60.0, CHOI_TOL).unwrap();
        // Reset to σ: C = I ⊗ σ in the (input, output) ordering.
        let sigma = ComplexMat::diag(&[1.0 - pe, pe]);
        let expected = reservoir_entanglement::linalg::kron(&ComplexMat::identity(2), &sigma);
        assert!(choi.max_abs_diff(&expected) < 1e-9, "n={n}");
    }
}

#[test]
fn steady_states() {
    let ground = single_qubit_steady_state(&ReservoirParams::thermal(1.0, 0.0).unwrap()).unwrap();
    assert!(ground.max_abs_diff(&ComplexMat::diag(&[1.0, 0.0])) < 1e-9);
    let warm = single_qubit_steady_state(&ReservoirParams::thermal(1.0, 0.5).unwrap()).unwrap();
    assert!((warm[(1, 1)].re - 0.25).abs() < 1e-6);
}

// Coherences decay as e^{−(ζ−η)t} and ζ − η = Γ(2N+1)/2 − Γ√(N(N+1)) > 0,
// so even at the squeezing bound the fixed point carries no coherence.
#[test]
fn squeezed_steady_state_has_no_coherence() {
    let p = ReservoirParams::squeezed_fraction(1.0, 0.5, 1.0, 0.0).unwrap();
    let ss = single_qubit_steady_state(&p).unwrap();
    assert!((ss[(1, 1)].re - 0.25).abs() < 1e-6);
    assert!(ss[(0, 1)].norm() < 1e-6, "{}", ss[(0, 1)].norm());
    let slowest = p.zeta() - p.eta();
    assert!((slowest - (1.0 - 0.75f64.sqrt())).abs() < 1e-12);
}

#[test]
fn literal_set_regression_constants() {
    let p = ReservoirParams::thermal(1.0, 0.0).unwrap();
    let at_zero = kraus_paper(&p, 0.0).unwrap();
    assert!((at_zero.completeness_defect - 2f64.sqrt()).abs() < 1e-12);
    let late = kraus_paper(&p, 60.0).unwrap();
    assert!((late.completeness_defect - 1.0).abs() < 1e-9, "{}", late.completeness_defect);
}

// At zero temperature the repaired set is not amplitude damping: its
// coherence factor is e^{−Γt/4} where the true channel has e^{−Γt/2}, and it
// keeps an upward-jump operator of weight e^{−Γt/4}·√(Γt/2).
#[test]
fn repaired_set_at_vacuum_differs_from_amplitude_damping() {
    let p = ReservoirParams::thermal(1.0, 0.0).unwrap();
    let t = 1.0;
    let k = kraus_repaired(&p, t).unwrap();
    let a = k.amplitudes.expect("repaired set keeps its amplitudes");
    assert!((a.beta[0].norm() - (-0.25f64).exp()).abs() < 1e-12);
    assert!((a.beta[2].norm() - (-0.25f64).exp() * 0.5f64.sqrt()).abs() < 1e-12);
    let expected_defect = (0.25 * (-1.0f64).exp() + (1.0 - (-0.5f64).exp()).powi(2)).sqrt();
    assert!((k.completeness_defect - expected_defect).abs() < 1e-12, "{}", k.completeness_defect);

    let e01 = basis_op(0, 1);
    let exact = qubit_channel(&p, t, &e01)[(0, 1)].norm();
    assert!((exact - (-0.5f64).exp()).abs() < 1e-14);
    assert!((choi_channel(&p, t).unwrap().apply(&e01)[(0, 1)].norm() - exact).abs() < 1e-9);
}

#[test]
fn closed_form_is_exact_only_at_zero_time() {
    let c = CorrelationTriple::MAXIMAL;
    let rho = state_from_correlations(&c).unwrap();
    let id = KrausSet::identity();
    let at_zero = closed_form_output(&c, &kraus_repaired(&ReservoirParams::thermal(1.0, 0.2).unwrap(), 0.0).unwrap(), &id);
    assert!(at_zero.is_err(), "identity sets carry no amplitudes");

    let p = ReservoirParams::thermal(1.0, 0.2).unwrap();
    let k0 = kraus_repaired(&p, 0.0).unwrap();
    let out0 = closed_form_output(&c, &k0, &k0).unwrap();
    assert!(out0.mat().max_abs_diff(rho.mat()) < 1e-14);

    // Γt = 1 on the pair axis. The assembled form only rescales entries, so
    // the populations of |01⟩ and |10⟩ stay at zero while the channel fills them.
    let t = 0.5;
    let k = kraus_repaired(&p, t).unwrap();
    let cf = closed_form_output(&c, &k, &k).unwrap();
    let direct = evolve_pair(&rho, &p, &p, t).unwrap().state;
    assert!(cf.mat()[(1, 1)].norm() < 1e-15);
    assert!(direct.mat()[(1, 1)].re > 0.05);
    assert!(cf.mat().max_abs_diff(direct.mat()) > 1e-3);
}
