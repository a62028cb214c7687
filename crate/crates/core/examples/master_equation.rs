//! Direct integration of the single-qubit master equation against the
//! closed-form population and coherence dynamics.
//!
//! cargo run --release --example master_equation

use reservoir_entanglement::lindblad::{integrate_single, single_qubit_steady_state};
use reservoir_entanglement::linalg::{ComplexMat, C64};
use reservoir_entanglement::reservoir::ReservoirParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = ReservoirParams::squeezed_fraction(1.0, 0.2, 0.5, 0.4)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = ComplexMat::projector(&[C64::new(h, 0.0), C64::new(h, 0.0)]);
    let excited = ComplexMat::diag(&[0.0, 1.0]);

    println!("n = {}, |M| = {:.4}, theta = {}", p.n, p.m_abs, p.theta);
    println!("{:>5} {:>12} {:>12} {:>12} {:>8}", "t", "p_e", "p_e exact", "|rho01|", "steps");
    let rate = p.gamma * (2.0 * p.n + 1.0);
    let p_ss = p.thermal_excited_population();
    for t in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let pop = integrate_single(&excited, &p, t, 1e-10)?;
        let coh = integrate_single(&plus, &p, t, 1e-10)?;
        let exact = p_ss + (1.0 - p_ss) * (-rate * t).exp();
        println!(
            "{t:5.1} {:12.8} {:12.8} {:12.8} {:8}",
            pop.state[(1, 1)].re,
            exact,
            coh.state[(0, 1)].norm(),
            pop.step_count
        );
    }

    let ss = single_qubit_steady_state(&p)?;
    println!("steady state: p_e = {:.6} (N/(2N+1) = {:.6}), |rho01| = {:.2e}", ss[(1, 1)].re, p_ss, ss[(0, 1)].norm());
    Ok(())
}
