//! Disturbance and entropy exchange along one trajectory, with the plateau
//! and saturation detectors.
//!
//! cargo run --release --example information_dynamics

use reservoir_entanglement::reservoir::ReservoirParams;
use reservoir_entanglement::states::CorrelationTriple;
use reservoir_entanglement::sweep::{evolve_trajectory, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [1e-4, 0.2, 6.0] {
        let cfg = SweepConfig::new(CorrelationTriple::MAXIMAL, ReservoirParams::thermal(1.0, n)?);
        let traj = evolve_trajectory(&cfg)?;
        println!("n = {n}");
        println!("  {:>6} {:>8} {:>11} {:>8}", "Γt", "DoE", "disturbance", "S_e");
        for row in traj.rows.iter().step_by(32) {
            let m = row.measures;
            println!("  {:6.3} {:8.4} {:11.4} {:8.4}", m.t_scaled, m.doe, m.disturbance, m.entropy);
        }
        let peak = traj.rows.iter().map(|r| r.measures).fold((0.0, 0.0), |acc, m| {
            if m.entropy > acc.1 {
                (m.t_scaled, m.entropy)
            } else {
                acc
            }
        });
        let s = traj.summary;
        println!("  entropy peak {:.4} at Γt = {:.3}", peak.1, peak.0);
        println!("  disturbance plateau from {:?}", s.disturbance_plateau_time);
        println!("  entropy saturation from  {:?} (value {:?})", s.entropy_saturation_time, s.entropy_saturation_value);
    }
    Ok(())
}
