//! Entanglement sudden death in thermal reservoirs as the photon number grows.
//!
//! cargo run --release --example sudden_death

use reservoir_entanglement::measures::ESD_EPS;
use reservoir_entanglement::reservoir::ReservoirParams;
use reservoir_entanglement::states::CorrelationTriple;
use reservoir_entanglement::sweep::esd_time_for;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>8} {:>14} {:>14}", "n", "maximal", "partial");
    for n in [1e-5, 1e-4, 0.05, 0.2, 0.6, 6.0] {
        let p = ReservoirParams::thermal(1.0, n)?;
        let show = |t: Option<f64>| t.map_or("none".to_string(), |t| format!("{t:.4}"));
        let max = esd_time_for(&CorrelationTriple::MAXIMAL, &p, &p, 10.0, 256, ESD_EPS)?;
        let part = esd_time_for(&CorrelationTriple::PARTIAL, &p, &p, 10.0, 256, ESD_EPS)?;
        println!("{n:8} {:>14} {:>14}", show(max), show(part));
    }
    println!("(times are Γt with Γ = Γ1 + Γ2, horizon 10)");
    Ok(())
}
