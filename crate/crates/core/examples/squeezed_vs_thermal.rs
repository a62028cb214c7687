//! Sudden-death times with and without reservoir squeezing at equal photon
//! number, for two squeezing phases.
//!
//! cargo run --release --example squeezed_vs_thermal

use std::f64::consts::FRAC_PI_2;

use reservoir_entanglement::measures::ESD_EPS;
use reservoir_entanglement::reservoir::ReservoirParams;
use reservoir_entanglement::states::CorrelationTriple;
use reservoir_entanglement::sweep::esd_time_for;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = CorrelationTriple::MAXIMAL;
    let esd = |p: ReservoirParams| esd_time_for(&c, &p, &p, 10.0, 256, ESD_EPS);
    println!("{:>6} {:>10} {:>16} {:>16}", "n", "thermal", "squeezed θ=0", "squeezed θ=π/2");
    for n in [0.05, 0.2, 0.6] {
        let th = esd(ReservoirParams::thermal(1.0, n)?)?;
        let sq0 = esd(ReservoirParams::squeezed_fraction(1.0, n, 0.2, 0.0)?)?;
        let sq90 = esd(ReservoirParams::squeezed_fraction(1.0, n, 0.2, FRAC_PI_2)?)?;
        let f = |t: Option<f64>| t.map_or("none".to_string(), |t| format!("{t:.4}"));
        println!("{n:6} {:>10} {:>16} {:>16}", f(th), f(sq0), f(sq90));
    }
    Ok(())
}
