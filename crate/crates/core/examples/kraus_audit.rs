//! Compares the literal closed-form Kraus family, its completeness-repaired
//! variant and the Choi-derived channel.
//!
//! cargo run --release --example kraus_audit

use reservoir_entanglement::channel::{audit_kraus, kraus_paper, Pairing};
use reservoir_entanglement::channel::{apply_local_channels_checked, apply_local_channels_raw};
use reservoir_entanglement::reservoir::ReservoirParams;
use reservoir_entanglement::states::Bell;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = [
        ReservoirParams::thermal(1.0, 0.0)?,
        ReservoirParams::thermal(1.0, 0.2)?,
        ReservoirParams::squeezed_fraction(1.0, 0.6, 0.5, 0.0)?,
    ];
    println!("{:>5} {:>6} {:>15} {:>6} {:>14} {:>14}", "n", "|M|", "provenance", "ops", "completeness", "vs choi");
    for p in &params {
        for t in [0.0, 0.5, 2.0] {
            for row in audit_kraus(p, t)? {
                println!(
                    "{:5.2} {:6.3} {:>15} {:6} {:14.3e} {:14.3e}   t = {t}",
                    p.n, p.m_abs, row.provenance.as_str(), row.op_count, row.completeness_defect, row.distance_to_choi
                );
            }
        }
    }

    // The literal set is not trace preserving, so the checked path refuses it.
    let p = ReservoirParams::thermal(1.0, 0.2)?;
    let k = kraus_paper(&p, 1.0)?;
    let rho = Bell::PhiPlus.state();
    let raw = apply_local_channels_raw(rho.mat(), &k, &k, Pairing::Product);
    println!("\nliteral set on phi+: trace of output = {:.6}", raw.trace().re);
    match apply_local_channels_checked(&rho, &k, &k) {
        Ok(_) => println!("checked application unexpectedly succeeded"),
        Err(e) => println!("checked application: {e}"),
    }
    Ok(())
}
