//! Building a channel from the integrated generator: Choi matrix, spectrum,
//! Kraus operators and completeness.
//!
//! cargo run --release --example choi_extraction

use reservoir_entanglement::channel::{kraus_from_choi, propagator_choi, CHOI_EIG_TOL};
use reservoir_entanglement::lindblad::CHOI_TOL;
use reservoir_entanglement::linalg::hermitian_eigenvalues;
use reservoir_entanglement::reservoir::ReservoirParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("vacuum", ReservoirParams::thermal(1.0, 0.0)?),
        ("thermal n=0.6", ReservoirParams::thermal(1.0, 0.6)?),
        ("squeezed n=0.6", ReservoirParams::squeezed_fraction(1.0, 0.6, 0.9, 0.0)?),
    ];
    for (label, p) in cases {
        let t = 0.5;
        let choi = propagator_choi(&p, t, CHOI_TOL)?;
        let ev = hermitian_eigenvalues(&choi)?;
        let k = kraus_from_choi(&choi, CHOI_EIG_TOL)?;
        println!("{label}: t = {t}");
        println!("  Choi spectrum   {:?}", ev.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>());
        println!("  Choi trace      {:.12}", choi.trace().re);
        println!("  Kraus operators {}", k.ops.len());
        println!("  completeness    {:.2e}", k.completeness_defect);
    }
    Ok(())
}
