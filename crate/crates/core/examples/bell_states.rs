//! Bell-diagonal initial states: weights, positivity and negativity.
//!
//! cargo run --example bell_states

use reservoir_entanglement::measures::negativity;
use reservoir_entanglement::states::{bell_weights, state_from_correlations, werner, Bell, CorrelationTriple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for b in Bell::ALL {
        println!("{:5} negativity = {:.3}", b.name(), negativity(&b.state()));
    }

    for (label, c) in [
        ("maximal", CorrelationTriple::MAXIMAL),
        ("partial", CorrelationTriple::PARTIAL),
        ("singlet", CorrelationTriple::SINGLET),
    ] {
        let rho = state_from_correlations(&c)?;
        let w = bell_weights(&c);
        println!(
            "{label:8} c = {:?}  weights = [{:.4}, {:.4}, {:.4}, {:.4}]  negativity = {:.4}",
            c.as_array(),
            w[0],
            w[1],
            w[2],
            w[3],
            negativity(&rho)
        );
    }

    // Outside the tetrahedron one Bell weight goes negative.
    match state_from_correlations(&CorrelationTriple::new(1.0, 1.0, 1.0)?) {
        Ok(_) => println!("(1, 1, 1) unexpectedly accepted"),
        Err(e) => println!("(1, 1, 1) rejected: {e}"),
    }

    // Werner family: entangled only above x = 1/3.
    for x in [0.0, 0.3, 1.0 / 3.0, 0.4, 0.7, 1.0] {
        println!("werner x = {x:.4}  negativity = {:.4}", negativity(&werner(x)?));
    }
    Ok(())
}
