//! Entanglement and information dynamics of two qubits, each coupled to its
//! own thermal or squeezed-vacuum reservoir.
//!
//! The pipeline is:
//!
//! 1. build an initial state ([`states`]): Bloch form, Bell-diagonal
//!    correlation triples or the Werner family;
//! 2. build per-qubit channels ([`channel`]), by default from the Choi matrix
//!    of the integrated master equation;
//! 3. apply the product channel and measure negativity, disturbance and
//!    entropy ([`measures`]);
//! 4. sweep reservoir parameters and export CSV ([`sweep`]).
//!
//! [`lindblad`] integrates the master equation directly and is the reference
//! every channel result is checked against.
//!
//! ```
//! use reservoir_entanglement::{channel, measures, reservoir::ReservoirParams, states};
//!
//! let rho0 = states::Bell::PhiPlus.state();
//! let bath = ReservoirParams::thermal(1.0, 0.2).unwrap();
//! let out = channel::evolve_pair(&rho0, &bath, &bath, 0.5).unwrap();
//! assert!(measures::negativity(&out.state) < 1.0);
//! ```

pub mod channel;
pub mod cli;
pub mod error;
pub mod lindblad;
pub mod linalg;
pub mod measures;
pub mod reservoir;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
