//! Three independent resonant Jaynes-Cummings atom-cavity pairs, and tools to
//! decide when the three atoms end up genuinely multipartite entangled.
//!
//! The pipeline is: [`states::assemble_initial`] builds the six-party state,
//! [`dynamics::evolve`] applies the closed-form evolution,
//! [`dynamics::reduce`] traces out the cavities, and the detectors in
//! [`entanglement`] and [`gme`] inspect the atomic state. [`explab`] wires
//! these into parameter sweeps with CSV output.

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod explab;
pub mod gme;
pub mod states;
pub mod tensorlab;
pub mod tolerance;

pub use error::{Error, Result};
