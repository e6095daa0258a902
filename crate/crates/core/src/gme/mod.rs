//! Genuine multipartite entanglement from PPT-mixture witnesses.
//!
//! A state that is not a convex mixture of states PPT across some
//! bipartition is genuinely multipartite entangled. Membership is decided by
//! a semidefinite program whose optimal witness value, negated, is the
//! genuine negativity. For two parties it reduces to the ordinary negativity.

pub mod basis;
pub mod embed;
pub mod sdp;
mod witness;

pub use sdp::{sdp_solve, LmiBlock, SdpProblem, SdpSolution, SolverSettings};
pub use witness::{
    bipartitions, ppt_mixture_measure, ppt_mixture_measure_with, verify_witness,
    witness_expectation, BipartiteDecomposition, WitnessReport,
};
