//! Parameter sweeps, CSV output and the canned studies.
//!
//! A sweep evolves the six-party initial state over a `gt` grid for one or
//! more parameter settings and evaluates the requested quantities on the
//! reduced three-atom state at every point.

mod output;
mod run;
mod spec;

pub use output::{emit_csv, format_number, plot_script, PARAMETER_COLUMNS};
pub use run::{column_names, evaluate_point, run_sweep, ResultTable, Row};
pub use spec::{parse_config, GtGrid, Quantity, SweepSpec, DEFAULT_OUTPUTS};

use crate::states::{JCConfig, Param};

/// Entangled-weight values shared by the figure presets.
pub const FIGURE_WEIGHTS: [f64; 3] = [0.95, 0.92, 0.90];

/// The canned studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Genuine negativity of the atoms for three entangled-weight settings.
    Fig2,
    /// Pairwise atomic negativities for the same settings.
    Fig3,
    /// Classically correlated pairs, `α = γ = 0`.
    Classical,
    /// Discord-like correlations without entanglement, `α = γ = 0.3`.
    QuantumCorrelated,
}

impl Preset {
    pub fn spec(self) -> SweepSpec {
        let figure_vary = || {
            vec![
                (Param::Alpha, FIGURE_WEIGHTS.to_vec()),
                (Param::Gamma, FIGURE_WEIGHTS.to_vec()),
            ]
        };
        let with_weights = |w: f64| {
            JCConfig::default()
                .with_param(Param::Alpha, w)
                .and_then(|c| c.with_param(Param::Gamma, w))
                .expect("preset weights are in range")
        };
        let base = SweepSpec::default();
        match self {
            Preset::Fig2 => SweepSpec {
                varied: figure_vary(),
                outputs: vec![Quantity::GmeAbc],
                ..base
            },
            Preset::Fig3 => SweepSpec {
                varied: figure_vary(),
                outputs: vec![Quantity::NegAb, Quantity::NegBc, Quantity::NegAc],
                ..base
            },
            Preset::Classical => SweepSpec {
                base: with_weights(0.0),
                outputs: vec![
                    Quantity::Elements,
                    Quantity::Crit13,
                    Quantity::Crit14,
                    Quantity::Crit15,
                    Quantity::BCoherence,
                    Quantity::NegAb,
                    Quantity::NegBc,
                    Quantity::NegAc,
                ],
                ..base
            },
            Preset::QuantumCorrelated => SweepSpec {
                base: with_weights(0.3),
                outputs: vec![
                    Quantity::GmeAbc,
                    Quantity::Crit13,
                    Quantity::Crit14,
                    Quantity::Crit15,
                    Quantity::NegAb,
                    Quantity::NegBc,
                    Quantity::NegAc,
                ],
                ..base
            },
        }
    }
}
