use crate::dynamics::{evolve, reduce};
use crate::entanglement::{
    b_block_coherence, biseparability_criteria, pair_negativity, TRACKED_ELEMENTS,
};
use crate::error::{Error, Result};
use crate::gme::ppt_mixture_measure;
use crate::states::{assemble_initial, JCConfig};
use crate::tensorlab::{partial_trace, DensityMatrix, Label};

use super::spec::{Quantity, SweepSpec};

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub setting_id: usize,
    pub config: JCConfig,
    pub values: Vec<f64>,
}

/// Sweep output, rows ordered by `(setting_id, gt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    /// Names of the quantity columns, after expanding `elements`.
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl ResultTable {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of one quantity column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r.values[i]).collect())
    }

    pub fn rows_for(&self, setting_id: usize) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(move |r| r.setting_id == setting_id)
    }
}

pub fn column_names(outputs: &[Quantity]) -> Vec<String> {
    let mut cols = Vec::new();
    for q in outputs {
        if *q == Quantity::Elements {
            for name in TRACKED_ELEMENTS {
                cols.push(format!("re_{name}"));
                cols.push(format!("im_{name}"));
            }
        } else {
            cols.push(q.name().to_string());
        }
    }
    cols
}

fn pair_neg(abc: &DensityMatrix, pair: [Label; 2]) -> Result<f64> {
    pair_negativity(&partial_trace(abc, &pair)?)
}

/// Evaluates `outputs` on the three-atom state at `cfg.gt()`.
pub fn evaluate_point(cfg: &JCConfig, outputs: &[Quantity]) -> Result<Vec<f64>> {
    let rho0 = assemble_initial(cfg)?;
    evaluate_from(&rho0, cfg.gt(), outputs)
}

fn evaluate_from(rho0: &DensityMatrix, gt: f64, outputs: &[Quantity]) -> Result<Vec<f64>> {
    let abc = reduce(&evolve(rho0, gt)?, &Label::ATOMS)?;
    let needs_criteria = outputs.iter().any(|q| {
        matches!(
            q,
            Quantity::Crit13 | Quantity::Crit14 | Quantity::Crit15 | Quantity::Elements
        )
    });
    let criteria = if needs_criteria {
        Some(biseparability_criteria(&abc)?)
    } else {
        None
    };
    let crit = || criteria.as_ref().expect("criteria computed");

    let mut out = Vec::new();
    for q in outputs {
        match q {
            Quantity::GmeAbc => {
                out.push(ppt_mixture_measure(&abc, &Label::ATOMS)?.genuine_negativity)
            }
            Quantity::NegAb => out.push(pair_neg(&abc, [Label::A, Label::B])?),
            Quantity::NegBc => out.push(pair_neg(&abc, [Label::B, Label::C])?),
            Quantity::NegAc => out.push(pair_neg(&abc, [Label::A, Label::C])?),
            Quantity::Crit13 => out.push(crit().ghz_margin()),
            Quantity::Crit14 => out.push(crit().w.margin()),
            Quantity::Crit15 => out.push(crit().fullsep.margin()),
            Quantity::Elements => {
                for name in TRACKED_ELEMENTS {
                    let z = crit().element(name).expect("tracked element");
                    out.push(z.re);
                    out.push(z.im);
                }
            }
            Quantity::BCoherence => out.push(b_block_coherence(&abc)?),
        }
    }
    Ok(out)
}

/// Runs every `(setting, gt)` point of `spec`.
///
/// Any failure aborts the sweep and reports the failing point.
pub fn run_sweep(spec: &SweepSpec) -> Result<ResultTable> {
    spec.validate()?;
    let settings = spec.settings()?;
    let grid = spec.grid.points();
    let mut rows = Vec::with_capacity(settings.len() * grid.len());
    for (setting, cfg) in settings.iter().enumerate() {
        let wrap = |gt: f64| {
            move |e: Error| Error::Sweep {
                setting,
                gt,
                source: Box::new(e),
            }
        };
        let rho0 = assemble_initial(cfg).map_err(wrap(cfg.gt()))?;
        for &gt in &grid {
            let values = evaluate_from(&rho0, gt, &spec.outputs).map_err(wrap(gt))?;
            let config = cfg.with_gt(gt).map_err(wrap(gt))?;
            rows.push(Row {
                setting_id: setting,
                config,
                values,
            });
        }
    }
    Ok(ResultTable {
        columns: column_names(&spec.outputs),
        rows,
    })
}
