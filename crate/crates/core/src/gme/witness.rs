use super::basis::{from_coordinates, hermitian_basis};
use super::sdp::{sdp_solve, LmiBlock, SdpProblem, SolverSettings};
use crate::error::{invalid, Result};
use crate::tensorlab::{
    eigvalsh, partial_transpose_matrix, ComplexMatrix, DensityMatrix, Label, MultipartiteShape,
};
use crate::tolerance;

/// Witness decomposition `W = P + Q^{T_M}` for one bipartition `M | M̄`.
#[derive(Debug, Clone)]
pub struct BipartiteDecomposition {
    /// The transposed side `M`.
    pub subset: Vec<Label>,
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
}

/// Result of the PPT-mixture witness optimization.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    /// Optimal `Tr(Wρ)`; never positive.
    pub value: f64,
    /// `max(0, −value)`, with values below the reporting floor set to zero.
    pub genuine_negativity: f64,
    pub witness: ComplexMatrix,
    pub shape: MultipartiteShape,
    pub decompositions: Vec<BipartiteDecomposition>,
    /// Largest feasibility violation of the returned certificate.
    pub residual: f64,
    pub duality_gap: f64,
    pub iterations: usize,
}

impl WitnessReport {
    /// Whether the witness alone proves the state is not a PPT mixture.
    pub fn certifies_gme(&self) -> bool {
        self.genuine_negativity > 0.0 && self.value < -self.residual
    }
}

/// Transposed sides `M` of every bipartition `M | M̄`, one per unordered pair.
pub fn bipartitions(parties: &[Label]) -> Vec<Vec<Label>> {
    let n = parties.len();
    let mut out = Vec::new();
    for mask in 1usize..(1 << n) - 1 {
        let size = mask.count_ones() as usize;
        let keeps_first = mask & 1 == 1;
        if 2 * size < n || (2 * size == n && keeps_first) {
            out.push(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| parties[i])
                    .collect(),
            );
        }
    }
    out.sort_by_key(|s: &Vec<Label>| (s.len(), s.clone()));
    out
}

fn check_parties(rho: &DensityMatrix, parties: &[Label]) -> Result<()> {
    let mut a = parties.to_vec();
    a.sort_unstable();
    let mut b = rho.shape().labels();
    b.sort_unstable();
    if a != b {
        return invalid(format!(
            "parties {parties:?} do not match state shape {}",
            rho.shape()
        ));
    }
    if !(2..=3).contains(&parties.len()) {
        return invalid(format!(
            "PPT-mixture witness supports 2 or 3 parties, got {}",
            parties.len()
        ));
    }
    Ok(())
}

/// Genuine negativity from the PPT-mixture program
///
/// ```text
/// min Tr(Wρ)  s.t.  W = P_M + Q_M^{T_M},  0 ≤ P_M ≤ 1,  0 ≤ Q_M ≤ 1   for all M | M̄
/// ```
///
/// The witness `W` and every `Q_M` are free Hermitian variables and
/// `P_M = W − Q_M^{T_M}`, so the equality constraints hold identically.
pub fn ppt_mixture_measure(rho: &DensityMatrix, parties: &[Label]) -> Result<WitnessReport> {
    ppt_mixture_measure_with(rho, parties, &SolverSettings::default())
}

pub fn ppt_mixture_measure_with(
    rho: &DensityMatrix,
    parties: &[Label],
    settings: &SolverSettings,
) -> Result<WitnessReport> {
    check_parties(rho, parties)?;
    let shape = rho.shape().clone();
    let d = shape.dim();
    let basis = hermitian_basis(d);
    let nb = basis.len();
    let cuts = bipartitions(parties);

    let objective: Vec<f64> = basis
        .iter()
        .map(|e| e.trace_product(rho.matrix()).re)
        .chain(std::iter::repeat_n(0.0, nb * cuts.len()))
        .collect();

    let zero = ComplexMatrix::zeros(d, d);
    let one = ComplexMatrix::identity(d);
    let mut blocks = Vec::with_capacity(4 * cuts.len());
    for (m, subset) in cuts.iter().enumerate() {
        let q_off = nb * (m + 1);
        let mut p_lo = LmiBlock::new(zero.clone());
        let mut p_hi = LmiBlock::new(one.clone());
        let mut q_lo = LmiBlock::new(zero.clone());
        let mut q_hi = LmiBlock::new(one.clone());
        for (i, e) in basis.iter().enumerate() {
            let e_t = partial_transpose_matrix(e, &shape, subset)?;
            p_lo.terms.push((i, e.clone()));
            p_lo.terms.push((q_off + i, -&e_t));
            p_hi.terms.push((i, -e));
            p_hi.terms.push((q_off + i, e_t));
            q_lo.terms.push((q_off + i, e.clone()));
            q_hi.terms.push((q_off + i, -e));
        }
        blocks.extend([p_lo, p_hi, q_lo, q_hi]);
    }

    let sol = sdp_solve(&SdpProblem { objective, blocks }, settings)?;
    let witness = from_coordinates(&basis, &sol.y[..nb]).hermitian_part();
    let decompositions = cuts
        .iter()
        .enumerate()
        .map(|(m, subset)| {
            let q = from_coordinates(&basis, &sol.y[nb * (m + 1)..nb * (m + 2)]).hermitian_part();
            let p = (&witness - &partial_transpose_matrix(&q, &shape, subset)?).hermitian_part();
            Ok(BipartiteDecomposition {
                subset: subset.clone(),
                p,
                q,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = WitnessReport {
        value: witness.trace_product(rho.matrix()).re,
        genuine_negativity: 0.0,
        witness,
        shape,
        decompositions,
        residual: 0.0,
        duality_gap: sol.duality_gap,
        iterations: sol.iterations,
    };
    report.residual = verify_witness(&report, rho)?;
    let gn = (-report.value).max(0.0);
    report.genuine_negativity = if gn < tolerance::GME_ZERO { 0.0 } else { gn };
    Ok(report)
}

/// How far `m` is from satisfying `0 ≤ m ≤ 1` in spectral norm.
fn box_violation(m: &ComplexMatrix) -> Result<f64> {
    let ev = eigvalsh(m)?;
    let lo = -ev.first().copied().unwrap_or(0.0);
    let hi = ev.last().copied().unwrap_or(0.0) - 1.0;
    Ok(lo.max(hi).max(0.0))
}

/// Recomputes every feasibility condition of the certificate from scratch
/// and returns the largest violation. A certificate with small residual and
/// `Tr(Wρ) < 0` proves genuine multipartite entanglement on its own.
pub fn verify_witness(report: &WitnessReport, rho: &DensityMatrix) -> Result<f64> {
    let d = rho.dim();
    if report.witness.rows() != d || report.witness.cols() != d {
        return invalid(format!(
            "witness is {}x{} but state has dimension {d}",
            report.witness.rows(),
            report.witness.cols()
        ));
    }
    if report.shape.dims() != rho.shape().dims() {
        return invalid(format!(
            "witness shape {} does not match state {}",
            report.shape,
            rho.shape()
        ));
    }
    let expected = bipartitions(&rho.shape().labels());
    if report.decompositions.len() != expected.len() {
        return invalid(format!(
            "expected {} bipartition decompositions, got {}",
            expected.len(),
            report.decompositions.len()
        ));
    }
    let mut residual = report.witness.hermiticity_defect();
    for dec in &report.decompositions {
        let q_t = partial_transpose_matrix(&dec.q, rho.shape(), &dec.subset)?;
        let sum = &dec.p + &q_t;
        residual = residual.max(report.witness.max_abs_diff(&sum));
        residual = residual.max(box_violation(&dec.p.hermitian_part())?);
        residual = residual.max(box_violation(&dec.q.hermitian_part())?);
        residual = residual
            .max(dec.p.hermiticity_defect())
            .max(dec.q.hermiticity_defect());
    }
    Ok(residual)
}

/// `Tr(Wρ)` for a report's witness.
pub fn witness_expectation(report: &WitnessReport, rho: &DensityMatrix) -> f64 {
    report.witness.trace_product(rho.matrix()).re
}
