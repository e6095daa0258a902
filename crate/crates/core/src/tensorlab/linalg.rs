use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{invalid, Result};
use crate::tolerance;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigh {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl Eigh {
    /// `V · diag(f(λ)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let scaled = ComplexMatrix::from_fn(n, n, |r, c| v[(r, c)] * fv[c]);
        scaled.matmul(&v.adjoint())
    }
}

fn hermitian_tolerance(m: &ComplexMatrix) -> f64 {
    tolerance::HERMITIAN * m.max_abs().max(1.0)
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending.
pub fn eigh(m: &ComplexMatrix) -> Result<Eigh> {
    if !m.is_square() {
        return invalid(format!(
            "eigh needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        ));
    }
    let defect = m.hermiticity_defect();
    if defect > hermitian_tolerance(m) {
        return invalid(format!(
            "eigh input is not Hermitian (|M - M†| = {defect:.3e})"
        ));
    }
    let n = m.rows();
    let h = m.hermitian_part();
    let dm = DMatrix::from_fn(n, n, |r, c| h[(r, c)]);
    let eig = SymmetricEigen::new(dm);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Eigh { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(m: &ComplexMatrix) -> Result<Vec<f64>> {
    eigh(m).map(|e| e.values)
}

/// `max(0, -λ_min)`: how far a Hermitian matrix is from the PSD cone in
/// spectral norm.
pub fn psd_distance(m: &ComplexMatrix) -> Result<f64> {
    let values = eigvalsh(m)?;
    Ok(values.first().map_or(0.0, |&l| (-l).max(0.0)))
}
