use super::{eigvalsh, ComplexMatrix, MultipartiteShape};
use crate::error::{invalid, Result};
use crate::tolerance;

/// Hermitian, unit-trace, positive semidefinite matrix bound to a shape.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    shape: MultipartiteShape,
}

impl DensityMatrix {
    /// Validates trace, Hermiticity and positivity.
    pub fn new(matrix: ComplexMatrix, shape: MultipartiteShape) -> Result<Self> {
        let d = shape.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return invalid(format!(
                "{}x{} matrix cannot be bound to shape {shape} (dimension {d})",
                matrix.rows(),
                matrix.cols()
            ));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tolerance::HERMITIAN {
            return invalid(format!(
                "density matrix not Hermitian (defect {defect:.3e})"
            ));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tolerance::TRACE || tr.im.abs() > tolerance::TRACE {
            return invalid(format!("density matrix trace is {tr}, expected 1"));
        }
        let min_eig = eigvalsh(&matrix)?[0];
        if min_eig < -tolerance::PSD {
            return invalid(format!("density matrix has eigenvalue {min_eig:.3e} < 0"));
        }
        Ok(Self { matrix, shape })
    }

    /// Binds a matrix that is a density matrix by construction (products,
    /// reductions, unitary conjugation of valid states). Only dimensions are
    /// checked, in debug builds.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, shape: MultipartiteShape) -> Self {
        debug_assert_eq!(matrix.rows(), shape.dim());
        debug_assert_eq!(matrix.cols(), shape.dim());
        Self { matrix, shape }
    }

    /// Normalizes `matrix` by its trace, then validates.
    pub fn normalized(matrix: ComplexMatrix, shape: MultipartiteShape) -> Result<Self> {
        let tr = matrix.trace().re;
        if tr <= 0.0 {
            return invalid("cannot normalize a matrix with non-positive trace");
        }
        Self::new(matrix.hermitian_part().scale_real(1.0 / tr), shape)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> &MultipartiteShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `ρ ⊗ σ` on the concatenated shape.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let mut factors = self.shape.factors().to_vec();
        factors.extend_from_slice(other.shape.factors());
        let shape = MultipartiteShape::new(factors)?;
        Ok(Self::from_trusted(self.matrix.kron(&other.matrix), shape))
    }

    /// Expectation value `Tr(ρ O)` of a Hermitian observable.
    pub fn expectation(&self, observable: &ComplexMatrix) -> f64 {
        self.matrix.trace_product(observable).re
    }

    /// Entry `(r, c)` with zero-based indices.
    pub fn element(&self, r: usize, c: usize) -> num_complex::Complex64 {
        self.matrix[(r, c)]
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigvalsh(&self.matrix)
    }
}
