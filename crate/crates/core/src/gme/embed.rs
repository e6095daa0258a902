//! Real symmetric embedding of complex Hermitian matrices.
//!
//! `H = A + iB ↦ [[A, −B], [B, A]]`. The embedding is a ring homomorphism,
//! preserves positive semidefiniteness, doubles every eigenvalue's
//! multiplicity, and satisfies `⟨emb H₁, emb H₂⟩ = 2 Re Tr(H₁H₂)`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::tensorlab::ComplexMatrix;

pub fn real_embed(h: &ComplexMatrix) -> DMatrix<f64> {
    let n = h.rows();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..h.cols() {
            let z = h[(r, c)];
            out[(r, c)] = z.re;
            out[(r + n, c + n)] = z.re;
            out[(r + n, c)] = z.im;
            out[(r, c + n)] = -z.im;
        }
    }
    out
}

/// Inverse of [`real_embed`]. Averages the two copies, so it also projects an
/// arbitrary real matrix onto the image of the embedding.
pub fn complex_from_embedding(m: &DMatrix<f64>) -> ComplexMatrix {
    let n = m.nrows() / 2;
    ComplexMatrix::from_fn(n, n, |r, c| {
        C64::new(
            0.5 * (m[(r, c)] + m[(r + n, c + n)]),
            0.5 * (m[(r + n, c)] - m[(r, c + n)]),
        )
    })
}

/// Nonzero entries of the embedding as `(row, col, value)` triplets.
pub fn embed_triplets(h: &ComplexMatrix) -> Vec<(usize, usize, f64)> {
    let n = h.rows();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..h.cols() {
            let z = h[(r, c)];
            if z.re != 0.0 {
                out.push((r, c, z.re));
                out.push((r + n, c + n, z.re));
            }
            if z.im != 0.0 {
                out.push((r + n, c, z.im));
                out.push((r, c + n, -z.im));
            }
        }
    }
    out
}
