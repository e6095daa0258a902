//! Orthonormal basis of `d × d` Hermitian matrices under `Re Tr(AB)`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

use crate::tensorlab::ComplexMatrix;

/// `d` diagonal units, then `(E_kl + E_lk)/√2` and `i(E_kl − E_lk)/√2` for
/// each `k < l`.
pub fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(d * d);
    for k in 0..d {
        let mut e = ComplexMatrix::zeros(d, d);
        e[(k, k)] = C64::new(1.0, 0.0);
        out.push(e);
    }
    for k in 0..d {
        for l in k + 1..d {
            let mut s = ComplexMatrix::zeros(d, d);
            s[(k, l)] = C64::new(FRAC_1_SQRT_2, 0.0);
            s[(l, k)] = C64::new(FRAC_1_SQRT_2, 0.0);
            out.push(s);
            let mut a = ComplexMatrix::zeros(d, d);
            a[(k, l)] = C64::new(0.0, FRAC_1_SQRT_2);
            a[(l, k)] = C64::new(0.0, -FRAC_1_SQRT_2);
            out.push(a);
        }
    }
    out
}

/// Coordinates `Re Tr(E_i H)` of a Hermitian matrix.
pub fn coordinates(basis: &[ComplexMatrix], h: &ComplexMatrix) -> Vec<f64> {
    basis.iter().map(|e| e.trace_product(h).re).collect()
}

pub fn from_coordinates(basis: &[ComplexMatrix], coords: &[f64]) -> ComplexMatrix {
    let d = basis.first().map_or(0, |e| e.rows());
    let mut out = ComplexMatrix::zeros(d, d);
    for (e, &y) in basis.iter().zip(coords) {
        if y != 0.0 {
            out = &out + &e.scale_real(y);
        }
    }
    out
}
