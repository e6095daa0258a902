#![allow(dead_code)]

use jc_gme::tensorlab::{eigh, kron_all, ComplexMatrix, DensityMatrix, Label, MultipartiteShape};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_square(rng: &mut TestRng, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// `G G† / tr` for a matrix `G` with uniform entries, optionally of reduced rank.
pub fn random_density(rng: &mut TestRng, shape: MultipartiteShape, rank: usize) -> DensityMatrix {
    let d = shape.dim();
    let g = ComplexMatrix::from_fn(d, rank, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    DensityMatrix::normalized(g.matmul(&g.adjoint()), shape).unwrap()
}

pub fn random_hermitian(rng: &mut TestRng, d: usize) -> ComplexMatrix {
    random_square(rng, d).hermitian_part()
}

/// `exp(iH)` for a random Hermitian `H`.
pub fn random_unitary(rng: &mut TestRng, d: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, d).scale_real(2.0);
    eigh(&h).unwrap().map_spectrum(|l| C64::new(0.0, l).exp())
}

pub fn random_local_unitary(rng: &mut TestRng, dims: &[usize]) -> ComplexMatrix {
    let us: Vec<ComplexMatrix> = dims.iter().map(|&d| random_unitary(rng, d)).collect();
    kron_all(us.iter())
}

pub fn qubits(labels: &[Label]) -> MultipartiteShape {
    MultipartiteShape::new(labels.iter().map(|&l| (l, 2)).collect()).unwrap()
}

pub fn pure(amps: &[f64], shape: MultipartiteShape) -> DensityMatrix {
    let v: Vec<C64> = amps.iter().map(|&a| C64::new(a, 0.0)).collect();
    DensityMatrix::normalized(ComplexMatrix::projector(&v), shape).unwrap()
}

pub fn ghz() -> DensityMatrix {
    let mut a = [0.0; 8];
    a[0] = 1.0;
    a[7] = 1.0;
    pure(&a, qubits(&Label::ATOMS))
}

pub fn w_state() -> DensityMatrix {
    let mut a = [0.0; 8];
    a[1] = 1.0;
    a[2] = 1.0;
    a[4] = 1.0;
    pure(&a, qubits(&Label::ATOMS))
}

pub fn singlet() -> DensityMatrix {
    pure(&[0.0, 1.0, -1.0, 0.0], qubits(&[Label::A, Label::B]))
}

/// Unnormalised `|GHZ⟩⟨GHZ|` with unit-norm vector.
pub fn ghz_projector() -> ComplexMatrix {
    ghz().into_matrix()
}
