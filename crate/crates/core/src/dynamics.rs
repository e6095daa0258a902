//! Resonant Jaynes-Cummings evolution of the three atom-cavity pairs.
//!
//! Each pair is ordered `(atom, cavity)` with basis index `atom · f + n`,
//! where `f` is the Fock cutoff and `n` the photon number. The dynamics
//! conserve the pair excitation `N = n + atom`, so it is block diagonal in `N`.
//! The state `(atom excited, n = f − 1)` would couple to `n = f`, which the
//! truncated space lacks; it is left invariant and states are refused if they
//! populate it.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tensorlab::{
    eigh, kron_all, partial_trace, permute_subsystems, ComplexMatrix, DensityMatrix, Label,
    MultipartiteShape,
};

const PAIR_ORDER: [Label; 6] = [Label::A, Label::X, Label::B, Label::Y, Label::C, Label::Z];

/// Diagonal weight tolerated on the unrepresentable top state.
const TRUNCATION_SUPPORT_TOL: f64 = 1e-12;

/// Closed-form JC propagator for one atom-cavity pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairUnitary {
    pub matrix: ComplexMatrix,
    pub gt: f64,
    pub fock_dim: usize,
}

impl PairUnitary {
    /// Index of the state `(atom excited, n = f − 1)` that the truncation
    /// cannot evolve faithfully.
    pub fn unreachable_index(&self) -> usize {
        2 * self.fock_dim - 1
    }
}

fn pair_index(fock_dim: usize, atom: usize, photons: usize) -> usize {
    atom * fock_dim + photons
}

/// `U(gt) = exp(−i gt (â†σ− + âσ+))` in closed form.
///
/// Matrix elements, for the pair ordering `(atom, cavity)`:
/// `⟨1,n|U|1,n⟩ = cos(gt√(n+1))`, `⟨0,n|U|0,n⟩ = cos(gt√n)`,
/// `⟨0,n+1|U|1,n⟩ = −i sin(gt√(n+1))`, `⟨1,n−1|U|0,n⟩ = −i sin(gt√n)`.
pub fn jc_unitary(gt: f64, fock_dim: usize) -> Result<PairUnitary> {
    if fock_dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "fock_dim must be >= 2, got {fock_dim}"
        )));
    }
    let f = fock_dim;
    let mut u = ComplexMatrix::zeros(2 * f, 2 * f);
    let minus_i = C64::new(0.0, -1.0);
    for n in 0..f {
        let ground = pair_index(f, 0, n);
        let w = gt * (n as f64).sqrt();
        u[(ground, ground)] = C64::new(w.cos(), 0.0);
        if n >= 1 {
            u[(pair_index(f, 1, n - 1), ground)] = minus_i * w.sin();
        }
        let excited = pair_index(f, 1, n);
        if n + 1 < f {
            let w = gt * ((n + 1) as f64).sqrt();
            u[(excited, excited)] = C64::new(w.cos(), 0.0);
            u[(pair_index(f, 0, n + 1), excited)] = minus_i * w.sin();
        } else {
            u[(excited, excited)] = C64::new(1.0, 0.0);
        }
    }
    Ok(PairUnitary {
        matrix: u,
        gt,
        fock_dim,
    })
}

/// `U_AX ⊗ U_BY ⊗ U_CZ` in canonical order `(A, B, C, X, Y, Z)`.
pub fn global_unitary(gt: f64, fock_dim: usize) -> Result<ComplexMatrix> {
    let pair = jc_unitary(gt, fock_dim)?;
    let in_pair_order = kron_all([&pair.matrix, &pair.matrix, &pair.matrix]);
    let pair_shape = MultipartiteShape::canonical(fock_dim).permuted(&PAIR_ORDER)?;
    permute_subsystems(&in_pair_order, &pair_shape, &Label::ALL)
}

fn check_canonical(rho: &DensityMatrix) -> Result<usize> {
    let labels = rho.shape().labels();
    let dims = rho.shape().dims();
    if labels != Label::ALL || dims[..3] != [2, 2, 2] || dims[3] != dims[4] || dims[4] != dims[5] {
        return Err(Error::InvalidArgument(format!(
            "evolution needs the canonical six-party shape, got {}",
            rho.shape()
        )));
    }
    Ok(dims[3])
}

/// Fails if any pair has weight on `(atom excited, n = f − 1)`.
pub fn check_valid_support(rho: &DensityMatrix) -> Result<()> {
    let f = check_canonical(rho)?;
    let shape = rho.shape();
    for i in 0..shape.dim() {
        let d = shape.digits(i);
        let offending = (0..3).find(|&k| d[k] == 1 && d[3 + k] == f - 1);
        if let Some(k) = offending {
            let w = rho.element(i, i).re;
            if w > TRUNCATION_SUPPORT_TOL {
                return Err(Error::Truncation(format!(
                    "pair {}{} has weight {w:.3e} on atom excited with {} photons (basis index {i})",
                    Label::ATOMS[k],
                    Label::CAVITIES[k],
                    f - 1
                )));
            }
        }
    }
    Ok(())
}

fn conjugate(rho: &DensityMatrix, u: &ComplexMatrix) -> DensityMatrix {
    let m = rho.matrix().conjugate_by(u).hermitian_part();
    DensityMatrix::from_trusted(m, rho.shape().clone())
}

/// `ρ(gt) = U ρ(0) U†` with the closed-form pair propagators.
pub fn evolve(rho0: &DensityMatrix, gt: f64) -> Result<DensityMatrix> {
    check_valid_support(rho0)?;
    let f = rho0.shape().dim_of(Label::X).unwrap_or(0);
    Ok(conjugate(rho0, &global_unitary(gt, f)?))
}

/// Interaction Hamiltonian `Σ_k (â_k†σ−_k + â_kσ+_k)` in units of `g`, canonical order.
pub fn interaction_hamiltonian(fock_dim: usize) -> ComplexMatrix {
    let f = fock_dim;
    let mut sigma_minus = ComplexMatrix::zeros(2, 2);
    sigma_minus[(0, 1)] = C64::new(1.0, 0.0);
    let sigma_plus = sigma_minus.transpose();
    let mut a = ComplexMatrix::zeros(f, f);
    for n in 1..f {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    let a_dag = a.transpose();

    let dim = 8 * f * f * f;
    let mut h = ComplexMatrix::zeros(dim, dim);
    for k in 0..3 {
        let term = |atom_op: &ComplexMatrix, field_op: &ComplexMatrix| {
            let factors: Vec<ComplexMatrix> = (0..6)
                .map(|p| {
                    if p == k {
                        atom_op.clone()
                    } else if p == 3 + k {
                        field_op.clone()
                    } else {
                        ComplexMatrix::identity(if p < 3 { 2 } else { f })
                    }
                })
                .collect();
            kron_all(factors.iter())
        };
        h = &h + &term(&sigma_minus, &a_dag);
        h = &h + &term(&sigma_plus, &a);
    }
    h
}

/// Reference evolution by spectral exponentiation of the interaction
/// Hamiltonian. Shares no code with [`jc_unitary`].
pub fn oracle_evolve(rho0: &DensityMatrix, gt: f64) -> Result<DensityMatrix> {
    check_valid_support(rho0)?;
    let f = rho0.shape().dim_of(Label::X).unwrap_or(0);
    let eig = eigh(&interaction_hamiltonian(f))?;
    let u = eig.map_spectrum(|lambda| C64::from_polar(1.0, -lambda * gt));
    Ok(conjugate(rho0, &u))
}

/// Reduced state on `keep`, in canonical factor order.
pub fn reduce(rho: &DensityMatrix, keep: &[Label]) -> Result<DensityMatrix> {
    partial_trace(rho, keep)
}

/// Expectation of `N = â†â + |1⟩⟨1|` for the pair hosting `atom`.
pub fn pair_excitation(rho: &DensityMatrix, atom: Label) -> Result<f64> {
    if !atom.is_atom() {
        return Err(Error::InvalidArgument(format!(
            "{atom} is not an atom label"
        )));
    }
    let pair = partial_trace(rho, &[atom, atom.partner()])?;
    let f = pair.shape().dim_of(atom.partner()).unwrap_or(0);
    Ok((0..2 * f)
        .map(|i| pair.element(i, i).re * ((i / f) + (i % f)) as f64)
        .sum())
}

/// Probability of finding `atom` in its excited state.
pub fn excited_population(rho: &DensityMatrix, atom: Label) -> Result<f64> {
    Ok(partial_trace(rho, &[atom])?.element(1, 1).re)
}
