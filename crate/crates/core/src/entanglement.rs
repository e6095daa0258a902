//! Closed-form entanglement diagnostics for the atomic state.
//!
//! Three-qubit matrix elements use one-based names: `ρ_ij` is the entry at
//! row `i`, column `j`, and basis state `|abc⟩` has index `4a + 2b + c + 1`.
//! So `ρ18 = ⟨000|ρ|111⟩` is the GHZ coherence and `ρ23`, `ρ25`, `ρ35` are
//! the coherences among the single-excitation states `|001⟩, |010⟩, |100⟩`.

use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};
use crate::tensorlab::{
    eigvalsh, partial_transpose, ComplexMatrix, DensityMatrix, Label, MultipartiteShape,
};
use crate::tolerance;

/// Sum of the moduli of the negative eigenvalues of `ρ^{T_S1}`.
pub fn negativity(rho: &DensityMatrix, partition: (&[Label], &[Label])) -> Result<f64> {
    let (first, second) = partition;
    if first.is_empty() || second.is_empty() {
        return invalid("both sides of a bipartition must be nonempty");
    }
    let mut all: Vec<Label> = first.iter().chain(second).copied().collect();
    all.sort_unstable();
    let mut labels = rho.shape().labels();
    labels.sort_unstable();
    if all != labels {
        return invalid(format!(
            "{first:?}|{second:?} does not bipartition the subsystems {}",
            rho.shape()
        ));
    }
    let ev = eigvalsh(&partial_transpose(rho, first)?)?;
    Ok(ev.iter().filter(|&&l| l < 0.0).fold(0.0, |acc, l| acc - l))
}

/// Negativity between the two parties of a two-party state.
pub fn pair_negativity(rho: &DensityMatrix) -> Result<f64> {
    let labels = rho.shape().labels();
    if labels.len() != 2 {
        return invalid(format!("expected a two-party state, got {}", rho.shape()));
    }
    negativity(rho, (&labels[..1], &labels[1..]))
}

/// Names of the matrix elements reported in every [`CriteriaReport`].
pub const TRACKED_ELEMENTS: [&str; 10] = [
    "rho18", "rho27", "rho36", "rho45", "rho23", "rho25", "rho35", "rho46", "rho67", "rho47",
];

fn tracked_index(name: &str) -> (usize, usize) {
    let b = name.as_bytes();
    ((b[3] - b'0') as usize, (b[4] - b'0') as usize)
}

/// Both sides of one separability inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
}

impl Inequality {
    /// True when `lhs` exceeds `rhs` by more than the reporting margin.
    pub fn violated(&self) -> bool {
        self.lhs > self.rhs + tolerance::CRITERION_MARGIN
    }

    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// Element-based separability inequalities for a three-qubit state.
///
/// Violating `ghz`, `ghz_27` or `w` certifies genuine multipartite
/// entanglement; violating `fullsep` certifies the state is not fully
/// separable. Satisfying any of them certifies nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaReport {
    /// `|ρ18| ≤ √(ρ22ρ77) + √(ρ33ρ66) + √(ρ44ρ55)`
    pub ghz: Inequality,
    /// `|ρ27| ≤ √(ρ11ρ88) + √(ρ33ρ66) + √(ρ44ρ55)`
    pub ghz_27: Inequality,
    /// `|ρ23|+|ρ25|+|ρ35| ≤ √(ρ11ρ44)+√(ρ11ρ66)+√(ρ11ρ77) + (ρ22+ρ33+ρ55)/2`
    pub w: Inequality,
    /// `|ρ23|+|ρ25|+|ρ35| ≤ √(ρ11ρ44)+√(ρ11ρ66)+√(ρ11ρ77)`
    pub fullsep: Inequality,
    pub tracked_elements: Vec<(&'static str, C64)>,
}

impl CriteriaReport {
    /// Largest margin over the two GHZ-type inequalities.
    pub fn ghz_margin(&self) -> f64 {
        self.ghz.margin().max(self.ghz_27.margin())
    }

    pub fn ghz_violated(&self) -> bool {
        self.ghz.violated() || self.ghz_27.violated()
    }

    /// Whether any bi-separability inequality is violated.
    pub fn certifies_gme(&self) -> bool {
        self.ghz_violated() || self.w.violated()
    }

    pub fn element(&self, name: &str) -> Option<C64> {
        self.tracked_elements
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, z)| z)
    }
}

fn check_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.shape().dims() != [2, 2, 2] {
        return invalid(format!("expected a three-qubit state, got {}", rho.shape()));
    }
    Ok(())
}

/// Evaluates the element-based inequalities literally from the matrix entries.
pub fn biseparability_criteria(rho_abc: &DensityMatrix) -> Result<CriteriaReport> {
    check_three_qubits(rho_abc)?;
    let m = rho_abc.matrix();
    let at = |i: usize, j: usize| m[(i - 1, j - 1)];
    let d = |i: usize| at(i, i).re.max(0.0);
    let sq = |i: usize, j: usize| (d(i) * d(j)).sqrt();

    let ghz = Inequality {
        lhs: at(1, 8).norm(),
        rhs: sq(2, 7) + sq(3, 6) + sq(4, 5),
    };
    let ghz_27 = Inequality {
        lhs: at(2, 7).norm(),
        rhs: sq(1, 8) + sq(3, 6) + sq(4, 5),
    };
    let w_lhs = at(2, 3).norm() + at(2, 5).norm() + at(3, 5).norm();
    let sep_rhs = sq(1, 4) + sq(1, 6) + sq(1, 7);
    let w = Inequality {
        lhs: w_lhs,
        rhs: sep_rhs + 0.5 * (d(2) + d(3) + d(5)),
    };
    let fullsep = Inequality {
        lhs: w_lhs,
        rhs: sep_rhs,
    };

    let tracked_elements = TRACKED_ELEMENTS
        .iter()
        .map(|&name| {
            let (i, j) = tracked_index(name);
            (name, at(i, j))
        })
        .collect();
    Ok(CriteriaReport {
        ghz,
        ghz_27,
        w,
        fullsep,
        tracked_elements,
    })
}

/// Frobenius norm of the block `⟨a,0,c|ρ|a',1,c'⟩` coupling the two values
/// of qubit `B`. Zero means `ρ = p₀ ρ⁰_AC ⊗ |0⟩⟨0|_B + p₁ ρ¹_AC ⊗ |1⟩⟨1|_B`.
pub fn b_block_coherence(rho_abc: &DensityMatrix) -> Result<f64> {
    check_three_qubits(rho_abc)?;
    let m = rho_abc.matrix();
    let mut acc = 0.0;
    for r in (0..8).filter(|i| (i >> 1) & 1 == 0) {
        for c in (0..8).filter(|i| (i >> 1) & 1 == 1) {
            acc += m[(r, c)].norm_sqr();
        }
    }
    Ok(acc.sqrt())
}

/// The two `B`-diagonal blocks of a three-qubit state.
#[derive(Debug, Clone)]
pub struct BDecomposition {
    /// `p_b = Tr⟨b|_B ρ |b⟩_B`.
    pub weights: [f64; 2],
    /// Normalized `AC` states for `B = 0, 1` (`None` when the weight vanishes).
    pub ac_states: [Option<DensityMatrix>; 2],
    /// Most negative eigenvalue among the unnormalized blocks, clipped at 0.
    pub psd_violation: f64,
}

impl BDecomposition {
    /// `Σ_b p_b ρ^b_AC ⊗ |b⟩⟨b|_B`, reordered to `(A, B, C)`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(8, 8);
        for b in 0..2 {
            if let Some(ac) = &self.ac_states[b] {
                for r in 0..4 {
                    for c in 0..4 {
                        let (ra, rc) = (r >> 1, r & 1);
                        let (ca, cc) = (c >> 1, c & 1);
                        out[(4 * ra + 2 * b + rc, 4 * ca + 2 * b + cc)] +=
                            ac.element(r, c) * self.weights[b];
                    }
                }
            }
        }
        out
    }
}

/// Splits a three-qubit state into its `B = 0` and `B = 1` blocks.
pub fn b_diagonal_decomposition(rho_abc: &DensityMatrix) -> Result<BDecomposition> {
    check_three_qubits(rho_abc)?;
    let m = rho_abc.matrix();
    let ac_shape = MultipartiteShape::new(vec![(Label::A, 2), (Label::C, 2)])?;
    let mut weights = [0.0; 2];
    let mut ac_states = [None, None];
    let mut psd_violation = 0.0_f64;
    for b in 0..2 {
        let block = ComplexMatrix::from_fn(4, 4, |r, c| {
            m[(
                4 * (r >> 1) + 2 * b + (r & 1),
                4 * (c >> 1) + 2 * b + (c & 1),
            )]
        })
        .hermitian_part();
        psd_violation = psd_violation.max(-eigvalsh(&block)?[0]);
        let w = block.trace().re;
        weights[b] = w;
        if w > tolerance::PSD {
            ac_states[b] = Some(DensityMatrix::normalized(block, ac_shape.clone())?);
        }
    }
    Ok(BDecomposition {
        weights,
        ac_states,
        psd_violation: psd_violation.max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::werner_pair;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ket(amps: &[(usize, f64)], dim: usize) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        for &(i, a) in amps {
            v[i] = C64::new(a, 0.0);
        }
        v
    }

    fn three_qubit(v: &[C64]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::projector(v), MultipartiteShape::atoms()).unwrap()
    }

    fn ghz() -> DensityMatrix {
        three_qubit(&ket(&[(0, FRAC_1_SQRT_2), (7, FRAC_1_SQRT_2)], 8))
    }

    fn w_state() -> DensityMatrix {
        let s = 1.0 / 3f64.sqrt();
        three_qubit(&ket(&[(1, s), (2, s), (4, s)], 8))
    }

    #[test]
    fn singlet_negativity() {
        let rho = werner_pair(1.0, 2, [Label::A, Label::B]).unwrap();
        assert!((pair_negativity(&rho).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn product_state_negativity_zero() {
        let rho = three_qubit(&ket(&[(5, 1.0)], 8));
        let n = negativity(&rho, (&[Label::A], &[Label::B, Label::C])).unwrap();
        assert!(n.abs() < 1e-15);
    }

    #[test]
    fn werner_negativity_closed_form() {
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let rho = werner_pair(p, 2, [Label::A, Label::B]).unwrap();
            let expected = ((3.0 * p - 1.0) / 4.0).max(0.0);
            assert!((pair_negativity(&rho).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_partitions() {
        let rho = ghz();
        assert!(negativity(&rho, (&[Label::A], &[Label::B])).is_err());
        assert!(negativity(&rho, (&[], &Label::ATOMS)).is_err());
        assert!(negativity(&rho, (&[Label::A, Label::B], &[Label::B, Label::C])).is_err());
    }

    #[test]
    fn ghz_violates_ghz_inequality() {
        let r = biseparability_criteria(&ghz()).unwrap();
        assert!((r.ghz.lhs - 0.5).abs() < 1e-15);
        assert_eq!(r.ghz.rhs, 0.0);
        assert!(r.ghz.violated() && r.certifies_gme());
        assert!((r.element("rho18").unwrap().re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_violates_nothing() {
        let rho = DensityMatrix::new(
            ComplexMatrix::identity(8).scale_real(0.125),
            MultipartiteShape::atoms(),
        )
        .unwrap();
        let r = biseparability_criteria(&rho).unwrap();
        assert_eq!(r.ghz.lhs, 0.0);
        assert!(!r.certifies_gme() && !r.fullsep.violated());
    }

    #[test]
    fn w_state_violates_w_inequality() {
        let r = biseparability_criteria(&w_state()).unwrap();
        assert!((r.w.lhs - 1.0).abs() < 1e-14);
        assert!((r.w.rhs - 0.5).abs() < 1e-14);
        assert!(r.w.violated() && r.fullsep.violated());
        assert!(!r.ghz_violated());
    }

    #[test]
    fn wrong_dimension_rejected() {
        let rho = werner_pair(0.5, 2, [Label::A, Label::B]).unwrap();
        assert!(biseparability_criteria(&rho).is_err());
        assert!(b_block_coherence(&rho).is_err());
    }

    #[test]
    fn b_coherence_examples() {
        assert!((b_block_coherence(&ghz()).unwrap() - 0.5).abs() < 1e-15);
        // ρ_AC ⊗ |0⟩⟨0|_B, written in (A, B, C) order
        let ac = ket(&[(0, 0.6), (3, 0.8)], 4);
        let v: Vec<C64> = (0..8)
            .map(|i| {
                if (i >> 1) & 1 == 0 {
                    ac[2 * (i >> 2) + (i & 1)]
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect();
        let rho = three_qubit(&v);
        assert_eq!(b_block_coherence(&rho).unwrap(), 0.0);
        let dec = b_diagonal_decomposition(&rho).unwrap();
        assert!((dec.weights[0] - 1.0).abs() < 1e-15 && dec.ac_states[1].is_none());
        assert!(dec.reconstruct().max_abs_diff(rho.matrix()) < 1e-15);
    }
}
