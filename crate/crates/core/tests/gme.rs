mod common;

use approx::assert_abs_diff_eq;
use common::*;
use jc_gme::entanglement::{negativity, pair_negativity};
use jc_gme::gme::{
    bipartitions, ppt_mixture_measure, verify_witness, witness_expectation, BipartiteDecomposition,
    WitnessReport,
};
use jc_gme::states::werner_pair;
use jc_gme::tensorlab::{partial_transpose_matrix, ComplexMatrix, DensityMatrix, Label};
use rand::Rng;

fn rotate(rho: &DensityMatrix, u: &ComplexMatrix) -> DensityMatrix {
    DensityMatrix::new(
        rho.matrix().conjugate_by(u).hermitian_part(),
        rho.shape().clone(),
    )
    .unwrap()
}

fn mix(l: f64, a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    let m = &a.matrix().scale_real(l) + &b.matrix().scale_real(1.0 - l);
    DensityMatrix::new(m, a.shape().clone()).unwrap()
}

/// `W = 1/2 − |GHZ⟩⟨GHZ|` with `P_M = 0`, `Q_M = W^{T_M}` for every cut.
pub fn hand_built_ghz_witness() -> WitnessReport {
    let rho = ghz();
    let w = &ComplexMatrix::identity(8).scale_real(0.5) - &ghz_projector();
    let decompositions = bipartitions(&Label::ATOMS)
        .into_iter()
        .map(|subset| {
            let q = partial_transpose_matrix(&w, rho.shape(), &subset).unwrap();
            BipartiteDecomposition {
                subset,
                p: ComplexMatrix::zeros(8, 8),
                q,
            }
        })
        .collect();
    WitnessReport {
        value: -0.5,
        genuine_negativity: 0.5,
        witness: w,
        shape: rho.shape().clone(),
        decompositions,
        residual: 0.0,
        duality_gap: 0.0,
        iterations: 0,
    }
}

#[test]
fn bipartite_measure_equals_negativity() {
    let mut r = rng(2024);
    let split = (&[Label::A][..], &[Label::B][..]);
    for k in 0..20 {
        let rank = 1 + k % 4;
        let rho = random_density(&mut r, qubits(&[Label::A, Label::B]), rank);
        let rep = ppt_mixture_measure(&rho, &[Label::A, Label::B]).unwrap();
        let n = negativity(&rho, split).unwrap();
        assert!(
            (-rep.value).max(0.0) - n < 1e-6 && n - (-rep.value).max(0.0) < 1e-6,
            "state {k}: {} vs {n}",
            rep.value
        );
        assert!(rep.residual <= 1e-7);
    }
}

#[test]
fn werner_family_measure() {
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let rho = werner_pair(p, 2, [Label::A, Label::B]).unwrap();
        let rep = ppt_mixture_measure(&rho, &[Label::A, Label::B]).unwrap();
        let oracle = ((3.0 * p - 1.0) / 4.0).max(0.0);
        assert_abs_diff_eq!(rep.genuine_negativity, oracle, epsilon = 1e-6);
        assert_abs_diff_eq!(pair_negativity(&rho).unwrap(), oracle, epsilon = 1e-12);
    }
}

#[test]
fn ghz_benchmark_and_certificate() {
    let rho = ghz();
    let rep = ppt_mixture_measure(&rho, &Label::ATOMS).unwrap();
    assert_abs_diff_eq!(rep.genuine_negativity, 0.5, epsilon = 1e-6);
    assert!(rep.certifies_gme());
    assert!(verify_witness(&rep, &rho).unwrap() <= 1e-7);
    assert_abs_diff_eq!(witness_expectation(&rep, &rho), rep.value, epsilon = 1e-12);
}

#[test]
fn hand_built_witness_is_feasible() {
    let rho = ghz();
    let rep = hand_built_ghz_witness();
    assert!(verify_witness(&rep, &rho).unwrap() <= 1e-9);
    assert_abs_diff_eq!(witness_expectation(&rep, &rho), -0.5, epsilon = 1e-14);
}

#[test]
fn corrupted_witness_detected() {
    let rho = ghz();
    let mut rep = hand_built_ghz_witness();
    let zzz = ComplexMatrix::diag_real(
        &(0..8)
            .map(|i: u32| {
                if i.count_ones().is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect::<Vec<_>>(),
    );
    rep.witness = &rep.witness + &zzz.scale_real(0.1);
    assert!(verify_witness(&rep, &rho).unwrap() > 0.05);
}

#[test]
fn shape_mismatch_is_an_error() {
    let rep = hand_built_ghz_witness();
    assert!(verify_witness(&rep, &singlet()).is_err());
}

#[test]
fn product_and_biseparable_states_have_zero() {
    let mut r = rng(8);
    let a = random_density(&mut r, qubits(&[Label::A]), 2);
    let bc = random_density(&mut r, qubits(&[Label::B, Label::C]), 4);
    let rep = ppt_mixture_measure(&a.tensor(&bc).unwrap(), &Label::ATOMS).unwrap();
    assert_eq!(rep.genuine_negativity, 0.0);
    let s = singlet();
    let ab_c = s.tensor(&pure(&[1.0, 0.0], qubits(&[Label::C]))).unwrap();
    assert_eq!(
        ppt_mixture_measure(&ab_c, &Label::ATOMS)
            .unwrap()
            .genuine_negativity,
        0.0
    );
}

#[test]
fn w_state_is_detected() {
    let rho = w_state();
    let rep = ppt_mixture_measure(&rho, &Label::ATOMS).unwrap();
    assert!(rep.certifies_gme());
    assert!(rep.genuine_negativity > 0.3 && rep.genuine_negativity < 0.5);
}

#[test]
fn local_unitary_invariance() {
    let mut r = rng(77);
    for k in 0..3 {
        let mut rho = random_density(&mut r, qubits(&Label::ATOMS), 1);
        if k == 0 {
            rho = mix(0.8, &ghz(), &rho);
        }
        let u = random_local_unitary(&mut r, &[2, 2, 2]);
        let g1 = ppt_mixture_measure(&rho, &Label::ATOMS)
            .unwrap()
            .genuine_negativity;
        let g2 = ppt_mixture_measure(&rotate(&rho, &u), &Label::ATOMS)
            .unwrap()
            .genuine_negativity;
        assert!((g1 - g2).abs() <= 2e-6, "{g1} vs {g2}");
    }
}

#[test]
fn convexity_spot_checks() {
    let mut r = rng(31);
    for _ in 0..3 {
        let r1 = mix(
            0.7,
            &ghz(),
            &random_density(&mut r, qubits(&Label::ATOMS), 2),
        );
        let r2 = mix(
            0.6,
            &w_state(),
            &random_density(&mut r, qubits(&Label::ATOMS), 1),
        );
        let l: f64 = r.gen();
        let gn = |rho: &DensityMatrix| {
            ppt_mixture_measure(rho, &Label::ATOMS)
                .unwrap()
                .genuine_negativity
        };
        assert!(gn(&mix(l, &r1, &r2)) <= l * gn(&r1) + (1.0 - l) * gn(&r2) + 2e-6);
    }
}

#[test]
fn positive_values_carry_valid_certificates() {
    let mut r = rng(99);
    for _ in 0..4 {
        let rho = mix(
            0.75,
            &ghz(),
            &random_density(&mut r, qubits(&Label::ATOMS), 3),
        );
        let rep = ppt_mixture_measure(&rho, &Label::ATOMS).unwrap();
        if rep.genuine_negativity > 0.0 {
            assert!(verify_witness(&rep, &rho).unwrap() <= 1e-7);
        }
    }
}

#[test]
fn invalid_party_lists() {
    let rho = ghz();
    assert!(ppt_mixture_measure(&rho, &[Label::A]).is_err());
    assert!(ppt_mixture_measure(&rho, &[Label::A, Label::B]).is_err());
}
