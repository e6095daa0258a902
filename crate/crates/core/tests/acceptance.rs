//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

mod common;

use std::f64::consts::{PI, SQRT_2, TAU};
use std::time::{Duration, Instant};

use common::*;
use jc_gme::dynamics::{evolve, jc_unitary, oracle_evolve, pair_excitation, reduce};
use jc_gme::entanglement::{
    b_block_coherence, biseparability_criteria, negativity, pair_negativity,
};
use jc_gme::explab::{emit_csv, run_sweep, Preset, ResultTable};
use jc_gme::gme::{
    bipartitions, ppt_mixture_measure, verify_witness, BipartiteDecomposition, WitnessReport,
};
use jc_gme::states::{assemble_initial, werner_pair, JCConfig};
use jc_gme::tensorlab::{partial_trace, partial_transpose_matrix, ComplexMatrix, Label};
use num_complex::Complex64 as C64;
use rand::Rng;

const RABI_TOL: f64 = 1e-10;
const RABI_TIME: Duration = Duration::from_secs(1);
const ORACLE_TOL: f64 = 1e-10;
const ORACLE_TIME: Duration = Duration::from_secs(30);
const CONSERVATION_TOL: f64 = 1e-10;
const WERNER_TOL: f64 = 1e-10;
const BIPARTITE_TOL: f64 = 1e-6;
const BIPARTITE_TIME: Duration = Duration::from_secs(60);
const GHZ_TOL: f64 = 1e-6;
const CERT_RESIDUAL: f64 = 1e-7;
const GME_AT_ZERO: f64 = 1e-9;
const GME_PEAK_MIN: f64 = 0.01;
const FIG2_TIME: Duration = Duration::from_secs(600);
const NEG_AC_TOL: f64 = 1e-9;
const ELEMENT_TOL: f64 = 1e-12;
const B_COHERENCE_TOL: f64 = 1e-12;
const PAIR_NEG_TOL: f64 = 1e-9;
const AC_NONZERO: f64 = 1e-10;
const AC_EXCLUSION: f64 = 0.05;
const NULL_GME_TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| TAU * i as f64 / (n - 1) as f64).collect()
}

fn rabi() -> Outcome {
    let start = Instant::now();
    let f = 3;
    let mut v = vec![C64::new(0.0, 0.0); 2 * f];
    v[f] = C64::new(1.0, 0.0); // atom excited, vacuum
    let rho = ComplexMatrix::projector(&v);
    let mut worst = 0.0f64;
    for gt in grid(100) {
        let out = rho.conjugate_by(&jc_unitary(gt, f).unwrap().matrix);
        let excited: f64 = (f..2 * f).map(|k| out[(k, k)].re).sum();
        worst = worst.max((excited - gt.cos().powi(2)).abs());
    }
    let t = start.elapsed();
    outcome(
        worst <= RABI_TOL && t < RABI_TIME,
        format!("max error {worst:.2e}, {t:.2?}"),
    )
}

fn seeded_configs(seed: u64, n: usize) -> Vec<JCConfig> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            JCConfig::new(r.gen(), r.gen(), r.gen(), r.gen(), 3, r.gen_range(0.0..TAU)).unwrap()
        })
        .collect()
}

fn oracle() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for cfg in seeded_configs(1, 10) {
        let rho0 = assemble_initial(&cfg).unwrap();
        let a = evolve(&rho0, cfg.gt()).unwrap();
        let b = oracle_evolve(&rho0, cfg.gt()).unwrap();
        worst = worst.max(a.matrix().frobenius_distance(b.matrix()));
    }
    let t = start.elapsed();
    outcome(
        worst <= ORACLE_TOL && t < ORACLE_TIME,
        format!("max Frobenius distance {worst:.2e}, {t:.2?}"),
    )
}

fn conservation() -> Outcome {
    let mut configs = seeded_configs(2, 3);
    configs.push(JCConfig::default());
    let mut worst = 0.0f64;
    for cfg in configs {
        let rho0 = assemble_initial(&cfg).unwrap();
        let n0: Vec<f64> = Label::ATOMS
            .iter()
            .map(|&a| pair_excitation(&rho0, a).unwrap())
            .collect();
        for gt in grid(50) {
            let rho = evolve(&rho0, gt).unwrap();
            for (k, &a) in Label::ATOMS.iter().enumerate() {
                worst = worst.max((pair_excitation(&rho, a).unwrap() - n0[k]).abs());
            }
        }
    }
    outcome(worst <= CONSERVATION_TOL, format!("max drift {worst:.2e}"))
}

fn werner() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let n = pair_negativity(&werner_pair(p, 2, [Label::A, Label::B]).unwrap()).unwrap();
        worst = worst.max((n - ((3.0 * p - 1.0) / 4.0).max(0.0)).abs());
    }
    let third = pair_negativity(&werner_pair(1.0 / 3.0, 2, [Label::A, Label::B]).unwrap()).unwrap();
    outcome(
        worst <= WERNER_TOL && third <= WERNER_TOL,
        format!("max error {worst:.2e}, at p = 1/3: {third:.2e}"),
    )
}

fn bipartite() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2024);
    let mut worst = 0.0f64;
    for k in 0..20 {
        let rho = random_density(&mut r, qubits(&[Label::A, Label::B]), 1 + k % 4);
        let gn = ppt_mixture_measure(&rho, &[Label::A, Label::B])
            .unwrap()
            .value
            .min(0.0)
            .abs();
        let n = negativity(&rho, (&[Label::A], &[Label::B])).unwrap();
        worst = worst.max((gn - n).abs());
    }
    let t = start.elapsed();
    outcome(
        worst <= BIPARTITE_TOL && t < BIPARTITE_TIME,
        format!("max |difference| {worst:.2e}, {t:.2?}"),
    )
}

fn ghz_benchmark() -> Outcome {
    let rho = ghz();
    let rep = ppt_mixture_measure(&rho, &Label::ATOMS).unwrap();
    let solver_residual = verify_witness(&rep, &rho).unwrap();
    let w = &ComplexMatrix::identity(8).scale_real(0.5) - rho.matrix();
    let hand = WitnessReport {
        value: -0.5,
        genuine_negativity: 0.5,
        witness: w.clone(),
        shape: rho.shape().clone(),
        decompositions: bipartitions(&Label::ATOMS)
            .into_iter()
            .map(|subset| {
                let q = partial_transpose_matrix(&w, rho.shape(), &subset).unwrap();
                BipartiteDecomposition {
                    subset,
                    p: ComplexMatrix::zeros(8, 8),
                    q,
                }
            })
            .collect(),
        residual: 0.0,
        duality_gap: 0.0,
        iterations: 0,
    };
    let hand_residual = verify_witness(&hand, &rho).unwrap();
    let err = (rep.genuine_negativity - 0.5).abs();
    outcome(
        err <= GHZ_TOL && solver_residual <= CERT_RESIDUAL && hand_residual <= CERT_RESIDUAL,
        format!(
            "genuine negativity {:.10}, solver certificate residual {solver_residual:.2e}, hand-built residual {hand_residual:.2e}",
            rep.genuine_negativity
        ),
    )
}

fn curve_max(table: &ResultTable, setting: usize, col: usize) -> f64 {
    table
        .rows_for(setting)
        .map(|r| r.values[col])
        .fold(0.0, f64::max)
}

fn figure2(table: &ResultTable, elapsed: Duration) -> Outcome {
    let col = table.column_index("gme_abc").unwrap();
    let at_zero = table.rows_for(0).next().unwrap().values[col];
    let maxima: Vec<f64> = (0..3).map(|s| curve_max(table, s, col)).collect();
    let peak = maxima[0];
    let ordered = maxima.windows(2).all(|w| w[1] <= w[0]);
    outcome(
        at_zero <= GME_AT_ZERO && peak >= GME_PEAK_MIN && ordered && elapsed < FIG2_TIME,
        format!(
            "gme(0) = {at_zero:.2e}, max gme over gt = {peak:.3e} (need >= {GME_PEAK_MIN}), \
             per-curve maxima [{}] non-increasing: {ordered}, {elapsed:.2?}",
            maxima
                .iter()
                .map(|m| format!("{m:.3e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}

fn figure3() -> Outcome {
    let spec = Preset::Fig3.spec();
    let mut max_bc = 0.0f64;
    let mut max_ac = 0.0f64;
    let table = run_sweep(&spec).unwrap();
    let (bc, ac) = (
        table.column_index("neg_bc").unwrap(),
        table.column_index("neg_ac").unwrap(),
    );
    for row in table.rows_for(0) {
        max_bc = max_bc.max(row.values[bc]);
    }
    for row in &table.rows {
        max_ac = max_ac.max(row.values[ac]);
    }
    outcome(
        max_bc > 0.0 && max_ac <= NEG_AC_TOL,
        format!("max neg_bc {max_bc:.3e}, max neg_ac {max_ac:.2e}"),
    )
}

fn near_quarter_period(gt: f64) -> bool {
    [PI / 2.0, PI / (2.0 * SQRT_2)].iter().any(|q| {
        let r = gt / q;
        (r - r.round()).abs() * q < AC_EXCLUSION
    })
}

fn classical() -> Outcome {
    let cfg = JCConfig::new(0.0, 0.0, 1.0 / SQRT_2, 1.0 / SQRT_2, 3, 0.0).unwrap();
    let rho0 = assemble_initial(&cfg).unwrap();
    let zero_elements = [
        "rho18", "rho27", "rho36", "rho45", "rho23", "rho35", "rho46", "rho67",
    ];
    let (mut elem, mut coh, mut neg, mut violated) = (0.0f64, 0.0f64, 0.0f64, false);
    let mut ac_min = f64::INFINITY;
    for gt in grid(200) {
        let rho = evolve(&rho0, gt).unwrap();
        let abc = reduce(&rho, &Label::ATOMS).unwrap();
        let crit = biseparability_criteria(&abc).unwrap();
        for name in zero_elements {
            elem = elem.max(crit.element(name).unwrap().norm());
        }
        violated |= crit.ghz_violated() || crit.w.violated();
        coh = coh.max(b_block_coherence(&abc).unwrap());
        for pair in [
            [Label::A, Label::B],
            [Label::B, Label::C],
            [Label::A, Label::C],
        ] {
            neg = neg.max(pair_negativity(&partial_trace(&abc, &pair).unwrap()).unwrap());
        }
        if !near_quarter_period(gt) {
            let ac = partial_trace(&abc, &[Label::A, Label::C]).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        ac_min = ac_min.min(ac.element(i, j).norm());
                    }
                }
            }
        }
    }
    outcome(
        elem <= ELEMENT_TOL && !violated && coh <= B_COHERENCE_TOL && neg <= PAIR_NEG_TOL && ac_min > AC_NONZERO,
        format!(
            "max |GHZ/W elements| {elem:.2e}, criteria violated: {violated}, B-coherence {coh:.2e}, \
             max pair negativity {neg:.2e}, min |rho_AC off-diagonal| {ac_min:.2e}"
        ),
    )
}

fn quantum_correlated() -> Outcome {
    let table = run_sweep(&Preset::QuantumCorrelated.spec()).unwrap();
    let gme = table
        .column("gme_abc")
        .unwrap()
        .into_iter()
        .fold(0.0, f64::max);
    let cfg = Preset::QuantumCorrelated.spec().base;
    let rho0 = assemble_initial(&cfg).unwrap();
    let mut violated = false;
    for gt in grid(200) {
        let abc = reduce(&evolve(&rho0, gt).unwrap(), &Label::ATOMS).unwrap();
        let c = biseparability_criteria(&abc).unwrap();
        violated |= c.certifies_gme() || c.fullsep.violated();
    }
    outcome(
        gme <= NULL_GME_TOL && !violated,
        format!("max gme {gme:.2e}, any criterion violated: {violated}"),
    )
}

fn csv_bytes(table: &ResultTable) -> Vec<u8> {
    let mut buf = Vec::new();
    emit_csv(table, &mut buf).unwrap();
    buf
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "Rabi exactness", rabi()),
        (2, "dynamics cross-validation", oracle()),
        (3, "excitation conservation", conservation()),
        (4, "Werner negativity closed form", werner()),
        (5, "bipartite SDP equals negativity", bipartite()),
        (6, "GHZ benchmark", ghz_benchmark()),
    ];

    let start = Instant::now();
    let fig2 = run_sweep(&Preset::Fig2.spec()).unwrap();
    let elapsed = start.elapsed();
    results.push((
        7,
        "genuine entanglement for alpha = gamma near 1",
        figure2(&fig2, elapsed),
    ));
    results.push((8, "pairwise negativities", figure3()));
    results.push((9, "classical correlations", classical()));
    results.push((10, "quantum-correlated null case", quantum_correlated()));

    let again = run_sweep(&Preset::Fig2.spec()).unwrap();
    let (a, b) = (csv_bytes(&fig2), csv_bytes(&again));
    results.push((
        11,
        "determinism",
        outcome(a == b, format!("{} bytes, identical: {}", a.len(), a == b)),
    ));

    let mut failed = 0;
    for (n, name, o) in &results {
        println!(
            "criterion {n:>2} {}: {name} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
