//! Initial states: Werner pairs, single-party superpositions, and the
//! six-party product state with pairing `A–X`, `B–Y`, `C–Z`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tensorlab::{kron_all, ComplexMatrix, DensityMatrix, Label, MultipartiteShape};

/// Physical and numerical parameters of one triple-JC run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JCConfig {
    alpha: f64,
    gamma: f64,
    beta: f64,
    kappa: f64,
    fock_dim: usize,
    gt: f64,
}

/// Names of the real parameters that can be varied in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Alpha,
    Gamma,
    Beta,
    Kappa,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::Alpha, Param::Gamma, Param::Beta, Param::Kappa];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Gamma => "gamma",
            Param::Beta => "beta",
            Param::Kappa => "kappa",
        }
    }
}

impl std::str::FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter `{s}`")))
    }
}

pub const DEFAULT_ENTANGLED_WEIGHT: f64 = 0.95;
pub const DEFAULT_AMPLITUDE: f64 = FRAC_1_SQRT_2;
pub const DEFAULT_FOCK_DIM: usize = 3;

fn check_unit(key: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::Validation {
            key: key.into(),
            msg: format!("{v} is outside [0, 1]"),
        });
    }
    Ok(())
}

impl Default for JCConfig {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ENTANGLED_WEIGHT,
            gamma: DEFAULT_ENTANGLED_WEIGHT,
            beta: DEFAULT_AMPLITUDE,
            kappa: DEFAULT_AMPLITUDE,
            fock_dim: DEFAULT_FOCK_DIM,
            gt: 0.0,
        }
    }
}

impl JCConfig {
    pub fn new(
        alpha: f64,
        gamma: f64,
        beta: f64,
        kappa: f64,
        fock_dim: usize,
        gt: f64,
    ) -> Result<Self> {
        let cfg = Self {
            alpha,
            gamma,
            beta,
            kappa,
            fock_dim,
            gt,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        check_unit("alpha", self.alpha)?;
        check_unit("gamma", self.gamma)?;
        check_unit("beta", self.beta)?;
        check_unit("kappa", self.kappa)?;
        // one photon at most per cavity initially, plus one atomic excitation
        if self.fock_dim < 3 {
            return Err(Error::Validation {
                key: "fock_dim".into(),
                msg: format!("{} < 3 cannot hold two excitations per pair", self.fock_dim),
            });
        }
        if !self.gt.is_finite() {
            return Err(Error::Validation {
                key: "gt".into(),
                msg: "must be finite".into(),
            });
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn fock_dim(&self) -> usize {
        self.fock_dim
    }
    pub fn gt(&self) -> f64 {
        self.gt
    }

    pub fn param(&self, p: Param) -> f64 {
        match p {
            Param::Alpha => self.alpha,
            Param::Gamma => self.gamma,
            Param::Beta => self.beta,
            Param::Kappa => self.kappa,
        }
    }

    pub fn with_param(mut self, p: Param, value: f64) -> Result<Self> {
        match p {
            Param::Alpha => self.alpha = value,
            Param::Gamma => self.gamma = value,
            Param::Beta => self.beta = value,
            Param::Kappa => self.kappa = value,
        }
        self.validate()?;
        Ok(self)
    }

    pub fn with_gt(mut self, gt: f64) -> Result<Self> {
        self.gt = gt;
        self.validate()?;
        Ok(self)
    }

    pub fn with_fock_dim(mut self, fock_dim: usize) -> Result<Self> {
        self.fock_dim = fock_dim;
        self.validate()?;
        Ok(self)
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `p |ψ−⟩⟨ψ−| + (1 − p)/4 · 1` on the `{0, 1}` levels of two parties, with
/// `|ψ−⟩ = (|01⟩ − |10⟩)/√2`. Levels above 1 carry no weight.
pub fn werner_pair(p: f64, dim_per_party: usize, labels: [Label; 2]) -> Result<DensityMatrix> {
    check_unit("p", p).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let d = dim_per_party;
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "Werner pair needs dimension >= 2, got {d}"
        )));
    }
    let shape = MultipartiteShape::new(vec![(labels[0], d), (labels[1], d)])?;
    let mut singlet = vec![real(0.0); d * d];
    singlet[1] = real(FRAC_1_SQRT_2);
    singlet[d] = real(-FRAC_1_SQRT_2);
    let mut m = ComplexMatrix::projector(&singlet).scale_real(p);
    for i in 0..2 {
        for j in 0..2 {
            m[(i * d + j, i * d + j)] += real((1.0 - p) / 4.0);
        }
    }
    DensityMatrix::new(m, shape)
}

fn two_level_projector(amp0: f64, dim: usize, label: Label) -> Result<DensityMatrix> {
    check_unit("amplitude", amp0).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut v = vec![real(0.0); dim];
    v[0] = real(amp0);
    v[1] = real((1.0 - amp0 * amp0).max(0.0).sqrt());
    DensityMatrix::new(
        ComplexMatrix::projector(&v),
        MultipartiteShape::new(vec![(label, dim)])?,
    )
}

/// Projector onto `b|0⟩ + √(1 − b²)|1⟩` for one atom.
pub fn qubit_superposition(b: f64, label: Label) -> Result<DensityMatrix> {
    two_level_projector(b, 2, label)
}

/// Projector onto `k|0⟩ + √(1 − k²)|1⟩` in a Fock space of `fock_dim` levels.
pub fn cavity_superposition(k: f64, fock_dim: usize, label: Label) -> Result<DensityMatrix> {
    if fock_dim < 3 {
        return Err(Error::InvalidArgument(format!(
            "fock_dim must be >= 3, got {fock_dim}"
        )));
    }
    two_level_projector(k, fock_dim, label)
}

/// Six-party initial state in canonical order `(A, B, C, X, Y, Z)`:
/// `W_AB(α) ⊗ φ_C(β) ⊗ ζ_X(κ) ⊗ W_YZ(γ)`.
pub fn assemble_initial(cfg: &JCConfig) -> Result<DensityMatrix> {
    let f = cfg.fock_dim();
    let parts = [
        werner_pair(cfg.alpha(), 2, [Label::A, Label::B])?,
        qubit_superposition(cfg.beta(), Label::C)?,
        cavity_superposition(cfg.kappa(), f, Label::X)?,
        werner_pair(cfg.gamma(), f, [Label::Y, Label::Z])?,
    ];
    let matrix = kron_all(parts.iter().map(|p| p.matrix()));
    Ok(DensityMatrix::from_trusted(
        matrix,
        MultipartiteShape::canonical(f),
    ))
}
