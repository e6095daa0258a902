use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Subsystem label: atoms `A`, `B`, `C` and their cavities `X`, `Y`, `Z`.
///
/// The derived ordering is the canonical global factor order `A < B < C < X < Y < Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A,
    B,
    C,
    X,
    Y,
    Z,
}

impl Label {
    pub const ALL: [Label; 6] = [Label::A, Label::B, Label::C, Label::X, Label::Y, Label::Z];
    pub const ATOMS: [Label; 3] = [Label::A, Label::B, Label::C];
    pub const CAVITIES: [Label; 3] = [Label::X, Label::Y, Label::Z];

    /// The cavity an atom interacts with (`A–X`, `B–Y`, `C–Z`), or the atom a
    /// cavity hosts.
    pub fn partner(self) -> Label {
        match self {
            Label::A => Label::X,
            Label::B => Label::Y,
            Label::C => Label::Z,
            Label::X => Label::A,
            Label::Y => Label::B,
            Label::Z => Label::C,
        }
    }

    pub fn is_atom(self) -> bool {
        matches!(self, Label::A | Label::B | Label::C)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::A => "A",
            Label::B => "B",
            Label::C => "C",
            Label::X => "X",
            Label::Y => "Y",
            Label::Z => "Z",
        };
        f.write_str(s)
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Label::A),
            "B" | "b" => Ok(Label::B),
            "C" | "c" => Ok(Label::C),
            "X" | "x" => Ok(Label::X),
            "Y" | "y" => Ok(Label::Y),
            "Z" | "z" => Ok(Label::Z),
            other => invalid(format!("unknown subsystem label `{other}`")),
        }
    }
}

/// Ordered list of labelled tensor factors.
///
/// Basis index convention: lexicographic with the leftmost factor most
/// significant, so for three qubits `|abc⟩` has zero-based index `4a + 2b + c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultipartiteShape {
    factors: Vec<(Label, usize)>,
}

impl MultipartiteShape {
    pub fn new(factors: Vec<(Label, usize)>) -> Result<Self> {
        for (i, &(label, dim)) in factors.iter().enumerate() {
            if dim == 0 {
                return invalid(format!("factor {label} has dimension 0"));
            }
            if factors[..i].iter().any(|&(l, _)| l == label) {
                return invalid(format!("duplicate label {label}"));
            }
        }
        Ok(Self { factors })
    }

    /// Three qubits `A, B, C`.
    pub fn atoms() -> Self {
        Self {
            factors: Label::ATOMS.iter().map(|&l| (l, 2)).collect(),
        }
    }

    /// Canonical six-party shape `(A, B, C, X, Y, Z)` with `fock_dim` levels per cavity.
    pub fn canonical(fock_dim: usize) -> Self {
        let factors = Label::ALL
            .iter()
            .map(|&l| (l, if l.is_atom() { 2 } else { fock_dim }))
            .collect();
        Self { factors }
    }

    pub fn factors(&self) -> &[(Label, usize)] {
        &self.factors
    }

    pub fn labels(&self) -> Vec<Label> {
        self.factors.iter().map(|&(l, _)| l).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|&(_, d)| d).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|&(_, d)| d).product()
    }

    pub fn position(&self, label: Label) -> Option<usize> {
        self.factors.iter().position(|&(l, _)| l == label)
    }

    pub fn dim_of(&self, label: Label) -> Option<usize> {
        self.position(label).map(|i| self.factors[i].1)
    }

    pub fn contains(&self, label: Label) -> bool {
        self.position(label).is_some()
    }

    /// Whether labels appear in canonical `A..Z` order.
    pub fn is_canonical_order(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].0 < w[1].0)
    }

    /// Stride of each factor in the flattened basis index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.factors.len()];
        for i in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.factors[i + 1].1;
        }
        strides
    }

    /// Digits of a flattened basis index, one per factor.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (i, &(_, d)) in self.factors.iter().enumerate().rev() {
            out[i] = index % d;
            index /= d;
        }
        out
    }

    /// Positions of `labels` within this shape, failing on unknown or repeated labels.
    pub fn positions_of(&self, labels: &[Label]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for &l in labels {
            let p = self
                .position(l)
                .ok_or_else(|| Error::InvalidArgument(format!("label {l} not in shape {self}")))?;
            if out.contains(&p) {
                return invalid(format!("label {l} listed twice"));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Shape with factors reordered to follow `perm`.
    pub fn permuted(&self, perm: &[Label]) -> Result<Self> {
        if perm.len() != self.factors.len() {
            return invalid(format!("{perm:?} is not a permutation of {self}"));
        }
        let pos = self.positions_of(perm)?;
        Ok(Self {
            factors: pos.iter().map(|&p| self.factors[p]).collect(),
        })
    }

    /// Sub-shape of the listed labels, kept in this shape's order.
    pub fn restricted(&self, keep: &[Label]) -> Result<Self> {
        let mut pos = self.positions_of(keep)?;
        pos.sort_unstable();
        Ok(Self {
            factors: pos.iter().map(|&p| self.factors[p]).collect(),
        })
    }
}

impl fmt::Display for MultipartiteShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (l, d)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}:{d}")?;
        }
        write!(f, ")")
    }
}
