use std::f64::consts::TAU;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::states::{JCConfig, Param};

/// A quantity that a sweep can evaluate at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Genuine negativity of the three-atom state.
    GmeAbc,
    NegAb,
    NegBc,
    NegAc,
    /// `lhs − rhs` of the GHZ-type inequality, maximised over its two forms.
    Crit13,
    /// `lhs − rhs` of the W-type inequality.
    Crit14,
    /// `lhs − rhs` of the full-separability inequality.
    Crit15,
    /// Real and imaginary parts of every tracked matrix element.
    Elements,
    BCoherence,
}

impl Quantity {
    pub const ALL: [Quantity; 9] = [
        Quantity::GmeAbc,
        Quantity::NegAb,
        Quantity::NegBc,
        Quantity::NegAc,
        Quantity::Crit13,
        Quantity::Crit14,
        Quantity::Crit15,
        Quantity::Elements,
        Quantity::BCoherence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::GmeAbc => "gme_abc",
            Quantity::NegAb => "neg_ab",
            Quantity::NegBc => "neg_bc",
            Quantity::NegAc => "neg_ac",
            Quantity::Crit13 => "crit13",
            Quantity::Crit14 => "crit14",
            Quantity::Crit15 => "crit15",
            Quantity::Elements => "elements",
            Quantity::BCoherence => "b_coherence",
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown quantity `{s}`")))
    }
}

/// Evenly spaced `gt` values, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GtGrid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl Default for GtGrid {
    fn default() -> Self {
        Self {
            start: 0.0,
            end: TAU,
            steps: 200,
        }
    }
}

impl GtGrid {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Validation {
                key: "gt_steps".into(),
                msg: format!("{} < 2", self.steps),
            });
        }
        if !self.start.is_finite() {
            return Err(Error::Validation {
                key: "gt_start".into(),
                msg: "must be finite".into(),
            });
        }
        if !self.end.is_finite() || self.end <= self.start {
            return Err(Error::Validation {
                key: "gt_end".into(),
                msg: format!("{} is not greater than gt_start = {}", self.end, self.start),
            });
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.end
                } else {
                    self.start + (self.end - self.start) * i as f64 / last
                }
            })
            .collect()
    }
}

/// Everything needed to run one sweep.
///
/// Varied parameters are zipped: setting `i` takes the `i`-th value of every
/// list, so all lists must have the same length.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: JCConfig,
    pub grid: GtGrid,
    pub varied: Vec<(Param, Vec<f64>)>,
    pub outputs: Vec<Quantity>,
}

pub const DEFAULT_OUTPUTS: [Quantity; 4] = [
    Quantity::GmeAbc,
    Quantity::NegAb,
    Quantity::NegBc,
    Quantity::NegAc,
];

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            base: JCConfig::default(),
            grid: GtGrid::default(),
            varied: Vec::new(),
            outputs: DEFAULT_OUTPUTS.to_vec(),
        }
    }
}

fn vary_key(p: Param) -> String {
    format!("vary.{}", p.name())
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.outputs.is_empty() {
            return Err(Error::Validation {
                key: "outputs".into(),
                msg: "no quantities requested".into(),
            });
        }
        for (i, (p, _)) in self.varied.iter().enumerate() {
            if self.varied[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::Validation {
                    key: vary_key(*p),
                    msg: "given more than once".into(),
                });
            }
        }
        self.settings().map(|_| ())
    }

    pub fn setting_count(&self) -> usize {
        self.varied.first().map_or(1, |(_, v)| v.len())
    }

    /// One configuration per parameter setting, `gt` left at the base value.
    pub fn settings(&self) -> Result<Vec<JCConfig>> {
        let n = self.setting_count();
        for (p, values) in &self.varied {
            if values.is_empty() || values.len() != n {
                return Err(Error::Validation {
                    key: vary_key(*p),
                    msg: format!("expected {n} values, got {}", values.len()),
                });
            }
        }
        (0..n)
            .map(|i| {
                self.varied.iter().try_fold(self.base, |cfg, (p, values)| {
                    cfg.with_param(*p, values[i]).map_err(|e| match e {
                        Error::Validation { msg, .. } => Error::Validation {
                            key: vary_key(*p),
                            msg,
                        },
                        other => other,
                    })
                })
            })
            .collect()
    }

    /// Fixes `p` to `value` for every setting, dropping any variation of it.
    pub fn set_param(&mut self, p: Param, value: f64) -> Result<()> {
        self.varied.retain(|(q, _)| *q != p);
        self.base = self.base.with_param(p, value)?;
        Ok(())
    }
}

fn parse_value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse `{raw}` as a value for `{key}`"),
    })
}

fn parse_list<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<Vec<T>> {
    raw.split(',')
        .map(|v| parse_value(line, key, v.trim()))
        .collect()
}

/// Parses a plain-text sweep description into a validated [`SweepSpec`].
///
/// One `key = value` per line; `#` starts a comment. Keys: `alpha`, `gamma`,
/// `beta`, `kappa`, `fock_dim`, `gt_start`, `gt_end`, `gt_steps`,
/// `vary.<param>` (comma-separated values) and `outputs` (comma-separated
/// quantity names). Omitted keys take their defaults.
pub fn parse_config(text: &str) -> Result<SweepSpec> {
    let mut spec = SweepSpec::default();
    let mut params: Vec<(Param, f64)> = Vec::new();
    let mut fock_dim = None;
    let mut seen: Vec<String> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected `key = value`, got `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if seen.iter().any(|k| k == key) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate key `{key}`"),
            });
        }
        seen.push(key.to_string());
        match key {
            "gt_start" => spec.grid.start = parse_value(line, key, value)?,
            "gt_end" => spec.grid.end = parse_value(line, key, value)?,
            "gt_steps" => spec.grid.steps = parse_value(line, key, value)?,
            "fock_dim" => fock_dim = Some(parse_value(line, key, value)?),
            "outputs" => {
                spec.outputs = value
                    .split(',')
                    .map(|q| {
                        q.trim().parse().map_err(|_| Error::Validation {
                            key: "outputs".into(),
                            msg: format!("unknown quantity `{}`", q.trim()),
                        })
                    })
                    .collect::<Result<_>>()?;
            }
            _ => {
                if let Some(name) = key.strip_prefix("vary.") {
                    let p: Param = name.parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("unknown key `{key}`"),
                    })?;
                    spec.varied.push((p, parse_list(line, key, value)?));
                } else if let Ok(p) = key.parse::<Param>() {
                    params.push((p, parse_value(line, key, value)?));
                } else {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown key `{key}`"),
                    });
                }
            }
        }
    }

    for (p, v) in params {
        spec.base = spec.base.with_param(p, v)?;
    }
    if let Some(f) = fock_dim {
        spec.base = spec.base.with_fock_dim(f)?;
    }
    spec.validate()?;
    Ok(spec)
}
