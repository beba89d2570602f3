//! TOML model configuration.
//!
//! ```toml
//! degree = 2
//! precision = 128          # optional, bits
//! torsion_order = 3        # optional, default 1
//! compact_mass = "1/2"     # optional
//! tamagawa = "2"           # optional
//!
//! [archimedean]
//! gram = [["1"]]
//!
//! [[finite]]
//! prime = 2
//! gram = [["1"]]
//! local_mass = "1/4"       # optional, but all-or-none across blocks
//! ```
//!
//! Exact values are written as `"num/den"` strings; integers and decimal
//! literals are accepted too and converted exactly.

use serde::Deserialize;

use super::{HeightModel, ModelMasses, PlaceBlock, QuadraticForm};
use crate::arithmetic::{Rational, Real, DEFAULT_PRECISION, MIN_PRECISION};
use crate::error::{Error, Result};

/// Largest accepted form rank; enumeration cost grows exponentially in it.
pub const MAX_RANK: usize = 8;

/// Largest accepted working precision in bits.
pub const MAX_PRECISION: usize = 4096;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Exact {
    Text(String),
    Integer(i64),
    Float(f64),
}

impl Exact {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Exact::Text(s) => s.parse(),
            Exact::Integer(n) => Ok(Rational::from(*n)),
            Exact::Float(x) if x.is_finite() => format!("{x:e}").parse(),
            Exact::Float(x) => Err(Error::Parse(format!("non-finite value {x}"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockConfig {
    pub rank: Option<usize>,
    pub gram: Vec<Vec<Exact>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteBlockConfig {
    pub prime: u64,
    pub rank: Option<usize>,
    pub gram: Vec<Vec<Exact>>,
    pub local_mass: Option<Exact>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub degree: u32,
    pub precision: Option<usize>,
    pub torsion_order: Option<u64>,
    pub compact_mass: Option<Exact>,
    pub tamagawa: Option<Exact>,
    pub archimedean: BlockConfig,
    #[serde(default)]
    pub finite: Vec<FiniteBlockConfig>,
}

impl ModelConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string().replace('\n', " ")))
    }

    pub fn build(&self) -> Result<HeightModel> {
        let precision = self.precision.unwrap_or(DEFAULT_PRECISION);
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&precision) {
            return Err(Error::Model(format!(
                "precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {precision}"
            )));
        }
        let arch = build_form(self.archimedean.rank, &self.archimedean.gram)?;
        let blocks = self
            .finite
            .iter()
            .map(|b| PlaceBlock::finite(b.prime, build_form(b.rank, &b.gram)?, precision))
            .collect::<Result<Vec<_>>>()?;
        let model = HeightModel::new(self.degree, PlaceBlock::archimedean(arch, precision), blocks)?;

        let real = |e: &Exact| -> Result<Real> { Ok(Real::from_rational(&e.to_rational()?, precision)) };
        let given = self.finite.iter().filter(|b| b.local_mass.is_some()).count();
        let local_masses = if given == 0 {
            None
        } else if given == self.finite.len() {
            Some(
                self.finite
                    .iter()
                    .map(|b| real(b.local_mass.as_ref().expect("checked above")))
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            return Err(Error::Model("local_mass must be given for every finite block or none".into()));
        };
        let masses = ModelMasses {
            torsion_order: self.torsion_order.unwrap_or(1),
            compact_mass: self.compact_mass.as_ref().map(real).transpose()?,
            local_masses,
            tamagawa: self.tamagawa.as_ref().map(real).transpose()?,
        };
        model.with_masses(masses)
    }
}

fn build_form(rank: Option<usize>, gram: &[Vec<Exact>]) -> Result<QuadraticForm> {
    if gram.len() > MAX_RANK {
        return Err(Error::Model(format!("rank {} exceeds the supported maximum {MAX_RANK}", gram.len())));
    }
    if let Some(r) = rank {
        if r != gram.len() {
            return Err(Error::DimensionMismatch { expected: r, found: gram.len(), context: "gram rows vs rank" });
        }
    }
    let rows = gram
        .iter()
        .map(|row| row.iter().map(Exact::to_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    QuadraticForm::new(rows).map_err(|e| match e {
        Error::Parse(_) => e,
        other => Error::Model(other.to_string()),
    })
}

/// Parses a Gram matrix written row by row: `"2,1;1,2"`. An empty string is rank 0.
pub fn parse_gram(text: &str) -> Result<QuadraticForm> {
    let text = text.trim();
    if text.is_empty() {
        return QuadraticForm::new(Vec::new());
    }
    let rows = text
        .split(';')
        .map(|row| row.split(',').map(|x| x.parse::<Rational>()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.len() > MAX_RANK {
        return Err(Error::Model(format!("rank {} exceeds the supported maximum {MAX_RANK}", rows.len())));
    }
    QuadraticForm::new(rows)
}
