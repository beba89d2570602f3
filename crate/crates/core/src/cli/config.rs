//! TOML inputs for the `theorem2` and `theorem3` subcommands. Every key is
//! optional; missing regulators and torsion orders are derived from the Sha
//! orders, given ones override the formulas.
//!
//! ```toml
//! # theorem2
//! m = 12
//! n = 3
//! sha_m = 691
//! reg_n = "1"      # optional override
//! ```

use serde::Deserialize;

use crate::arithmetic::Real;
use crate::error::{Error, Result};
use crate::height::config::Exact;
use crate::ktheory::{mazur_wiles_torsion_order, regulator, MotiveTateParams, RegulatorValue};
use crate::theorems::{Theorem2Model, Theorem3Model};

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string().replace('\n', " ")))
}

fn positive_real(e: &Exact, precision: usize, what: &str) -> Result<Real> {
    let q = e.to_rational()?;
    if !q.is_positive() {
        return Err(Error::Model(format!("{what} must be positive")));
    }
    Ok(Real::from_rational(&q, precision))
}

fn torsion_u64(value: crate::arithmetic::Rational) -> Result<u64> {
    value.to_u64().ok_or_else(|| Error::Numeric("torsion order does not fit in 64 bits".into()))
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem2Config {
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub sha_m: Option<u64>,
    pub sha_n: Option<u64>,
    pub delta_order: Option<u64>,
    pub two_exp: Option<i32>,
    pub u: Option<i64>,
    pub precision: Option<usize>,
    pub reg_n: Option<Exact>,
    pub reg_mn: Option<Exact>,
    pub torsion: Option<u64>,
}

impl Theorem2Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn build(&self, default_precision: usize) -> Result<Theorem2Model> {
        let d = MotiveTateParams::default_12_3();
        let params = MotiveTateParams::new(
            self.m.unwrap_or(d.m),
            self.n.unwrap_or(d.n),
            self.sha_m.unwrap_or(d.sha_m),
            self.sha_n.unwrap_or(d.sha_n),
            self.delta_order.unwrap_or(d.delta_order),
            self.two_exp.unwrap_or(d.two_exp),
        )
        .map_err(|e| Error::Model(e.to_string()))?;
        let p = precision(self.precision, default_precision)?;
        let u = self.u.unwrap_or(1);
        if self.reg_n.is_none() && self.reg_mn.is_none() && self.torsion.is_none() {
            return Ok(Theorem2Model::from_params(params, p)?.with_u(u));
        }
        let reg_n = match &self.reg_n {
            Some(v) => RegulatorValue::custom(params.n, positive_real(v, p, "reg_n")?)?,
            None => regulator(params.n, params.sha_n, params.two_exp, p)?,
        };
        let reg_mn = match &self.reg_mn {
            Some(v) => RegulatorValue::custom(params.m - params.n, positive_real(v, p, "reg_mn")?)?,
            None => regulator(params.m - params.n, 1, params.two_exp, p)?,
        };
        let torsion = match self.torsion {
            Some(t) => t,
            None => torsion_u64(mazur_wiles_torsion_order(params.m, params.sha_m)?)?,
        };
        Theorem2Model::from_parts(params, u, reg_n, reg_mn, torsion).map_err(|e| Error::Model(e.to_string()))
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem3Config {
    pub sha_3: Option<u64>,
    pub sha_9: Option<u64>,
    pub sha_12: Option<u64>,
    pub two_exp: Option<i32>,
    pub precision: Option<usize>,
    pub reg_3: Option<Exact>,
    pub reg_9: Option<Exact>,
    pub torsion: Option<u64>,
}

impl Theorem3Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn build(&self, default_precision: usize) -> Result<Theorem3Model> {
        let p = precision(self.precision, default_precision)?;
        let (s3, s9, s12) = (self.sha_3.unwrap_or(1), self.sha_9.unwrap_or(1), self.sha_12.unwrap_or(691));
        let a = self.two_exp.unwrap_or(0);
        if self.reg_3.is_none() && self.reg_9.is_none() && self.torsion.is_none() {
            return Theorem3Model::from_sha(s3, s9, s12, a, p);
        }
        let reg_3 = match &self.reg_3 {
            Some(v) => positive_real(v, p, "reg_3")?,
            None => regulator(3, s3, a, p)?.value,
        };
        let reg_9 = match &self.reg_9 {
            Some(v) => positive_real(v, p, "reg_9")?,
            None => regulator(9, s9, a, p)?.value,
        };
        let torsion = match self.torsion {
            Some(t) => t,
            None => torsion_u64(mazur_wiles_torsion_order(12, s12)?)?,
        };
        Theorem3Model::rescaled(reg_3, reg_9, torsion).map_err(|e| Error::Model(e.to_string()))
    }
}

fn precision(given: Option<usize>, default: usize) -> Result<usize> {
    use crate::arithmetic::MIN_PRECISION;
    use crate::height::config::MAX_PRECISION;
    let p = given.unwrap_or(default);
    if !(MIN_PRECISION..=MAX_PRECISION).contains(&p) {
        return Err(Error::Model(format!("precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {p}")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem2_defaults_and_overrides() {
        let m = Theorem2Config::from_toml_str("").unwrap().build(128).unwrap();
        assert_eq!(m.torsion, 32760);
        assert!(m.derived);
        let unit = Theorem2Config::from_toml_str("sha_m = 1\nreg_n = 1\nreg_mn = 1\ntorsion = 1").unwrap();
        let m = unit.build(128).unwrap();
        assert_eq!(m.torsion, 1);
        assert!(!m.derived);
        assert!(Theorem2Config::from_toml_str("sha_m = 1").unwrap().build(128).is_err());
        assert!(Theorem2Config::from_toml_str("bogus = 1").is_err());
        assert!(Theorem2Config::from_toml_str("reg_n = \"-1\"").unwrap().build(128).is_err());
    }

    #[test]
    fn theorem3_rescaled() {
        let c = Theorem3Config::from_toml_str("reg_3 = \"1/691\"\nreg_9 = \"1/691\"\ntorsion = 1").unwrap();
        let m = c.build(128).unwrap();
        assert_eq!(m.torsion_12, 1);
        assert!((m.reg_3.value.to_f64() - 1.0 / 691.0).abs() < 1e-18);
        assert!(Theorem3Config::from_toml_str("sha_12 = 2").unwrap().build(128).is_err());
    }
}
