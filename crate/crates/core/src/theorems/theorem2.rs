//! Extensions of `Z(n)` by `Z(m)` with a fixed class `u`: the count
//!
//! ```text
//! #T * #{z in Z : (|u| r(b_{m-n}))^(1/(m-n)) + (|z| |delta| r(b_n))^(1/n) <= ln B}
//! ```
//!
//! against the leading term `#T (ln B)^n / (|delta| r(b_n))`. The count runs
//! over both signs of `z` while the leading term does not, so the two differ
//! by the factor `2^SIGN_TWO_POWER`; comparisons are made modulo it.

use serde::Serialize;

use super::Coefficient;
use crate::arithmetic::{factorial, zeta_neg_odd, zeta_pos_odd, Rational, Real};
use crate::counting::{max_index, Bound};
use crate::error::{Error, Result};
use crate::ktheory::{mazur_wiles_torsion_order, regulator, MotiveTateParams, RegulatorValue};

/// Power of two separating the two-sided count from the leading term.
pub const SIGN_TWO_POWER: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Model {
    pub params: MotiveTateParams,
    pub u: i64,
    #[serde(skip)]
    pub reg_n: RegulatorValue,
    #[serde(skip)]
    pub reg_mn: RegulatorValue,
    pub torsion: u64,
    /// Regulators and torsion come from the Soulé and Mazur–Wiles formulas.
    pub derived: bool,
}

impl Theorem2Model {
    /// Regulators `r(b_n)` (with `sha_n`) and `r(b_{m-n})` (with Sha 1), `#T` from `sha_m`; `u = 1`.
    pub fn from_params(params: MotiveTateParams, precision: usize) -> Result<Self> {
        let reg_n = regulator(params.n, params.sha_n, params.two_exp, precision)?;
        let reg_mn = regulator(params.m - params.n, 1, params.two_exp, precision)?;
        let torsion = mazur_wiles_torsion_order(params.m, params.sha_m)?
            .to_u64()
            .ok_or_else(|| Error::Numeric("torsion order does not fit in 64 bits".into()))?;
        Ok(Theorem2Model { params, u: 1, reg_n, reg_mn, torsion, derived: true })
    }

    pub fn from_parts(
        params: MotiveTateParams,
        u: i64,
        reg_n: RegulatorValue,
        reg_mn: RegulatorValue,
        torsion: u64,
    ) -> Result<Self> {
        if torsion == 0 {
            return Err(Error::invalid("torsion order must be >= 1"));
        }
        if !reg_n.value.is_positive() || !reg_mn.value.is_positive() {
            return Err(Error::invalid("regulators must be positive"));
        }
        Ok(Theorem2Model { params, u, reg_n, reg_mn, torsion, derived: false })
    }

    /// Unit regulators, torsion 1 and `|delta| = 1`.
    pub fn unit(m: u32, n: u32, precision: usize) -> Result<Self> {
        let params = MotiveTateParams::new(m, n, 1, 1, 1, 0)?;
        let one = Real::one(precision);
        Self::from_parts(
            params,
            1,
            RegulatorValue::custom(n, one.clone())?,
            RegulatorValue::custom(m - n, one)?,
            1,
        )
    }

    pub fn with_u(mut self, u: i64) -> Self {
        self.u = u;
        self
    }

    pub fn with_torsion(mut self, torsion: u64) -> Result<Self> {
        if torsion == 0 {
            return Err(Error::invalid("torsion order must be >= 1"));
        }
        self.torsion = torsion;
        Ok(self)
    }

    fn precision(&self) -> usize {
        self.reg_n.value.precision().max(self.reg_mn.value.precision())
    }

    /// `(|u| r(b_{m-n}))^(1/(m-n))`, the height of `z = 0`.
    pub fn base_height(&self) -> Real {
        let p = self.precision();
        let x = Real::from_i64(self.u.unsigned_abs() as i64, p) * &self.reg_mn.value;
        if x.is_zero() {
            x
        } else {
            x.root(self.params.m - self.params.n)
        }
    }

    fn scaled_reg_n(&self) -> Real {
        Real::from_i64(self.params.delta_order as i64, self.precision()) * &self.reg_n.value
    }

    /// Coefficient of `(ln B)^n` from the model's own data: `#T sha_n / (|delta| (n-1)!)`, `2^-a`, `1/zeta(n)`.
    pub fn coefficient(&self) -> Result<Coefficient> {
        if !self.derived {
            return Err(Error::Model("closed form needs regulators from the Soulé formula".into()));
        }
        let n = self.params.n;
        let rational = Rational::from(self.torsion) * Rational::from(self.params.sha_n)
            / (Rational::from(self.params.delta_order) * Rational::from(factorial(n as u64 - 1)));
        let zeta = zeta_pos_odd(n, self.precision())?;
        Ok(Coefficient::new(n, rational, -(self.params.two_exp as i64), vec![(n, zeta)]))
    }

    /// The same coefficient written as `Sha(D) / ((n-1)! zeta(n) |zeta(1-m)|)` with
    /// `Sha(D) = sha_m sha_n / |delta|`.
    pub fn display_coefficient(&self) -> Result<Coefficient> {
        let p = &self.params;
        let sha_d = Rational::from(p.sha_m) * Rational::from(p.sha_n) / Rational::from(p.delta_order);
        let zeta_1m = zeta_neg_odd(1 - p.m as i64)?.abs();
        let rational = sha_d / (Rational::from(factorial(p.n as u64 - 1)) * zeta_1m);
        let zeta = zeta_pos_odd(p.n, self.precision())?;
        Ok(Coefficient::new(p.n, rational, -(p.two_exp as i64), vec![(p.n, zeta)]))
    }
}

/// Largest `z` representable exactly by the floating count.
const MAX_Z: f64 = 4.0e15;

pub fn theorem2_exact(model: &Theorem2Model, bound: &Bound) -> Result<u128> {
    let budget = (bound.log() - model.base_height()).to_f64();
    if budget < 0.0 && !crate::counting::within(0.0, budget) {
        return Ok(0);
    }
    let n = model.params.n;
    let coef = model.scaled_reg_n().root(n).to_f64();
    if (budget.max(0.0) / coef).powi(n as i32) > MAX_Z {
        return Err(Error::Numeric(format!("z-range exceeds {MAX_Z:e}")));
    }
    let z_max = max_index(coef, n, budget.max(0.0)) as u128;
    Ok(model.torsion as u128 * (2 * z_max + 1))
}

/// `#T (ln B)^n / (|delta| r(b_n))`.
pub fn theorem2_asymptotic(model: &Theorem2Model, bound: &Bound) -> Result<Real> {
    let p = model.precision().max(bound.log().precision());
    let torsion = Real::from_u128(model.torsion as u128, p);
    Ok(torsion * bound.log().widen(p).powi(model.params.n as i64) / model.scaled_reg_n())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_bound(l: f64) -> Bound {
        Bound::from_log_f64(l, 128).unwrap()
    }

    #[test]
    fn default_12_3_count_at_20() {
        let model = Theorem2Model::from_params(MotiveTateParams::default_12_3(), 128).unwrap();
        assert_eq!(model.torsion, 32760);
        assert!((model.base_height().to_f64() - 3.249535757794530).abs() < 1e-12);
        // (20 - base)^3 / (2 zeta(3)) = 1954.9..., so 2 * 1954 + 1 values of z.
        assert_eq!(theorem2_exact(&model, &log_bound(20.0)).unwrap(), 3909 * 32760);
    }

    #[test]
    fn only_zero_just_above_base() {
        let model = Theorem2Model::from_params(MotiveTateParams::default_12_3(), 128).unwrap();
        let base = model.base_height().to_f64();
        assert_eq!(theorem2_exact(&model, &log_bound(base + 1e-6)).unwrap(), 32760);
        assert_eq!(theorem2_exact(&model, &log_bound(base - 1e-6)).unwrap(), 0);
    }

    #[test]
    fn torsion_and_delta_scaling() {
        let model = Theorem2Model::unit(12, 3, 128).unwrap();
        let doubled = model.clone().with_torsion(2).unwrap();
        for l in [2.0, 9.5, 30.0] {
            let b = log_bound(l);
            assert_eq!(theorem2_exact(&doubled, &b).unwrap(), 2 * theorem2_exact(&model, &b).unwrap());
        }
        let a = Theorem2Model::from_params(MotiveTateParams::default_12_3(), 128).unwrap();
        let mut params = MotiveTateParams::default_12_3();
        params.delta_order = 691;
        let b = Theorem2Model::from_params(params, 128).unwrap();
        let x = log_bound(40.0);
        let ratio = theorem2_asymptotic(&a, &x).unwrap() / theorem2_asymptotic(&b, &x).unwrap();
        assert!((ratio.to_f64() - 691.0).abs() < 1e-25 * 691.0 + 1e-12);
    }

    #[test]
    fn unit_configuration_is_cube() {
        let model = Theorem2Model::unit(12, 3, 128).unwrap();
        let v = theorem2_asymptotic(&model, &log_bound(7.0)).unwrap().to_f64();
        assert_eq!(v, 343.0);
    }

    #[test]
    fn coefficient_forms_agree() {
        let model = Theorem2Model::from_params(MotiveTateParams::default_12_3(), 128).unwrap();
        let own = model.coefficient().unwrap();
        let display = model.display_coefficient().unwrap();
        assert_eq!(own.rational, Rational::from(16380));
        assert_eq!(own.rational, display.rational);
        assert!((own.value.to_f64() - 13626.642762871988).abs() < 1e-9);
        let asym = theorem2_asymptotic(&model, &log_bound(1.0)).unwrap();
        assert!(((asym - &own.value) / &own.value).abs().to_f64() < 1e-30);
    }
}
