//! Pairs `(m, u)` of positive integers with
//!
//! ```text
//! (u r(b_9))^(1/9) + (m r(b_3))^(1/3) <= ln B   and   691 | u  or  691 | m
//! ```
//!
//! counted directly and as `|S1| + |S2| - |S1 ∩ S2|` with `S1 = {691 | u}`,
//! `S2 = {691 | m}`. Each of the three sets is a lattice of the two-variable
//! counting lemma after rescaling the divisible coordinate, which gives the
//! leading term `(2/691 - 1/691^2) (ln B)^12 / (C(12,3) r(b_9) r(b_3))`.

use rayon::prelude::*;
use serde::Serialize;

use super::{real_as_f64, Coefficient};
use crate::arithmetic::{binomial, factorial, zeta_neg_odd, zeta_pos_odd, Rational, Real};
use crate::counting::{lemma52_asymptotic, max_index, root_f64, Bound, MAX_OUTER};
use crate::error::{Error, Result};
use crate::ktheory::{mazur_wiles_torsion_order, regulator, RegulatorValue, EXCEPTIONAL_PRIME};

#[derive(Debug, Clone, Serialize)]
pub struct Theorem3Model {
    #[serde(skip)]
    pub reg_3: RegulatorValue,
    #[serde(skip)]
    pub reg_9: RegulatorValue,
    pub torsion_12: u64,
    pub exceptional_prime: u64,
    /// Regulators and torsion come from the Soulé and Mazur–Wiles formulas.
    pub derived: bool,
}

impl Theorem3Model {
    /// `Sha(3) = Sha(9) = 1`, `Sha(12) = 691`, no powers of two.
    pub fn default_params(precision: usize) -> Result<Self> {
        Self::from_sha(1, 1, 691, 0, precision)
    }

    pub fn from_sha(sha_3: u64, sha_9: u64, sha_12: u64, two_exp: i32, precision: usize) -> Result<Self> {
        let torsion_12 = mazur_wiles_torsion_order(12, sha_12)?
            .to_u64()
            .ok_or_else(|| Error::Numeric("torsion order does not fit in 64 bits".into()))?;
        Ok(Theorem3Model {
            reg_3: regulator(3, sha_3, two_exp, precision)?,
            reg_9: regulator(9, sha_9, two_exp, precision)?,
            torsion_12,
            exceptional_prime: EXCEPTIONAL_PRIME,
            derived: true,
        })
    }

    /// Regulators given directly, e.g. rescaled so that small bounds already see 691.
    pub fn rescaled(reg_3: Real, reg_9: Real, torsion_12: u64) -> Result<Self> {
        if torsion_12 == 0 {
            return Err(Error::invalid("torsion order must be >= 1"));
        }
        Ok(Theorem3Model {
            reg_3: RegulatorValue::custom(3, reg_3)?,
            reg_9: RegulatorValue::custom(9, reg_9)?,
            torsion_12,
            exceptional_prime: EXCEPTIONAL_PRIME,
            derived: false,
        })
    }

    fn precision(&self) -> usize {
        self.reg_3.value.precision().max(self.reg_9.value.precision())
    }

    /// Coefficient of `(ln B)^12`: `#T (2/691 - 1/691^2) Sha(3) Sha(9) / (C(12,3) 2! 8!)`
    /// over `zeta(3) zeta(9)`, up to `2^-(a_3 + a_9)`.
    pub fn coefficient(&self) -> Result<Coefficient> {
        if !self.derived {
            return Err(Error::Model("closed form needs regulators from the Soulé formula".into()));
        }
        let rational = Rational::from(self.torsion_12)
            * inclusion_exclusion_factor()
            * Rational::from(self.reg_3.sha)
            * Rational::from(self.reg_9.sha)
            / (binomial(12, 3)? * Rational::from(factorial(2)) * Rational::from(factorial(8)));
        let p = self.precision();
        let two = -(self.reg_3.two_exp as i64 + self.reg_9.two_exp as i64);
        Ok(Coefficient::new(12, rational, two, vec![(3, zeta_pos_odd(3, p)?), (9, zeta_pos_odd(9, p)?)]))
    }
}

/// `2/691 - 1/691^2`.
pub fn inclusion_exclusion_factor() -> Rational {
    let p = Rational::from(EXCEPTIONAL_PRIME);
    Rational::from(2) / &p - Rational::one() / (&p * &p)
}

/// The coefficient as displayed:
/// `1/(8! 2! C(12,3)) Sha(3)/zeta(3) Sha(9)/zeta(9) Sha(12)/zeta(-11) (2/691 - 1/691^2)`.
pub fn theorem3_display_coefficient(sha_3: u64, sha_9: u64, sha_12: u64, precision: usize) -> Result<Coefficient> {
    let rational = Rational::from(sha_3) * Rational::from(sha_9) * Rational::from(sha_12)
        / zeta_neg_odd(-11)?
        * inclusion_exclusion_factor()
        / (Rational::from(factorial(8)) * Rational::from(factorial(2)) * binomial(12, 3)?);
    Ok(Coefficient::new(
        12,
        rational,
        0,
        vec![(3, zeta_pos_odd(3, precision)?), (9, zeta_pos_odd(9, precision)?)],
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem3Count {
    /// `#S(B)` from the divisibility predicate.
    pub direct: u128,
    pub s1: u128,
    pub s2: u128,
    pub s12: u128,
    /// `|S1| + |S2| - |S1 ∩ S2|`.
    pub inclusion_exclusion: u128,
    /// `#T * #S(B)`.
    pub total: u128,
}

impl Theorem3Count {
    pub fn agrees(&self) -> bool {
        self.direct == self.inclusion_exclusion
    }
}

pub fn theorem3_exact(model: &Theorem3Model, bound: &Bound) -> Result<Theorem3Count> {
    let x = bound.log().to_f64();
    let c3 = model.reg_3.value.root(3).to_f64();
    let c9 = model.reg_9.value.root(9).to_f64();
    if (x / c3).powi(3) > MAX_OUTER {
        return Err(Error::Numeric(format!("m-range exceeds the enumeration limit {MAX_OUTER:e}")));
    }
    if (x / c9).powi(9) > 2f64.powi(62) {
        return Err(Error::Numeric("u-range exceeds 2^62".into()));
    }
    let m_max = max_index(c3, 3, x);
    let zero = || (0u128, 0u128, 0u128, 0u128);
    let (direct, s1, s2, s12) = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let budget = x - c3 * root_f64(m as f64, 3);
            let u_max = max_index(c9, 9, budget) as u128;
            let p = EXCEPTIONAL_PRIME as u128;
            let m_div = m % EXCEPTIONAL_PRIME == 0;
            // Predicate per row: every u if 691 | m, else the multiples of 691.
            let direct = if m_div { u_max } else { u_max / p };
            let s1 = u_max / p;
            let (s2, s12) = if m_div { (u_max, u_max / p) } else { (0, 0) };
            (direct, s1, s2, s12)
        })
        .reduce(zero, |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3));
    let total = direct
        .checked_mul(model.torsion_12 as u128)
        .ok_or_else(|| Error::Numeric("count overflows".into()))?;
    Ok(Theorem3Count { direct, s1, s2, s12, inclusion_exclusion: s1 + s2 - s12, total })
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem3Asymptotic {
    #[serde(serialize_with = "real_as_f64")]
    pub s1: Real,
    #[serde(serialize_with = "real_as_f64")]
    pub s2: Real,
    #[serde(serialize_with = "real_as_f64")]
    pub s12: Real,
    /// `#T (s1 + s2 - s12)`.
    #[serde(serialize_with = "real_as_f64")]
    pub total: Real,
    pub precision: usize,
}

/// Leading terms of `|S1|`, `|S2|`, `|S1 ∩ S2|` from the two-variable lemma with `(s, t) = (3, 9)`.
pub fn theorem3_asymptotic(model: &Theorem3Model, bound: &Bound) -> Result<Theorem3Asymptotic> {
    let prec = model.precision().max(bound.log().precision());
    let x = bound.log().widen(prec);
    let q = Real::from_i64(EXCEPTIONAL_PRIME as i64, prec);
    let r3 = &model.reg_3.value;
    let r9 = &model.reg_9.value;
    let a = r3.root(3);
    let b = r9.root(9);
    let a_div = (&q * r3).root(3);
    let b_div = (&q * r9).root(9);
    let s1 = lemma52_asymptotic(3, 9, &a, &b_div, &x)?;
    let s2 = lemma52_asymptotic(3, 9, &a_div, &b, &x)?;
    let s12 = lemma52_asymptotic(3, 9, &a_div, &b_div, &x)?;
    let total = Real::from_u128(model.torsion_12 as u128, prec) * (&s1 + &s2 - &s12);
    Ok(Theorem3Asymptotic { s1, s2, s12, total, precision: prec })
}
