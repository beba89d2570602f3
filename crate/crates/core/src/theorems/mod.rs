//! Desk-scale reproductions of the three counting statements: the ratio
//! identity for a height model, the leading term for an extension of `Z(n)`
//! by `Z(m)`, and the 691 inclusion–exclusion count.
//!
//! Powers of two that the underlying formulas leave undetermined are carried
//! as an explicit annotation and never folded into a numeric value silently.

mod theorem1;
mod theorem2;
mod theorem3;

use serde::Serialize;

use crate::arithmetic::{Rational, Real};

pub use theorem1::{theorem1_ratio, Theorem1Report, Theorem1Row};
pub use theorem2::{theorem2_asymptotic, theorem2_exact, Theorem2Model, SIGN_TWO_POWER};
pub use theorem3::{
    inclusion_exclusion_factor, theorem3_asymptotic, theorem3_exact, theorem3_display_coefficient, Theorem3Asymptotic,
    Theorem3Count,
    Theorem3Model,
};

/// A leading coefficient `rational * 2^two_power / prod zeta(n)` of `(ln B)^log_power`.
#[derive(Debug, Clone, Serialize)]
pub struct Coefficient {
    pub log_power: u32,
    pub rational: Rational,
    pub two_power: i64,
    /// Arguments `n` of the zeta values in the denominator.
    pub zeta_denominator: Vec<u32>,
    /// `prod zeta(n)^(-1)`.
    #[serde(serialize_with = "real_as_f64")]
    pub transcendental: Real,
    #[serde(serialize_with = "real_as_f64")]
    pub value: Real,
    pub precision: usize,
}

impl Coefficient {
    pub(crate) fn new(log_power: u32, rational: Rational, two_power: i64, zetas: Vec<(u32, Real)>) -> Self {
        let p = zetas.iter().map(|(_, z)| z.precision()).max().unwrap_or(crate::arithmetic::DEFAULT_PRECISION);
        let transcendental = zetas.iter().fold(Real::one(p), |acc, (_, z)| acc / z);
        let value = Real::from_rational(&rational, p) * Real::from_i64(2, p).powi(two_power) * &transcendental;
        Coefficient {
            log_power,
            rational,
            two_power,
            zeta_denominator: zetas.into_iter().map(|(n, _)| n).collect(),
            transcendental,
            value,
            precision: p,
        }
    }
}

pub(crate) fn real_as_f64<S: serde::Serializer>(x: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(x.to_f64())
}
