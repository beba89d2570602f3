//! Exact enumeration, mixed discrete/continuous volumes, Euler summation and
//! the two-variable counting lemma.
//!
//! Hot loops run in `f64`. Every inequality is closed, and a comparison
//! `v <= bound` accepts a relative slack of [`SLACK`] so that points lying on
//! the boundary in exact arithmetic are not lost to rounding.

mod euler;
mod homogeneous;
mod lattice;
mod lemma52;
mod model;
mod quadrature;
mod ratio;

use serde::Serialize;

use crate::arithmetic::Real;

pub use euler::euler_summation;
pub use homogeneous::HomogeneousFn;
pub use lattice::LatticeEnumerator;
pub use lemma52::{beta_integral_check, lemma52_asymptotic, lemma52_exact, BetaCheck, MAX_OUTER};
pub use model::{model_exact_count, model_volume, Bound, MAX_WORK};
pub use quadrature::adaptive_simpson;
pub use ratio::{ratio_experiment, RatioRow, RatioSeries};

pub(crate) use lemma52::{max_index, root_f64};

/// Relative tolerance on closed inequalities in floating point.
pub const SLACK: f64 = 1e-12;

#[inline]
pub(crate) fn within(value: f64, bound: f64) -> bool {
    value <= bound + SLACK * (bound.abs() + value.abs())
}

/// An exact count next to its leading-order prediction.
#[derive(Debug, Clone, Serialize)]
pub struct CountResult {
    pub bound: f64,
    pub exact_count: u128,
    pub asymptotic: f64,
    pub ratio: f64,
    pub precision: usize,
}

impl CountResult {
    pub fn new(bound: f64, exact_count: u128, asymptotic: &Real) -> Self {
        let a = asymptotic.to_f64();
        let ratio = if asymptotic.is_positive() {
            (Real::from_u128(exact_count, asymptotic.precision()) / asymptotic).to_f64()
        } else {
            f64::NAN
        };
        CountResult { bound, exact_count, asymptotic: a, ratio, precision: asymptotic.precision() }
    }
}
