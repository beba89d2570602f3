//! Mixed discrete/continuous volume against the continuous one:
//!
//! ```text
//! I(B) = {(n, y) in Z^r1 x R^r2 : f1(n) + f2(y) <= B}
//! V(B) = {(x, y) in R^r1 x R^r2 : f1(x) + f2(y) <= B}
//! ```
//!
//! `mu(I(B))` sums fiber volumes `V2 (B - f1(n))^(r2/c)` over lattice points;
//! `mu(V(B))` is the closed form
//! `B^((r1+r2)/c) V1 V2 Gamma(r1/c+1) Gamma(r2/c+1) / Gamma((r1+r2)/c+1)`
//! with `Vi = vol{fi <= 1}`.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use super::homogeneous::HomogeneousFn;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub bound: f64,
    /// `#{n : f1(n) <= B}`.
    pub lattice_count: u128,
    /// `mu(I(B))`.
    pub measure: f64,
    /// `mu(V(B))`.
    pub volume: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSeries {
    rows: Vec<RatioRow>,
}

impl RatioSeries {
    pub fn new(rows: Vec<RatioRow>) -> Result<Self> {
        if rows.windows(2).any(|w| w[1].bound <= w[0].bound) {
            return Err(Error::invalid("bounds must be strictly increasing"));
        }
        Ok(RatioSeries { rows })
    }

    pub fn rows(&self) -> &[RatioRow] {
        &self.rows
    }

    pub fn last(&self) -> Option<&RatioRow> {
        self.rows.last()
    }
}

pub(crate) fn check_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::invalid("schedule is empty"));
    }
    if schedule.iter().any(|b| !b.is_finite() || *b < 0.0) {
        return Err(Error::invalid("schedule values must be finite and non-negative"));
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("schedule must be strictly increasing"));
    }
    Ok(())
}

/// Neumaier-compensated sum, in input order.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub fn ratio_experiment(f1: &HomogeneousFn, f2: &HomogeneousFn, schedule: &[f64]) -> Result<RatioSeries> {
    let c = f1.degree();
    if (f2.degree() - c).abs() > 1e-12 * c {
        return Err(Error::invalid(format!(
            "homogeneity degrees differ: {} vs {}",
            f1.degree(),
            f2.degree()
        )));
    }
    f1.validate()?;
    f2.validate()?;
    check_schedule(schedule)?;
    let (r1, r2) = (f1.rank() as f64, f2.rank() as f64);
    let (v1, v2) = (f1.unit_volume(), f2.unit_volume());
    let gamma_factor =
        (ln_gamma(r1 / c + 1.0) + ln_gamma(r2 / c + 1.0) - ln_gamma((r1 + r2) / c + 1.0)).exp();

    let rows = schedule
        .iter()
        .map(|&b| {
            let mut fibers = Vec::new();
            f1.for_each_lattice(b, |_, fx| fibers.push(v2 * (b - fx).max(0.0).powf(r2 / c)));
            let measure = compensated_sum(fibers.iter().copied());
            let volume = b.powf((r1 + r2) / c) * v1 * v2 * gamma_factor;
            RatioRow { bound: b, lattice_count: fibers.len() as u128, measure, volume, ratio: measure / volume }
        })
        .collect();
    RatioSeries::new(rows)
}
