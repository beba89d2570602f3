//! `C1 = |tors| N_B` against `C2 = mu(cpt) prod_p mu(A(Q_p)) mu(T_B)`.
//!
//! The scalar factors are exact, so `C1/C2` is `N_B/mu(T_B)` times
//! `|tors| / (mu(cpt) prod_p mu_p)`; the ratio-to-prediction reported here is
//! `C1/C2` divided by that scale, and tends to one. The supplied Tamagawa
//! number gives the predicted limit `1/Tam` of the global count; it is
//! compared with the one implied by the masses.

use serde::Serialize;

use crate::arithmetic::Real;
use crate::counting::{model_exact_count, model_volume, Bound};
use crate::error::{Error, Result};
use crate::height::HeightModel;

use super::real_as_f64;

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Row {
    pub log_bound: f64,
    pub count: u128,
    #[serde(serialize_with = "real_as_f64")]
    pub volume: Real,
    /// `|tors| * N_B`.
    pub c1: u128,
    #[serde(serialize_with = "real_as_f64")]
    pub c2: Real,
    pub c1_over_c2: f64,
    /// `N_B / mu(T_B)`.
    pub ratio: f64,
    pub ratio_to_prediction: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Report {
    pub rows: Vec<Theorem1Row>,
    /// `|tors| / (mu(cpt) prod_p mu_p)`.
    #[serde(serialize_with = "real_as_f64")]
    pub scale: Real,
    /// `1 / Tam`.
    #[serde(serialize_with = "real_as_f64")]
    pub predicted_limit: Real,
    /// `mu(cpt) prod_p mu_p / |tors|`, the Tamagawa number the masses imply.
    #[serde(serialize_with = "real_as_f64")]
    pub implied_tamagawa: Real,
    pub tamagawa_consistent: bool,
    pub precision: usize,
}

pub fn theorem1_ratio(model: &HeightModel, schedule: &[Bound]) -> Result<Theorem1Report> {
    let masses = model.masses();
    let p = model.precision();
    let compact = masses.compact_mass.clone().ok_or_else(|| Error::Model("compact_mass is not set".into()))?;
    let tamagawa = masses.tamagawa.clone().ok_or_else(|| Error::Model("tamagawa is not set".into()))?;
    let local = match &masses.local_masses {
        Some(l) => l.clone(),
        None if model.finite_blocks().is_empty() => Vec::new(),
        None => return Err(Error::Model("local masses are not set".into())),
    };
    if schedule.is_empty() {
        return Err(Error::invalid("schedule is empty"));
    }
    if schedule.windows(2).any(|w| w[1].log() <= w[0].log()) {
        return Err(Error::invalid("schedule must be strictly increasing"));
    }
    let torsion = masses.torsion_order;
    let mass = local.iter().fold(compact, |acc, m| acc * m);
    let torsion_r = Real::from_u128(torsion as u128, p);
    let scale = &torsion_r / &mass;
    let implied = &mass / &torsion_r;
    let rel = ((&implied - &tamagawa) / &tamagawa).abs().to_f64();

    let mut rows = Vec::with_capacity(schedule.len());
    for bound in schedule {
        let count = model_exact_count(model, bound)?;
        let volume = model_volume(model, bound)?;
        let c1 = count
            .checked_mul(torsion as u128)
            .ok_or_else(|| Error::Numeric("C1 overflows".into()))?;
        let c2 = &mass * &volume;
        let (c1_over_c2, ratio) = if volume.is_positive() {
            let c1_r = Real::from_u128(c1, p);
            ((&c1_r / &c2).to_f64(), (Real::from_u128(count, p) / &volume).to_f64())
        } else {
            (f64::NAN, f64::NAN)
        };
        rows.push(Theorem1Row {
            log_bound: bound.log().to_f64(),
            count,
            volume,
            c1,
            c2,
            c1_over_c2,
            ratio,
            ratio_to_prediction: c1_over_c2 / scale.to_f64(),
        });
    }
    Ok(Theorem1Report {
        rows,
        scale,
        predicted_limit: Real::one(p) / &tamagawa,
        implied_tamagawa: implied,
        tamagawa_consistent: rel < 1e-12,
        precision: p,
    })
}
