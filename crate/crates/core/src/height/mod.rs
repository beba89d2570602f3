//! Height structures: one archimedean block on `R^{s_inf}` and finitely many
//! finite-place blocks on `Z^{s_p}`, each carrying a positive-definite form.
//!
//! The logarithmic height of a point is
//!
//! ```text
//! Q_inf(a_inf)^(1/d) + sum_p ln(p) * Q_p(a_p)^(1/d)
//! ```
//!
//! Compact factors only enter through their masses. The archimedean lattice
//! is the standard `Z^{s_inf}` with covolume one.

pub mod config;
mod form;

use std::fmt;

use serde::Serialize;

use crate::arithmetic::Real;
use crate::error::{Error, Result};
use crate::ktheory::is_prime;

pub use config::{parse_gram, ModelConfig};
pub use form::QuadraticForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlaceBlock {
    place: Place,
    form: QuadraticForm,
    weight: Real,
}

impl PlaceBlock {
    pub fn archimedean(form: QuadraticForm, precision: usize) -> Self {
        PlaceBlock { place: Place::Infinite, form, weight: Real::one(precision) }
    }

    pub fn finite(prime: u64, form: QuadraticForm, precision: usize) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::Model(format!("{prime} is not prime")));
        }
        let weight = Real::from_u128(prime as u128, precision).ln();
        Ok(PlaceBlock { place: Place::Finite(prime), form, weight })
    }

    pub fn place(&self) -> Place {
        self.place
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    /// `ln p` at a finite place, `1` at infinity.
    pub fn weight(&self) -> &Real {
        &self.weight
    }
}

/// Scalars entering the ratio identity, all optional until the model is used for it.
#[derive(Debug, Clone, Default)]
pub struct ModelMasses {
    pub torsion_order: u64,
    pub compact_mass: Option<Real>,
    pub local_masses: Option<Vec<Real>>,
    pub tamagawa: Option<Real>,
}

#[derive(Debug, Clone)]
pub struct HeightModel {
    degree: u32,
    precision: usize,
    archimedean: PlaceBlock,
    finite_blocks: Vec<PlaceBlock>,
    masses: ModelMasses,
}

impl HeightModel {
    pub fn new(degree: u32, archimedean: PlaceBlock, finite_blocks: Vec<PlaceBlock>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Model(format!("degree must be >= 2, got {degree}")));
        }
        if archimedean.place != Place::Infinite {
            return Err(Error::Model("archimedean block must sit at infinity".into()));
        }
        let mut primes: Vec<u64> = Vec::with_capacity(finite_blocks.len());
        for block in &finite_blocks {
            match block.place {
                Place::Finite(p) if !primes.contains(&p) => primes.push(p),
                Place::Finite(p) => return Err(Error::Model(format!("prime {p} appears twice"))),
                Place::Infinite => return Err(Error::Model("finite block placed at infinity".into())),
            }
        }
        let precision = archimedean.weight.precision();
        Ok(HeightModel {
            degree,
            precision,
            archimedean,
            finite_blocks,
            masses: ModelMasses { torsion_order: 1, ..Default::default() },
        })
    }

    /// Builds a model from raw forms; finite weights are `ln p`.
    pub fn from_forms(
        degree: u32,
        arch: QuadraticForm,
        finite: Vec<(u64, QuadraticForm)>,
        precision: usize,
    ) -> Result<Self> {
        let blocks = finite
            .into_iter()
            .map(|(p, f)| PlaceBlock::finite(p, f, precision))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, PlaceBlock::archimedean(arch, precision), blocks)
    }

    pub fn with_masses(mut self, masses: ModelMasses) -> Result<Self> {
        if masses.torsion_order == 0 {
            return Err(Error::Model("torsion_order must be >= 1".into()));
        }
        let positive = |r: &Real| r.is_positive();
        if masses.compact_mass.as_ref().is_some_and(|m| !positive(m)) {
            return Err(Error::Model("compact_mass must be positive".into()));
        }
        if let Some(local) = &masses.local_masses {
            if local.len() != self.finite_blocks.len() {
                return Err(Error::DimensionMismatch {
                    expected: self.finite_blocks.len(),
                    found: local.len(),
                    context: "local masses",
                });
            }
            if !local.iter().all(positive) {
                return Err(Error::Model("local masses must be positive".into()));
            }
        }
        if masses.tamagawa.as_ref().is_some_and(|t| !positive(t)) {
            return Err(Error::Model("tamagawa must be positive".into()));
        }
        self.masses = masses;
        Ok(self)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn archimedean(&self) -> &PlaceBlock {
        &self.archimedean
    }

    pub fn finite_blocks(&self) -> &[PlaceBlock] {
        &self.finite_blocks
    }

    pub fn masses(&self) -> &ModelMasses {
        &self.masses
    }

    /// The same model with finite blocks (and their local masses) reordered.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.finite_blocks.len() {
            return Err(Error::invalid("permutation length mismatch"));
        }
        let blocks = order.iter().map(|&i| self.finite_blocks[i].clone()).collect();
        let mut model = HeightModel::new(self.degree, self.archimedean.clone(), blocks)?;
        let mut masses = self.masses.clone();
        masses.local_masses = masses
            .local_masses
            .map(|m| order.iter().map(|&i| m[i].clone()).collect());
        model.masses = masses;
        Ok(model)
    }
}

#[derive(Debug, Clone)]
pub struct AdelicPoint {
    pub arch: Vec<Real>,
    pub finite: Vec<Vec<i64>>,
}

impl AdelicPoint {
    pub fn zero(model: &HeightModel) -> Self {
        AdelicPoint {
            arch: vec![Real::zero(model.precision); model.archimedean.rank()],
            finite: model.finite_blocks.iter().map(|b| vec![0; b.rank()]).collect(),
        }
    }

    fn conforms(&self, model: &HeightModel) -> Result<()> {
        if self.finite.len() != model.finite_blocks.len() {
            return Err(Error::DimensionMismatch {
                expected: model.finite_blocks.len(),
                found: self.finite.len(),
                context: "number of finite components",
            });
        }
        Ok(())
    }
}

/// `x^(1/d)` for `x >= 0`.
fn root(x: &Real, d: u32) -> Real {
    if x.is_zero() {
        Real::zero(x.precision())
    } else {
        x.root(d)
    }
}

pub fn log_height(model: &HeightModel, point: &AdelicPoint) -> Result<Real> {
    point.conforms(model)?;
    let p = model.precision;
    let d = model.degree;
    let arch_q = model.archimedean.form.eval_real(&point.arch, p)?;
    let mut total = root(&arch_q, d);
    for (block, coords) in model.finite_blocks.iter().zip(&point.finite) {
        let q = block.form.eval_int(coords)?;
        total = total + &block.weight * root(&Real::from_rational(&q, p), d);
    }
    Ok(total)
}

pub fn height(model: &HeightModel, point: &AdelicPoint) -> Result<Real> {
    Ok(log_height(model, point)?.exp())
}

/// Volume of `{x in R^s : Q(x)^(1/d) <= radius}`, i.e. `radius^(ds/2)` times the unit volume.
pub fn sublevel_volume_arch(form: &QuadraticForm, d: u32, radius: &Real) -> Result<Real> {
    if radius.is_negative() {
        return Err(Error::invalid("radius must be non-negative"));
    }
    let p = radius.precision();
    let s = form.rank() as i64;
    if s == 0 {
        return Ok(Real::one(p));
    }
    Ok(form.unit_sublevel_volume(p) * radius_power(radius, d as i64 * s))
}

/// `r^(e/2)` for a non-negative integer `e`.
pub(crate) fn radius_power(r: &Real, e: i64) -> Real {
    if e % 2 == 0 {
        r.powi(e / 2)
    } else {
        r.powi(e / 2) * r.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Rational;

    fn real(x: f64) -> Real {
        Real::from_f64(x, 128)
    }

    fn unit_finite_model(p: u64) -> HeightModel {
        HeightModel::from_forms(2, QuadraticForm::identity(0), vec![(p, QuadraticForm::identity(1))], 128)
            .unwrap()
    }

    #[test]
    fn zero_point_has_height_one() {
        let model = HeightModel::from_forms(
            3,
            QuadraticForm::identity(2),
            vec![(2, QuadraticForm::identity(1)), (5, QuadraticForm::identity(2))],
            128,
        )
        .unwrap();
        let zero = AdelicPoint::zero(&model);
        assert!(log_height(&model, &zero).unwrap().is_zero());
        assert_eq!(height(&model, &zero).unwrap().to_f64(), 1.0);
    }

    #[test]
    fn unit_finite_vector() {
        for p in [2u64, 3, 691] {
            let model = unit_finite_model(p);
            let point = AdelicPoint { arch: vec![], finite: vec![vec![1]] };
            let h = log_height(&model, &point).unwrap();
            assert!((h.to_f64() - (p as f64).ln()).abs() < 1e-15);
            let big_h = height(&model, &point).unwrap().to_f64();
            assert!((big_h - p as f64).abs() < 1e-9 * p as f64);
        }
    }

    #[test]
    fn cube_root_example() {
        let model = HeightModel::from_forms(3, QuadraticForm::identity(1), vec![], 128).unwrap();
        let point = AdelicPoint { arch: vec![real(8.0)], finite: vec![] };
        assert!((log_height(&model, &point).unwrap().to_f64() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn positive_away_from_zero() {
        let model = unit_finite_model(3);
        let p = AdelicPoint { arch: vec![], finite: vec![vec![-2]] };
        assert!(log_height(&model, &p).unwrap().is_positive());
    }

    #[test]
    fn dimension_mismatch() {
        let model = unit_finite_model(3);
        let p = AdelicPoint { arch: vec![real(1.0)], finite: vec![vec![1]] };
        assert!(matches!(log_height(&model, &p), Err(Error::DimensionMismatch { .. })));
        let p = AdelicPoint { arch: vec![], finite: vec![] };
        assert!(log_height(&model, &p).is_err());
    }

    #[test]
    fn archimedean_homogeneity() {
        for d in [2u32, 3, 5] {
            let form = QuadraticForm::new(vec![
                vec![Rational::from(2i64), Rational::new(1, 2).unwrap()],
                vec![Rational::new(1, 2).unwrap(), Rational::from(3i64)],
            ])
            .unwrap();
            let model = HeightModel::from_forms(d, form, vec![], 128).unwrap();
            let x = AdelicPoint { arch: vec![real(0.7), real(-1.3)], finite: vec![] };
            for lambda in [-3.0, 0.5, 2.0, 10.0] {
                let scaled = AdelicPoint {
                    arch: x.arch.iter().map(|c| c * &real(lambda)).collect(),
                    finite: vec![],
                };
                let lhs = log_height(&model, &scaled).unwrap().to_f64();
                let rhs = f64::abs(lambda).powf(2.0 / d as f64) * log_height(&model, &x).unwrap().to_f64();
                assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0));
            }
        }
    }

    #[test]
    fn block_decomposition_and_permutation() {
        let model = HeightModel::from_forms(
            2,
            QuadraticForm::identity(1),
            vec![(2, QuadraticForm::identity(1)), (7, QuadraticForm::identity(2))],
            128,
        )
        .unwrap();
        let point = AdelicPoint { arch: vec![real(1.5)], finite: vec![vec![3], vec![1, -2]] };
        let total = log_height(&model, &point).unwrap().to_f64();
        let parts = 1.5 + 2f64.ln() * 3.0 + 7f64.ln() * 5f64.sqrt();
        assert!((total - parts).abs() < 1e-13);
        let swapped = model.permuted(&[1, 0]).unwrap();
        let point2 = AdelicPoint { arch: point.arch.clone(), finite: vec![vec![1, -2], vec![3]] };
        assert_eq!(log_height(&swapped, &point2).unwrap(), log_height(&model, &point).unwrap());
    }

    #[test]
    fn model_validation() {
        let arch = || QuadraticForm::identity(1);
        assert!(HeightModel::from_forms(1, arch(), vec![], 128).is_err());
        assert!(HeightModel::from_forms(2, arch(), vec![(4, QuadraticForm::identity(1))], 128).is_err());
        assert!(HeightModel::from_forms(
            2,
            arch(),
            vec![(3, QuadraticForm::identity(1)), (3, QuadraticForm::identity(1))],
            128
        )
        .is_err());
        let model = HeightModel::from_forms(2, arch(), vec![(3, QuadraticForm::identity(1))], 128).unwrap();
        let bad = ModelMasses { torsion_order: 0, ..Default::default() };
        assert!(model.clone().with_masses(bad).is_err());
        let bad = ModelMasses {
            torsion_order: 1,
            local_masses: Some(vec![real(1.0), real(1.0)]),
            ..Default::default()
        };
        assert!(model.clone().with_masses(bad).is_err());
        let bad = ModelMasses { torsion_order: 1, tamagawa: Some(real(-1.0)), ..Default::default() };
        assert!(model.with_masses(bad).is_err());
    }

    #[test]
    fn sublevel_volumes() {
        let r = real(3.0);
        let one = QuadraticForm::identity(1);
        assert!((sublevel_volume_arch(&one, 2, &r).unwrap().to_f64() - 6.0).abs() < 1e-14);
        let disk = sublevel_volume_arch(&QuadraticForm::identity(2), 2, &r).unwrap().to_f64();
        assert!((disk - 9.0 * std::f64::consts::PI).abs() < 1e-12);
        let four = QuadraticForm::diagonal(vec![Rational::from(4i64)]).unwrap();
        assert!((sublevel_volume_arch(&four, 2, &r).unwrap().to_f64() - 3.0).abs() < 1e-14);
        assert_eq!(sublevel_volume_arch(&QuadraticForm::identity(0), 3, &r).unwrap().to_f64(), 1.0);
        assert!(sublevel_volume_arch(&one, 2, &real(-1.0)).is_err());
    }

    #[test]
    fn sublevel_volume_homogeneity() {
        let form = QuadraticForm::new(vec![
            vec![Rational::from(3i64), Rational::from(1i64)],
            vec![Rational::from(1i64), Rational::from(2i64)],
        ])
        .unwrap();
        for d in [2u32, 3, 4] {
            let unit = sublevel_volume_arch(&form, d, &real(1.0)).unwrap().to_f64();
            for r in [0.5, 2.0, 7.25] {
                let v = sublevel_volume_arch(&form, d, &real(r)).unwrap().to_f64();
                let want = r.powf(d as f64) * unit;
                assert!((v - want).abs() < 1e-12 * want);
            }
        }
    }
}
