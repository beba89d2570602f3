//! `N_B` and `mu(T_B)` for a height model.
//!
//! `N_B` counts integer tuples, the archimedean component included, with
//! log-height at most `ln B`. `T_B` keeps the finite components integral but
//! lets the archimedean one range over `R^{s_inf}`; its measure is a sum of
//! archimedean fiber volumes over the finite tuples (Fubini).

use rayon::prelude::*;

use super::lattice::LatticeEnumerator;
use super::{root_f64, within};
use crate::arithmetic::Real;
use crate::error::{Error, Result};
use crate::height::{sublevel_volume_arch, HeightModel};

/// A height bound `B >= 1`, stored through `ln B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    log: Real,
}

impl Bound {
    pub fn from_value(b: &Real) -> Result<Self> {
        if !(b.is_finite() && *b >= Real::one(b.precision())) {
            return Err(Error::invalid(format!("bound must be >= 1, got {b}")));
        }
        Ok(Bound { log: b.ln() })
    }

    pub fn from_f64(b: f64, precision: usize) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::invalid(format!("bound must be finite, got {b}")));
        }
        Self::from_value(&Real::from_f64(b, precision))
    }

    pub fn from_log(log: Real) -> Result<Self> {
        if !log.is_finite() || log.is_negative() {
            return Err(Error::invalid(format!("ln B must be >= 0, got {log}")));
        }
        Ok(Bound { log })
    }

    pub fn from_log_f64(log: f64, precision: usize) -> Result<Self> {
        if !log.is_finite() {
            return Err(Error::invalid(format!("ln B must be finite, got {log}")));
        }
        Self::from_log(Real::from_f64(log, precision))
    }

    /// `ln B`.
    pub fn log(&self) -> &Real {
        &self.log
    }

    pub fn value(&self) -> Real {
        self.log.exp()
    }
}

/// Largest enumeration box (product of per-coordinate ranges) the model counters accept.
pub const MAX_WORK: f64 = 1e11;

// Number of integer points in the box `|x_i| <= sqrt(r (G^-1)_ii)`, skipping the last `skip` coordinates.
fn box_size(form: &crate::height::QuadraticForm, r: f64, skip: usize) -> f64 {
    let inv = form.inverse_diagonal();
    inv[..inv.len().saturating_sub(skip)]
        .iter()
        .map(|g| 2.0 * (r * g.to_f64()).sqrt().floor() + 1.0)
        .product()
}

fn check_work(model: &HeightModel, log_b: f64, with_arch: bool) -> Result<()> {
    let d = model.degree() as i32;
    let mut work: f64 = model
        .finite_blocks()
        .iter()
        .map(|b| box_size(b.form(), (log_b / b.weight().to_f64()).powi(d), 0))
        .product();
    if with_arch {
        work *= box_size(model.archimedean().form(), log_b.powi(d), 1);
    }
    if !(work <= MAX_WORK) {
        return Err(Error::invalid(format!(
            "ln B = {log_b} needs an enumeration box of about {work:.3e} points, above the limit {MAX_WORK:e}"
        )));
    }
    Ok(())
}

struct Blocks {
    degree: u32,
    enums: Vec<LatticeEnumerator>,
    weights: Vec<f64>,
}

impl Blocks {
    fn new(model: &HeightModel) -> Self {
        Blocks {
            degree: model.degree(),
            enums: model.finite_blocks().iter().map(|b| LatticeEnumerator::new(b.form())).collect(),
            weights: model.finite_blocks().iter().map(|b| b.weight().to_f64()).collect(),
        }
    }

    /// Points of block `k` whose weighted contribution fits in `rem`, with that contribution.
    fn points(&self, k: usize, rem: f64) -> Vec<(Vec<i64>, f64)> {
        let w = self.weights[k];
        let mut out = Vec::new();
        self.enums[k].for_each((rem.max(0.0) / w).powi(self.degree as i32), |x, q| {
            let c = w * root_f64(q, self.degree);
            if within(c, rem) {
                out.push((x.to_vec(), c));
            }
        });
        out
    }

    /// Visits every tuple of finite components from block `k` on, with the residual budget.
    fn walk(&self, k: usize, rem: f64, stack: &mut Vec<Vec<i64>>, leaf: &mut dyn FnMut(&[Vec<i64>], f64)) {
        if k == self.enums.len() {
            leaf(stack, rem.max(0.0));
            return;
        }
        for (x, c) in self.points(k, rem) {
            stack.push(x);
            self.walk(k + 1, rem - c, stack, leaf);
            stack.pop();
        }
    }
}

/// `N_B`: integer tuples (archimedean component in `Z^{s_inf}`) of log-height `<= ln B`.
pub fn model_exact_count(model: &HeightModel, bound: &Bound) -> Result<u128> {
    let log_b = bound.log().to_f64();
    let d = model.degree() as i32;
    check_work(model, log_b, true)?;
    let arch = LatticeEnumerator::new(model.archimedean().form());
    let blocks = Blocks::new(model);
    if blocks.enums.is_empty() {
        return Ok(arch.count(log_b.powi(d)));
    }
    let first = blocks.points(0, log_b);
    let total = first
        .par_iter()
        .map(|(x, c)| {
            let mut stack = vec![x.clone()];
            let mut sum = 0u128;
            blocks.walk(1, log_b - c, &mut stack, &mut |_, rem| sum += arch.count(rem.powi(d)));
            sum
        })
        .sum();
    Ok(total)
}

/// `mu(T_B)`: sum over finite tuples of the archimedean sublevel volume at the residual radius.
pub fn model_volume(model: &HeightModel, bound: &Bound) -> Result<Real> {
    let p = model.precision().max(bound.log().precision());
    let log_b = bound.log().widen(p);
    let d = model.degree();
    check_work(model, log_b.to_f64(), false)?;
    let blocks = Blocks::new(model);
    let mut tuples = Vec::new();
    blocks.walk(0, log_b.to_f64(), &mut Vec::new(), &mut |t, _| tuples.push(t.to_vec()));

    let arch = model.archimedean().form();
    let mut total = Real::zero(p);
    for tuple in &tuples {
        let mut rem = log_b.clone();
        for (block, x) in model.finite_blocks().iter().zip(tuple) {
            let q = Real::from_rational(&block.form().eval_int(x)?, p);
            if !q.is_zero() {
                rem = rem - block.weight() * q.root(d);
            }
        }
        if rem.is_negative() {
            continue;
        }
        total = total + sublevel_volume_arch(arch, d, &rem)?;
    }
    Ok(total)
}
