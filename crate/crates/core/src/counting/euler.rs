//! Euler's summation formula
//!
//! ```text
//! sum_{y<n<=x} f(n) = ∫_y^x f(u) du + ∫_y^x {u} f'(u) du - f(x){x} + f(y){y}
//! ```
//!
//! Both integrals are split at the integers in `(y, x)`, where `{u}` is
//! discontinuous; on each piece the integrand is as smooth as `f`.

use super::quadrature::adaptive_simpson;
use crate::error::{Error, Result};

/// Longest interval accepted, in unit pieces.
const MAX_PIECES: f64 = 1e8;

const TOLERANCE: f64 = 1e-10;

fn frac(u: f64) -> f64 {
    u - u.floor()
}

/// Right-hand side of Euler's summation formula on `(y, x]`.
pub fn euler_summation<F, G>(f: F, f_prime: G, y: f64, x: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if !(y.is_finite() && x.is_finite()) || y >= x {
        return Err(Error::invalid(format!("invalid interval ({y}, {x}]")));
    }
    if x - y > MAX_PIECES {
        return Err(Error::invalid(format!("interval ({y}, {x}] is too long")));
    }
    let mut breaks = vec![y];
    let mut k = y.floor() + 1.0;
    while k < x {
        breaks.push(k);
        k += 1.0;
    }
    breaks.push(x);
    let pieces = (breaks.len() - 1) as f64;

    // Rough magnitude to turn the relative target into a per-piece absolute one.
    let scale = breaks
        .iter()
        .map(|&u| f(u).abs() * (x - y))
        .fold(1.0f64, f64::max);
    let tol = TOLERANCE * 1e-3 * scale / pieces;

    let mut integral = 0.0;
    let mut correction = 0.0;
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let base = lo.floor();
        integral += adaptive_simpson(&f, lo, hi, tol);
        correction += adaptive_simpson(&|u: f64| (u - base) * f_prime(u), lo, hi, tol);
    }
    Ok(integral + correction - f(x) * frac(x) + f(y) * frac(y))
}
