//! `zeta(n)` for odd `n >= 3` by Euler–Maclaurin summation.
//!
//! The partial sum `sum_{k<N} k^-n` is completed by the Euler–Maclaurin tail
//!
//! ```text
//! N^(1-n)/(n-1) + N^-n/2 + sum_j B_2j/(2j)! * n(n+1)...(n+2j-2) * N^(-n-2j+1)
//! ```
//!
//! For `f(x) = x^-n` the remainder after `j` correction terms is bounded by
//! the magnitude of the first omitted term, so the tail is truncated as soon
//! as that term drops below the target error.

use super::real::Real;
use super::special::{bernoulli, factorial};
use super::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;

const GUARD_BITS: usize = 32;

/// `zeta(n)` with relative error at most `2^(1 - precision)`.
pub fn zeta_pos_odd(n: u32, precision: usize) -> Result<Real> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::invalid(format!("zeta_pos_odd expects odd n >= 3, got {n}")));
    }
    let precision = precision.max(super::real::MIN_PRECISION);
    let wp = precision + GUARD_BITS;
    let mut cutoff = 8 + precision as u64 / 4;
    loop {
        if let Some(value) = euler_maclaurin(n, cutoff, wp) {
            return Ok(value.round_to(precision));
        }
        cutoff *= 2;
    }
}

// None when the asymptotic tail starts diverging before reaching the target.
fn euler_maclaurin(n: u32, cutoff: u64, wp: usize) -> Option<Real> {
    let head: Real = (1..cutoff)
        .map(|k| Real::from_i64(k as i64, wp).powi(-(n as i64)))
        .sum();
    let big_n = Real::from_i64(cutoff as i64, wp);
    let n_i = n as i64;
    let integral = big_n.powi(1 - n_i) / Real::from_i64(n_i - 1, wp);
    let boundary = big_n.powi(-n_i) / Real::from_i64(2, wp);
    let mut total = head + integral + boundary;

    let target = Real::from_i64(2, wp).powi(-(wp as i64)) * &total;
    let mut previous: Option<Real> = None;
    for j in 1..=4 * cutoff {
        let two_j = 2 * j;
        let mut rising = BigInt::from(1);
        for i in 0..(two_j - 1) {
            rising *= BigInt::from(n as u64 + i);
        }
        let coef = bernoulli(two_j as u32) * Rational::from(rising)
            / Rational::from(factorial(two_j));
        let term = Real::from_rational(&coef, wp) * big_n.powi(-(n_i + two_j as i64 - 1));
        let mag = term.abs();
        if mag < target {
            return Some(total);
        }
        if let Some(prev) = &previous {
            if &mag > prev {
                return None;
            }
        }
        total = total + term;
        previous = Some(mag);
    }
    None
}
