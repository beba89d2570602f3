//! Bernoulli numbers, negative zeta values, factorials and binomials.
//!
//! Bernoulli numbers use the convention `B_1 = -1/2`, the one for which
//! `zeta(1 - m) = -B_m / m` holds verbatim for every even `m >= 2`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::Rational;
use crate::error::{Error, Result};

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// The `k`-th Bernoulli number from `sum_{j=0}^{k} C(k+1, j) B_j = 0`.
pub fn bernoulli(k: u32) -> Rational {
    let k = k as usize;
    let mut table = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= k {
        let next = table.len();
        // Odd indices above 1 vanish; skipping them keeps the table cheap to extend.
        if next >= 3 && next % 2 == 1 {
            table.push(Rational::zero());
            continue;
        }
        let row = pascal_row(next as u64 + 1);
        let sum: Rational = table
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(j, b)| Rational::from(row[j].clone()) * b)
            .sum();
        table.push(-sum / Rational::from_integer(next as i64 + 1));
    }
    table[k].clone()
}

fn pascal_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(c.clone());
    }
    row
}

/// Largest weight `m` accepted by the exact zeta values and the motive parameters.
/// The Bernoulli recursion is quadratic in big rationals; `B_500` already takes about a second.
pub const MAX_WEIGHT: u32 = 500;

/// `zeta(1 - m) = -B_m / m` for even `2 <= m <= MAX_WEIGHT`, given the argument `1 - m`.
pub fn zeta_neg_odd(one_minus_m: i64) -> Result<Rational> {
    if one_minus_m >= 0 || one_minus_m % 2 == 0 {
        return Err(Error::invalid(format!(
            "zeta_neg_odd expects a negative odd argument, got {one_minus_m}"
        )));
    }
    let m = 1 - one_minus_m;
    let m32 = u32::try_from(m)
        .ok()
        .filter(|&m| m <= MAX_WEIGHT)
        .ok_or_else(|| Error::invalid(format!("weight {m} exceeds the supported maximum {MAX_WEIGHT}")))?;
    Ok(-bernoulli(m32) / Rational::from_integer(m))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(a, b)` as an exact rational.
pub fn binomial(a: u64, b: u64) -> Result<Rational> {
    if b > a {
        return Err(Error::invalid(format!("binomial({a}, {b}) requires b <= a")));
    }
    let b = b.min(a - b);
    let mut c = BigInt::one();
    for j in 0..b {
        c = c * BigInt::from(a - j) / BigInt::from(j + 1);
    }
    Ok(Rational::from(c))
}
