//! Counting `d(X) = #{(m, n) in N×N : a m^(1/s) + b n^(1/t) <= X}` with
//! `N = {1, 2, ...}`, and its leading term `X^(s+t) / (C(s+t, t) a^s b^t)`.

use rayon::prelude::*;
use serde::Serialize;

use super::quadrature::adaptive_simpson;
use super::within;
use crate::arithmetic::{binomial, factorial, Rational, Real};
use crate::error::{Error, Result};

/// Largest outer loop the exact counter will run.
pub const MAX_OUTER: f64 = 5e9;

/// Integer `k`-th root of a non-negative double.
pub(crate) fn root_f64(x: f64, k: u32) -> f64 {
    match k {
        1 => x,
        2 => x.sqrt(),
        3 => x.cbrt(),
        _ => x.powf(1.0 / k as f64),
    }
}

/// Largest `k >= 0` with `coef * k^(1/exp) <= budget`, i.e. `k <= (budget/coef)^exp`.
///
/// The floating estimate is corrected by at most one step each way: once `k`
/// is large the relative slack is wider than the gap between consecutive
/// roots, and walking further would only collect rounding noise.
pub(crate) fn max_index(coef: f64, exp: u32, budget: f64) -> u64 {
    if budget < 0.0 {
        return 0;
    }
    let raw = (budget / coef).powi(exp as i32);
    let mut k = if raw >= u64::MAX as f64 { u64::MAX - 1 } else { raw.floor() as u64 };
    if k > 0 && !within(coef * root_f64(k as f64, exp), budget) {
        k -= 1;
    } else if within(coef * root_f64((k + 1) as f64, exp), budget) {
        k += 1;
    }
    k
}

fn check_params(s: u32, t: u32, a: f64, b: f64, x: f64) -> Result<()> {
    if s == 0 || t == 0 {
        return Err(Error::invalid("s and t must be positive"));
    }
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(Error::invalid("a and b must be positive"));
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::invalid("X must be a non-negative number"));
    }
    Ok(())
}

/// Exact `d(X)`. The outer loop runs over whichever variable has the shorter range.
pub fn lemma52_exact(s: u32, t: u32, a: f64, b: f64, x: f64) -> Result<u128> {
    check_params(s, t, a, b, x)?;
    let range_n = (x / b).powi(t as i32);
    let range_m = (x / a).powi(s as i32);
    // (outer coefficient, outer exponent, inner coefficient, inner exponent)
    let (oc, oe, ic, ie, outer_range) = if range_n <= range_m {
        (b, t, a, s, range_n)
    } else {
        (a, s, b, t, range_m)
    };
    if outer_range > MAX_OUTER {
        return Err(Error::invalid(format!(
            "outer range {outer_range:.3e} exceeds the enumeration limit {MAX_OUTER:e}"
        )));
    }
    let outer_max = max_index(oc, oe, x);
    let total = (1..=outer_max)
        .into_par_iter()
        .map(|k| {
            let budget = x - oc * root_f64(k as f64, oe);
            max_index(ic, ie, budget) as u128
        })
        .sum();
    Ok(total)
}

/// `X^(s+t) / (C(s+t, t) a^s b^t)`.
pub fn lemma52_asymptotic(s: u32, t: u32, a: &Real, b: &Real, x: &Real) -> Result<Real> {
    if s == 0 || t == 0 {
        return Err(Error::invalid("s and t must be positive"));
    }
    if !a.is_positive() || !b.is_positive() || x.is_negative() {
        return Err(Error::invalid("a, b must be positive and X non-negative"));
    }
    let p = a.precision().max(b.precision()).max(x.precision());
    let c = Real::from_rational(&binomial((s + t) as u64, t as u64)?, p);
    Ok(x.powi((s + t) as i64) / (c * a.powi(s as i64) * b.powi(t as i64)))
}

#[derive(Debug, Clone, Serialize)]
pub struct BetaCheck {
    pub s: u32,
    pub t: u32,
    /// `t * B(s+1, t) = s! t! / (s+t)!`.
    pub exact: Rational,
    /// `∫_0^1 t (1-v)^s v^(t-1) dv` by quadrature.
    pub quadrature: f64,
}

impl BetaCheck {
    pub fn discrepancy(&self) -> f64 {
        (self.exact.to_f64() - self.quadrature).abs()
    }
}

pub fn beta_integral_check(s: u32, t: u32) -> Result<BetaCheck> {
    if s == 0 || t == 0 {
        return Err(Error::invalid("s and t must be positive"));
    }
    let exact = Rational::from(factorial(s as u64)) * Rational::from(factorial(t as u64))
        / Rational::from(factorial((s + t) as u64));
    let tf = t as f64;
    let integrand = |v: f64| tf * (1.0 - v).powi(s as i32) * v.powi(t as i32 - 1);
    let quadrature = adaptive_simpson(&integrand, 0.0, 1.0, 1e-14);
    Ok(BetaCheck { s, t, exact, quadrature })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Brute force over the full rectangle, independent of the row/column solver.
    fn brute(s: u32, t: u32, a: f64, b: f64, x: f64) -> u128 {
        let mut count = 0;
        let m_max = (x / a).powi(s as i32) as u64 + 1;
        let n_max = (x / b).powi(t as i32) as u64 + 1;
        for m in 1..=m_max {
            for n in 1..=n_max {
                if within(a * root_f64(m as f64, s) + b * root_f64(n as f64, t), x) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn examples() {
        assert_eq!(lemma52_exact(1, 1, 1.0, 1.0, 4.0).unwrap(), 6);
        assert_eq!(lemma52_exact(1, 2, 1.0, 1.0, 3.0).unwrap(), 5);
        assert_eq!(lemma52_exact(2, 3, 1.0, 1.0, 1.9).unwrap(), 0);
        assert_eq!(lemma52_exact(3, 9, 2.0, 1.5, 3.49).unwrap(), 0);
    }

    #[test]
    fn matches_brute_force() {
        for &(s, t, a, b) in &[(1, 1, 1.0, 1.0), (1, 2, 1.0, 1.0), (2, 3, 2.0, 1.0), (2, 1, 0.7, 1.3)] {
            for x in [0.0, 2.0, 3.5, 5.0, 7.25] {
                assert_eq!(lemma52_exact(s, t, a, b, x).unwrap(), brute(s, t, a, b, x), "{s} {t} {a} {b} {x}");
            }
        }
    }

    #[test]
    fn symmetric_in_swapping_roles() {
        for x in [3.0, 6.5, 10.0] {
            assert_eq!(
                lemma52_exact(2, 3, 2.0, 1.0, x).unwrap(),
                lemma52_exact(3, 2, 1.0, 2.0, x).unwrap()
            );
        }
    }

    #[test]
    fn asymptotic_examples() {
        let r = |x: f64| Real::from_f64(x, 128);
        let x = r(7.0);
        assert_eq!(lemma52_asymptotic(1, 1, &r(1.0), &r(1.0), &x).unwrap().to_f64(), 24.5);
        let v = lemma52_asymptotic(3, 9, &r(1.0), &r(1.0), &x).unwrap().to_f64();
        assert!((v - 7f64.powi(12) / 220.0).abs() < 1e-6 * v);
        assert_eq!(lemma52_asymptotic(1, 1, &r(2.0), &r(1.0), &x).unwrap().to_f64(), 12.25);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_integral_check(1, 1).unwrap().exact, Rational::new(1, 2).unwrap());
        assert_eq!(beta_integral_check(3, 9).unwrap().exact, Rational::new(1, 220).unwrap());
        for s in 1..8 {
            assert_eq!(beta_integral_check(s, 1).unwrap().exact, Rational::new(1, s as i64 + 1).unwrap());
        }
        assert!(beta_integral_check(3, 9).unwrap().discrepancy() < 1e-10);
    }

    #[test]
    fn invalid_parameters() {
        assert!(lemma52_exact(0, 1, 1.0, 1.0, 1.0).is_err());
        assert!(lemma52_exact(1, 1, 0.0, 1.0, 1.0).is_err());
        assert!(lemma52_exact(1, 1, 1.0, 1.0, -1.0).is_err());
        assert!(lemma52_exact(1, 1, 1.0, 1.0, 1e12).is_err());
    }
}
