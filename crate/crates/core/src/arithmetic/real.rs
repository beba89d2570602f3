//! Multi-precision real numbers with a declared working precision.
//!
//! Binary operations run at the larger of the two operand precisions, so a
//! value never loses declared precision by being combined with another one.
//! Narrowing is only possible through [`Real::round_to`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;

use super::Rational;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 128;

/// Smallest precision a [`Real`] may carry.
pub const MIN_PRECISION: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Clone)]
pub struct Real {
    value: BigFloat,
    precision: usize,
}

impl Real {
    fn wrap(value: BigFloat, precision: usize) -> Self {
        Real { value, precision }
    }

    fn clamp(precision: usize) -> usize {
        precision.max(MIN_PRECISION)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(1, precision)
    }

    pub fn from_f64(x: f64, precision: usize) -> Self {
        let p = Self::clamp(precision);
        Self::wrap(BigFloat::from_f64(x, p), p)
    }

    pub fn from_i64(x: i64, precision: usize) -> Self {
        let p = Self::clamp(precision);
        Self::wrap(BigFloat::from_i64(x, p), p)
    }

    pub fn from_u128(x: u128, precision: usize) -> Self {
        let p = Self::clamp(precision);
        Self::wrap(BigFloat::from_u128(x, p), p)
    }

    pub fn from_bigint(x: &BigInt, precision: usize) -> Self {
        let p = Self::clamp(precision);
        let v = with_consts(|cc| BigFloat::parse(&x.to_string(), Radix::Dec, p, RM, cc));
        Self::wrap(v, p)
    }

    pub fn from_rational(q: &Rational, precision: usize) -> Self {
        let p = Self::clamp(precision);
        let num = Self::from_bigint(q.numer(), p + 64);
        let den = Self::from_bigint(q.denom(), p + 64);
        Self::wrap(num.value.div(&den.value, p, RM), p)
    }

    pub fn pi(precision: usize) -> Self {
        let p = Self::clamp(precision);
        Self::wrap(with_consts(|cc| cc.pi(p, RM)), p)
    }

    /// Same value, re-rounded to `precision` bits. This is the only narrowing path.
    pub fn round_to(&self, precision: usize) -> Self {
        let p = Self::clamp(precision);
        let mut v = self.value.clone();
        // set_precision only fails for invalid precisions, which clamp rules out.
        let _ = v.set_precision(p, RM);
        Self::wrap(v, p)
    }

    /// Raise the declared precision without changing the stored value.
    pub fn widen(&self, precision: usize) -> Self {
        if precision <= self.precision {
            self.clone()
        } else {
            self.round_to(precision)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    pub fn is_positive(&self) -> bool {
        !self.value.is_zero() && self.value.is_positive() && !self.value.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        !self.value.is_zero() && self.value.is_negative() && !self.value.is_nan()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.precision)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.precision, RM), self.precision)
    }

    pub fn ln(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), p)
    }

    pub fn exp(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.value.exp(p, RM, cc)), p)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.precision;
        let mag = self.value.powi(n.unsigned_abs() as usize, p + 32, RM);
        let v = if n < 0 {
            mag.reciprocal(p, RM)
        } else {
            let mut m = mag;
            let _ = m.set_precision(p, RM);
            m
        };
        Self::wrap(v, p)
    }

    /// Real power `self^e` for `self > 0`; `0^e = 0` for `e > 0`.
    pub fn pow(&self, e: &Real) -> Self {
        let p = self.precision.max(e.precision);
        if self.is_zero() {
            return Self::zero(p);
        }
        Self::wrap(with_consts(|cc| self.value.pow(&e.value, p, RM, cc)), p)
    }

    /// Principal `n`-th root of a non-negative number.
    pub fn root(&self, n: u32) -> Self {
        let p = self.precision;
        match n {
            0 => Self::wrap(BigFloat::nan(None), p),
            1 => self.clone(),
            2 => self.sqrt(),
            3 => Self::wrap(self.value.cbrt(p, RM), p),
            _ => {
                if self.is_zero() {
                    return Self::zero(p);
                }
                let e = Self::from_i64(1, p + 32) / Self::from_i64(n as i64, p + 32);
                self.widen(p + 32).pow(&e).round_to(p)
            }
        }
    }

    pub fn max(self, other: Real) -> Real {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf() {
            return if self.value.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        let Some((words, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        // value = 0.top... * 2^exponent, with the top word normalised.
        let mut x = top as f64;
        let mut e = exponent as i64 - 64;
        while e > 0 {
            let step = e.min(1000);
            x *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(1000);
            x /= 2f64.powi(step as i32);
            e += step;
        }
        if sign == Sign::Neg {
            -x
        } else {
            x
        }
    }

    /// Decimal scientific notation (exponent dropped when zero) with roughly `precision * log10(2)` digits.
    pub fn to_decimal_string(&self) -> String {
        if self.value.is_zero() {
            return "0".to_string();
        }
        let digits = ((self.precision as f64) * std::f64::consts::LOG10_2).floor() as usize;
        let s = with_consts(|cc| self.value.format(Radix::Dec, RM, cc))
            .unwrap_or_else(|_| "NaN".to_string());
        trim_mantissa(&s, digits.max(1))
    }
}

// Cut the formatted mantissa to `digits` significant digits without re-rounding.
fn trim_mantissa(s: &str, digits: usize) -> String {
    let (mantissa, exp) = match s.find('e') {
        Some(pos) => (&s[..pos], &s[pos..]),
        None => (s, ""),
    };
    let mut out = String::new();
    let mut count = 0;
    for ch in mantissa.chars() {
        if ch.is_ascii_digit() {
            if count >= digits {
                continue;
            }
            count += 1;
        }
        out.push(ch);
    }
    if exp == "e+0" || exp == "e-0" {
        out
    } else {
        format!("{out}{exp}")
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let p = self.precision.max(rhs.precision);
                Real::wrap(self.value.$method(&rhs.value, p, RM), p)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.value.neg(), self.precision)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.value.clone().neg(), self.precision)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({}, {} bits)", self.to_decimal_string(), self.precision)
    }
}

impl std::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Self {
        let mut acc: Option<Real> = None;
        for x in iter {
            acc = Some(match acc {
                None => x,
                Some(a) => a + x,
            });
        }
        acc.unwrap_or_else(|| Real::zero(DEFAULT_PRECISION))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for x in [1.0, -2.5, 1e-300, 6.02e23, 0.1, 3.0f64.sqrt()] {
            assert_eq!(Real::from_f64(x, 128).to_f64(), x);
        }
        assert_eq!(Real::zero(128).to_f64(), 0.0);
    }

    #[test]
    fn precision_never_narrows_in_binops() {
        let a = Real::from_i64(1, 256);
        let b = Real::from_i64(3, 64);
        assert_eq!((&a / &b).precision(), 256);
        assert_eq!((&b / &a).precision(), 256);
        assert_eq!(Real::from_i64(1, 10).precision(), MIN_PRECISION);
    }

    #[test]
    fn transcendental_basics() {
        let pi = Real::pi(128);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let two = Real::from_i64(2, 128);
        assert!((two.ln().to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((two.ln().exp().to_f64() - 2.0).abs() < 1e-15);
        assert!((Real::from_i64(64, 128).root(3).to_f64() - 4.0).abs() < 1e-15);
        assert!((Real::from_i64(2, 128).root(9).powi(9).to_f64() - 2.0).abs() < 1e-15);
        assert_eq!(Real::from_i64(2, 128).powi(-2).to_f64(), 0.25);
    }

    #[test]
    fn rational_conversion() {
        let q = Rational::new(691, 32760).unwrap();
        assert!((Real::from_rational(&q, 128).to_f64() - 691.0 / 32760.0).abs() < 1e-18);
    }

    #[test]
    fn decimal_string_is_scientific() {
        let s = Real::from_rational(&Rational::new(1, 3).unwrap(), 128).to_decimal_string();
        assert!(s.starts_with("3.333333333"), "{s}");
    }
}
