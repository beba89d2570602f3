//! Exact and multi-precision arithmetic: rationals, reals, Bernoulli
//! numbers, special values of zeta and binomial coefficients.

mod rational;
pub mod real;
mod special;
mod zeta;

pub use rational::Rational;
pub use real::{Real, DEFAULT_PRECISION, MIN_PRECISION};
pub use special::{bernoulli, binomial, factorial, zeta_neg_odd, MAX_WEIGHT};
pub use zeta::zeta_pos_odd;
