//! Height counting for mixed Tate motives.
//!
//! The crate turns the numeric side of height-counting for mixed motives into
//! concrete computations:
//!
//! * [`arithmetic`]: exact rationals, Bernoulli numbers, `zeta(1-m)` and `zeta(n)`.
//! * [`ktheory`]: tabulated `K_n(Z)` shapes, Soulé regulators, torsion and Sha orders.
//! * [`height`]: height structures built from per-place positive-definite forms.
//! * [`counting`]: exact lattice counts, mixed discrete/continuous volumes,
//!   Euler summation and the two-variable counting lemma.
//! * [`theorems`]: the ratio identity, the `Z(m), Z(n)` leading term and the
//!   691 inclusion–exclusion count.
//! * [`cli`]: the command-line front end.

pub mod arithmetic;
pub mod cli;
pub mod counting;
pub mod error;
pub mod height;
pub mod ktheory;
pub mod theorems;

pub use error::{Error, Result};
