//! Tabulated arithmetic input: the shape of `K_n(Z)` in the congruence
//! classes used here, archimedean regulators of Soulé elements, Mazur–Wiles
//! torsion orders, Sha bookkeeping and the 691 cup-product fact.
//!
//! Nothing here is computed from first principles. Values outside the
//! tabulated cases are reported as [`Error::OutOfTable`] instead of being
//! extrapolated. Every regulator carries the power-of-two exponent it was
//! built with, since that power is not determined by the inputs.

use serde::Serialize;

use crate::arithmetic::{factorial, zeta_neg_odd, zeta_pos_odd, Rational, Real, MAX_WEIGHT};
use crate::error::{Error, Result};

/// The only prime at which `b_3 ∪ b_9` is non-zero.
pub const EXCEPTIONAL_PRIME: u64 = 691;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CyclicFactor {
    pub prime: u64,
    pub exponent: u32,
}

impl CyclicFactor {
    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KGroupShape {
    pub n: u64,
    pub free_rank: u32,
    pub torsion: Vec<CyclicFactor>,
    /// Torsion is taken from the table, not computed.
    pub modeled_only: bool,
}

/// Shape of `K_n(Z)` for `n ≡ 1 (mod 8)` with `n >= 9`, `n ≡ 5 (mod 8)`, or `n = 22`.
pub fn k_group_shape(n: u64) -> Result<KGroupShape> {
    let shape = |free_rank, torsion| KGroupShape {
        n,
        free_rank,
        torsion,
        modeled_only: true,
    };
    match n {
        22 => Ok(shape(0, vec![CyclicFactor { prime: EXCEPTIONAL_PRIME, exponent: 1 }])),
        n if n >= 9 && n % 8 == 1 => Ok(shape(1, vec![CyclicFactor { prime: 2, exponent: 1 }])),
        n if n % 8 == 5 => Ok(shape(1, Vec::new())),
        _ => Err(Error::OutOfTable(n as i64)),
    }
}

/// All tabulated shapes with `n <= max_n`, in increasing `n`.
pub fn k_group_table(max_n: u64) -> Vec<KGroupShape> {
    (1..=max_n).filter_map(|n| k_group_shape(n).ok()).collect()
}

/// Parameters of a mixed Tate motive with graded quotients `Z(m)` and `Z(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotiveTateParams {
    pub m: u32,
    pub n: u32,
    pub sha_m: u64,
    pub sha_n: u64,
    pub delta_order: u64,
    pub two_exp: i32,
}

impl MotiveTateParams {
    pub fn new(m: u32, n: u32, sha_m: u64, sha_n: u64, delta_order: u64, two_exp: i32) -> Result<Self> {
        if m < 4 || m % 2 != 0 {
            return Err(Error::invalid(format!("m must be even and >= 4, got {m}")));
        }
        if m > MAX_WEIGHT {
            return Err(Error::invalid(format!("m = {m} exceeds the supported maximum {MAX_WEIGHT}")));
        }
        if n < 3 || n % 2 != 1 {
            return Err(Error::invalid(format!("n must be odd and >= 3, got {n}")));
        }
        if m < n + 2 {
            return Err(Error::invalid(format!("need m - n >= 2, got m = {m}, n = {n}")));
        }
        if sha_m == 0 || sha_n == 0 || delta_order == 0 {
            return Err(Error::invalid("Sha orders and |delta| must be positive"));
        }
        Ok(MotiveTateParams { m, n, sha_m, sha_n, delta_order, two_exp })
    }

    /// `(m, n) = (12, 3)` with `Sha(12) = 691`, the value that makes `#T` integral.
    pub fn default_12_3() -> Self {
        MotiveTateParams { m: 12, n: 3, sha_m: 691, sha_n: 1, delta_order: 1, two_exp: 0 }
    }
}

/// `r_inf(b_m)` together with the inputs it was derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct RegulatorValue {
    pub m: u32,
    pub value: Real,
    pub sha: u64,
    pub two_exp: i32,
}

impl RegulatorValue {
    /// A regulator given directly, for rescaled experiments.
    pub fn custom(m: u32, value: Real) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::invalid("regulator must be positive"));
        }
        Ok(RegulatorValue { m, value, sha: 1, two_exp: 0 })
    }
}

/// `r_inf(b_m) = 2^two_exp * (m-1)! * zeta(m) / sha_m` for odd `m >= 3`.
pub fn regulator(m: u32, sha_m: u64, two_exp: i32, precision: usize) -> Result<RegulatorValue> {
    if sha_m == 0 {
        return Err(Error::invalid("Sha order must be positive"));
    }
    let zeta = zeta_pos_odd(m, precision)?;
    let p = zeta.precision();
    let fact = Real::from_bigint(&factorial(m as u64 - 1), p);
    let two = Real::from_i64(2, p).powi(two_exp as i64);
    let value = two * fact * zeta / Real::from_i64(sha_m as i64, p);
    Ok(RegulatorValue { m, value, sha: sha_m, two_exp })
}

/// `#T = sha_m / |zeta(1-m)|`; fails with [`Error::NonIntegralTorsion`] if not an integer.
pub fn mazur_wiles_torsion_order(m: u32, sha_m: u64) -> Result<Rational> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::invalid(format!("m must be even and >= 2, got {m}")));
    }
    if sha_m == 0 {
        return Err(Error::invalid("Sha order must be positive"));
    }
    let zeta = zeta_neg_odd(1 - m as i64)?;
    let order = Rational::from(sha_m) / zeta.abs();
    if order.is_integer() {
        Ok(order)
    } else {
        Err(Error::NonIntegralTorsion(order))
    }
}

/// `#Sha(D) = #Sha(m) #Sha(n) / |delta|`; fails with [`Error::NonIntegralSha`] if not an integer.
pub fn sha_d(params: &MotiveTateParams) -> Result<Rational> {
    let value = Rational::from(params.sha_m) * Rational::from(params.sha_n)
        / Rational::from(params.delta_order);
    if value.is_integer() {
        Ok(value)
    } else {
        Err(Error::NonIntegralSha(value))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Whether `b_{3,p} ∪ b_{9,p}` is non-zero in `H^2(Z[1/p], Z_p(12))`.
pub fn cup_product_support(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(p == EXCEPTIONAL_PRIME)
}

/// Order of `H^2(Z[1/p], Z_p(m))`; only `m = 12` is tabulated.
pub fn h2_order(m: i64, p: u64) -> Result<u64> {
    if m != 12 {
        return Err(Error::OutOfTable(m));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(if p == EXCEPTIONAL_PRIME { EXCEPTIONAL_PRIME } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let k9 = k_group_shape(9).unwrap();
        assert_eq!((k9.free_rank, k9.torsion.len(), k9.torsion[0].order()), (1, 1, 2));
        let k5 = k_group_shape(5).unwrap();
        assert_eq!((k5.free_rank, k5.torsion.len()), (1, 0));
        let k22 = k_group_shape(22).unwrap();
        assert_eq!(k22.free_rank, 0);
        assert_eq!(k22.torsion, vec![CyclicFactor { prime: 691, exponent: 1 }]);
        for n in [1, 2, 3, 4, 6, 7, 8, 10, 23] {
            assert_eq!(k_group_shape(n), Err(Error::OutOfTable(n as i64)));
        }
    }

    #[test]
    fn shape_invariants_hold_over_a_range() {
        for shape in k_group_table(400) {
            match shape.n % 8 {
                1 => assert_eq!((shape.free_rank, shape.torsion.len()), (1, 1)),
                5 => assert!(shape.free_rank == 1 && shape.torsion.is_empty()),
                _ => assert_eq!(shape.n, 22),
            }
        }
    }

    #[test]
    fn regulator_values() {
        let r3 = regulator(3, 1, 0, 128).unwrap().value.to_f64();
        assert!((r3 - 2.404113806319188).abs() < 1e-12);
        let r9 = regulator(9, 1, 0, 128).unwrap().value.to_f64();
        assert!((r9 - 40400.97839874763).abs() < 1e-8);
        let r3_doubled = regulator(3, 1, 1, 128).unwrap().value;
        let r3_exact = regulator(3, 1, 0, 128).unwrap().value;
        assert_eq!(r3_doubled, &r3_exact * &Real::from_i64(2, 128));
    }

    #[test]
    fn regulator_inverse_in_sha() {
        for c in [2u64, 3, 691] {
            let scaled = regulator(9, 5 * c, 2, 128).unwrap().value * Real::from_i64(c as i64, 128);
            let base = regulator(9, 5, 2, 128).unwrap().value;
            let rel = ((&scaled - &base) / &base).abs().to_f64();
            assert!(rel < 1e-35, "c = {c}: {rel}");
        }
    }

    #[test]
    fn torsion_orders() {
        assert_eq!(mazur_wiles_torsion_order(12, 691).unwrap(), Rational::from(32760i64));
        assert_eq!(mazur_wiles_torsion_order(2, 1).unwrap(), Rational::from(12i64));
        match mazur_wiles_torsion_order(12, 1) {
            Err(Error::NonIntegralTorsion(v)) => assert_eq!(v, Rational::new(32760, 691).unwrap()),
            other => panic!("expected non-integral torsion, got {other:?}"),
        }
        assert!(mazur_wiles_torsion_order(3, 1).is_err());
        for k in 1..6u64 {
            assert_eq!(
                mazur_wiles_torsion_order(12, 691 * k).unwrap(),
                Rational::from(32760 * k)
            );
        }
    }

    #[test]
    fn sha_d_values() {
        let p = MotiveTateParams::new(12, 3, 691, 1, 691, 0).unwrap();
        assert_eq!(sha_d(&p).unwrap(), Rational::one());
        let p = MotiveTateParams::new(12, 3, 1, 1, 1, 0).unwrap();
        assert_eq!(sha_d(&p).unwrap(), Rational::one());
        let p = MotiveTateParams::new(12, 3, 6, 4, 5, 0).unwrap();
        assert_eq!(sha_d(&p), Err(Error::NonIntegralSha(Rational::new(24, 5).unwrap())));
    }

    #[test]
    fn params_validation() {
        assert!(MotiveTateParams::new(12, 3, 1, 1, 1, 0).is_ok());
        assert!(MotiveTateParams::new(11, 3, 1, 1, 1, 0).is_err());
        assert!(MotiveTateParams::new(12, 4, 1, 1, 1, 0).is_err());
        assert!(MotiveTateParams::new(4, 3, 1, 1, 1, 0).is_err());
        assert!(MotiveTateParams::new(12, 3, 0, 1, 1, 0).is_err());
    }

    #[test]
    fn cup_product_only_at_691() {
        assert!(cup_product_support(691).unwrap());
        assert!(!cup_product_support(2).unwrap());
        assert!(!cup_product_support(3).unwrap());
        assert!(cup_product_support(4).is_err());
        let hits: Vec<u64> = (2..10_000)
            .filter(|&p| is_prime(p))
            .filter(|&p| cup_product_support(p).unwrap())
            .collect();
        assert_eq!(hits, vec![691]);
    }

    #[test]
    fn h2_orders() {
        assert_eq!(h2_order(12, 691).unwrap(), 691);
        assert_eq!(h2_order(12, 5).unwrap(), 1);
        assert_eq!(h2_order(10, 5), Err(Error::OutOfTable(10)));
    }
}
