use serde::Serialize;

use crate::arithmetic::{factorial, Rational, Real};
use crate::error::{Error, Result};

/// Positive-definite quadratic form `Q(x) = x^T G x` with a rational Gram matrix.
///
/// Positive definiteness is checked exactly through the leading principal
/// minors. Rank 0 is the trivial form on the zero space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticForm {
    rank: usize,
    gram: Vec<Vec<Rational>>,
    #[serde(skip)]
    gram_f64: Vec<f64>,
    #[serde(skip)]
    det: Rational,
    #[serde(skip)]
    inverse_diagonal: Vec<Rational>,
}

impl QuadraticForm {
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let rank = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: row.len(),
                    context: "gram matrix row",
                });
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::invalid(format!("gram matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        let pivots = pivots(&gram)?;
        let det = pivots.iter().fold(Rational::one(), |acc, p| acc * p);
        let inverse_diagonal = inverse_diagonal(&gram)?;
        let gram_f64 = gram.iter().flatten().map(Rational::to_f64).collect();
        Ok(QuadraticForm { rank, gram, gram_f64, det, inverse_diagonal })
    }

    pub fn identity(rank: usize) -> Self {
        Self::diagonal(vec![Rational::one(); rank]).expect("identity is positive definite")
    }

    pub fn diagonal(entries: Vec<Rational>) -> Result<Self> {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { entries[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(gram)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn det(&self) -> &Rational {
        &self.det
    }

    /// `(G^-1)_ii`: the sublevel set `Q(x) <= r` spans `|x_i| <= sqrt(r * (G^-1)_ii)`.
    pub fn inverse_diagonal(&self) -> &[Rational] {
        &self.inverse_diagonal
    }

    pub(crate) fn gram_f64(&self, i: usize, j: usize) -> f64 {
        self.gram_f64[i * self.rank + j]
    }

    pub fn eval_int(&self, x: &[i64]) -> Result<Rational> {
        self.check_len(x.len())?;
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if x[j] != 0 {
                    acc = acc + &self.gram[i][j] * &Rational::from(x[i] * x[j]);
                }
            }
        }
        Ok(acc)
    }

    pub fn eval_real(&self, x: &[Real], precision: usize) -> Result<Real> {
        self.check_len(x.len())?;
        let mut acc = Real::zero(precision);
        for i in 0..self.rank {
            for j in 0..self.rank {
                if self.gram[i][j].is_zero() {
                    continue;
                }
                let g = Real::from_rational(&self.gram[i][j], precision);
                acc = acc + g * &x[i] * &x[j];
            }
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rank {
            let mut row = 0.0;
            for j in 0..self.rank {
                row += self.gram_f64(i, j) * x[j];
            }
            acc += x[i] * row;
        }
        acc
    }

    /// Same as [`eval_f64`](Self::eval_f64) on an integer vector.
    pub fn eval_i64_f64(&self, x: &[i64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rank {
            let mut row = 0.0;
            for j in 0..self.rank {
                row += self.gram_f64(i, j) * x[j] as f64;
            }
            acc += x[i] as f64 * row;
        }
        acc
    }

    /// Lebesgue volume of `{x : Q(x) <= 1}`, i.e. `vol(unit ball) / sqrt(det G)`.
    pub fn unit_sublevel_volume(&self, precision: usize) -> Real {
        if self.rank == 0 {
            return Real::one(precision);
        }
        let (coef, pi_power) = unit_ball_volume(self.rank as u64);
        let ball = Real::from_rational(&coef, precision) * Real::pi(precision).powi(pi_power as i64);
        ball / Real::from_rational(&self.det, precision).sqrt()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: len,
                context: "quadratic form argument",
            });
        }
        Ok(())
    }
}

/// Volume of the Euclidean unit ball in dimension `s`, as `coef * pi^k`.
pub(crate) fn unit_ball_volume(s: u64) -> (Rational, u64) {
    if s % 2 == 0 {
        let k = s / 2;
        (Rational::one() / Rational::from(factorial(k)), k)
    } else {
        // pi^(s/2) / Gamma(s/2 + 1) with s = 2k + 1 equals pi^k 4^(k+1) (k+1)! / (2k+2)!.
        let k = (s - 1) / 2;
        let num = Rational::from(num_bigint::BigInt::from(4u8).pow(k as u32 + 1))
            * Rational::from(factorial(k + 1));
        (num / Rational::from(factorial(2 * k + 2)), k)
    }
}

// Gaussian elimination without pivoting; for a symmetric matrix the pivots are
// ratios of consecutive leading minors, so all are positive iff it is definite.
fn pivots(gram: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = gram.len();
    let mut a: Vec<Vec<Rational>> = gram.to_vec();
    let mut out = Vec::with_capacity(n);
    let mut minor = Rational::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minor = &minor * &pivot;
        if !pivot.is_positive() {
            return Err(Error::NotPositiveDefinite { index: k + 1, minor });
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &a[k][j];
                a[i][j] = &a[i][j] - &delta;
            }
        }
        out.push(pivot);
    }
    Ok(out)
}

fn inverse_diagonal(gram: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = gram.len();
    let mut a: Vec<Vec<Rational>> = gram
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let pivot = a[k][k].clone();
        let inv = pivot.recip()?;
        for v in a[k].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..2 * n {
                let delta = &factor * &a[k][j];
                a[i][j] = &a[i][j] - &delta;
            }
        }
    }
    Ok((0..n).map(|i| a[i][n + i].clone()).collect())
}
