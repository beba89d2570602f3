//! Homogeneous functions `f(lambda x) = |lambda|^c f(x)` on `R^r`.

use std::fmt;
use std::sync::Arc;

use super::lattice::LatticeEnumerator;
use super::within;
use crate::error::{Error, Result};
use crate::height::QuadraticForm;

type Eval1d = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    /// `Q(x)^(c/2)`.
    FormPower(QuadraticForm),
    /// Rank one, given by an evaluator.
    Custom(Eval1d),
}

#[derive(Clone)]
pub struct HomogeneousFn {
    rank: usize,
    degree: f64,
    kind: Kind,
}

impl fmt::Debug for HomogeneousFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            Kind::FormPower(_) => "form-power",
            Kind::Custom(_) => "custom",
        };
        write!(f, "HomogeneousFn({kind}, rank {}, c = {})", self.rank, self.degree)
    }
}

const LAMBDAS: [f64; 5] = [-2.0, -0.25, 0.5, 1.75, 3.0];

impl HomogeneousFn {
    /// `f(x) = Q(x)^(c/2)`, homogeneous of degree `c`.
    pub fn form_power(form: QuadraticForm, c: f64) -> Result<Self> {
        if form.rank() == 0 {
            return Err(Error::invalid("homogeneous functions need rank >= 1"));
        }
        check_degree(c)?;
        Ok(HomogeneousFn { rank: form.rank(), degree: c, kind: Kind::FormPower(form) })
    }

    /// A rank-one function given by `eval`; checked by [`validate`](Self::validate).
    pub fn custom_1d(c: f64, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        check_degree(c)?;
        let f = HomogeneousFn { rank: 1, degree: c, kind: Kind::Custom(Arc::new(eval)) };
        f.validate()?;
        Ok(f)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> f64 {
        self.degree
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match &self.kind {
            Kind::FormPower(q) => q.eval_f64(x).max(0.0).powf(self.degree / 2.0),
            Kind::Custom(f) => f(x[0]),
        }
    }

    /// Checks `f(0) = 0`, positivity and homogeneity on a fixed set of sample vectors.
    pub fn validate(&self) -> Result<()> {
        let zero = vec![0.0; self.rank];
        if self.eval(&zero) != 0.0 {
            return Err(Error::invalid("f(0) must be 0"));
        }
        for x in sample_vectors(self.rank) {
            let fx = self.eval(&x);
            if !(fx.is_finite() && fx > 0.0) {
                return Err(Error::invalid(format!("f must be positive away from 0; f({x:?}) = {fx}")));
            }
            for lambda in LAMBDAS {
                let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
                let expected = lambda.abs().powf(self.degree) * fx;
                let got = self.eval(&scaled);
                if (got - expected).abs() > 1e-9 * expected.abs().max(1e-300) {
                    return Err(Error::invalid(format!(
                        "homogeneity of degree {} fails at lambda = {lambda}, x = {x:?}",
                        self.degree
                    )));
                }
            }
        }
        Ok(())
    }

    /// `vol{x in R^r : f(x) <= 1}`.
    pub fn unit_volume(&self) -> f64 {
        match &self.kind {
            Kind::FormPower(q) => q.unit_sublevel_volume(64).to_f64(),
            Kind::Custom(f) => f(1.0).powf(-1.0 / self.degree) + f(-1.0).powf(-1.0 / self.degree),
        }
    }

    /// Calls `visit(n, f(n))` for every `n in Z^r` with `f(n) <= bound`.
    pub fn for_each_lattice<F: FnMut(&[i64], f64)>(&self, bound: f64, mut visit: F) {
        if !within(0.0, bound) {
            return;
        }
        match &self.kind {
            Kind::FormPower(q) => {
                let c = self.degree;
                LatticeEnumerator::new(q).for_each(bound.max(0.0).powf(2.0 / c), |x, qv| {
                    let fx = qv.max(0.0).powf(c / 2.0);
                    if within(fx, bound) {
                        visit(x, fx);
                    }
                });
            }
            Kind::Custom(f) => {
                visit(&[0], 0.0);
                for sign in [1i64, -1] {
                    let mut n = 1i64;
                    loop {
                        let fx = f((sign * n) as f64);
                        if !within(fx, bound) {
                            break;
                        }
                        visit(&[sign * n], fx);
                        n += 1;
                    }
                }
            }
        }
    }

    pub fn lattice_count(&self, bound: f64) -> u128 {
        let mut n = 0u128;
        self.for_each_lattice(bound, |_, _| n += 1);
        n
    }
}

fn check_degree(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::invalid(format!("homogeneity degree must be positive, got {c}")));
    }
    Ok(())
}

// Coordinate vectors, their sums and a few skewed directions.
fn sample_vectors(rank: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..rank {
        let mut e = vec![0.0; rank];
        e[i] = 1.0;
        out.push(e.clone());
        e[i] = -0.7;
        out.push(e);
    }
    out.push(vec![1.0; rank]);
    out.push((0..rank).map(|i| if i % 2 == 0 { 1.3 } else { -0.4 * (i as f64 + 1.0) }).collect());
    out.push((0..rank).map(|i| 0.5 + i as f64).collect());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Rational;

    #[test]
    fn form_power_is_homogeneous() {
        let q = QuadraticForm::new(vec![
            vec![Rational::from(2), Rational::from(1)],
            vec![Rational::from(1), Rational::from(3)],
        ])
        .unwrap();
        for c in [0.5, 1.0, 2.0, 3.0] {
            HomogeneousFn::form_power(q.clone(), c).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn custom_checks() {
        assert!(HomogeneousFn::custom_1d(2.0, |x| x * x).is_ok());
        assert!(HomogeneousFn::custom_1d(1.0, |x| 3.0 * x.abs()).is_ok());
        assert!(HomogeneousFn::custom_1d(2.0, |x| x.abs()).is_err());
        assert!(HomogeneousFn::custom_1d(1.0, |x| x.abs() + 1.0).is_err());
        assert!(HomogeneousFn::custom_1d(1.0, |x| x).is_err());
        assert!(HomogeneousFn::custom_1d(0.0, |x| x.abs()).is_err());
    }

    #[test]
    fn unit_volumes() {
        let f = HomogeneousFn::custom_1d(2.0, |x| 4.0 * x * x).unwrap();
        assert!((f.unit_volume() - 1.0).abs() < 1e-15);
        let g = HomogeneousFn::form_power(QuadraticForm::identity(2), 1.0).unwrap();
        assert!((g.unit_volume() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn lattice_counts_agree_between_kinds() {
        let a = HomogeneousFn::custom_1d(2.0, |x| x * x).unwrap();
        let b = HomogeneousFn::form_power(QuadraticForm::identity(1), 2.0).unwrap();
        for bound in [0.0, 0.5, 1.0, 9.0, 50.0] {
            assert_eq!(a.lattice_count(bound), b.lattice_count(bound));
        }
        assert_eq!(a.lattice_count(9.0), 7);
    }
}
