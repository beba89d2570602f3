//! Enumeration of `{x in Z^s : Q(x) <= r}` by the Fincke–Pohst recursion.
//!
//! With `Q(x) = sum_k d_k (x_k + sum_{j<k} mu_jk x_j)^2` (an `LDL^T` split of
//! the Gram matrix, eliminated from the back) the coordinates are fixed from
//! the first one up; each step leaves an interval for the next. Floating-point intervals are widened
//! a little and every accepted point is re-checked against the full form.

use crate::height::QuadraticForm;

use super::within;

const WIDEN: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct LatticeEnumerator {
    form: QuadraticForm,
    d: Vec<f64>,
    // Q = sum_k d_k (x_k + sum_{j<k} mu[j][k] x_j)^2
    mu: Vec<Vec<f64>>,
}

impl LatticeEnumerator {
    pub fn new(form: &QuadraticForm) -> Self {
        let n = form.rank();
        let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| form.gram_f64(i, j)).collect()).collect();
        let mut d = vec![0.0; n];
        let mut mu = vec![vec![0.0; n]; n];
        // Eliminate from the last coordinate so that x_i's center depends on x_{>i}.
        for k in (0..n).rev() {
            d[k] = a[k][k];
            for j in 0..k {
                mu[j][k] = a[j][k] / d[k];
            }
            for i in 0..k {
                for j in 0..k {
                    a[i][j] -= a[i][k] * a[k][j] / d[k];
                }
            }
        }
        LatticeEnumerator { form: form.clone(), d, mu }
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    fn center(&self, k: usize, x: &[i64]) -> f64 {
        -(0..k).map(|j| self.mu[j][k] * x[j] as f64).sum::<f64>()
    }

    /// Calls `visit(x, Q(x))` for every integer `x` with `Q(x) <= r`.
    pub fn for_each<F: FnMut(&[i64], f64)>(&self, r: f64, mut visit: F) {
        let n = self.rank();
        if !within(0.0, r) {
            return;
        }
        if n == 0 {
            visit(&[], 0.0);
            return;
        }
        let mut x = vec![0i64; n];
        self.descend(0, r.max(0.0), 0.0, &mut x, &mut |x: &[i64]| {
            let q = self.form.eval_i64_f64(x);
            if within(q, r) {
                visit(x, q);
            }
        });
    }

    /// `#{x in Z^s : Q(x) <= r}`; the last coordinate is counted from its interval.
    pub fn count(&self, r: f64) -> u128 {
        let n = self.rank();
        if !within(0.0, r) {
            return 0;
        }
        if n == 0 {
            return 1;
        }
        let mut x = vec![0i64; n];
        let mut total = 0u128;
        self.count_walk(0, r.max(0.0), 0.0, &mut x, r, &mut total);
        total
    }

    // Coordinates are fixed in the order 0, 1, ..., n-1; coordinate k's
    // center depends on coordinates < k, matching the back elimination.
    fn interval(&self, k: usize, budget: f64, x: &[i64]) -> (i64, i64) {
        let c = self.center(k, x);
        let h = ((budget.max(0.0) * (1.0 + WIDEN)) / self.d[k]).sqrt() + WIDEN;
        ((c - h).ceil() as i64, (c + h).floor() as i64)
    }

    fn descend(&self, k: usize, r: f64, used: f64, x: &mut Vec<i64>, leaf: &mut dyn FnMut(&[i64])) {
        let n = self.rank();
        let (lo, hi) = self.interval(k, r - used, x);
        let c = self.center(k, x);
        for v in lo..=hi {
            x[k] = v;
            let t = v as f64 - c;
            let u = used + self.d[k] * t * t;
            if k + 1 == n {
                leaf(x);
            } else if u <= r * (1.0 + WIDEN) + WIDEN {
                self.descend(k + 1, r, u, x, leaf);
            }
        }
        x[k] = 0;
    }

    fn count_walk(&self, k: usize, r: f64, used: f64, x: &mut Vec<i64>, bound: f64, total: &mut u128) {
        let n = self.rank();
        let (mut lo, mut hi) = self.interval(k, r - used, x);
        if k + 1 == n {
            // Q restricted to a line is convex, so the admissible set is an interval.
            let ok = |v: i64, x: &mut Vec<i64>| {
                x[k] = v;
                within(self.form.eval_i64_f64(x), bound)
            };
            while lo <= hi && !ok(lo, x) {
                lo += 1;
            }
            while hi >= lo && !ok(hi, x) {
                hi -= 1;
            }
            x[k] = 0;
            if hi >= lo {
                *total += (hi - lo + 1) as u128;
            }
            return;
        }
        let c = self.center(k, x);
        for v in lo..=hi {
            x[k] = v;
            let t = v as f64 - c;
            let u = used + self.d[k] * t * t;
            if u <= r * (1.0 + WIDEN) + WIDEN {
                self.count_walk(k + 1, r, u, x, bound, total);
            }
        }
        x[k] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Rational;

    fn form(rows: &[&[i64]]) -> QuadraticForm {
        QuadraticForm::new(rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect())
            .unwrap()
    }

    fn brute(f: &QuadraticForm, r: f64, box_half: i64) -> u128 {
        let n = f.rank();
        let mut count = 0;
        let side = (2 * box_half + 1) as usize;
        let mut x = vec![0i64; n];
        for idx in 0..side.pow(n as u32) {
            let mut t = idx;
            for xi in x.iter_mut() {
                *xi = (t % side) as i64 - box_half;
                t /= side;
            }
            if within(f.eval_i64_f64(&x), r) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn circle_counts() {
        let e = LatticeEnumerator::new(&QuadraticForm::identity(2));
        // Gauss circle problem: N(1) = 5, N(2) = 9, N(4) = 13, N(25) = 81.
        assert_eq!(e.count(1.0), 5);
        assert_eq!(e.count(2.0), 9);
        assert_eq!(e.count(4.0), 13);
        assert_eq!(e.count(25.0), 81);
        assert_eq!(e.count(-1.0), 0);
        assert_eq!(e.count(0.0), 1);
    }

    #[test]
    fn non_diagonal_forms_match_brute_force() {
        let forms = [
            form(&[&[2, 1], &[1, 2]]),
            form(&[&[3, -1, 1], &[-1, 2, 0], &[1, 0, 4]]),
            form(&[&[1, 0], &[0, 7]]),
        ];
        for f in &forms {
            let e = LatticeEnumerator::new(f);
            for r in [0.5, 3.0, 10.0, 17.0, 30.0] {
                let b = brute(f, r, 8);
                assert_eq!(e.count(r), b, "{:?} r={r}", f.gram());
                let mut visited = 0u128;
                e.for_each(r, |_, _| visited += 1);
                assert_eq!(visited, b);
            }
        }
    }

    #[test]
    fn rank_zero() {
        let e = LatticeEnumerator::new(&QuadraticForm::identity(0));
        assert_eq!(e.count(0.0), 1);
        assert_eq!(e.count(-0.5), 0);
    }
}
