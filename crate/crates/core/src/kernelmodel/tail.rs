use serde::Serialize;

use crate::error::{Error, Result};
use crate::semilinear::Ray;

/// Coefficients `c * r^t` at the indices `base + dir * step * t`, `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometricTail {
    pub ray: Ray,
    pub c: f64,
    pub r: f64,
}

impl GeometricTail {
    /// Checks `c > 0` and `0 < r < 1`, reporting failures under `path`.
    pub fn new(ray: Ray, c: f64, r: f64, path: &str) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::validation(
                format!("{path}.c"),
                format!("tail coefficient must be positive and finite, got {c}"),
            ));
        }
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::validation(
                format!("{path}.r"),
                format!("tail ratio must lie in (0, 1), got {r}"),
            ));
        }
        Ok(GeometricTail { ray, c, r })
    }

    /// Index and coefficient of the `t`-th term.
    pub fn term(&self, t: usize) -> (i64, f64) {
        let index = self.ray.base + self.ray.dir.sign() * self.ray.step * t as i64;
        (index, self.c * self.r.powf(t as f64))
    }

    pub fn coefficient(&self, index: i64) -> Option<f64> {
        if !self.ray.contains(index) {
            return None;
        }
        let t = (index - self.ray.base).abs() / self.ray.step;
        Some(self.c * self.r.powf(t as f64))
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> f64 {
        self.c / (1.0 - self.r)
    }

    /// Sum of the coefficients from the `terms`-th one on.
    pub fn remainder(&self, terms: usize) -> f64 {
        self.c * self.r.powf(terms as f64) / (1.0 - self.r)
    }

    /// Smallest number of leading terms whose omitted remainder is `<= eps`.
    pub fn terms_for(&self, eps: f64) -> usize {
        if self.total() <= eps {
            return 0;
        }
        let estimate = ((eps * (1.0 - self.r) / self.c).ln() / self.r.ln()).ceil().max(0.0);
        let mut n = estimate as usize;
        while n > 0 && self.remainder(n - 1) <= eps {
            n -= 1;
        }
        while self.remainder(n) > eps {
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_tail_coefficients() {
        let tail = GeometricTail::new(Ray::up(1, 2), 1.0 / 3.0, 1.0 / 9.0, "tails[0]").unwrap();
        for k in 0..6 {
            let expected = 3f64.powi(-(2 * k + 1));
            let got = tail.coefficient(2 * k as i64 + 1).unwrap();
            assert!((got - expected).abs() < 1e-16 * expected.max(1.0) + 1e-18);
        }
        assert_eq!(tail.coefficient(2), None);
        assert!((tail.total() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn truncation_bound() {
        let tail = GeometricTail::new(Ray::up(0, 3), 2.0, 0.7, "t").unwrap();
        for eps in [1e-1, 1e-6, 1e-12] {
            let n = tail.terms_for(eps);
            assert!(tail.remainder(n) <= eps);
            assert!(n == 0 || tail.remainder(n - 1) > eps);
        }
    }

    #[test]
    fn rejects_bad_ratio() {
        let err = GeometricTail::new(Ray::up(0, 1), 1.0, 1.0, "tails[2]").unwrap_err();
        assert_eq!(
            err,
            Error::Validation {
                path: "tails[2].r".into(),
                message: "tail ratio must lie in (0, 1), got 1".into()
            }
        );
        assert!(GeometricTail::new(Ray::up(0, 1), 0.0, 0.5, "t").is_err());
    }
}
