use std::collections::BTreeMap;

use super::tail::GeometricTail;
use super::Space;
use crate::error::{Error, Result};
use crate::orthopoly::Basis;
use crate::semilinear::{Direction, SemilinearSet};

/// Nonnegative coefficients `a_k` of an isotropic part in its space's basis:
/// a sparse head plus geometric tails on ascending rays.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeq {
    space: Space,
    basis: Basis,
    head: BTreeMap<usize, f64>,
    tails: Vec<GeometricTail>,
}

impl CoefficientSeq {
    pub fn new(space: Space, head: BTreeMap<usize, f64>, tails: Vec<GeometricTail>) -> Result<Self> {
        space.validate()?;
        let basis = space.basis().ok_or_else(|| {
            Error::validation(
                "space.kind",
                format!("{} kernels are not expanded in a single-index basis", space.kind_name()),
            )
        })?;
        for (&k, &a) in &head {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::validation(
                    format!("head[\"{k}\"]"),
                    format!("coefficients must be positive, got {a}"),
                ));
            }
        }
        for (i, tail) in tails.iter().enumerate() {
            if tail.ray.dir != Direction::Up || tail.ray.base < 0 {
                return Err(Error::validation(
                    format!("tails[{i}].base"),
                    "tails must ascend from a nonnegative base",
                ));
            }
            if let Some(k) = head.keys().find(|&&k| tail.ray.contains(k as i64)) {
                return Err(Error::validation(
                    format!("head[\"{k}\"]"),
                    format!("index {k} is also covered by tails[{i}]"),
                ));
            }
            if let Some(j) = tails[..i].iter().position(|other| other.ray.intersects(&tail.ray)) {
                return Err(Error::validation(format!("tails[{i}]"), format!("overlaps tails[{j}]")));
            }
        }
        Ok(CoefficientSeq {
            space,
            basis,
            head,
            tails,
        })
    }

    /// A finite expansion from `(index, coefficient)` pairs.
    pub fn polynomial(space: Space, coeffs: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        Self::new(space, coeffs.into_iter().collect(), Vec::new())
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn head(&self) -> &BTreeMap<usize, f64> {
        &self.head
    }

    pub fn tails(&self) -> &[GeometricTail] {
        &self.tails
    }

    pub fn coefficient(&self, k: usize) -> f64 {
        if let Some(&a) = self.head.get(&k) {
            return a;
        }
        self.tails.iter().find_map(|t| t.coefficient(k as i64)).unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_empty() && self.tails.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.tails.is_empty()
    }

    /// `f(1)`, the sum of all coefficients.
    pub fn value_at_one(&self) -> f64 {
        self.head.values().sum::<f64>() + self.tails.iter().map(GeometricTail::total).sum::<f64>()
    }

    /// Nonzero coefficients whose omitted remainder sums to at most `eps`,
    /// sorted by index.
    pub fn terms(&self, eps: f64) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64)> = self.head.iter().map(|(&k, &a)| (k, a)).collect();
        let share = eps / self.tails.len().max(1) as f64;
        for tail in &self.tails {
            let n = tail.terms_for(share);
            out.extend((0..n).map(|t| {
                let (k, a) = tail.term(t);
                (k as usize, a)
            }));
        }
        out.sort_by_key(|&(k, _)| k);
        out
    }

    /// Sum of the coefficients dropped by [`CoefficientSeq::terms`].
    pub fn truncation_remainder(&self, eps: f64) -> f64 {
        let share = eps / self.tails.len().max(1) as f64;
        self.tails.iter().map(|t| t.remainder(t.terms_for(share))).sum()
    }

    /// `f(t)` to within `eps`; since every basis function is bounded by one
    /// on `[-1, 1]` the truncation error is at most the omitted coefficient
    /// mass. Arguments are clamped to `[-1, 1]`.
    pub fn eval(&self, t: f64, eps: f64) -> f64 {
        let terms = self.terms(eps);
        let Some(&(top, _)) = terms.last() else {
            return 0.0;
        };
        let mut values = Vec::with_capacity(top + 1);
        self.basis.values(top, t.clamp(-1.0, 1.0), &mut values);
        terms.iter().map(|&(k, a)| a * values[k]).sum()
    }

    /// `{k : a_k > 0}`.
    pub fn support(&self) -> SemilinearSet {
        SemilinearSet::from_parts(self.head.keys().map(|&k| k as i64), self.tails.iter().map(|t| t.ray))
    }
}

/// `f(t)` within `eps`.
pub fn eval_series(f: &CoefficientSeq, t: f64, eps: f64) -> f64 {
    f.eval(t, eps)
}
