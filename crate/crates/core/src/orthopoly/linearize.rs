use std::collections::BTreeMap;

use serde::Serialize;

use super::jacobi::jacobi_values;
use super::quadrature::{gauss_jacobi_rule, QuadratureRule};
use super::PolyParams;
use crate::error::Result;

/// Entries with magnitude below this are structural zeros polluted by
/// roundoff and are stored as exactly zero.
pub const CLAMP_THRESHOLD: f64 = 1e-13;

/// Coefficients `b(mu)` of `R_k R_l = sum_mu b(mu) R_mu`.
#[derive(Debug, Clone, Serialize)]
pub struct LinearizationTable {
    pub k: usize,
    pub l: usize,
    pub params: PolyParams,
    /// Nonzero entries after clamping, keyed by target degree.
    pub entries: BTreeMap<usize, f64>,
    /// Smallest coefficient before clamping (over all `mu <= k + l`).
    pub min_unclamped: f64,
    /// `false` when the parameters fall outside `alpha + beta >= -1`, where
    /// nonnegativity of the entries is not known to hold.
    pub nonnegativity_guaranteed: bool,
}

impl LinearizationTable {
    pub fn get(&self, mu: usize) -> f64 {
        self.entries.get(&mu).copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.entries.values().sum()
    }
}

/// Projection machinery shared by many `(k, l)` pairs with the same
/// parameters: one Gauss rule, basis values at its nodes, and the
/// normalized projectors `w_i R_mu(x_i) / <R_mu, R_mu>`.
#[derive(Debug, Clone)]
pub struct JacobiLinearizer {
    params: PolyParams,
    max_factor_degree: usize,
    max_target: usize,
    rule: QuadratureRule,
    values: Vec<Vec<f64>>,
    projectors: Vec<Vec<f64>>,
}

impl JacobiLinearizer {
    /// Supports factors of degree `<= max_factor_degree` and targets
    /// `mu <= max_target`.
    pub fn new(params: PolyParams, max_factor_degree: usize, max_target: usize) -> Result<Self> {
        params.check_ordered()?;
        let max_target = max_target.min(2 * max_factor_degree);
        // R_k R_l R_mu has degree at most 2F + T; 2n - 1 must reach it.
        let degree = 2 * max_factor_degree + max_target;
        let n = degree / 2 + 1;
        let rule = gauss_jacobi_rule(n, params)?;
        let top = max_factor_degree.max(max_target);

        let mut values = vec![Vec::with_capacity(n); top + 1];
        let mut buf = Vec::with_capacity(top + 1);
        for &x in &rule.nodes {
            jacobi_values(top, params, x, &mut buf);
            for (j, v) in buf.iter().enumerate() {
                values[j].push(*v);
            }
        }
        let projectors = (0..=max_target)
            .map(|mu| {
                let norm: f64 = rule.weights.iter().zip(&values[mu]).map(|(w, r)| w * r * r).sum();
                rule.weights
                    .iter()
                    .zip(&values[mu])
                    .map(|(w, r)| w * r / norm)
                    .collect()
            })
            .collect();
        Ok(JacobiLinearizer {
            params,
            max_factor_degree,
            max_target,
            rule,
            values,
            projectors,
        })
    }

    pub fn params(&self) -> PolyParams {
        self.params
    }

    pub fn max_factor_degree(&self) -> usize {
        self.max_factor_degree
    }

    pub fn max_target(&self) -> usize {
        self.max_target
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    /// Unclamped `b_{k,l}(mu)`.
    pub fn raw(&self, k: usize, l: usize, mu: usize) -> f64 {
        assert!(k <= self.max_factor_degree && l <= self.max_factor_degree);
        assert!(mu <= self.max_target);
        let (rk, rl, proj) = (&self.values[k], &self.values[l], &self.projectors[mu]);
        rk.iter().zip(rl).zip(proj).map(|((a, b), p)| a * b * p).sum()
    }

    /// Clamped `b_{k,l}(mu)`; zero outside `|k - l| <= mu <= k + l`.
    pub fn coefficient(&self, k: usize, l: usize, mu: usize) -> f64 {
        if mu < k.abs_diff(l) || mu > k + l {
            return 0.0;
        }
        clamp(self.raw(k, l, mu))
    }

    /// Full table for `(k, l)`; targets are cut at `max_target`.
    pub fn table(&self, k: usize, l: usize) -> LinearizationTable {
        let top = (k + l).min(self.max_target);
        let mut entries = BTreeMap::new();
        let mut min_unclamped = f64::INFINITY;
        for mu in 0..=top {
            let b = self.raw(k, l, mu);
            min_unclamped = min_unclamped.min(b);
            let b = clamp(b);
            if b != 0.0 {
                entries.insert(mu, b);
            }
        }
        LinearizationTable {
            k,
            l,
            params: self.params,
            entries,
            min_unclamped,
            nonnegativity_guaranteed: self.params.nonnegative_linearization(),
        }
    }
}

fn clamp(b: f64) -> f64 {
    if b.abs() < CLAMP_THRESHOLD {
        0.0
    } else {
        b
    }
}

/// `R_k R_l = sum_{mu} b(mu) R_mu` by quadrature projection.
pub fn linearize_jacobi(k: usize, l: usize, params: PolyParams) -> Result<LinearizationTable> {
    let lin = JacobiLinearizer::new(params, k.max(l), k + l)?;
    Ok(lin.table(k, l))
}
