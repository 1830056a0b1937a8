//! Gauss–Jacobi rules from the symmetric Jacobi matrix of the orthonormal
//! recurrence (Golub–Welsch).
//!
//! Nodes are the eigenvalues of the tridiagonal matrix, computed by implicit
//! QL and polished with Newton steps on the orthonormal polynomial of degree
//! `n`. Weights come from the Christoffel function
//! `w_i = 1 / sum_{j<n} p_j(x_i)^2`, which keeps full relative accuracy even
//! for the tiny weights near the endpoints.

use serde::Serialize;

use super::PolyParams;
use crate::error::{Error, Result};
use crate::linalg::tridiagonal_eigenvalues;

/// Rules above this size are refused; the eigen solver is only
/// guaranteed for `n <= 512`.
pub const MAX_RULE_SIZE: usize = 512;

#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRule {
    pub params: PolyParams,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Highest polynomial degree integrated exactly, `2n - 1`.
    pub exact_degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `int_{-1}^{1} (1 - t)^alpha (1 + t)^beta dt
///  = 2^{alpha+beta+1} Gamma(alpha+1) Gamma(beta+1) / Gamma(alpha+beta+2)`.
pub fn jacobi_weight_mass(params: PolyParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    let log_mass = (a + b + 1.0) * std::f64::consts::LN_2 + libm::lgamma(a + 1.0) + libm::lgamma(b + 1.0)
        - libm::lgamma(a + b + 2.0);
    log_mass.exp()
}

/// Diagonal `a_j` and off-diagonal `b_j` (`b_j` couples `j - 1` and `j`) of
/// the orthonormal Jacobi recurrence `b_{j+1} p_{j+1} = (x - a_j) p_j - b_j p_{j-1}`.
fn recurrence(n: usize, params: PolyParams) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = (params.alpha, params.beta);
    let diag = (0..n)
        .map(|j| {
            if j == 0 {
                (b - a) / (a + b + 2.0)
            } else {
                let s = 2.0 * j as f64 + a + b;
                (b * b - a * a) / (s * (s + 2.0))
            }
        })
        .collect();
    let off = (1..=n)
        .map(|j| {
            if j == 1 {
                (4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))).sqrt()
            } else {
                let jf = j as f64;
                let s = 2.0 * jf + a + b;
                (4.0 * jf * (jf + a) * (jf + b) * (jf + a + b) / (s * s * (s + 1.0) * (s - 1.0))).sqrt()
            }
        })
        .collect();
    (diag, off)
}

/// Orthonormal `p_n(x)`, its derivative, and `sum_{j<n} p_j(x)^2`.
fn orthonormal_at(x: f64, diag: &[f64], off: &[f64], p0: f64) -> (f64, f64, f64) {
    let n = diag.len();
    let (mut prev, mut cur) = (0.0, p0);
    let (mut dprev, mut dcur) = (0.0, 0.0);
    let mut sum_sq = 0.0;
    for j in 0..n {
        sum_sq += cur * cur;
        let b_prev = if j == 0 { 0.0 } else { off[j - 1] };
        let next = ((x - diag[j]) * cur - b_prev * prev) / off[j];
        let dnext = (cur + (x - diag[j]) * dcur - b_prev * dprev) / off[j];
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    (cur, dcur, sum_sq)
}

/// `n`-point Gauss rule for the weight `(1 - t)^alpha (1 + t)^beta`.
pub fn gauss_jacobi_rule(n: usize, params: PolyParams) -> Result<QuadratureRule> {
    params.check_integrable()?;
    if n == 0 {
        return Err(Error::Parameter("a quadrature rule needs n >= 1 nodes".into()));
    }
    if n > MAX_RULE_SIZE {
        return Err(Error::Parameter(format!(
            "rule size {n} exceeds the supported maximum {MAX_RULE_SIZE}"
        )));
    }
    let (diag, off) = recurrence(n, params);
    let mut nodes = tridiagonal_eigenvalues(&diag, &off[..n - 1])?;
    let mass = jacobi_weight_mass(params);
    let p0 = mass.sqrt().recip();

    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (pn, dpn, _) = orthonormal_at(*x, &diag, &off, p0);
            if dpn == 0.0 {
                break;
            }
            let candidate = *x - pn / dpn;
            let (pc, _, _) = orthonormal_at(candidate, &diag, &off, p0);
            if candidate.is_finite() && candidate.abs() < 1.0 && pc.abs() < pn.abs() {
                *x = candidate;
            } else {
                break;
            }
        }
        let (_, _, sum_sq) = orthonormal_at(*x, &diag, &off, p0);
        weights.push(sum_sq.recip());
    }
    for pair in nodes.windows(2) {
        if pair[0].partial_cmp(&pair[1]) != Some(std::cmp::Ordering::Less) {
            return Err(Error::Numerical(format!(
                "Gauss-Jacobi nodes not strictly increasing for n = {n}"
            )));
        }
    }
    Ok(QuadratureRule {
        params,
        nodes,
        weights,
        exact_degree: 2 * n - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Moments `M_j = int t^j w(t) dt` from integration by parts:
    /// `(j + a + b + 2) M_{j+1} = j M_{j-1} + (b - a) M_j`.
    fn moments(params: PolyParams, mass: f64, count: usize) -> Vec<f64> {
        let (a, b) = (params.alpha, params.beta);
        let mut m = vec![mass, (b - a) * mass / (a + b + 2.0)];
        for j in 1..count {
            let jf = j as f64;
            let next = (jf * m[j - 1] + (b - a) * m[j]) / (jf + a + b + 2.0);
            m.push(next);
        }
        m.truncate(count);
        m
    }

    #[test]
    fn one_point_legendre() {
        let r = gauss_jacobi_rule(1, PolyParams::new(0.0, 0.0).unwrap()).unwrap();
        assert!(r.nodes[0].abs() < 1e-16);
        assert!((r.weights[0] - 2.0).abs() < 1e-15);
        assert_eq!(r.exact_degree, 1);
    }

    #[test]
    fn three_point_legendre_fourth_moment() {
        let r = gauss_jacobi_rule(3, PolyParams::new(0.0, 0.0).unwrap()).unwrap();
        let v = r.integrate(|t| t.powi(4));
        assert!((v - 0.4).abs() < 1e-14, "{v}");
    }

    #[test]
    fn beta_function_mass() {
        // int (1-t)^{1/2} (1+t)^{-1/2} dt = 2 B(3/2, 1/2) = pi
        let r = gauss_jacobi_rule(8, PolyParams::new(0.5, -0.5).unwrap()).unwrap();
        let total: f64 = r.weights.iter().sum();
        assert!((total - std::f64::consts::PI).abs() < 1e-12 * std::f64::consts::PI);
    }

    #[test]
    fn closed_form_masses() {
        // Legendre: 2; Chebyshev: pi; (1-t)(1+t)^0: 2; (1 - t^2): 4/3.
        let cases = [
            (0.0, 0.0, 2.0),
            (-0.5, -0.5, std::f64::consts::PI),
            (1.0, 0.0, 2.0),
            (1.0, 1.0, 4.0 / 3.0),
        ];
        for (a, b, want) in cases {
            let mass = jacobi_weight_mass(PolyParams::weight(a, b).unwrap());
            assert!((mass - want).abs() < 1e-13 * want, "({a},{b}): {mass}");
        }
    }

    #[test]
    fn exact_for_all_moments_up_to_2n_minus_1() {
        let params_list = [
            (0.0, 0.0),
            (-0.5, -0.5),
            (0.5, -0.5),
            (1.0, 0.0),
            (3.0, 1.0),
            (7.0, 3.0),
            (0.0, 4.0),
        ];
        for (a, b) in params_list {
            let params = PolyParams::weight(a, b).unwrap();
            let mass = jacobi_weight_mass(params);
            for n in 1..=20 {
                let rule = gauss_jacobi_rule(n, params).unwrap();
                let m = moments(params, mass, 2 * n);
                for (j, &want) in m.iter().enumerate() {
                    let got = rule.integrate(|t| t.powi(j as i32));
                    let scale = mass.max(want.abs());
                    assert!(
                        (got - want).abs() <= 1e-13 * scale,
                        "({a},{b}) n={n} j={j}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn large_rules_build() {
        for &n in &[128usize, 512] {
            let rule = gauss_jacobi_rule(n, PolyParams::new(7.0, 3.0).unwrap()).unwrap();
            assert_eq!(rule.len(), n);
            assert!(rule.weights.iter().all(|&w| w > 0.0));
            let total: f64 = rule.weights.iter().sum();
            let mass = jacobi_weight_mass(rule.params);
            assert!((total - mass).abs() < 1e-12 * mass);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_jacobi_rule(0, PolyParams::new(0.0, 0.0).unwrap()).is_err());
        assert!(gauss_jacobi_rule(4, PolyParams { alpha: -1.0, beta: 0.0 }).is_err());
    }
}
