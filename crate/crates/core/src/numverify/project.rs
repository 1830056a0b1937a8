//! Coefficients by quadrature: the projection
//! `a_k(h) = int h R_k w / int R_k^2 w` with the Jacobi weight of the space.
//!
//! The normalization constant of the projection is fixed by requiring that
//! projecting `R_j` returns `delta_{jk}`; with at-one normalized `R_k` that
//! is the `1 / int R_k^2 w` above. For the power bases of `sphereInf` and
//! `projInf` the function is first expanded in Legendre polynomials up to
//! degree `rule_size - 1` and the expansion is rewritten in powers of `t` or
//! of `(1 + t) / 2`. Power coefficients are badly conditioned functionals
//! (rounding grows roughly like `2.4^M` for powers of `t` and `5.8^M` for
//! powers of `(1 + t) / 2` at degree `M = rule_size - 1`), so there
//! `rule_size` should stay just above the degree of interest.

use super::extended;
use crate::error::{Error, Result};
use crate::kernelmodel::{eval_series, CoefficientSeq, Space};
use crate::orthopoly::{gauss_jacobi_rule, jacobi_values, Basis, PolyParams};

/// Truncation used when evaluating series inside the oracle.
pub const ORACLE_EPS: f64 = 1e-14;

fn check_rule(k: usize, rule_size: usize) -> Result<()> {
    if rule_size < k + 1 {
        return Err(Error::Usage(format!(
            "a {rule_size}-point rule cannot project onto degree {k}; use at least {}",
            k + 1
        )));
    }
    Ok(())
}

/// Projections `a_0(h), ..., a_{top}(h)` onto the at-one normalized Jacobi
/// polynomials with `params`, from a `rule_size`-point rule.
fn jacobi_projections(params: PolyParams, h: &dyn Fn(f64) -> f64, top: usize, rule_size: usize) -> Result<Vec<f64>> {
    check_rule(top, rule_size)?;
    let rule = gauss_jacobi_rule(rule_size, params)?;
    let mut num = vec![0.0; top + 1];
    let mut den = vec![0.0; top + 1];
    let mut values = Vec::with_capacity(top + 1);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let hx = h(x);
        jacobi_values(top, params, x, &mut values);
        for j in 0..=top {
            num[j] += w * hx * values[j];
            den[j] += w * values[j] * values[j];
        }
    }
    Ok(num.iter().zip(&den).map(|(a, b)| a / b).collect())
}

/// Power coefficients of the Legendre polynomials `P_0..=P_top`:
/// `out[j][i]` is the coefficient of `t^i` in `P_j`.
fn legendre_powers(top: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![vec![1.0]];
    if top >= 1 {
        out.push(vec![0.0, 1.0]);
    }
    for j in 1..top {
        // (j + 1) P_{j+1} = (2j + 1) t P_j - j P_{j-1}
        let mut next = vec![0.0; j + 2];
        for (i, &c) in out[j].iter().enumerate() {
            next[i + 1] += (2 * j + 1) as f64 * c;
        }
        for (i, &c) in out[j - 1].iter().enumerate() {
            next[i] -= j as f64 * c;
        }
        next.iter_mut().for_each(|c| *c /= (j + 1) as f64);
        out.push(next);
    }
    out
}

/// Power coefficients of the shifted Legendre polynomials
/// `P_j(2u - 1) = sum_i (-1)^{j+i} C(j, i) C(j+i, i) u^i`.
fn shifted_legendre_powers(top: usize) -> Vec<Vec<f64>> {
    (0..=top)
        .map(|j| {
            let mut coeffs = Vec::with_capacity(j + 1);
            let mut c = if j % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..=j {
                coeffs.push(c);
                // C(j,i+1) C(j+i+1,i+1) / (C(j,i) C(j+i,i)) = (j-i)(j+i+1)/(i+1)^2
                c *= -((j - i) as f64) * ((j + i + 1) as f64) / (((i + 1) * (i + 1)) as f64);
            }
            coeffs
        })
        .collect()
}

/// `a_k(h)` in the basis of `space`, from a `rule_size`-point Gauss–Jacobi
/// rule. Projecting a basis function `B_j` returns `delta_{jk}` whenever
/// `rule_size > max(j, k)`.
pub fn project_coeffs(space: &Space, h: impl Fn(f64) -> f64, k: usize, rule_size: usize) -> Result<f64> {
    let basis = space
        .basis()
        .ok_or_else(|| Error::Usage(format!("{space} has no real coefficient basis to project onto")))?;
    match basis {
        Basis::Jacobi(params) => {
            check_rule(k, rule_size)?;
            let rule = gauss_jacobi_rule(rule_size, params)?;
            let mut values = Vec::with_capacity(k + 1);
            let (mut num, mut den) = (0.0, 0.0);
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                jacobi_values(k, params, x, &mut values);
                num += w * h(x) * values[k];
                den += w * values[k] * values[k];
            }
            Ok(num / den)
        }
        Basis::Monomial | Basis::HalfShiftedPower => {
            let top = rule_size.saturating_sub(1);
            check_rule(k, rule_size)?;
            let legendre = PolyParams::new(0.0, 0.0)?;
            let ell = jacobi_projections(legendre, &h, top, rule_size)?;
            let powers = if basis == Basis::Monomial {
                legendre_powers(top)
            } else {
                shifted_legendre_powers(top)
            };
            Ok((k..=top).map(|j| ell[j] * powers[j][k]).sum())
        }
    }
}

/// `a_k(fg)` by projecting the pointwise product of the two series: the
/// reference against which `product_expand` is checked. On Jacobi bases the
/// projection runs in double-double arithmetic.
pub fn oracle_product_coeffs(f: &CoefficientSeq, g: &CoefficientSeq, k: usize, rule_size: usize) -> Result<f64> {
    if f.space() != g.space() {
        return Err(Error::Usage(format!(
            "factors live on different spaces: {} and {}",
            f.space(),
            g.space()
        )));
    }
    if let Basis::Jacobi(params) = f.basis() {
        check_rule(k, rule_size)?;
        return extended::product_projection(params, &f.terms(ORACLE_EPS), &g.terms(ORACLE_EPS), k, rule_size);
    }
    project_coeffs(
        f.space(),
        |t| eval_series(f, t, ORACLE_EPS) * eval_series(g, t, ORACLE_EPS),
        k,
        rule_size,
    )
}
