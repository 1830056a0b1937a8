//! Double-double projection onto at-one normalized Jacobi polynomials.
//!
//! `a_k(h) = <h, R_k> / <R_k, R_k>` amplifies an L2 error in `h` by about
//! `1 / |R_k|`, which reaches `1e7` for `alpha >= 6` and `k >= 20`; rounding
//! `h` to `f64` then costs several `1e-9`. Here the Gauss rule, the basis
//! values and the series are all carried in double-double, and only the
//! quotient is rounded.

use twofloat::TwoFloat;

use crate::error::Result;
use crate::orthopoly::{gauss_jacobi_rule, PolyParams};

fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

/// `a / b` to double-double accuracy; the quotient of two `TwoFloat`s in
/// twofloat 0.8 is only accurate to `f64`, so one Newton correction is
/// applied to the quotient by `b.hi()`.
fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q = a / b.hi();
    q + (a - q * b) / b.hi()
}

fn sqrt(x: TwoFloat) -> TwoFloat {
    let s = x.sqrt();
    s + (x - s * s) / (2.0 * s.hi())
}

/// Orthonormal recurrence `b_{j+1} p_{j+1} = (x - a_j) p_j - b_j p_{j-1}`.
fn recurrence(n: usize, params: PolyParams) -> (Vec<TwoFloat>, Vec<TwoFloat>) {
    let (a, b) = (dd(params.alpha), dd(params.beta));
    let one = dd(1.0);
    let two = dd(2.0);
    let diag = (0..n)
        .map(|j| {
            if j == 0 {
                div(b - a, a + b + two)
            } else {
                let s = dd(2.0 * j as f64) + a + b;
                div(b * b - a * a, s * (s + two))
            }
        })
        .collect();
    let off = (1..=n)
        .map(|j| {
            if j == 1 {
                let s = a + b + two;
                sqrt(div(dd(4.0) * (one + a) * (one + b), s * s * (s + one)))
            } else {
                let jf = dd(j as f64);
                let s = jf * two + a + b;
                sqrt(div(
                    dd(4.0) * jf * (jf + a) * (jf + b) * (jf + a + b),
                    s * s * (s + one) * (s - one),
                ))
            }
        })
        .collect();
    (diag, off)
}

/// `p_n(x)`, `p_n'(x)` and `sum_{j<n} p_j(x)^2` with `p_0 = 1`.
fn orthonormal_at(x: TwoFloat, diag: &[TwoFloat], off: &[TwoFloat]) -> (TwoFloat, TwoFloat, TwoFloat) {
    let zero = dd(0.0);
    let (mut prev, mut cur) = (zero, dd(1.0));
    let (mut dprev, mut dcur) = (zero, zero);
    let mut sum_sq = zero;
    for j in 0..diag.len() {
        sum_sq += cur * cur;
        let b_prev = if j == 0 { zero } else { off[j - 1] };
        let next = div((x - diag[j]) * cur - b_prev * prev, off[j]);
        let dnext = div(cur + (x - diag[j]) * dcur - b_prev * dprev, off[j]);
        (prev, cur, dprev, dcur) = (cur, next, dcur, dnext);
    }
    (cur, dcur, sum_sq)
}

/// Gauss rule for the weight of `params`, refined from the `f64` rule; the
/// weights are scaled by the inverse weight mass.
fn gauss_rule(n: usize, params: PolyParams) -> Result<Vec<(TwoFloat, TwoFloat)>> {
    let base = gauss_jacobi_rule(n, params)?;
    let (diag, off) = recurrence(n, params);
    Ok(base
        .nodes
        .iter()
        .map(|&x0| {
            let mut x = dd(x0);
            for _ in 0..2 {
                let (pn, dpn, _) = orthonormal_at(x, &diag, &off);
                if dpn == dd(0.0) {
                    break;
                }
                x -= div(pn, dpn);
            }
            let (_, _, sum_sq) = orthonormal_at(x, &diag, &off);
            (x, div(dd(1.0), sum_sq))
        })
        .collect())
}

/// `R_0(t), ..., R_max(t)`, the recurrence of `jacobi_values`.
fn at_one_values(max_degree: usize, params: PolyParams, t: TwoFloat, out: &mut Vec<TwoFloat>) {
    let (a, b) = (dd(params.alpha), dd(params.beta));
    let (one, two) = (dd(1.0), dd(2.0));
    out.clear();
    out.push(one);
    if max_degree == 0 {
        return;
    }
    out.push(one + div((a + b + two) * (t - one), two * (a + one)));
    for n in 2..=max_degree {
        let nf = dd(n as f64);
        let s = nf * two + a + b;
        let a1 = two * nf * (nf + a + b) * (s - two);
        let a2 = (s - one) * (a * a - b * b);
        let a3 = (s - one) * s * (s - two);
        let r1 = div(nf, nf + a);
        let r2 = div(r1 * (nf - one), nf + a - one);
        let a4 = two * (nf + a - one) * (nf + b - one) * s;
        let next = div((a2 + a3 * t) * r1 * out[n - 1] - a4 * r2 * out[n - 2], a1);
        out.push(next);
    }
}

/// `a_k(fg)` for `f = sum f_j R_j` and `g = sum g_j R_j` given as sorted
/// term lists, from a `rule_size`-point rule.
pub(super) fn product_projection(
    params: PolyParams,
    f: &[(usize, f64)],
    g: &[(usize, f64)],
    k: usize,
    rule_size: usize,
) -> Result<f64> {
    let rule = gauss_rule(rule_size, params)?;
    let top = [f.last(), g.last()]
        .iter()
        .flatten()
        .map(|&&(j, _)| j)
        .max()
        .unwrap_or(0)
        .max(k);
    let series =
        |terms: &[(usize, f64)], values: &[TwoFloat]| terms.iter().fold(dd(0.0), |acc, &(j, a)| acc + values[j] * a);
    let mut values = Vec::with_capacity(top + 1);
    let (mut num, mut den) = (dd(0.0), dd(0.0));
    for (x, w) in rule {
        at_one_values(top, params, x, &mut values);
        let r = values[k];
        num += w * series(f, &values) * series(g, &values) * r;
        den += w * r * r;
    }
    Ok(f64::from(div(num, den)))
}
