use super::PolyParams;
use crate::error::{Error, Result};

/// `R_k(t) = P_k^{(alpha,beta)}(t) / P_k^{(alpha,beta)}(1)`.
pub fn jacobi_eval(k: usize, params: PolyParams, t: f64) -> Result<f64> {
    params.check_ordered()?;
    let mut out = Vec::with_capacity(k + 1);
    jacobi_values(k, params, t, &mut out);
    Ok(out[k])
}

/// Fills `out` with `R_0(t), ..., R_max(t)` from the three-term recurrence,
/// carried out directly on the at-one normalized polynomials.
///
/// Works for any integrable weight (`alpha, beta > -1`); the ordering
/// `alpha >= beta` is not required here.
pub fn jacobi_values(max_degree: usize, params: PolyParams, t: f64, out: &mut Vec<f64>) {
    let (a, b) = (params.alpha, params.beta);
    out.clear();
    out.push(1.0);
    if max_degree == 0 {
        return;
    }
    out.push(1.0 + (a + b + 2.0) * (t - 1.0) / (2.0 * (a + 1.0)));
    for n in 2..=max_degree {
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let a1 = 2.0 * nf * (nf + a + b) * (s - 2.0);
        let a2 = (s - 1.0) * (a * a - b * b);
        let a3 = (s - 1.0) * s * (s - 2.0);
        // P_{n-1}(1)/P_n(1) and P_{n-2}(1)/P_n(1)
        let r1 = nf / (nf + a);
        let r2 = r1 * (nf - 1.0) / (nf + a - 1.0);
        let a4 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * s;
        let next = ((a2 + a3 * t) * r1 * out[n - 1] - a4 * r2 * out[n - 2]) / a1;
        out.push(next);
    }
}

/// `P_k^{(alpha,beta)}(1) = binomial(k + alpha, k)`.
pub fn jacobi_at_one(k: usize, params: PolyParams) -> Result<f64> {
    params.check_ordered()?;
    Ok((1..=k).fold(1.0, |acc, j| acc * (params.alpha + j as f64) / j as f64))
}

/// `T_k(t) = cos(k arccos t)`.
pub fn chebyshev_eval(k: usize, t: f64) -> f64 {
    (k as f64 * t.clamp(-1.0, 1.0).acos()).cos()
}

/// `C_k^{(d-1)/2}(t) / C_k^{(d-1)/2}(1)`, i.e. the normalized Jacobi
/// polynomial with `alpha = beta = (d - 2)/2`.
pub fn gegenbauer_eval(k: usize, d: u32, t: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::Parameter(format!("Gegenbauer polynomials need d >= 2, got {d}")));
    }
    jacobi_eval(k, PolyParams::sphere(d)?, t)
}
