use super::jacobi::jacobi_values;
use super::PolyParams;

/// Basis in which an isotropic part is expanded. Every family equals one
/// at `t = 1` and is bounded by one in absolute value on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    /// Normalized Jacobi polynomials `R_k^{(alpha,beta)}`.
    Jacobi(PolyParams),
    /// `t^k`.
    Monomial,
    /// `((1 + t) / 2)^k`.
    HalfShiftedPower,
}

impl Basis {
    /// Writes `B_0(t), ..., B_max(t)` into `out`.
    pub fn values(&self, max_degree: usize, t: f64, out: &mut Vec<f64>) {
        match self {
            Basis::Jacobi(params) => jacobi_values(max_degree, *params, t, out),
            Basis::Monomial => powers(max_degree, t, out),
            Basis::HalfShiftedPower => powers(max_degree, 0.5 * (1.0 + t), out),
        }
    }

    pub fn eval(&self, k: usize, t: f64) -> f64 {
        match self {
            Basis::Monomial => t.powi(k as i32),
            Basis::HalfShiftedPower => (0.5 * (1.0 + t)).powi(k as i32),
            Basis::Jacobi(_) => {
                let mut out = Vec::with_capacity(k + 1);
                self.values(k, t, &mut out);
                out[k]
            }
        }
    }

    /// `B_k(-t) = (-1)^k B_k(t)` holds for symmetric Jacobi weights and
    /// monomials.
    pub fn has_parity(&self) -> bool {
        match self {
            Basis::Jacobi(p) => p.alpha == p.beta,
            Basis::Monomial => true,
            Basis::HalfShiftedPower => false,
        }
    }
}

fn powers(max_degree: usize, x: f64, out: &mut Vec<f64>) {
    out.clear();
    let mut v = 1.0;
    for _ in 0..=max_degree {
        out.push(v);
        v *= x;
    }
}
