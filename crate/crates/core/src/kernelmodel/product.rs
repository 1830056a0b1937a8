use std::collections::BTreeMap;

use super::{CoefficientSeq, Kernel, Space};
use crate::error::{Error, Result};
use crate::orthopoly::{Basis, JacobiLinearizer};
use crate::semilinear::SemilinearSet;

fn same_space(f: &Space, g: &Space) -> Result<()> {
    if f != g {
        return Err(Error::Usage(format!("factors live on different spaces: {f} and {g}")));
    }
    Ok(())
}

/// Coefficients `a_m(fg)` for `m <= n_max`, each within `eps`.
///
/// On Wang spaces this is the bilinear sum `sum a_k(f) a_l(g) b_{k,l}(m)`
/// over linearization tables, with both factors truncated so that the
/// dropped mass contributes at most `eps`: every `b_{k,l}(m)` lies in
/// `[0, 1]`, so truncating `f` to remainder `r_f` and `g` to `r_g` perturbs
/// each coefficient by at most `r_f g(1) + f(1) r_g + r_f r_g`. On
/// `sphereInf`/`projInf` the product of power series is an exact Cauchy
/// convolution.
pub fn product_expand(f: &CoefficientSeq, g: &CoefficientSeq, n_max: usize, eps: f64) -> Result<BTreeMap<usize, f64>> {
    same_space(f.space(), g.space())?;
    let mut out: BTreeMap<usize, f64> = (0..=n_max).map(|m| (m, 0.0)).collect();
    let params = match f.basis() {
        Basis::Jacobi(params) => params,
        Basis::Monomial | Basis::HalfShiftedPower => {
            for m in 0..=n_max {
                let c: f64 = (0..=m).map(|k| f.coefficient(k) * g.coefficient(m - k)).sum();
                out.insert(m, c);
            }
            return Ok(out);
        }
    };

    let (f1, g1) = (f.value_at_one(), g.value_at_one());
    let tf = f.terms(eps / (3.0 * g1.max(1.0)));
    let tg = g.terms(eps / (3.0 * f1.max(1.0)));
    let top = tf.iter().chain(&tg).map(|&(k, _)| k).max().unwrap_or(0);
    let lin = JacobiLinearizer::new(params, top, n_max)?;
    for &(k, a) in &tf {
        for &(l, b) in &tg {
            let lo = k.abs_diff(l);
            if lo > n_max {
                continue;
            }
            for m in lo..=(k + l).min(n_max) {
                *out.get_mut(&m).expect("all targets are present") += a * b * lin.coefficient(k, l, m);
            }
        }
    }
    Ok(out)
}

/// `a_m(fg)` on the circle from the Chebyshev product rule
/// `T_k T_l = (T_{k+l} + T_{|k-l|}) / 2`:
///
/// `a_0(fg) = a_0(f) a_0(g) + 1/2 sum_{mu>=1} a_mu(f) a_mu(g)` and, for
/// `m >= 1`, `a_m(fg) = 1/2 sum_{nu=0}^m a_nu(f) a_{m-nu}(g)
///   + 1/2 sum_{mu>=0} [a_mu(f) a_{mu+m}(g) + a_{mu+m}(f) a_mu(g)]`.
///
/// The infinite sums stop once the remaining terms are bounded by `eps`.
pub fn circle_product_coeffs(f: &CoefficientSeq, g: &CoefficientSeq, m: usize, eps: f64) -> Result<f64> {
    for s in [f.space(), g.space()] {
        if *s != Space::Circle {
            return Err(Error::Usage(format!("circle product rule applied to a kernel on {s}")));
        }
    }
    let (f1, g1) = (f.value_at_one(), g.value_at_one());
    // sum_{mu > M} a_mu(f) a_{mu+m}(g) <= rem_f(M) * g(1), and symmetrically.
    let last = |s: &CoefficientSeq, share: f64| s.terms(share).last().map_or(0, |&(k, _)| k);
    let cut = last(f, eps / (2.0 * g1.max(1.0))).max(last(g, eps / (2.0 * f1.max(1.0))));
    let a = |k: usize| f.coefficient(k);
    let b = |k: usize| g.coefficient(k);
    if m == 0 {
        let cross: f64 = (1..=cut).map(|mu| a(mu) * b(mu)).sum();
        return Ok(a(0) * b(0) + 0.5 * cross);
    }
    let direct: f64 = (0..=m).map(|nu| a(nu) * b(m - nu)).sum();
    let cross: f64 = (0..=cut).map(|mu| a(mu) * b(mu + m) + a(mu + m) * b(mu)).sum();
    Ok(0.5 * (direct + cross))
}

/// Index set whose shape decides strict positive definiteness of `fg`:
/// `{±k±l}` on the circle, `{k+l}` on the other Wang spaces and on
/// `sphereInf`/`projInf`, `{(m-n)+(m'-n')}` on complex spheres (plain
/// integer sums for `q = 1`).
pub fn product_support(f: &Kernel, g: &Kernel) -> Result<SemilinearSet> {
    let space = f.space();
    same_space(&space, &g.space())?;
    let (sf, sg) = (f.index_support(), g.index_support());
    Ok(match space {
        Space::Circle => sf.signed_sumset(&sg),
        _ => sf.sumset(&sg),
    })
}
