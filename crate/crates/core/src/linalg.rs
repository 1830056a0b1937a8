//! Small dense eigen-solvers used by the quadrature builder and the Gram
//! matrix checks. Sizes stay in the low hundreds, so plain `Vec<f64>`
//! row-major storage is enough.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sweep budget for the cyclic Jacobi method. Quadratic convergence makes
/// ten or so sweeps typical even for n = 400.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Iteration budget per eigenvalue for the implicit QL method.
pub const MAX_QL_ITERATIONS: usize = 60;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub n: usize,
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector belonging to `values[i]`.
    pub vectors: Vec<Vec<f64>>,
}

impl SymmetricEigen {
    pub fn min(&self) -> (f64, &[f64]) {
        (self.values[0], &self.vectors[0])
    }
}

/// Cyclic Jacobi rotations on a symmetric row-major `n x n` matrix.
///
/// Only the upper triangle is trusted; the lower one is overwritten.
pub fn symmetric_eigen(matrix: &[f64], n: usize) -> Result<SymmetricEigen> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let mut a = matrix.to_vec();
    for i in 0..n {
        for j in 0..i {
            a[i * n + j] = a[j * n + i];
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let mut converged = n <= 1;
    for sweep in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].abs())
            .sum();
        if off == 0.0 {
            converged = true;
            break;
        }
        let threshold = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    continue;
                }
                if apq.abs() <= threshold {
                    continue;
                }
                let h = aqq - app;
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let (rp, rq) = (upper(r, p, n), upper(r, q, n));
                    let g = a[rp];
                    let h = a[rq];
                    a[rp] = g - s * (h + g * tau);
                    a[rq] = h + s * (g - h * tau);
                }
                for r in 0..n {
                    let g = v[r * n + p];
                    let h = v[r * n + q];
                    v[r * n + p] = g - s * (h + g * tau);
                    v[r * n + q] = h + s * (g - h * tau);
                }
            }
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi eigenvalue iteration did not converge in {MAX_JACOBI_SWEEPS} sweeps (n = {n})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|r| v[r * n + col]).collect())
        .collect();
    Ok(SymmetricEigen { n, values, vectors })
}

#[inline]
fn upper(i: usize, j: usize, n: usize) -> usize {
    if i < j {
        i * n + j
    } else {
        j * n + i
    }
}

/// Smallest eigenvalue and a unit eigenvector of a Hermitian matrix.
///
/// The matrix `H = A + iB` is embedded as the real symmetric
/// `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every
/// multiplicity doubled. An embedded eigenvector `(x, y)` maps back to `x + iy`.
pub fn hermitian_min_eigen(matrix: &[Complex64], n: usize) -> Result<(f64, Vec<Complex64>)> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let m = 2 * n;
    let mut real = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = matrix[i * n + j];
            real[i * m + j] = z.re;
            real[(i + n) * m + (j + n)] = z.re;
            real[i * m + (j + n)] = -z.im;
            real[(i + n) * m + j] = z.im;
        }
    }
    let eig = symmetric_eigen(&real, m)?;
    let (value, vector) = eig.min();
    let mut c: Vec<Complex64> = (0..n).map(|i| Complex64::new(vector[i], vector[i + n])).collect();
    let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        c.iter_mut().for_each(|z| *z /= norm);
    }
    Ok((value, c))
}

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with the
/// given diagonal and sub-diagonal (`off[i]` couples rows `i` and `i + 1`).
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    assert!(n == 0 || off.len() + 1 == n, "off-diagonal must have n - 1 entries");
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = off.iter().copied().chain(std::iter::once(0.0)).collect();

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::Numerical(format!(
                    "tridiagonal QL did not converge for eigenvalue {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_recovers_known_spectrum() {
        // [[2,1,0],[1,2,1],[0,1,2]] has eigenvalues 2 - sqrt2, 2, 2 + sqrt2.
        let a = [2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0];
        let eig = symmetric_eigen(&a, 3).unwrap();
        let s2 = 2f64.sqrt();
        for (got, want) in eig.values.iter().zip([2.0 - s2, 2.0, 2.0 + s2]) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        // A v = lambda v for the smallest pair.
        let (lam, v) = eig.min();
        for i in 0..3 {
            let av: f64 = (0..3).map(|j| a[i * 3 + j] * v[j]).sum();
            assert!((av - lam * v[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn all_ones_matrix_has_rank_one() {
        let n = 5;
        let a = vec![1.0; n * n];
        let eig = symmetric_eigen(&a, n).unwrap();
        assert!((eig.values[n - 1] - n as f64).abs() < 1e-13);
        assert!(eig.values[0].abs() < 1e-13);
    }

    #[test]
    fn hermitian_embedding_matches_closed_form() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let i = Complex64::i();
        let h = [Complex64::new(1.0, 0.0), i, -i, Complex64::new(1.0, 0.0)];
        let (lam, c) = hermitian_min_eigen(&h, 2).unwrap();
        assert!(lam.abs() < 1e-14);
        let hc0 = h[0] * c[0] + h[1] * c[1];
        let hc1 = h[2] * c[0] + h[3] * c[1];
        assert!(hc0.norm() < 1e-13 && hc1.norm() < 1e-13);
    }

    #[test]
    fn ql_matches_jacobi_on_tridiagonal() {
        let diag = [4.0, -1.0, 3.0, 0.5, 2.0];
        let off = [1.0, 0.3, -2.0, 0.7];
        let ql = tridiagonal_eigenvalues(&diag, &off).unwrap();
        let n = diag.len();
        let mut dense = vec![0.0; n * n];
        for i in 0..n {
            dense[i * n + i] = diag[i];
            if i + 1 < n {
                dense[i * n + i + 1] = off[i];
                dense[(i + 1) * n + i] = off[i];
            }
        }
        let jac = symmetric_eigen(&dense, n).unwrap();
        for (a, b) in ql.iter().zip(&jac.values) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
}
