use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::PointSet;
use crate::error::{Error, Result};
use crate::kernelmodel::{eval_kernel, Kernel, Point, Space};
use crate::linalg::{hermitian_min_eigen, symmetric_eigen};

/// Relative factor of the positive-definiteness tolerance
/// `1e-8 * n * f(1)`.
pub const PD_TOLERANCE_FACTOR: f64 = 1e-8;

/// A coefficient vector whose quadratic form is (nearly) zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NearNull {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Smallest eigenvalue of a Gram matrix and what it says about
/// positive definiteness on the sampled points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub space: Space,
    pub n: usize,
    pub seed: u64,
    pub min_eig: f64,
    /// `min_eig >= -tol`.
    pub pd: bool,
    pub tol: f64,
    /// Unit eigenvector of `min_eig`, present when `min_eig <= tol`. For
    /// complex Gram matrices it is given as `c` with `c^T K conj(c)` equal
    /// to `min_eig`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub near_null: Option<NearNull>,
}

impl GramReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// `1e-8 * n * prod f_i(1)`.
pub fn tol_scale(n: usize, factors: &[&Kernel]) -> f64 {
    PD_TOLERANCE_FACTOR * n as f64 * factors.iter().map(|f| f.value_at_one()).product::<f64>()
}

/// The row-major Gram matrix of the entrywise product of `factors` at
/// `points`. Entries above the diagonal are computed; the lower triangle is
/// their conjugate mirror, so the result is exactly Hermitian.
pub fn gram_matrix(space: &Space, factors: &[&Kernel], points: &[Point], eps: f64) -> Result<Vec<Complex64>> {
    if factors.is_empty() {
        return Err(Error::Usage("a Gram matrix needs at least one kernel".into()));
    }
    let n = points.len();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| {
                    factors.iter().try_fold(Complex64::new(1.0, 0.0), |acc, f| {
                        Ok(acc * eval_kernel(space, f, &points[i], &points[j], eps)?)
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut k = vec![Complex64::new(0.0, 0.0); n * n];
    for (i, row) in rows.into_iter().enumerate() {
        for (offset, z) in row.into_iter().enumerate() {
            let j = i + offset;
            if i == j {
                k[i * n + i] = Complex64::new(z.re, 0.0);
            } else {
                k[i * n + j] = z;
                k[j * n + i] = z.conj();
            }
        }
    }
    Ok(k)
}

/// Gram report of the product kernel `prod factors` on a sampled point set.
pub fn gram(points: &PointSet, factors: &[&Kernel], eps: f64) -> Result<GramReport> {
    let space = &points.space;
    let n = points.points.len();
    let k = gram_matrix(space, factors, &points.points, eps)?;
    let tol = tol_scale(n, factors);
    let complex = matches!(space, Space::ComplexSphere { .. });
    let (min_eig, vector) = if n == 0 {
        (f64::INFINITY, None)
    } else if complex {
        let (value, v) = hermitian_min_eigen(&k, n)?;
        // K v = value v gives conj(v)^T K conj(conj(v)) = v^H K v = value.
        (
            value,
            Some(NearNull::Complex(v.into_iter().map(|z| z.conj()).collect())),
        )
    } else {
        let real: Vec<f64> = k.iter().map(|z| z.re).collect();
        let eig = symmetric_eigen(&real, n)?;
        let (value, v) = eig.min();
        (value, Some(NearNull::Real(v.to_vec())))
    };
    Ok(GramReport {
        space: space.clone(),
        n,
        seed: points.seed,
        min_eig,
        pd: min_eig >= -tol,
        tol,
        near_null: if min_eig <= tol { vector } else { None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernelmodel::{BiCoefficientSeq, CoefficientSeq};
    use crate::numverify::sample_points;
    use std::collections::BTreeMap;

    fn poly(space: Space, coeffs: &[(usize, f64)]) -> Kernel {
        CoefficientSeq::polynomial(space, coeffs.iter().copied())
            .unwrap()
            .into()
    }

    #[test]
    fn constant_kernel_is_rank_one() {
        let s2 = Space::Sphere { d: 2 };
        let f = poly(s2.clone(), &[(0, 1.0)]);
        let pts = sample_points(&s2, 3, 1).unwrap();
        let k = gram_matrix(&s2, &[&f], &pts.points, 1e-12).unwrap();
        let eig = symmetric_eigen(&k.iter().map(|z| z.re).collect::<Vec<_>>(), 3).unwrap();
        assert!(eig.values[0].abs() < 1e-12 && eig.values[1].abs() < 1e-12);
        assert!((eig.values[2] - 3.0).abs() < 1e-12);
        let report = gram(&pts, &[&f], 1e-12).unwrap();
        assert!(report.pd);
        assert!(report.near_null.is_some());
    }

    #[test]
    fn low_degree_sphere_kernel_is_singular_on_six_points() {
        let s2 = Space::Sphere { d: 2 };
        let f = poly(s2.clone(), &[(0, 1.0), (1, 1.0)]);
        let pts = sample_points(&s2, 6, 5).unwrap();
        let report = gram(&pts, &[&f], 1e-12).unwrap();
        assert!(report.min_eig <= report.tol);
        let Some(NearNull::Real(c)) = report.near_null else {
            panic!("real null vector expected")
        };
        let k = gram_matrix(&s2, &[&f], &pts.points, 1e-12).unwrap();
        let q: f64 = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .map(|(i, j)| c[i] * c[j] * k[i * 6 + j].re)
            .sum();
        assert!(q.abs() <= report.tol);
    }

    #[test]
    fn complex_sphere_gram_is_hermitian() {
        let space = Space::ComplexSphere { q: 2 };
        let f: Kernel = BiCoefficientSeq::new(
            2,
            BTreeMap::from([((0, 0), 1.0), ((1, 0), 0.5), ((0, 2), 0.25)]),
            vec![],
        )
        .unwrap()
        .into();
        let pts = sample_points(&space, 12, 9).unwrap();
        let k = gram_matrix(&space, &[&f], &pts.points, 1e-12).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                assert_eq!(k[i * 12 + j], k[j * 12 + i].conj());
            }
        }
        let report = gram(&pts, &[&f], 1e-12).unwrap();
        assert!(report.pd);
    }
}
