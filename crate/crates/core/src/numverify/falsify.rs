//! Search for null vectors of Gram matrices of non-strict kernels.
//!
//! A polynomial kernel `K(x, y) = sum_{k in S} a_k B_k(t(x, y))` has rank
//! at most the dimension of the span of the functions `y -> B_k(t(x, y))`,
//! which is a sum of eigenspace dimensions of the point space. More points
//! than that force a singular Gram matrix.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gram::{gram, NearNull};
use super::sampling::{sample_points_with, stream_rng, PointSet};
use crate::error::{Error, Result};
use crate::kernelmodel::{product_expand, CoefficientSeq, Kernel, Space};
use crate::orthopoly::Basis;

/// A sampled configuration on which the quadratic form nearly vanishes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Falsification {
    pub trial: usize,
    pub points: PointSet,
    pub vector: NearNull,
    pub min_eig: f64,
    pub tol: f64,
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Dimension of the degree-`j` spherical harmonics on `S^d`.
fn harmonics(d: u64, j: u64) -> u128 {
    let below = if j >= 2 { binomial(j + d - 2, d) } else { 0 };
    binomial(j + d, d) - below
}

/// Dimension of the `j`-th eigenspace of the point space, in the indexing
/// of its own Jacobi basis (an upper bound on quaternionic spaces).
fn eigenspace_dim(space: &Space, j: u64) -> u128 {
    match *space {
        Space::Circle => {
            if j == 0 {
                1
            } else {
                2
            }
        }
        Space::Sphere { d } => harmonics(u64::from(d), j),
        Space::SphereInf => harmonics(2, j),
        Space::ProjR { d } => harmonics(u64::from(d), 2 * j),
        Space::ProjInf => harmonics(2, 2 * j),
        Space::ProjC { d } => {
            let m = u64::from(d / 2);
            let c = binomial(j + m - 1, j);
            u128::from(2 * j + m) * c * c / u128::from(m)
        }
        // Functions on HP^m lift to even harmonics on S^{4m+3}.
        Space::ProjH { d } => harmonics(u64::from(d) + 3, 2 * j),
        _ => 0,
    }
}

/// Dimension of the bi-degree `(m, n)` harmonics on the unit sphere of `C^q`.
fn complex_harmonics(q: u64, m: u64, n: u64) -> u128 {
    if q == 1 {
        return 1;
    }
    u128::from(m + n + q - 1) * binomial(m + q - 2, m) * binomial(n + q - 2, n) / u128::from(q - 1)
}

/// Indices `k` with `a_k > 0` in the expansion of the product of series.
fn product_indices(factors: &[&CoefficientSeq]) -> Result<Vec<usize>> {
    let mut current = factors[0].clone();
    for next in &factors[1..] {
        let top = current.head().keys().max().copied().unwrap_or(0) + next.head().keys().max().copied().unwrap_or(0);
        let coeffs = product_expand(&current, next, top, 1e-15)?;
        current = CoefficientSeq::polynomial(current.space().clone(), coeffs.into_iter().filter(|&(_, c)| c > 0.0))?;
    }
    Ok(current.head().keys().copied().collect())
}

/// Upper bound on the rank of every Gram matrix of the product of
/// polynomial `factors` on `space`; `None` when some factor has a tail.
pub fn dimension_bound(space: &Space, factors: &[&Kernel]) -> Result<Option<usize>> {
    if factors.is_empty() {
        return Err(Error::Usage("a dimension bound needs at least one kernel".into()));
    }
    if factors.iter().any(|f| !f.is_polynomial()) {
        return Ok(None);
    }
    let total: u128 = if let Some(series) = factors.iter().map(|f| f.as_series()).collect::<Option<Vec<_>>>() {
        let indices = product_indices(&series)?;
        let top = indices.iter().max().copied().unwrap_or(0) as u64;
        let included: Vec<u64> = match series[0].basis() {
            Basis::Jacobi(_) => indices.iter().map(|&k| k as u64).collect(),
            // t^k spans the eigenspaces j <= k with j = k mod 2.
            Basis::Monomial => (0..=top)
                .filter(|&j| {
                    indices
                        .iter()
                        .any(|&k| k as u64 >= j && (k as u64 - j).is_multiple_of(2))
                })
                .collect(),
            // ((1 + t)/2)^k = |<x,y>|^{2k} spans every eigenspace j <= k.
            Basis::HalfShiftedPower => (0..=top).collect(),
        };
        included.into_iter().map(|j| eigenspace_dim(space, j)).sum()
    } else {
        // The rank of an entrywise product is at most the product of ranks.
        factors
            .iter()
            .map(|f| match f {
                Kernel::Disk(s) => s
                    .head()
                    .keys()
                    .map(|&(m, n)| complex_harmonics(u64::from(s.q()), m as u64, n as u64))
                    .sum::<u128>(),
                Kernel::Laurent(s) => s.head().len() as u128,
                Kernel::Series(_) => unreachable!("series factors are handled above"),
            })
            .fold(1u128, |acc, r| acc.saturating_mul(r))
    };
    Ok(Some(usize::try_from(total).unwrap_or(usize::MAX)))
}

/// Samples `trials` configurations of `n_points` points and returns the
/// first (in trial order) whose Gram matrix for the product of `factors`
/// has `min_eig <= 1e-8 * n * f(1)`, with its near-null vector. Trial `i`
/// draws from stream `i` of `seed`, so the result does not depend on
/// scheduling.
pub fn falsify_spd(
    space: &Space,
    factors: &[&Kernel],
    n_points: usize,
    trials: usize,
    seed: u64,
    eps: f64,
) -> Result<Option<Falsification>> {
    space.validate()?;
    let found: Vec<Option<Falsification>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream_rng(seed, trial as u64);
            let points = PointSet {
                space: space.clone(),
                points: sample_points_with(space, n_points, &mut rng)?,
                seed,
            };
            let report = gram(&points, factors, eps)?;
            Ok(report.near_null.map(|vector| Falsification {
                trial,
                points,
                vector,
                min_eig: report.min_eig,
                tol: report.tol,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}
