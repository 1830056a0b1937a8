//! Disk (Zernike) polynomials `R_{m,n}^{q-2}` on the closed unit disk,
//! normalized by `R_{m,n}(1) = 1`, and their linearization tables.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use super::jacobi::jacobi_values;
use super::linearize::CLAMP_THRESHOLD;
use super::quadrature::{gauss_jacobi_rule, QuadratureRule};
use super::PolyParams;
use crate::error::{Error, Result};

const DISK_TOLERANCE: f64 = 1e-12;

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::Parameter(format!("disk polynomials need q >= 2, got {q}")));
    }
    Ok(())
}

/// `R_{m,n}^{q-2}(z) = z^{m-n} R_n^{(q-2, m-n)}(2|z|^2 - 1)` for `m >= n`
/// (with `conj(z)^{n-m}` otherwise), `R` the at-one normalized Jacobi
/// polynomial.
pub fn disk_eval(m: usize, n: usize, q: u32, z: Complex64) -> Result<Complex64> {
    check_q(q)?;
    let r2 = z.norm_sqr();
    if r2.sqrt() > 1.0 + DISK_TOLERANCE {
        return Err(Error::Domain(format!(
            "disk polynomial argument must satisfy |z| <= 1, got |z| = {}",
            r2.sqrt()
        )));
    }
    let diff = m.abs_diff(n);
    let angular = if m >= n {
        z.powu(diff as u32)
    } else {
        z.conj().powu(diff as u32)
    };
    let params = PolyParams {
        alpha: f64::from(q) - 2.0,
        beta: diff as f64,
    };
    let mut vals = Vec::new();
    let s = m.min(n);
    jacobi_values(s, params, (2.0 * r2 - 1.0).min(1.0), &mut vals);
    Ok(angular * vals[s])
}

/// Coefficients of `R_{m1,n1} R_{m2,n2} = sum a^{m,n} R_{m,n}`.
#[derive(Debug, Clone)]
pub struct DiskTable {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub q: u32,
    /// Nonzero entries after clamping, keyed by `(m, n)`.
    pub entries: BTreeMap<(usize, usize), f64>,
    /// Smallest coefficient before clamping.
    pub min_unclamped: f64,
}

impl DiskTable {
    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.entries.get(&(m, n)).copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.entries.values().sum()
    }
}

/// Caches Gauss–Jacobi rules keyed by `(beta, size)` for a fixed `q`.
#[derive(Debug, Clone)]
pub struct DiskLinearizer {
    q: u32,
    rules: HashMap<(usize, usize), QuadratureRule>,
}

impl DiskLinearizer {
    pub fn new(q: u32) -> Result<Self> {
        check_q(q)?;
        Ok(DiskLinearizer {
            q,
            rules: HashMap::new(),
        })
    }

    fn rule(&mut self, beta: usize, size: usize) -> Result<&QuadratureRule> {
        let q = self.q;
        if let std::collections::hash_map::Entry::Vacant(slot) = self.rules.entry((beta, size)) {
            let params = PolyParams::weight(f64::from(q) - 2.0, beta as f64)?;
            slot.insert(gauss_jacobi_rule(size, params)?);
        }
        Ok(&self.rules[&(beta, size)])
    }

    /// Projection onto `R_{m,n}` with `m - n = K` fixed by the angular
    /// selection rule, reduced to a Gauss–Jacobi integral in `x = 2r^2 - 1`:
    ///
    /// `a(s) = 2^{|K| - e} int (1+x)^{e-|K|} R_{s1}^{(q-2,|k1|)} R_{s2}^{(q-2,|k2|)} R_s^{(q-2,|K|)} w
    ///        / int (R_s^{(q-2,|K|)})^2 w`
    ///
    /// with `w = (1-x)^{q-2} (1+x)^{|K|}` and `2e = |k1| + |k2| + |K|`.
    pub fn table(&mut self, first: (usize, usize), second: (usize, usize)) -> Result<DiskTable> {
        let q = self.q;
        let (m1, n1) = first;
        let (m2, n2) = second;
        let k1 = m1 as i64 - n1 as i64;
        let k2 = m2 as i64 - n2 as i64;
        let kk = k1 + k2;
        let (a1, a2, ak) = (
            k1.unsigned_abs() as usize,
            k2.unsigned_abs() as usize,
            kk.unsigned_abs() as usize,
        );
        let (s1, s2) = (m1.min(n1), m2.min(n2));
        let e = (a1 + a2 + ak) / 2;
        let total = m1 + n1 + m2 + n2;
        let s_max = (total - ak) / 2;
        let degree = (e - ak) + s1 + s2 + s_max;
        let size = (degree.max(2 * s_max)) / 2 + 1;
        let rule = self.rule(ak, size)?.clone();

        let alpha = f64::from(q) - 2.0;
        let p1 = PolyParams { alpha, beta: a1 as f64 };
        let p2 = PolyParams { alpha, beta: a2 as f64 };
        let pk = PolyParams { alpha, beta: ak as f64 };
        let scale = 2f64.powi(ak as i32 - e as i32);

        let mut numer = vec![0.0; s_max + 1];
        let mut denom = vec![0.0; s_max + 1];
        let (mut v1, mut v2, mut vk) = (Vec::new(), Vec::new(), Vec::new());
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            jacobi_values(s1, p1, x, &mut v1);
            jacobi_values(s2, p2, x, &mut v2);
            jacobi_values(s_max, pk, x, &mut vk);
            let shift = (1.0 + x).powi((e - ak) as i32);
            let prod = w * shift * v1[s1] * v2[s2];
            for s in 0..=s_max {
                numer[s] += prod * vk[s];
                denom[s] += w * vk[s] * vk[s];
            }
        }

        let mut entries = BTreeMap::new();
        let mut min_unclamped = f64::INFINITY;
        for s in 0..=s_max {
            let a = scale * numer[s] / denom[s];
            min_unclamped = min_unclamped.min(a);
            if a.abs() >= CLAMP_THRESHOLD {
                let m = s + kk.max(0) as usize;
                let n = s + (-kk).max(0) as usize;
                entries.insert((m, n), a);
            }
        }
        Ok(DiskTable {
            first,
            second,
            q,
            entries,
            min_unclamped,
        })
    }
}

/// One-shot linearization of `R_{m1,n1}^{q-2} R_{m2,n2}^{q-2}`.
pub fn linearize_disk(m1: usize, n1: usize, m2: usize, n2: usize, q: u32) -> Result<DiskTable> {
    DiskLinearizer::new(q)?.table((m1, n1), (m2, n2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_polynomial() {
        let v = disk_eval(0, 0, 5, c(0.3, 0.1)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn degree_one_is_z() {
        let z = c(0.3, -0.4);
        let v = disk_eval(1, 0, 3, z).unwrap();
        assert!((v - z).norm() < 1e-15);
        let w = disk_eval(0, 1, 3, z).unwrap();
        assert!((w - z.conj()).norm() < 1e-15);
    }

    #[test]
    fn r11_at_q2() {
        let z = Complex64::from_polar(0.6, 1.1);
        let v = disk_eval(1, 1, 2, z).unwrap();
        assert!((v - c(2.0 * 0.36 - 1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn one_at_one_and_conjugation() {
        for q in 2..5 {
            for m in 0..5 {
                for n in 0..5 {
                    let one = disk_eval(m, n, q, c(1.0, 0.0)).unwrap();
                    assert!((one - c(1.0, 0.0)).norm() < 1e-12);
                    let z = Complex64::from_polar(0.8, 0.7);
                    let a = disk_eval(m, n, q, z.conj()).unwrap();
                    let b = disk_eval(m, n, q, z).unwrap().conj();
                    assert!((a - b).norm() < 1e-14);
                    assert!(b.norm() <= 1.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn domain_and_parameter_errors() {
        assert!(matches!(disk_eval(1, 0, 2, c(1.1, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(disk_eval(1, 0, 1, c(0.1, 0.0)), Err(Error::Parameter(_))));
    }

    #[test]
    fn product_with_constant() {
        let t = linearize_disk(0, 0, 2, 1, 3).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert!((t.get(2, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_times_conj_z() {
        let t = linearize_disk(1, 0, 0, 1, 2).unwrap();
        assert_eq!(t.entries.keys().copied().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        assert!((t.get(0, 0) - 0.5).abs() < 1e-13);
        assert!((t.get(1, 1) - 0.5).abs() < 1e-13);
    }

    #[test]
    fn pointwise_identity() {
        let mut lin = DiskLinearizer::new(3).unwrap();
        let table = lin.table((2, 1), (0, 3)).unwrap();
        assert!((table.sum() - 1.0).abs() < 1e-12);
        for i in 0..20 {
            let z = Complex64::from_polar(0.05 * i as f64, 0.3 * i as f64);
            let lhs = disk_eval(2, 1, 3, z).unwrap() * disk_eval(0, 3, 3, z).unwrap();
            let rhs: Complex64 = table
                .entries
                .iter()
                .map(|(&(m, n), a)| disk_eval(m, n, 3, z).unwrap() * *a)
                .sum();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
