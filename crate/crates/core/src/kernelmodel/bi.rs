//! Coefficient data for kernels on complex spheres `Omega_{2q}`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::tail::GeometricTail;
use crate::error::{Error, Result};
use crate::orthopoly::{jacobi_values, PolyParams};
use crate::semilinear::{Direction, SemilinearSet};

/// A geometric tail of bi-indexed coefficients. A `Line` runs along
/// `m - n = diff` over `s = min(m, n)`; a `Fan` fixes `s` and runs over the
/// differences `m - n` on its ray (in either direction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiskTail {
    Line { diff: i64, tail: GeometricTail },
    Fan { s: i64, tail: GeometricTail },
}

impl DiskTail {
    pub fn tail(&self) -> &GeometricTail {
        match self {
            DiskTail::Line { tail, .. } | DiskTail::Fan { tail, .. } => tail,
        }
    }

    /// `(m - n, min(m, n))` of the `t`-th term and its coefficient.
    pub fn term(&self, t: usize) -> ((i64, i64), f64) {
        let (x, a) = self.tail().term(t);
        match *self {
            DiskTail::Line { diff, .. } => ((diff, x), a),
            DiskTail::Fan { s, .. } => ((x, s), a),
        }
    }

    pub fn coefficient(&self, diff: i64, s: i64) -> Option<f64> {
        match *self {
            DiskTail::Line { diff: d, tail } if d == diff => tail.coefficient(s),
            DiskTail::Fan { s: s0, tail } if s0 == s => tail.coefficient(diff),
            _ => None,
        }
    }

    fn overlaps(&self, other: &DiskTail) -> bool {
        match (*self, *other) {
            (DiskTail::Line { diff: a, tail: ta }, DiskTail::Line { diff: b, tail: tb }) => {
                a == b && ta.ray.intersects(&tb.ray)
            }
            (DiskTail::Fan { s: a, tail: ta }, DiskTail::Fan { s: b, tail: tb }) => {
                a == b && ta.ray.intersects(&tb.ray)
            }
            (DiskTail::Line { diff, tail: line }, DiskTail::Fan { s, tail: fan })
            | (DiskTail::Fan { s, tail: fan }, DiskTail::Line { diff, tail: line }) => {
                fan.ray.contains(diff) && line.ray.contains(s)
            }
        }
    }
}

/// `(m, n)` with `m - n = diff` and `min(m, n) = s`.
pub fn bi_index(diff: i64, s: i64) -> (usize, usize) {
    let s = s as usize;
    if diff >= 0 {
        (s + diff as usize, s)
    } else {
        (s, s + diff.unsigned_abs() as usize)
    }
}

fn line_of(m: usize, n: usize) -> (i64, i64) {
    (m as i64 - n as i64, m.min(n) as i64)
}

/// Coefficients `a_{m,n}` in the disk polynomials `R_{m,n}^{q-2}`, `q >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiCoefficientSeq {
    q: u32,
    head: BTreeMap<(usize, usize), f64>,
    tails: Vec<DiskTail>,
}

impl BiCoefficientSeq {
    pub fn new(q: u32, head: BTreeMap<(usize, usize), f64>, tails: Vec<DiskTail>) -> Result<Self> {
        if q < 2 {
            return Err(Error::validation(
                "space.q",
                "bi-indexed coefficients need q >= 2; use integer keys for q = 1",
            ));
        }
        for (&(m, n), &a) in &head {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::validation(
                    format!("head[\"{m},{n}\"]"),
                    format!("coefficients must be positive, got {a}"),
                ));
            }
        }
        for (i, dt) in tails.iter().enumerate() {
            match *dt {
                DiskTail::Line { tail, .. } => {
                    if tail.ray.dir != Direction::Up || tail.ray.base < 0 {
                        return Err(Error::validation(
                            format!("tails[{i}].base"),
                            "line tails must ascend from a nonnegative base",
                        ));
                    }
                }
                DiskTail::Fan { s, .. } => {
                    if s < 0 {
                        return Err(Error::validation(format!("tails[{i}].s"), "s must be nonnegative"));
                    }
                }
            }
            let clash = head.keys().find(|&&(m, n)| {
                let (diff, s) = line_of(m, n);
                dt.coefficient(diff, s).is_some()
            });
            if let Some((m, n)) = clash {
                return Err(Error::validation(
                    format!("head[\"{m},{n}\"]"),
                    format!("bi-index is also covered by tails[{i}]"),
                ));
            }
            if let Some(j) = tails[..i].iter().position(|o| o.overlaps(dt)) {
                return Err(Error::validation(format!("tails[{i}]"), format!("overlaps tails[{j}]")));
            }
        }
        Ok(BiCoefficientSeq { q, head, tails })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn head(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.head
    }

    pub fn tails(&self) -> &[DiskTail] {
        &self.tails
    }

    pub fn coefficient(&self, m: usize, n: usize) -> f64 {
        if let Some(&a) = self.head.get(&(m, n)) {
            return a;
        }
        let (diff, s) = line_of(m, n);
        self.tails.iter().find_map(|t| t.coefficient(diff, s)).unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_empty() && self.tails.is_empty()
    }

    pub fn value_at_one(&self) -> f64 {
        self.head.values().sum::<f64>() + self.tails.iter().map(|t| t.tail().total()).sum::<f64>()
    }

    /// Nonzero coefficients with omitted mass at most `eps`.
    pub fn terms(&self, eps: f64) -> Vec<((usize, usize), f64)> {
        let mut out: Vec<_> = self.head.iter().map(|(&k, &a)| (k, a)).collect();
        let share = eps / self.tails.len().max(1) as f64;
        for dt in &self.tails {
            for t in 0..dt.tail().terms_for(share) {
                let ((diff, s), a) = dt.term(t);
                out.push((bi_index(diff, s), a));
            }
        }
        out.sort_by_key(|a| a.0);
        out
    }

    /// `{m - n : a_{m,n} > 0}`, the lines carrying a nonzero slice `f_k`.
    pub fn diff_support(&self) -> SemilinearSet {
        let mut finite: Vec<i64> = self.head.keys().map(|&(m, n)| m as i64 - n as i64).collect();
        let mut rays = Vec::new();
        for t in &self.tails {
            match *t {
                DiskTail::Line { diff, .. } => finite.push(diff),
                DiskTail::Fan { tail, .. } => rays.push(tail.ray),
            }
        }
        SemilinearSet::from_parts(finite, rays)
    }

    /// `sum a_{m,n} R_{m,n}^{q-2}(z)` within `eps` for `|z| <= 1`.
    pub fn eval(&self, z: Complex64, eps: f64) -> Complex64 {
        let mut lines: BTreeMap<i64, Vec<(usize, f64)>> = BTreeMap::new();
        for ((m, n), a) in self.terms(eps) {
            let (diff, s) = line_of(m, n);
            lines.entry(diff).or_default().push((s as usize, a));
        }
        let alpha = f64::from(self.q) - 2.0;
        let x = (2.0 * z.norm_sqr() - 1.0).clamp(-1.0, 1.0);
        let mut values = Vec::new();
        let mut total = Complex64::new(0.0, 0.0);
        for (diff, terms) in lines {
            let top = terms.iter().map(|&(s, _)| s).max().unwrap_or(0);
            let params = PolyParams {
                alpha,
                beta: diff.unsigned_abs() as f64,
            };
            jacobi_values(top, params, x, &mut values);
            let radial: f64 = terms.iter().map(|&(s, a)| a * values[s]).sum();
            let angular = if diff >= 0 {
                z.powu(diff as u32)
            } else {
                z.conj().powu(diff.unsigned_abs() as u32)
            };
            total += angular * radial;
        }
        total
    }
}

/// Coefficients `a_m`, `m` in `Z`, of `f(z) = sum a_m z^m` on `Omega_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeq {
    head: BTreeMap<i64, f64>,
    tails: Vec<GeometricTail>,
}

impl LaurentSeq {
    pub fn new(head: BTreeMap<i64, f64>, tails: Vec<GeometricTail>) -> Result<Self> {
        for (&m, &a) in &head {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::validation(
                    format!("head[\"{m}\"]"),
                    format!("coefficients must be positive, got {a}"),
                ));
            }
        }
        for (i, tail) in tails.iter().enumerate() {
            if let Some(m) = head.keys().find(|&&m| tail.ray.contains(m)) {
                return Err(Error::validation(
                    format!("head[\"{m}\"]"),
                    format!("index {m} is also covered by tails[{i}]"),
                ));
            }
            if let Some(j) = tails[..i].iter().position(|o| o.ray.intersects(&tail.ray)) {
                return Err(Error::validation(format!("tails[{i}]"), format!("overlaps tails[{j}]")));
            }
        }
        Ok(LaurentSeq { head, tails })
    }

    pub fn head(&self) -> &BTreeMap<i64, f64> {
        &self.head
    }

    pub fn tails(&self) -> &[GeometricTail] {
        &self.tails
    }

    pub fn coefficient(&self, m: i64) -> f64 {
        if let Some(&a) = self.head.get(&m) {
            return a;
        }
        self.tails.iter().find_map(|t| t.coefficient(m)).unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_empty() && self.tails.is_empty()
    }

    pub fn value_at_one(&self) -> f64 {
        self.head.values().sum::<f64>() + self.tails.iter().map(GeometricTail::total).sum::<f64>()
    }

    pub fn terms(&self, eps: f64) -> Vec<(i64, f64)> {
        let mut out: Vec<_> = self.head.iter().map(|(&m, &a)| (m, a)).collect();
        let share = eps / self.tails.len().max(1) as f64;
        for tail in &self.tails {
            out.extend((0..tail.terms_for(share)).map(|t| tail.term(t)));
        }
        out.sort_by_key(|&(m, _)| m);
        out
    }

    pub fn support(&self) -> SemilinearSet {
        SemilinearSet::from_parts(self.head.keys().copied(), self.tails.iter().map(|t| t.ray))
    }

    /// `sum a_m z^m` within `eps`; negative powers use `conj(z)^{|m|}`,
    /// which equals `z^m` on the unit circle.
    pub fn eval(&self, z: Complex64, eps: f64) -> Complex64 {
        self.terms(eps)
            .into_iter()
            .map(|(m, a)| {
                let p = if m >= 0 {
                    z.powu(m as u32)
                } else {
                    z.conj().powu(m.unsigned_abs() as u32)
                };
                p * a
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::disk_eval;
    use crate::semilinear::Ray;

    #[test]
    fn diff_support_examples() {
        let f = BiCoefficientSeq::new(2, BTreeMap::from([((1, 0), 1.0)]), vec![]).unwrap();
        assert_eq!(f.diff_support(), SemilinearSet::finite_set([1]));

        let tail = DiskTail::Line {
            diff: 3,
            tail: GeometricTail::new(Ray::up(0, 1), 1.0, 0.5, "tails[0]").unwrap(),
        };
        let g = BiCoefficientSeq::new(3, BTreeMap::from([((2, 2), 1.0)]), vec![tail]).unwrap();
        assert_eq!(g.diff_support(), SemilinearSet::finite_set([0, 3]));
        assert_eq!(g.coefficient(5, 2), 0.25);

        let empty = BiCoefficientSeq::new(2, BTreeMap::new(), vec![]).unwrap();
        assert!(empty.diff_support().is_empty());
    }

    #[test]
    fn series_matches_disk_polynomials() {
        let tail = DiskTail::Line {
            diff: -2,
            tail: GeometricTail::new(Ray::up(1, 1), 0.5, 0.25, "tails[0]").unwrap(),
        };
        let f = BiCoefficientSeq::new(3, BTreeMap::from([((1, 0), 1.0), ((2, 2), 0.3)]), vec![tail]).unwrap();
        let z = Complex64::from_polar(0.7, 0.4);
        let mut expected = disk_eval(1, 0, 3, z).unwrap() + disk_eval(2, 2, 3, z).unwrap() * 0.3;
        for t in 0..60 {
            let (m, n) = bi_index(-2, 1 + t);
            expected += disk_eval(m, n, 3, z).unwrap() * (0.5 * 0.25f64.powi(t as i32));
        }
        assert!((f.eval(z, 1e-14) - expected).norm() < 1e-12);
        assert!((f.eval(Complex64::new(1.0, 0.0), 1e-14).re - f.value_at_one()).abs() < 1e-12);
    }

    #[test]
    fn overlapping_line_tails_rejected() {
        let t = |base| DiskTail::Line {
            diff: 1,
            tail: GeometricTail::new(Ray::up(base, 2), 1.0, 0.5, "t").unwrap(),
        };
        assert!(BiCoefficientSeq::new(2, BTreeMap::new(), vec![t(0), t(4)]).is_err());
        assert!(BiCoefficientSeq::new(2, BTreeMap::new(), vec![t(0), t(1)]).is_ok());
        let err = BiCoefficientSeq::new(2, BTreeMap::from([((3, 2), 1.0)]), vec![t(2)]).unwrap_err();
        assert!(matches!(err, Error::Validation { ref path, .. } if path == "head[\"3,2\"]"));
    }

    #[test]
    fn fan_tails_cover_many_lines() {
        let fan = |base, dir| DiskTail::Fan {
            s: 1,
            tail: GeometricTail::new(Ray::new(base, 1, dir).unwrap(), 1.0, 0.5, "t").unwrap(),
        };
        let f = BiCoefficientSeq::new(
            2,
            BTreeMap::new(),
            vec![fan(0, Direction::Up), fan(-1, Direction::Down)],
        )
        .unwrap();
        assert!(f.diff_support().same_members(&SemilinearSet::integers()));
        assert_eq!(f.coefficient(4, 1), 0.125);
        assert_eq!(f.coefficient(1, 3), 0.5);
        assert_eq!(f.coefficient(4, 2), 0.0);
        let z = Complex64::from_polar(0.9, 2.0);
        let mut expected = Complex64::new(0.0, 0.0);
        for t in 0..60i64 {
            let w = 0.5f64.powi(t as i32);
            let (m, n) = bi_index(t, 1);
            expected += disk_eval(m, n, 2, z).unwrap() * w;
            let (m, n) = bi_index(-1 - t, 1);
            expected += disk_eval(m, n, 2, z).unwrap() * w;
        }
        assert!((f.eval(z, 1e-15) - expected).norm() < 1e-12);
        let clash = DiskTail::Line {
            diff: 3,
            tail: GeometricTail::new(Ray::up(0, 1), 1.0, 0.5, "t").unwrap(),
        };
        assert!(BiCoefficientSeq::new(2, BTreeMap::new(), vec![fan(0, Direction::Up), clash]).is_err());
    }

    #[test]
    fn laurent_series() {
        let tail = GeometricTail::new(Ray::down(-1, 2), 1.0, 0.5, "tails[0]").unwrap();
        let f = LaurentSeq::new(BTreeMap::from([(0, 1.0), (2, 0.5)]), vec![tail]).unwrap();
        assert_eq!(f.coefficient(-3), 0.5);
        assert!(f.support().contains(-5));
        assert!(!f.support().contains(-2));
        let z = Complex64::from_polar(1.0, 0.9);
        let mut expected = Complex64::new(1.0, 0.0) + z * z * 0.5;
        for t in 0..80 {
            expected += z.powi(-1 - 2 * t) * 0.5f64.powi(t);
        }
        assert!((f.eval(z, 1e-15) - expected).norm() < 1e-13);
    }
}
