//! Sampled checks of strict positive definiteness on `G x S^d`.
//!
//! A kernel `f(u^{-1} * v, t)` is described by its coefficient functions
//! `a_k(f; u)`, each a positive definite function on the group. The product
//! `fg` is strictly positive definite exactly when, for every choice of
//! distinct `u_1, ..., u_p` and nonzero `c`, the set of `k + l` with
//! `c^T [a_k(f; u_mu^{-1} u_nu) a_l(g; u_mu^{-1} u_nu)] conj(c) > 0` holds
//! infinitely many even and infinitely many odd integers. That condition
//! quantifies over all `p` and `c`; here it is only sampled, and up to a
//! finite truncation `N`, so every report is evidence and never a proof.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{GroupDescriptor, GroupElement};
use super::sampling::stream_rng;
use crate::error::{Error, Result};
use crate::kernelmodel::{CoefficientSeq, Space};
use crate::linalg::symmetric_eigen;

/// `q_{k,l}` counts as positive when it exceeds this multiple of
/// `a_k(f; e) a_l(g; e) |c|^2`, the largest value it can take.
pub const SPACETIME_TOLERANCE: f64 = 1e-10;

/// Smallest admissible truncation `N`.
pub const MIN_TRUNCATION: usize = 4;

/// Group elements closer than this in every coordinate are redrawn.
const DISTINCT_TOLERANCE: f64 = 1e-9;

/// A positive definite function on a vector group built from nonnegative
/// constants and `cos(lambda . u)` by sums, products and powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum Expr {
    Const { value: f64 },
    Add { terms: Vec<Expr> },
    Mul { factors: Vec<Expr> },
    Pow { base: Box<Expr>, exp: u32 },
    Cos { lambda: Vec<f64> },
}

/// What frequency vectors are acceptable in cosine terms.
#[derive(Debug, Clone, Copy)]
enum CosRule {
    /// Group not known yet.
    Any,
    Dim(usize),
    /// Finite group.
    Forbidden,
}

impl Expr {
    fn check(&self, path: &str, rule: CosRule) -> Result<()> {
        match self {
            Expr::Const { value } => {
                if !(value.is_finite() && *value >= 0.0) {
                    return Err(Error::validation(
                        format!("{path}.value"),
                        format!("constants must be finite and nonnegative, got {value}"),
                    ));
                }
            }
            Expr::Add { terms: items } | Expr::Mul { factors: items } => {
                if items.is_empty() {
                    return Err(Error::validation(path, "empty sum or product"));
                }
                let field = if matches!(self, Expr::Add { .. }) {
                    "terms"
                } else {
                    "factors"
                };
                for (i, e) in items.iter().enumerate() {
                    e.check(&format!("{path}.{field}[{i}]"), rule)?;
                }
            }
            Expr::Pow { base, .. } => base.check(&format!("{path}.base"), rule)?,
            Expr::Cos { lambda } => {
                if lambda.iter().any(|x| !x.is_finite()) {
                    return Err(Error::validation(
                        format!("{path}.lambda"),
                        "frequencies must be finite",
                    ));
                }
                match rule {
                    CosRule::Any => {}
                    CosRule::Dim(m) if m == lambda.len() => {}
                    CosRule::Dim(m) => {
                        return Err(Error::validation(
                            format!("{path}.lambda"),
                            format!("group has dimension {m}, frequency vector has {}", lambda.len()),
                        ))
                    }
                    CosRule::Forbidden => {
                        return Err(Error::validation(
                            format!("{path}.lambda"),
                            "cosines are defined on vector groups only",
                        ))
                    }
                }
            }
        }
        Ok(())
    }

    /// Value at a vector-group element (constants accept any element).
    pub fn eval(&self, u: &GroupElement) -> f64 {
        match self {
            Expr::Const { value } => *value,
            Expr::Add { terms } => terms.iter().map(|e| e.eval(u)).sum(),
            Expr::Mul { factors } => factors.iter().map(|e| e.eval(u)).product(),
            Expr::Pow { base, exp } => base.eval(u).powi(*exp as i32),
            Expr::Cos { lambda } => match u {
                GroupElement::Vector(v) => lambda.iter().zip(v).map(|(a, b)| a * b).sum::<f64>().cos(),
                GroupElement::Index(_) => f64::NAN,
            },
        }
    }
}

/// A coefficient function `u -> a_k(u)`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffFunc {
    Expr(Expr),
    /// Values on the elements of a finite group, by element index.
    Table(Vec<f64>),
}

impl CoeffFunc {
    pub fn eval(&self, u: &GroupElement) -> f64 {
        match (self, u) {
            (CoeffFunc::Expr(e), u) => e.eval(u),
            (CoeffFunc::Table(t), GroupElement::Index(i)) => t.get(*i).copied().unwrap_or(f64::NAN),
            (CoeffFunc::Table(_), GroupElement::Vector(_)) => f64::NAN,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoeff {
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expr: Option<Expr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpacetimeKernel {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<u32>,
    coeffs: Vec<RawCoeff>,
}

/// The isotropic part of a kernel on `G x S^d` through its coefficient
/// functions. `d = None` stands for the Hilbert sphere, whose expansions
/// are power series in `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpacetimeKernel", into = "RawSpacetimeKernel")]
pub struct SpacetimeKernel {
    d: Option<u32>,
    coeffs: BTreeMap<usize, CoeffFunc>,
}

impl TryFrom<RawSpacetimeKernel> for SpacetimeKernel {
    type Error = Error;

    fn try_from(raw: RawSpacetimeKernel) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (i, c) in raw.coeffs.into_iter().enumerate() {
            let func = match (c.expr, c.table) {
                (Some(e), None) => CoeffFunc::Expr(e),
                (None, Some(t)) => CoeffFunc::Table(t),
                _ => {
                    return Err(Error::validation(
                        format!("coeffs[{i}]"),
                        "give exactly one of \"expr\" and \"table\"",
                    ))
                }
            };
            if coeffs.insert(c.k, func).is_some() {
                return Err(Error::validation(
                    format!("coeffs[{i}].k"),
                    format!("index {} appears twice", c.k),
                ));
            }
        }
        SpacetimeKernel::new(raw.d, coeffs)
    }
}

impl From<SpacetimeKernel> for RawSpacetimeKernel {
    fn from(k: SpacetimeKernel) -> Self {
        RawSpacetimeKernel {
            d: k.d,
            coeffs: k
                .coeffs
                .into_iter()
                .map(|(k, f)| match f {
                    CoeffFunc::Expr(e) => RawCoeff {
                        k,
                        expr: Some(e),
                        table: None,
                    },
                    CoeffFunc::Table(t) => RawCoeff {
                        k,
                        expr: None,
                        table: Some(t),
                    },
                })
                .collect(),
        }
    }
}

impl SpacetimeKernel {
    pub fn new(d: Option<u32>, coeffs: BTreeMap<usize, CoeffFunc>) -> Result<Self> {
        if let Some(d) = d {
            if d < 2 {
                return Err(Error::validation("d", format!("sphere factor needs d >= 2, got {d}")));
            }
        }
        for (k, f) in &coeffs {
            if let CoeffFunc::Expr(e) = f {
                e.check(&format!("coeffs[k={k}].expr"), CosRule::Any)?;
            }
        }
        Ok(SpacetimeKernel { d, coeffs })
    }

    /// Coefficient functions that do not depend on the group element.
    pub fn constant(seq: &CoefficientSeq, max_index: usize) -> Result<Self> {
        let d = match *seq.space() {
            Space::Sphere { d } => Some(d),
            Space::SphereInf => None,
            ref other => {
                return Err(Error::Usage(format!(
                    "space-time kernels need a sphere factor, got {other}"
                )))
            }
        };
        let coeffs = (0..=max_index)
            .filter(|&k| seq.coefficient(k) > 0.0)
            .map(|k| {
                (
                    k,
                    CoeffFunc::Expr(Expr::Const {
                        value: seq.coefficient(k),
                    }),
                )
            })
            .collect();
        SpacetimeKernel::new(d, coeffs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSpacetimeKernel =
            serde_json::from_str(text).map_err(|e| Error::validation("document", e.to_string()))?;
        SpacetimeKernel::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("kernels always serialize")
    }

    pub fn d(&self) -> Option<u32> {
        self.d
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, CoeffFunc> {
        &self.coeffs
    }

    /// `a_k(u)`, zero for indices without a coefficient function.
    pub fn coefficient(&self, k: usize, u: &GroupElement) -> f64 {
        self.coeffs.get(&k).map_or(0.0, |f| f.eval(u))
    }

    /// Checks every coefficient function against `group`: cosine
    /// frequencies match its dimension, tables have one nonnegative-definite
    /// entry per element.
    pub fn validate_for(&self, group: &GroupDescriptor) -> Result<()> {
        group.validate()?;
        let rule = match group {
            GroupDescriptor::RealLine => CosRule::Dim(1),
            GroupDescriptor::RealVector { m } => CosRule::Dim(*m),
            GroupDescriptor::Finite { .. } => CosRule::Forbidden,
        };
        for (k, f) in &self.coeffs {
            match f {
                CoeffFunc::Expr(e) => e.check(&format!("coeffs[k={k}].expr"), rule)?,
                CoeffFunc::Table(t) => check_table(group, t, &format!("coeffs[k={k}].table"))?,
            }
        }
        Ok(())
    }
}

/// A table `a` on a finite group is positive definite when the matrix
/// `[a(u^{-1} v)]_{u,v}` is symmetric and positive semidefinite.
fn check_table(group: &GroupDescriptor, table: &[f64], path: &str) -> Result<()> {
    let Some(n) = group.order() else {
        return Err(Error::validation(path, "tables are defined on finite groups only"));
    };
    if table.len() != n {
        return Err(Error::validation(
            path,
            format!("group has {n} elements, table has {}", table.len()),
        ));
    }
    if table.iter().any(|x| !x.is_finite()) {
        return Err(Error::validation(path, "table entries must be finite"));
    }
    let mut m = vec![0.0; n * n];
    for u in 0..n {
        for v in 0..n {
            let GroupElement::Index(w) = group.difference(&GroupElement::Index(u), &GroupElement::Index(v))? else {
                unreachable!("finite groups have index elements")
            };
            m[u * n + v] = table[w];
        }
    }
    for u in 0..n {
        for v in 0..u {
            if (m[u * n + v] - m[v * n + u]).abs() > 1e-12 {
                return Err(Error::validation(path, "table is not symmetric under inversion"));
            }
        }
    }
    let scale = table.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let eig = symmetric_eigen(&m, n)?;
    if eig.values[0] < -1e-10 * scale * n as f64 {
        return Err(Error::validation(
            path,
            format!("table is not positive definite (eigenvalue {})", eig.values[0]),
        ));
    }
    Ok(())
}

/// Parity census of one sampled configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialCensus {
    pub trial: usize,
    /// Group elements, `;` between elements and `,` between coordinates.
    pub elements: String,
    /// Number of even and odd `k + l <= N` with `q_{k,l} > 0`.
    pub even: usize,
    pub odd: usize,
    pub largest_even: Option<usize>,
    pub largest_odd: Option<usize>,
    /// Both `N - 1` and `N` are positive, so both parities persist up to
    /// the truncation.
    pub growing_tail: bool,
    pub consistent: bool,
}

/// Result of a sampled space-time check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeReport {
    /// `"consistent with strict up to N"` or `"inconsistent up to N"`.
    pub verdict: String,
    pub consistent: bool,
    pub evidence: String,
    pub p: usize,
    pub trials: usize,
    pub n_max: usize,
    pub seed: u64,
    pub rows: Vec<TrialCensus>,
}

impl SpacetimeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

fn format_elements(elements: &[GroupElement]) -> String {
    let mut s = String::new();
    for (i, u) in elements.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        match u {
            GroupElement::Index(a) => write!(s, "{a}").expect("writing to a string"),
            GroupElement::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
                s.push_str(&parts.join(","));
            }
        }
    }
    s
}

fn distinct(a: &GroupElement, b: &GroupElement) -> bool {
    match (a, b) {
        (GroupElement::Index(x), GroupElement::Index(y)) => x != y,
        (GroupElement::Vector(x), GroupElement::Vector(y)) => {
            x.iter().zip(y).any(|(s, t)| (s - t).abs() > DISTINCT_TOLERANCE)
        }
        _ => true,
    }
}

/// Census of `{k + l <= N : q_{k,l} > 0}` for given group elements and
/// coefficient vector.
pub fn spacetime_check_at(
    f: &SpacetimeKernel,
    g: &SpacetimeKernel,
    group: &GroupDescriptor,
    elements: &[GroupElement],
    c: &[Complex64],
    n_max: usize,
) -> Result<TrialCensus> {
    census(f, g, group, elements, c, n_max, 0)
}

fn census(
    f: &SpacetimeKernel,
    g: &SpacetimeKernel,
    group: &GroupDescriptor,
    elements: &[GroupElement],
    c: &[Complex64],
    n_max: usize,
    trial: usize,
) -> Result<TrialCensus> {
    let p = elements.len();
    if p == 0 || c.len() != p {
        return Err(Error::Usage(format!(
            "need p >= 1 group elements and a vector of the same length, got {p} and {}",
            c.len()
        )));
    }
    for i in 0..p {
        for j in 0..i {
            if !distinct(&elements[i], &elements[j]) {
                return Err(Error::Usage(format!("group elements {j} and {i} coincide")));
            }
        }
    }
    let c_norm: f64 = c.iter().map(|z| z.norm_sqr()).sum();
    if c_norm.sqrt() < 1e-12 {
        return Err(Error::Usage("the coefficient vector must be nonzero".into()));
    }

    let mut diffs = Vec::with_capacity(p * p);
    for u in elements {
        for v in elements {
            diffs.push(group.difference(u, v)?);
        }
    }
    let identity = group.difference(&elements[0], &elements[0])?;
    let values = |h: &SpacetimeKernel, k: usize| -> Vec<f64> { diffs.iter().map(|w| h.coefficient(k, w)).collect() };
    let a: Vec<Vec<f64>> = (0..=n_max).map(|k| values(f, k)).collect();
    let b: Vec<Vec<f64>> = (0..=n_max).map(|l| values(g, l)).collect();
    // weights[mu * p + nu] = c_mu conj(c_nu)
    let weights: Vec<Complex64> = (0..p * p).map(|i| c[i / p] * c[i % p].conj()).collect();

    let mut positive = vec![false; n_max + 1];
    for k in 0..=n_max {
        let ak = f.coefficient(k, &identity);
        if ak <= 0.0 {
            continue;
        }
        for l in 0..=(n_max - k) {
            if positive[k + l] {
                continue;
            }
            let scale = ak * g.coefficient(l, &identity) * c_norm;
            if scale <= 0.0 {
                continue;
            }
            let q: f64 = (0..p * p).map(|i| (weights[i] * (a[k][i] * b[l][i])).re).sum();
            if q > SPACETIME_TOLERANCE * scale {
                positive[k + l] = true;
            }
        }
    }
    let sums: Vec<usize> = (0..=n_max).filter(|&s| positive[s]).collect();
    let even = sums.iter().filter(|&&s| s % 2 == 0).count();
    let largest_even = sums.iter().rev().find(|&&s| s % 2 == 0).copied();
    let largest_odd = sums.iter().rev().find(|&&s| s % 2 == 1).copied();
    let growing_tail = n_max >= 1 && positive[n_max] && positive[n_max - 1];
    Ok(TrialCensus {
        trial,
        elements: format_elements(elements),
        even,
        odd: sums.len() - even,
        largest_even,
        largest_odd,
        growing_tail,
        consistent: growing_tail,
    })
}

fn gaussian_vector<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let c: Vec<Complex64> = (0..p)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() >= 1e-12 {
            return c;
        }
    }
}

/// Samples `trials` configurations of `p` distinct group elements and a
/// complex Gaussian `c`, and records which `k + l <= N` give a positive
/// quadratic form. The verdict is consistent when every trial keeps both
/// parities up to `N`. Trial `i` uses stream `i` of `seed`.
#[allow(clippy::too_many_arguments)]
pub fn spacetime_check(
    f: &SpacetimeKernel,
    g: &SpacetimeKernel,
    group: &GroupDescriptor,
    p: usize,
    trials: usize,
    n_max: usize,
    seed: u64,
) -> Result<SpacetimeReport> {
    if p == 0 {
        return Err(Error::Usage("p must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::Usage("at least one trial is needed".into()));
    }
    if n_max < MIN_TRUNCATION {
        return Err(Error::Usage(format!(
            "truncation N must be at least {MIN_TRUNCATION}, got {n_max}"
        )));
    }
    if let Some(order) = group.order() {
        if p > order {
            return Err(Error::Usage(format!("p = {p} exceeds the group order {order}")));
        }
    }
    f.validate_for(group)?;
    g.validate_for(group)?;

    let rows: Vec<TrialCensus> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream_rng(seed, trial as u64);
            let mut elements: Vec<GroupElement> = Vec::with_capacity(p);
            while elements.len() < p {
                let u = group.sample(&mut rng);
                if elements.iter().all(|v| distinct(&u, v)) {
                    elements.push(u);
                }
            }
            let c = gaussian_vector(p, &mut rng);
            census(f, g, group, &elements, &c, n_max, trial)
        })
        .collect::<Result<_>>()?;
    let consistent = rows.iter().all(|r| r.consistent);
    let verdict = if consistent {
        format!("consistent with strict up to N = {n_max}")
    } else {
        format!("inconsistent up to N = {n_max}")
    };
    Ok(SpacetimeReport {
        verdict,
        consistent,
        evidence: format!(
            "sampling evidence, not a proof: {trials} trials of p = {p} distinct group elements and a random complex vector"
        ),
        p,
        trials,
        n_max,
        seed,
        rows,
    })
}

/// `F(u, t) = f(t cos(lambda u))` and `G(u, t) = g(t cos(theta u))` on
/// `R x S^infinity`: `a_k(F; u) = a_k(f) cos^k(lambda u)` and
/// `a_l(G; u) = a_l(g) cos^l(theta u)`, for indices up to `max_index`.
pub fn cosine_build(
    lambda: f64,
    theta: f64,
    f: &CoefficientSeq,
    g: &CoefficientSeq,
    max_index: usize,
) -> Result<(SpacetimeKernel, SpacetimeKernel)> {
    let build = |seq: &CoefficientSeq, freq: f64| -> Result<SpacetimeKernel> {
        if *seq.space() != Space::SphereInf {
            return Err(Error::Usage(format!(
                "the cosine construction takes kernels on sphereInf, got {}",
                seq.space()
            )));
        }
        let coeffs = (0..=max_index)
            .filter(|&k| seq.coefficient(k) > 0.0)
            .map(|k| {
                let expr = Expr::Mul {
                    factors: vec![
                        Expr::Const {
                            value: seq.coefficient(k),
                        },
                        Expr::Pow {
                            base: Box::new(Expr::Cos { lambda: vec![freq] }),
                            exp: k as u32,
                        },
                    ],
                };
                (k, CoeffFunc::Expr(expr))
            })
            .collect();
        SpacetimeKernel::new(None, coeffs)
    };
    Ok((build(f, lambda)?, build(g, theta)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernelmodel::GeometricTail;
    use crate::semilinear::Ray;
    use std::f64::consts::PI;

    fn full_geometric(r: f64) -> CoefficientSeq {
        let tail = GeometricTail::new(Ray::up(0, 1), 1.0 - r, r, "t").unwrap();
        CoefficientSeq::new(Space::SphereInf, BTreeMap::new(), vec![tail]).unwrap()
    }

    fn scalar(x: f64) -> GroupElement {
        GroupElement::Vector(vec![x])
    }

    #[test]
    fn zero_frequency_gives_constants() {
        let f = full_geometric(0.5);
        let (big_f, _) = cosine_build(0.0, 1.0, &f, &f, 10).unwrap();
        for k in 0..=10 {
            assert!((big_f.coefficient(k, &scalar(3.7)) - f.coefficient(k)).abs() < 1e-15);
        }
        let (big_f, _) = cosine_build(1.3, 1.0, &f, &f, 10).unwrap();
        assert_eq!(big_f.coefficient(0, &scalar(2.0)), f.coefficient(0));
    }

    #[test]
    fn off_diagonal_products_vanish() {
        let delta = 0.9f64;
        let (lambda, theta) = (1.0f64, 2f64.sqrt());
        let term = |k: i32, l: i32| (lambda * delta).cos().powi(k) * (theta * delta).cos().powi(l);
        assert!(term(200, 200).abs() < 1e-10);
        assert!(term(200, 200).abs() < term(20, 20).abs());
    }

    #[test]
    fn irrational_ratio_is_consistent() {
        let f = full_geometric(0.5);
        let (big_f, big_g) = cosine_build(1.0, 2f64.sqrt(), &f, &f, 40).unwrap();
        let report = spacetime_check(&big_f, &big_g, &GroupDescriptor::RealLine, 3, 8, 40, 5).unwrap();
        assert!(report.consistent, "{:?}", report.rows);
        assert!(report.verdict.starts_with("consistent with strict"));
    }

    #[test]
    fn aligned_points_show_parity_deficiency() {
        let f = full_geometric(0.5);
        let (big_f, _) = cosine_build(1.0, 1.0, &f, &f, 40).unwrap();
        let one =
            SpacetimeKernel::new(None, BTreeMap::from([(0, CoeffFunc::Expr(Expr::Const { value: 1.0 }))])).unwrap();
        let c = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        let row = spacetime_check_at(
            &big_f,
            &one,
            &GroupDescriptor::RealLine,
            &[scalar(0.0), scalar(2.0 * PI)],
            &c,
            40,
        )
        .unwrap();
        assert_eq!((row.even, row.odd), (0, 0));
        assert!(!row.consistent);
    }

    #[test]
    fn finite_tables_checked() {
        let z2 = GroupDescriptor::Finite {
            table: vec![vec![0, 1], vec![1, 0]],
            identity: 0,
        };
        let good = SpacetimeKernel::new(Some(2), BTreeMap::from([(0, CoeffFunc::Table(vec![1.0, 0.5]))])).unwrap();
        good.validate_for(&z2).unwrap();
        let bad = SpacetimeKernel::new(Some(2), BTreeMap::from([(0, CoeffFunc::Table(vec![1.0, 2.0]))])).unwrap();
        assert!(bad.validate_for(&z2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"d":3,"coeffs":[{"k":0,"expr":{"op":"const","value":0.5}},
            {"k":2,"expr":{"op":"mul","factors":[{"op":"const","value":0.25},{"op":"pow","base":{"op":"cos","lambda":[2.0]},"exp":2}]}}]}"#;
        let k = SpacetimeKernel::from_json(text).unwrap();
        assert_eq!(SpacetimeKernel::from_json(&k.to_json()).unwrap(), k);
        assert!(SpacetimeKernel::from_json(r#"{"coeffs":[{"k":0,"expr":{"op":"const","value":-1}}]}"#).is_err());
    }
}
