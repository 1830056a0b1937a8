//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, then a
//! nonzero exit status if anything failed.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isokernel::kernelmodel::{circle_product_coeffs, product_expand, CoefficientSeq, GeometricTail, Kernel, Space};
use isokernel::numverify::{
    cosine_build, dimension_bound, falsify_spd, gram, oracle_product_coeffs, sample_points, spacetime_check,
    spacetime_check_at, CoeffFunc, Expr, GroupDescriptor, GroupElement, SpacetimeKernel,
};
use isokernel::orthopoly::{disk_eval, gauss_jacobi_rule, linearize_disk, JacobiLinearizer, PolyParams};
use isokernel::semilinear::{Direction, Ray, SemilinearSet};
use isokernel::spdlaw::{decide_product, decide_single, Decision};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every compact two-point homogeneous space of dimension at most 16.
fn wang_spaces() -> Vec<Space> {
    let mut out = vec![Space::Circle];
    out.extend((2..=16).map(|d| Space::Sphere { d }));
    out.extend((2..=16).map(|d| Space::ProjR { d }));
    out.extend((4..=16).step_by(2).map(|d| Space::ProjC { d }));
    out.extend([8, 12, 16].map(|d| Space::ProjH { d }));
    out.push(Space::Cayley16);
    out
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut worst_neg = 0.0f64;
    let mut worst_sum = 0.0f64;
    let mut smallest_top = f64::INFINITY;
    let spaces = wang_spaces();
    for space in &spaces {
        let params = space.params().unwrap();
        let lin = JacobiLinearizer::new(params, 30, 60).map_err(|e| e.to_string())?;
        for k in 0..=30 {
            for l in 0..=30 {
                let mut sum = 0.0;
                for mu in 0..=(k + l) {
                    let b = lin.raw(k, l, mu);
                    worst_neg = worst_neg.min(b);
                    ensure(b >= -1e-12, || format!("{space}: b_{{{k},{l}}}({mu}) = {b:e}"))?;
                    sum += b;
                }
                let top = lin.raw(k, l, k + l);
                smallest_top = smallest_top.min(top);
                ensure(top > 1e-13, || format!("{space}: b_{{{k},{l}}}({}) = {top:e}", k + l))?;
                worst_sum = worst_sum.max((sum - 1.0).abs());
                ensure((sum - 1.0).abs() <= 1e-10, || {
                    format!("{space}: sum over mu for ({k},{l}) = {sum}")
                })?;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.0}s, over the two minute budget"))?;
    Ok(format!(
        "{} spaces, k,l <= 30: min b = {worst_neg:.1e}, min b(k+l) = {smallest_top:.1e}, max |sum - 1| = {worst_sum:.1e}",
        spaces.len()
    ))
}

fn intro_pair() -> (Kernel, Kernel) {
    let s2 = Space::Sphere { d: 2 };
    let f = CoefficientSeq::polynomial(s2.clone(), [(0, 1.0), (1, 1.0)]).unwrap();
    let tail = GeometricTail::new(Ray::up(1, 2), 1.0 / 3.0, 1.0 / 9.0, "tails[0]").unwrap();
    let g = CoefficientSeq::new(s2, BTreeMap::new(), vec![tail]).unwrap();
    (f.into(), g.into())
}

fn criterion_2() -> Check {
    let s2 = Space::Sphere { d: 2 };
    let (f, g) = intro_pair();
    // g_k = 3^{-k} on odd k.
    for k in [1usize, 3, 5, 7] {
        let a = f.as_series().unwrap().coefficient(0) * 0.0 + g.as_series().unwrap().coefficient(k);
        ensure((a - 3f64.powi(-(k as i32))).abs() < 1e-15, || format!("a_{k}(g) = {a}"))?;
    }
    for (name, k) in [("f", &f), ("g", &g)] {
        let v = decide_single(k, &s2).map_err(|e| e.to_string())?;
        ensure(v.decision == Decision::PositiveOnly, || {
            format!("{name} alone decided {}", v.decision)
        })?;
    }
    let v = decide_product(&f, &g, &s2).map_err(|e| e.to_string())?;
    ensure(v.decision == Decision::Strict, || format!("fg decided {}", v.decision))?;
    let evidence = &v.evidence.last().unwrap().set;
    ensure(evidence.same_members(&SemilinearSet::from_ray(Ray::up(1, 1))), || {
        format!("product evidence {evidence} is not the integers >= 1")
    })?;
    let points = sample_points(&s2, 40, 2024).map_err(|e| e.to_string())?;
    let report = gram(&points, &[&f, &g], 1e-10).map_err(|e| e.to_string())?;
    ensure(report.min_eig > 0.0, || {
        format!("Gram min eigenvalue {}", report.min_eig)
    })?;
    Ok(format!(
        "f, g positive-only; fg strict on {}; Gram of fg on 40 points min_eig = {:.3e}",
        evidence, report.min_eig
    ))
}

fn random_series(rng: &mut ChaCha8Rng, space: &Space, max_head: usize, tails: usize) -> CoefficientSeq {
    loop {
        let mut ts = Vec::new();
        for i in 0..rng.random_range(0..=tails) {
            // Ratios up to 0.6 keep the truncated degree within a few hundred.
            let ray = Ray::up(rng.random_range(0..=max_head as i64), rng.random_range(1..=3));
            let c = rng.random_range(0.05..1.0);
            let r = rng.random_range(0.1..0.6);
            ts.push(GeometricTail::new(ray, c, r, &format!("tails[{i}]")).unwrap());
        }
        let head: BTreeMap<usize, f64> = (0..rng.random_range(1..=5))
            .map(|_| (rng.random_range(0..=max_head), rng.random_range(0.05..1.0)))
            .collect();
        if let Ok(s) = CoefficientSeq::new(space.clone(), head, ts) {
            return s;
        }
    }
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for pair in 0..50 {
        let f = random_series(&mut rng, &Space::Circle, 15, 2);
        let g = random_series(&mut rng, &Space::Circle, 15, 2);
        let general = product_expand(&f, &g, 40, 1e-12).map_err(|e| e.to_string())?;
        for (&m, &b) in &general {
            let a = circle_product_coeffs(&f, &g, m, 1e-12).map_err(|e| e.to_string())?;
            worst = worst.max((a - b).abs());
            ensure((a - b).abs() <= 1e-10, || {
                format!("pair {pair}, m = {m}: closed form {a}, general {b}")
            })?;
        }
    }
    Ok(format!("50 random pairs, m <= 40: max difference {worst:.1e}"))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let spaces = wang_spaces();
    for space in &spaces {
        for _ in 0..3 {
            let f = random_series(&mut rng, space, 12, 0);
            let g = random_series(&mut rng, space, 12, 0);
            let expanded = product_expand(&f, &g, 24, 1e-14).map_err(|e| e.to_string())?;
            for (&k, &a) in &expanded {
                let b = oracle_product_coeffs(&f, &g, k, 40).map_err(|e| e.to_string())?;
                worst = worst.max((a - b).abs());
                ensure((a - b).abs() <= 1e-9, || {
                    format!("{space}, k = {k}: expansion {a}, oracle {b}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} spaces x 3 pairs, indices <= 24: max difference {worst:.1e}",
        spaces.len()
    ))
}

fn criterion_5() -> Check {
    let p2 = Space::ProjR { d: 2 };
    let heads: [&[(usize, f64)]; 4] = [&[(0, 1.0)], &[(1, 1.0)], &[(0, 0.5), (1, 0.5)], &[(0, 0.5), (2, 0.5)]];
    let polys: Vec<Kernel> = heads
        .iter()
        .map(|h| {
            CoefficientSeq::polynomial(p2.clone(), h.iter().copied())
                .unwrap()
                .into()
        })
        .collect();
    let tail = GeometricTail::new(Ray::up(0, 1), 0.2, 0.8, "tails[0]").unwrap();
    let infinite: Kernel = CoefficientSeq::new(p2.clone(), BTreeMap::new(), vec![tail])
        .unwrap()
        .into();
    let mut pairs = 0;
    let mut largest = 0;
    for (i, f) in polys.iter().enumerate() {
        for (j, g) in polys.iter().enumerate().skip(i) {
            let v = decide_product(f, g, &p2).map_err(|e| e.to_string())?;
            ensure(v.decision == Decision::PositiveOnly, || {
                format!("pair ({i},{j}) decided {}", v.decision)
            })?;
            let bound = dimension_bound(&p2, &[f, g]).map_err(|e| e.to_string())?.unwrap();
            let n = bound + 2;
            largest = largest.max(n);
            let hit = falsify_spd(&p2, &[f, g], n, 5, 50 + pairs, 1e-12).map_err(|e| e.to_string())?;
            ensure(hit.is_some(), || {
                format!("pair ({i},{j}): no null vector on {n} points")
            })?;

            for (name, a, b) in [("f", &infinite, g), ("g", f, &infinite)] {
                let v = decide_product(a, b, &p2).map_err(|e| e.to_string())?;
                ensure(v.decision == Decision::Strict, || {
                    format!("pair ({i},{j}) with {name} replaced decided {}", v.decision)
                })?;
                let hit = falsify_spd(&p2, &[a, b], n, 5, 50 + pairs, 1e-12).map_err(|e| e.to_string())?;
                ensure(hit.is_none(), || {
                    format!(
                        "pair ({i},{j}) with {name} replaced: falsifier found min_eig {:e}",
                        hit.unwrap().min_eig
                    )
                })?;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} polynomial pairs on projR(2) falsified with bound + 2 points (up to {largest}); tail replacements strict and unfalsified"
    ))
}

fn random_set(rng: &mut ChaCha8Rng) -> SemilinearSet {
    let finite: Vec<i64> = (0..rng.random_range(0..6))
        .map(|_| rng.random_range(-50..=50))
        .collect();
    let rays: Vec<Ray> = (0..rng.random_range(0..4))
        .map(|_| {
            let dir = if rng.random_bool(0.5) {
                Direction::Up
            } else {
                Direction::Down
            };
            Ray::new(rng.random_range(-50..=50), rng.random_range(1..=12), dir).unwrap()
        })
        .collect();
    SemilinearSet::from_parts(finite, rays)
}

const WINDOW: i64 = 300;
const SEARCH: i64 = 5000;

fn members(s: &SemilinearSet, bound: i64) -> Vec<i64> {
    (-bound..=bound).filter(|&x| s.contains(x)).collect()
}

/// `x` is a sum `a + b`; a minimal representation has one summand within
/// a few hundred of the origin, so a window of 5000 is exhaustive for
/// `|x| <= 300`.
fn brute_sum(a: &[i64], b: &SemilinearSet, x: i64) -> bool {
    a.iter().any(|&y| b.contains(x - y))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut negatives, mut positives) = (0, 0);
    for i in 0..200 {
        let a = random_set(&mut rng);
        let b = random_set(&mut rng);
        let cover = a.hits_every_full_ap().map_err(|e| e.to_string())?;
        if let Some(w) = cover.witness {
            ensure(!cover.hits_all, || format!("set {i}: witness with hits_all"))?;
            ensure(a.enumerate_upto(100_000).iter().all(|&x| !w.contains(x)), || {
                format!("set {i} = {a}: witness {w} is not empty")
            })?;
            negatives += 1;
        } else {
            let m = members(&a, 10_000);
            for n in 1..=64i64 {
                for j in 0..n {
                    ensure(m.iter().any(|x| x.rem_euclid(n) == j), || {
                        format!("set {i} = {a}: claimed to hit every progression, misses {n}Z+{j}")
                    })?;
                }
            }
            positives += 1;
        }

        let wide_a = members(&a, SEARCH);
        let union = a.union(&b);
        let neg = a.negate();
        let sum = a.sumset(&b);
        let signed = a.signed_sumset(&b);
        let neg_b = b.negate();
        let (even, odd) = a.parity_split();
        let modulus = rng.random_range(1..=12i64);
        let residue = rng.random_range(0..modulus);
        let class = a.residue_class(modulus, residue);
        let listed = a.enumerate_upto(WINDOW);
        for x in -WINDOW..=WINDOW {
            let want_sum = brute_sum(&wide_a, &b, x);
            let want_signed = want_sum
                || brute_sum(&wide_a, &neg_b, x)
                || brute_sum(&wide_a, &b, -x)
                || brute_sum(&wide_a, &neg_b, -x);
            let checks = [
                ("union", union.contains(x), a.contains(x) || b.contains(x)),
                ("negate", neg.contains(x), a.contains(-x)),
                ("sumset", sum.contains(x), want_sum),
                ("signed sumset", signed.contains(x), want_signed),
                ("even part", even.contains(x), a.contains(x) && x % 2 == 0),
                ("odd part", odd.contains(x), a.contains(x) && x % 2 != 0),
                (
                    "residue class",
                    class.contains(x),
                    a.contains(x) && x.rem_euclid(modulus) == residue,
                ),
                ("enumeration", listed.binary_search(&x).is_ok(), a.contains(x)),
            ];
            for (name, got, want) in checks {
                ensure(got == want, || {
                    format!("sets {i}: {a} and {b}: {name} disagrees at {x}")
                })?;
            }
        }
    }
    Ok(format!(
        "200 random sets: {negatives} uncovered with empty witnesses, {positives} covering every progression mod <= 64; operations agree on [-300, 300]"
    ))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tables = 0;
    let mut worst_product = 0.0f64;
    for q in [2u32, 3, 4] {
        for m1 in 0..=6 {
            for n1 in 0..=6 {
                for m2 in 0..=6 {
                    for n2 in 0..=6 {
                        let t = linearize_disk(m1, n1, m2, n2, q).map_err(|e| e.to_string())?;
                        let diff = (m1 as i64 - n1 as i64) + (m2 as i64 - n2 as i64);
                        let total = m1 + n1 + m2 + n2;
                        ensure(t.min_unclamped >= -1e-12, || {
                            format!("q={q}: ({m1},{n1})x({m2},{n2}) entry {:e}", t.min_unclamped)
                        })?;
                        for (&(m, n), &a) in &t.entries {
                            ensure(a >= 0.0, || format!("q={q}: negative entry at ({m},{n})"))?;
                            ensure(m as i64 - n as i64 == diff && m + n <= total, || {
                                format!("q={q}: ({m1},{n1})x({m2},{n2}) has an entry at ({m},{n})")
                            })?;
                        }
                        ensure((t.sum() - 1.0).abs() < 1e-10, || format!("q={q}: sum {}", t.sum()))?;
                        // The table must reproduce the product pointwise.
                        for _ in 0..3 {
                            let z = Complex64::from_polar(
                                rng.random_range(0.0..1.0f64).sqrt(),
                                rng.random_range(0.0..2.0 * PI),
                            );
                            let lhs = disk_eval(m1, n1, q, z).unwrap() * disk_eval(m2, n2, q, z).unwrap();
                            let rhs: Complex64 = t
                                .entries
                                .iter()
                                .map(|(&(m, n), &a)| a * disk_eval(m, n, q, z).unwrap())
                                .sum();
                            worst_product = worst_product.max((lhs - rhs).norm());
                            ensure((lhs - rhs).norm() < 1e-10, || {
                                format!(
                                    "q={q}: ({m1},{n1})x({m2},{n2}) expansion off by {:e}",
                                    (lhs - rhs).norm()
                                )
                            })?;
                        }
                        tables += 1;
                    }
                }
            }
        }
    }

    // Orthogonality: angular trapezoid rule times a radial Gauss rule in
    // s = 2|z|^2 - 1, where dA = ds dtheta / 4 and the weight becomes
    // ((1 - s)/2)^{q-2}.
    let mut worst_orth = 0.0f64;
    for q in [2u32, 3, 4] {
        let rule = gauss_jacobi_rule(20, PolyParams::weight(f64::from(q) - 2.0, 0.0).unwrap()).unwrap();
        let angles = 32;
        let indices: Vec<(usize, usize)> = (0..=6).flat_map(|m| (0..=6).map(move |n| (m, n))).collect();
        let mut values = vec![Vec::new(); indices.len()];
        let mut weights = Vec::new();
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let r = ((1.0 + s) / 2.0).sqrt();
            for a in 0..angles {
                let z = Complex64::from_polar(r, 2.0 * PI * a as f64 / angles as f64);
                weights.push(w * 0.5f64.powi(q as i32 - 2) / (4.0 * angles as f64) * 2.0 * PI);
                for (i, &(m, n)) in indices.iter().enumerate() {
                    values[i].push(disk_eval(m, n, q, z).unwrap());
                }
            }
        }
        let inner = |i: usize, j: usize| -> Complex64 {
            values[i]
                .iter()
                .zip(&values[j])
                .zip(&weights)
                .map(|((a, b), w)| a * b.conj() * *w)
                .sum()
        };
        let norms: Vec<f64> = (0..indices.len()).map(|i| inner(i, i).re).collect();
        for i in 0..indices.len() {
            for j in 0..i {
                let c = inner(i, j).norm() / (norms[i] * norms[j]).sqrt();
                worst_orth = worst_orth.max(c);
                ensure(c < 1e-10, || {
                    format!("q={q}: {:?} and {:?} overlap {c:e}", indices[i], indices[j])
                })?;
            }
        }
    }
    Ok(format!(
        "{tables} tables nonnegative, on the line and in the band, pointwise error {worst_product:.1e}; orthogonality {worst_orth:.1e}"
    ))
}

fn full_geometric(r: f64) -> CoefficientSeq {
    let tail = GeometricTail::new(Ray::up(0, 1), 1.0 - r, r, "tails[0]").unwrap();
    CoefficientSeq::new(Space::SphereInf, BTreeMap::new(), vec![tail]).unwrap()
}

fn criterion_8() -> Check {
    let f = full_geometric(0.5);
    let g = full_geometric(0.6);
    let (big_f, big_g) = cosine_build(1.0, 2f64.sqrt(), &f, &g, 40).map_err(|e| e.to_string())?;
    let mut censuses = 0;
    for p in [2usize, 3] {
        let report = spacetime_check(&big_f, &big_g, &GroupDescriptor::RealLine, p, 32, 40, 80 + p as u64)
            .map_err(|e| e.to_string())?;
        for row in &report.rows {
            ensure(row.even > 0 && row.odd > 0 && row.consistent, || {
                format!("p = {p}, trial {}: census even {} odd {}", row.trial, row.even, row.odd)
            })?;
        }
        ensure(report.consistent, || format!("p = {p}: {}", report.verdict))?;
        censuses += report.rows.len();
    }

    let one = SpacetimeKernel::new(None, BTreeMap::from([(0, CoeffFunc::Expr(Expr::Const { value: 1.0 }))]))
        .map_err(|e| e.to_string())?;
    let aligned = [GroupElement::Vector(vec![0.0]), GroupElement::Vector(vec![2.0 * PI])];
    let c = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
    let row =
        spacetime_check_at(&big_f, &one, &GroupDescriptor::RealLine, &aligned, &c, 40).map_err(|e| e.to_string())?;
    ensure(!row.consistent && (row.even == 0 || row.odd == 0), || {
        format!("aligned configuration: census even {} odd {}", row.even, row.odd)
    })?;
    Ok(format!(
        "{censuses} sampled censuses with both parities up to N = 40; aligned points (lambda u in 2 pi Z) give even {} odd {} for F alone",
        row.even, row.odd
    ))
}

fn criterion_9() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    let (mut checked, mut skipped) = (0, Vec::new());
    let mut worst_ratio = f64::INFINITY;
    for path in &paths {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let kernel = Kernel::from_json(&text).map_err(|e| format!("{name}: {e}"))?;
        let points = match sample_points(&kernel.space(), 40, 9) {
            Ok(p) => p,
            Err(isokernel::Error::UnsupportedSpace(_)) => {
                skipped.push(name);
                continue;
            }
            Err(e) => return Err(format!("{name}: {e}")),
        };
        let report = gram(&points, &[&kernel], 1e-12).map_err(|e| format!("{name}: {e}"))?;
        let bound = -1e-8 * 40.0 * kernel.value_at_one();
        ensure(report.min_eig >= bound, || {
            format!("{name}: min_eig {:e} below {bound:e}", report.min_eig)
        })?;
        worst_ratio = worst_ratio.min(report.min_eig / kernel.value_at_one());
        checked += 1;
    }
    Ok(format!(
        "{checked} shipped specs pass on 40 points (smallest min_eig / f(1) = {worst_ratio:.1e}); no point model: {}",
        skipped.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("linearization nonnegativity", criterion_1),
        ("introductory example", criterion_2),
        ("circle closed form vs general path", criterion_3),
        ("oracle equivalence", criterion_4),
        ("non-sphere polynomial products", criterion_5),
        ("semilinear decision soundness", criterion_6),
        ("disk polynomial laws", criterion_7),
        ("space-time cosine construction", criterion_8),
        ("PSD soundness sweep", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
