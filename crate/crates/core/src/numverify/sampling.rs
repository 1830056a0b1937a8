use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernelmodel::{point_model, t_of_points, Argument, Point, Quaternion, Space};

/// Two sampled points closer than this (in `1 - t`, or `|1 - z|` on complex
/// spheres) count as the same point and the later one is redrawn.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-12;

/// Redraws allowed per point before sampling gives up.
const MAX_REDRAWS: usize = 1000;

/// Distinct points of a space with the seed that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub space: Space,
    pub points: Vec<Point>,
    pub seed: u64,
}

/// Deterministic generator for `(seed, stream)`; independent streams feed
/// parallel trials without sharing state.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// A uniform point: normalized standard Gaussian coordinates.
pub fn sample_point<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> Result<Point> {
    let (kind, len) = point_model(space)?;
    loop {
        let p = match kind {
            "real" => Point::Real((0..len).map(|_| gaussian(rng)).collect()),
            "complex" => Point::Complex((0..len).map(|_| Complex64::new(gaussian(rng), gaussian(rng))).collect()),
            _ => Point::Quaternion(
                (0..len)
                    .map(|_| Quaternion::new(gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)))
                    .collect(),
            ),
        };
        let norm = p.norm_sqr().sqrt();
        if norm < 1e-8 {
            continue;
        }
        let s = 1.0 / norm;
        return Ok(match p {
            Point::Real(v) => Point::Real(v.into_iter().map(|x| x * s).collect()),
            Point::Complex(v) => Point::Complex(v.into_iter().map(|z| z * s).collect()),
            Point::Quaternion(v) => Point::Quaternion(v.into_iter().map(|q| q.scale(s)).collect()),
        });
    }
}

fn coincide(space: &Space, x: &Point, y: &Point) -> Result<bool> {
    Ok(match t_of_points(space, x, y)? {
        Argument::Real(t) => t >= 1.0 - COINCIDENCE_TOLERANCE,
        Argument::Complex(z) => (Complex64::new(1.0, 0.0) - z).norm() <= COINCIDENCE_TOLERANCE,
    })
}

/// `n` distinct points drawn from `rng`.
pub fn sample_points_with<R: Rng + ?Sized>(space: &Space, n: usize, rng: &mut R) -> Result<Vec<Point>> {
    let mut points: Vec<Point> = Vec::with_capacity(n);
    while points.len() < n {
        let mut redraws = 0;
        let p = loop {
            let p = sample_point(space, rng)?;
            let mut clash = false;
            for q in &points {
                if coincide(space, &p, q)? {
                    clash = true;
                    break;
                }
            }
            if !clash {
                break p;
            }
            redraws += 1;
            if redraws > MAX_REDRAWS {
                return Err(Error::Numerical(format!(
                    "could not draw {n} distinct points on {space}"
                )));
            }
        };
        points.push(p);
    }
    Ok(points)
}

/// `n` distinct uniform points, reproducible from `seed`.
pub fn sample_points(space: &Space, n: usize, seed: u64) -> Result<PointSet> {
    space.validate()?;
    let mut rng = stream_rng(seed, 0);
    Ok(PointSet {
        space: space.clone(),
        points: sample_points_with(space, n, &mut rng)?,
        seed,
    })
}
