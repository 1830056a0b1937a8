//! Ambient coordinates for points and the kernel argument `t` between them.
//!
//! `sphere(d)` and `circle` use unit vectors of `R^{d+1}`; projective
//! spaces use unit representatives in `R^{d+1}`, `C^{d/2+1}` or
//! `H^{d/4+1}`, with `t = 2|<x,y>|^2 - 1`; `complexSphere(q)` uses unit
//! vectors of `C^q` and the complex argument `<x,y> = sum x_i conj(y_i)`.
//! The infinite-dimensional spaces are modelled by unit vectors of `R^3`
//! (a great 2-sphere for `sphereInf`, lines through the origin for
//! `projInf`), on which every kernel of those classes is positive definite.

use std::ops::{Add, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Kernel, Space};
use crate::error::{Error, Result};

/// Points farther than this from the unit sphere are rejected.
pub const UNIT_TOLERANCE: f64 = 1e-10;

/// Real dimension of the ambient model used for the infinite spaces.
pub const INFINITE_MODEL_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

/// A point given by ambient coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Point {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
    Quaternion(Vec<Quaternion>),
}

impl Point {
    pub fn norm_sqr(&self) -> f64 {
        match self {
            Point::Real(v) => v.iter().map(|x| x * x).sum(),
            Point::Complex(v) => v.iter().map(|z| z.norm_sqr()).sum(),
            Point::Quaternion(v) => v.iter().map(|q| q.norm_sqr()).sum(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Point::Real(v) => v.len(),
            Point::Complex(v) => v.len(),
            Point::Quaternion(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Argument of an isotropic part: real `t` or complex `z` in the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Argument {
    Real(f64),
    Complex(Complex64),
}

impl Argument {
    pub fn as_complex(self) -> Complex64 {
        match self {
            Argument::Real(t) => Complex64::new(t, 0.0),
            Argument::Complex(z) => z,
        }
    }
}

/// Coordinate layout `(kind, length)` of the point model for `space`.
pub fn point_model(space: &Space) -> Result<(&'static str, usize)> {
    let d = |d: u32| d as usize;
    Ok(match *space {
        Space::Circle => ("real", 2),
        Space::Sphere { d: dim } | Space::ProjR { d: dim } => ("real", d(dim) + 1),
        Space::ProjC { d: dim } => ("complex", d(dim) / 2 + 1),
        Space::ProjH { d: dim } => ("quaternion", d(dim) / 4 + 1),
        Space::SphereInf | Space::ProjInf => ("real", INFINITE_MODEL_DIM),
        Space::ComplexSphere { q } => ("complex", q as usize),
        Space::Cayley16 => {
            return Err(Error::UnsupportedSpace(
                "the Cayley projective plane has no point model".into(),
            ))
        }
        Space::Spacetime { .. } => {
            return Err(Error::UnsupportedSpace(
                "space-time points are sampled by the space-time check".into(),
            ))
        }
    })
}

fn check_point(space: &Space, p: &Point, which: &str) -> Result<()> {
    let (kind, len) = point_model(space)?;
    let found = match p {
        Point::Real(_) => "real",
        Point::Complex(_) => "complex",
        Point::Quaternion(_) => "quaternion",
    };
    if found != kind || p.len() != len {
        return Err(Error::Domain(format!(
            "{space} points are {kind} vectors of length {len}; {which} is a {found} vector of length {}",
            p.len()
        )));
    }
    let norm = p.norm_sqr().sqrt();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::Domain(format!("{which} is not a unit vector (norm {norm})")));
    }
    Ok(())
}

fn real_dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `sum x_i conj(y_i)`.
pub fn complex_inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// `sum conj(x_i) y_i` in quaternion arithmetic.
pub fn quaternion_inner(x: &[Quaternion], y: &[Quaternion]) -> Quaternion {
    x.iter()
        .zip(y)
        .fold(Quaternion::default(), |acc, (a, b)| acc + a.conj() * *b)
}

/// The kernel argument between two points: `x . y` on spheres,
/// `2|<x,y>|^2 - 1` on projective spaces, `<x,y>` on complex spheres.
/// Results are clamped into `[-1, 1]` (or the closed unit disk).
pub fn t_of_points(space: &Space, x: &Point, y: &Point) -> Result<Argument> {
    check_point(space, x, "x")?;
    check_point(space, y, "y")?;
    let projective = |s: f64| Argument::Real((2.0 * s - 1.0).clamp(-1.0, 1.0));
    Ok(match (space, x, y) {
        (Space::Circle | Space::Sphere { .. } | Space::SphereInf, Point::Real(a), Point::Real(b)) => {
            Argument::Real(real_dot(a, b).clamp(-1.0, 1.0))
        }
        (Space::ProjR { .. } | Space::ProjInf, Point::Real(a), Point::Real(b)) => projective(real_dot(a, b).powi(2)),
        (Space::ProjC { .. }, Point::Complex(a), Point::Complex(b)) => projective(complex_inner(a, b).norm_sqr()),
        (Space::ProjH { .. }, Point::Quaternion(a), Point::Quaternion(b)) => {
            projective(quaternion_inner(a, b).norm_sqr())
        }
        (Space::ComplexSphere { .. }, Point::Complex(a), Point::Complex(b)) => {
            let z = complex_inner(a, b);
            Argument::Complex(if z.norm() > 1.0 { z / z.norm() } else { z })
        }
        _ => unreachable!("point layouts are checked against the space"),
    })
}

/// Whether a kernel expanded on `kernel_space` may be evaluated on points of
/// `point_space`: equal spaces, a `sphereInf` series on any sphere, or a
/// `projInf` series on any real, complex or quaternionic projective space.
pub fn kernel_applies(kernel_space: &Space, point_space: &Space) -> bool {
    kernel_space == point_space
        || matches!(
            (kernel_space, point_space),
            (Space::SphereInf, Space::Circle | Space::Sphere { .. })
                | (
                    Space::ProjInf,
                    Space::ProjR { .. } | Space::ProjC { .. } | Space::ProjH { .. }
                )
        )
}

/// `K(x, y) = f(t(x, y))`; real-valued except on complex spheres.
pub fn eval_kernel(space: &Space, f: &Kernel, x: &Point, y: &Point, eps: f64) -> Result<Complex64> {
    if !kernel_applies(&f.space(), space) {
        return Err(Error::Usage(format!(
            "a kernel on {} cannot be evaluated on {space}",
            f.space()
        )));
    }
    let arg = t_of_points(space, x, y)?;
    f.eval(arg, eps)
}
