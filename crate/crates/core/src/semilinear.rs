//! Semilinear subsets of the integers: a finite set together with finitely
//! many half-infinite arithmetic progressions ("rays").
//!
//! Every coefficient support handled by the crate is of this shape, and all
//! strict positive definiteness criteria reduce to questions about such sets
//! (finiteness, parity classes, meeting every progression `nZ + j`). The
//! operations here are exact.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Moduli above this are refused by [`SemilinearSet::hits_every_full_ap`],
/// which tabulates residues.
pub const MAX_COVER_MODULUS: i64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "+")]
    Up,
    #[serde(rename = "-")]
    Down,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Up => 1,
            Direction::Down => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

/// `{base + dir * step * t : t >= 0}` with `step >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ray {
    pub base: i64,
    pub step: i64,
    pub dir: Direction,
}

impl Ray {
    pub fn new(base: i64, step: i64, dir: Direction) -> Result<Self> {
        if step < 1 {
            return Err(Error::Parameter(format!("ray step must be >= 1, got {step}")));
        }
        Ok(Ray { base, step, dir })
    }

    /// Ascending ray; panics on `step < 1`.
    pub fn up(base: i64, step: i64) -> Self {
        Self::new(base, step, Direction::Up).expect("ray step must be positive")
    }

    /// Descending ray; panics on `step < 1`.
    pub fn down(base: i64, step: i64) -> Self {
        Self::new(base, step, Direction::Down).expect("ray step must be positive")
    }

    pub fn contains(&self, x: i64) -> bool {
        let offset = (x - self.base) * self.dir.sign();
        offset >= 0 && offset % self.step == 0
    }

    pub fn is_subset_of(&self, other: &Ray) -> bool {
        self.dir == other.dir && self.step % other.step == 0 && other.contains(self.base)
    }

    pub fn intersects(&self, other: &Ray) -> bool {
        let g = gcd(self.step, other.step);
        if (other.base - self.base) % g != 0 {
            return false;
        }
        if self.dir == other.dir {
            return true;
        }
        let (up, down) = if self.dir == Direction::Up {
            (self, other)
        } else {
            (other, self)
        };
        // Common members form a class mod lcm; the first one at or above
        // the up base is among the next `other.step / g` members.
        up.members_within(up.base, down.base)
            .take((down.step / g) as usize)
            .any(|x| down.contains(x))
    }

    pub fn negate(&self) -> Ray {
        Ray {
            base: -self.base,
            step: self.step,
            dir: self.dir.flip(),
        }
    }

    fn shifted(&self, by: i64) -> Ray {
        Ray {
            base: self.base + by,
            ..*self
        }
    }

    /// Members inside `[lo, hi]`.
    fn members_within(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        let (start, stop) = match self.dir {
            Direction::Up => {
                let first = if self.base >= lo {
                    self.base
                } else {
                    self.base + (lo - self.base + self.step - 1) / self.step * self.step
                };
                (first, hi)
            }
            Direction::Down => {
                let first = if self.base <= hi {
                    self.base
                } else {
                    self.base - (self.base - hi + self.step - 1) / self.step * self.step
                };
                (first, lo)
            }
        };
        let step = self.step * self.dir.sign();
        std::iter::successors(Some(start), move |&x| Some(x + step)).take_while(move |&x| match self.dir {
            Direction::Up => x <= stop,
            Direction::Down => x >= stop,
        })
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.dir {
            Direction::Up => '+',
            Direction::Down => '-',
        };
        write!(f, "({}{}{}t, t≥0)", self.base, sign, self.step)
    }
}

/// A residue class `modulus * Z + residue`, `0 <= residue < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub modulus: i64,
    pub residue: i64,
}

impl Progression {
    pub fn contains(&self, x: i64) -> bool {
        x.rem_euclid(self.modulus) == self.residue
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Z+{}", self.modulus, self.residue)
    }
}

/// Outcome of the full-progression covering test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ApCoverage {
    pub hits_all: bool,
    /// Lcm of the ray steps; residues mod this decide the answer.
    pub period: i64,
    /// A progression disjoint from the set, present iff `hits_all` is false.
    pub witness: Option<Progression>,
}

#[derive(Deserialize)]
struct RawSet {
    #[serde(default)]
    finite: Vec<i64>,
    #[serde(default)]
    rays: Vec<RawRay>,
}

#[derive(Deserialize)]
struct RawRay {
    base: i64,
    step: i64,
    dir: Direction,
}

impl TryFrom<RawSet> for SemilinearSet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self> {
        let rays = raw
            .rays
            .into_iter()
            .map(|r| Ray::new(r.base, r.step, r.dir))
            .collect::<Result<Vec<_>>>()?;
        Ok(SemilinearSet::from_parts(raw.finite, rays))
    }
}

/// Finite set plus rays, kept in canonical form: no ray is contained in
/// another, the finite part is disjoint from every ray, and rays are sorted.
/// Canonical form is not unique; use [`SemilinearSet::same_members`] for
/// extensional equality.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct SemilinearSet {
    finite: BTreeSet<i64>,
    rays: Vec<Ray>,
}

impl SemilinearSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_parts(finite: impl IntoIterator<Item = i64>, rays: impl IntoIterator<Item = Ray>) -> Self {
        let mut s = SemilinearSet {
            finite: finite.into_iter().collect(),
            rays: rays.into_iter().collect(),
        };
        s.canonicalize();
        s
    }

    pub fn finite_set(elements: impl IntoIterator<Item = i64>) -> Self {
        Self::from_parts(elements, [])
    }

    pub fn from_ray(ray: Ray) -> Self {
        Self::from_parts([], [ray])
    }

    /// All of `Z` as two rays split at zero.
    pub fn integers() -> Self {
        Self::from_parts([], [Ray::up(0, 1), Ray::down(-1, 1)])
    }

    pub fn finite(&self) -> &BTreeSet<i64> {
        &self.finite
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.rays.is_empty()
    }

    pub fn is_infinite(&self) -> bool {
        !self.rays.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.finite.contains(&x) || self.rays.iter().any(|r| r.contains(x))
    }

    /// Largest member, if the set is bounded above and nonempty.
    pub fn max(&self) -> Option<i64> {
        if self.rays.iter().any(|r| r.dir == Direction::Up) {
            return None;
        }
        let ray_max = self.rays.iter().map(|r| r.base).max();
        self.finite.last().copied().max(ray_max)
    }

    /// Returns the canonical form of the same set.
    pub fn normalize(&self) -> Self {
        let mut s = self.clone();
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        loop {
            self.rays.sort();
            self.rays.dedup();
            let rays = self.rays.clone();
            self.rays = rays
                .iter()
                .enumerate()
                .filter(|(i, r)| {
                    !rays
                        .iter()
                        .enumerate()
                        .any(|(j, other)| *i != j && r.is_subset_of(other) && !(other.is_subset_of(r) && j > *i))
                })
                .map(|(_, r)| *r)
                .collect();

            // Pull finite members sitting just before a ray into it.
            let mut extended = false;
            for ray in self.rays.iter_mut() {
                loop {
                    let prev = ray.base - ray.dir.sign() * ray.step;
                    if self.finite.remove(&prev) {
                        ray.base = prev;
                        extended = true;
                    } else {
                        break;
                    }
                }
            }
            if !extended {
                break;
            }
        }
        let rays = &self.rays;
        self.finite.retain(|&x| !rays.iter().any(|r| r.contains(x)));
        self.rays.sort();
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_parts(
            self.finite.iter().chain(&other.finite).copied(),
            self.rays.iter().chain(&other.rays).copied(),
        )
    }

    /// `{-x : x in S}`.
    pub fn negate(&self) -> Self {
        Self::from_parts(self.finite.iter().map(|x| -x), self.rays.iter().map(Ray::negate))
    }

    /// Exact `{x + y : x in S1, y in S2}`.
    pub fn sumset(&self, other: &Self) -> Self {
        let mut finite = Vec::new();
        let mut rays = Vec::new();
        for &x in &self.finite {
            finite.extend(other.finite.iter().map(|y| x + y));
            rays.extend(other.rays.iter().map(|r| r.shifted(x)));
        }
        for &y in &other.finite {
            rays.extend(self.rays.iter().map(|r| r.shifted(y)));
        }
        for a in &self.rays {
            for b in &other.rays {
                let (f, r) = ray_sum(a, b);
                finite.extend(f);
                rays.extend(r);
            }
        }
        Self::from_parts(finite, rays)
    }

    /// `{±x ± y : x in S1, y in S2}`.
    pub fn signed_sumset(&self, other: &Self) -> Self {
        let sym_self = self.union(&self.negate());
        let sym_other = other.union(&other.negate());
        sym_self.sumset(&sym_other)
    }

    /// Members congruent to `residue` modulo `modulus`.
    pub fn residue_class(&self, modulus: i64, residue: i64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let residue = residue.rem_euclid(modulus);
        let finite = self.finite.iter().copied().filter(|x| x.rem_euclid(modulus) == residue);
        let rays = self.rays.iter().filter_map(|r| {
            let period = modulus / gcd(r.step, modulus);
            (0..period)
                .map(|t| r.base + r.dir.sign() * r.step * t)
                .find(|x| x.rem_euclid(modulus) == residue)
                .map(|start| Ray {
                    base: start,
                    step: r.step * period,
                    dir: r.dir,
                })
        });
        Self::from_parts(finite, rays.collect::<Vec<_>>())
    }

    /// `(even members, odd members)`.
    pub fn parity_split(&self) -> (Self, Self) {
        (self.residue_class(2, 0), self.residue_class(2, 1))
    }

    /// Members in `[-bound, bound]`, ascending.
    pub fn enumerate_upto(&self, bound: i64) -> Vec<i64> {
        let mut out: Vec<i64> = self.finite.range(-bound..=bound).copied().collect();
        for r in &self.rays {
            out.extend(r.members_within(-bound, bound));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn period(&self) -> i64 {
        self.rays.iter().fold(1, |acc, r| lcm(acc, r.step))
    }

    fn extent(&self) -> i64 {
        self.finite
            .iter()
            .map(|x| x.abs())
            .chain(self.rays.iter().map(|r| r.base.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Extensional equality. Beyond every base and finite member both sets
    /// are periodic with the lcm of all steps, so agreement on a window one
    /// period past the outermost data point settles the question.
    pub fn same_members(&self, other: &Self) -> bool {
        let window = self.extent().max(other.extent()) + 2 * lcm(self.period(), other.period()) + 1;
        (-window..=window).all(|x| self.contains(x) == other.contains(x))
    }

    /// Decides whether the set meets every progression `nZ + j`.
    ///
    /// With `D` the lcm of the ray steps, the answer is yes iff the rays'
    /// residue classes cover `Z/DZ`: a half-ray meets `nZ + j` exactly when
    /// the full line through it does, and the finite part can always be
    /// dodged by passing to a multiple of the modulus. When the answer is
    /// no, the witness is an uncovered class of the smallest modulus
    /// dividing `D`, lifted modulo `D * M` to avoid the finite members.
    pub fn hits_every_full_ap(&self) -> Result<ApCoverage> {
        let period = self.period();
        if period > MAX_COVER_MODULUS {
            return Err(Error::Usage(format!(
                "ray steps have lcm {period}, above the supported {MAX_COVER_MODULUS}"
            )));
        }
        let d = period as usize;
        let mut covered = vec![false; d];
        for r in &self.rays {
            let step = r.step as usize;
            let mut x = r.base.rem_euclid(r.step) as usize;
            while x < d {
                covered[x] = true;
                x += step;
            }
        }
        if covered.iter().all(|&c| c) {
            return Ok(ApCoverage {
                hits_all: true,
                period,
                witness: None,
            });
        }

        let divisors = (1..=period).filter(|n| period % n == 0);
        for n in divisors {
            for j in 0..n {
                let uncovered = (j..period).step_by(n as usize).all(|x| !covered[x as usize]);
                if !uncovered {
                    continue;
                }
                let finite_count = self.finite.len() as i64;
                for lift in 1..=finite_count + 2 {
                    let modulus = n * lift;
                    if modulus < 2 {
                        continue;
                    }
                    for i in 0..lift {
                        let candidate = Progression {
                            modulus,
                            residue: j + n * i,
                        };
                        if !self.finite.iter().any(|&x| candidate.contains(x)) {
                            return Ok(ApCoverage {
                                hits_all: false,
                                period,
                                witness: Some(candidate),
                            });
                        }
                    }
                }
            }
        }
        unreachable!("an uncovered residue always lifts to a witness")
    }
}

/// Sum of two rays: a finite prefix plus rays.
fn ray_sum(a: &Ray, b: &Ray) -> (Vec<i64>, Vec<Ray>) {
    let g = gcd(a.step, b.step);
    let base = a.base + b.base;
    if a.dir != b.dir {
        // s1*t1 - s2*t2 runs over all of gZ.
        return (Vec::new(), vec![Ray::up(base, g), Ray::down(base - g, g)]);
    }
    // Numerical semigroup <p, q> with gcd 1 contains every n >= (p-1)(q-1).
    let (p, q) = ((a.step / g) as usize, (b.step / g) as usize);
    let conductor = (p - 1) * (q - 1);
    let sign = a.dir.sign();
    let mut reachable = vec![false; conductor.max(1)];
    let mut finite = Vec::new();
    for n in 0..conductor {
        reachable[n] = n == 0 || (n >= p && reachable[n - p]) || (n >= q && reachable[n - q]);
        if reachable[n] {
            finite.push(base + sign * g * n as i64);
        }
    }
    let tail = Ray {
        base: base + sign * g * conductor as i64,
        step: g,
        dir: a.dir,
    };
    (finite, vec![tail])
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

impl fmt::Display for SemilinearSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let mut parts = Vec::new();
        if !self.finite.is_empty() {
            let items: Vec<String> = self.finite.iter().map(i64::to_string).collect();
            parts.push(format!("{{{}}}", items.join(",")));
        }
        parts.extend(self.rays.iter().map(Ray::to_string));
        write!(f, "{}", parts.join(" ∪ "))
    }
}
