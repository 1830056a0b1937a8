//! Strict positive definiteness verdicts, decided from coefficient supports.
//!
//! | space | single kernel `f` strict iff | product `fg` strict iff |
//! |---|---|---|
//! | circle | `{±k : a_k > 0}` meets every `nZ + j` | `{±k ± l}` meets every `nZ + j` |
//! | `S^d`, `d >= 2`, `S^inf` | support has infinitely many even and odd members | same for `{k + l}` |
//! | other Wang spaces, `P^inf` | support infinite | `{k + l}` infinite |
//! | complex sphere | `{m - n}` meets every `nZ + j` | `{(m-n) + (m'-n')}` meets every `nZ + j` |

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernelmodel::{product_support, Kernel, Space};
use crate::semilinear::{Progression, SemilinearSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    #[serde(rename = "strict")]
    Strict,
    #[serde(rename = "positive-only")]
    PositiveOnly,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Strict => "strict",
            Decision::PositiveOnly => "positive-only",
        })
    }
}

/// Which support condition a verdict rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// Circle: signed support meets every full arithmetic progression.
    CircleProgressions,
    /// Spheres: infinitely many even and infinitely many odd indices.
    SphereParity,
    /// Projective spaces and the Cayley plane: infinitely many indices.
    InfiniteSupport,
    /// Complex spheres: index differences meet every full progression.
    ComplexProgressions,
}

impl Criterion {
    pub fn tag(self) -> &'static str {
        match self {
            Criterion::CircleProgressions => "circle-progressions",
            Criterion::SphereParity => "sphere-parity",
            Criterion::InfiniteSupport => "infinite-support",
            Criterion::ComplexProgressions => "complex-progressions",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Criterion::CircleProgressions => "the signed index set meets every full arithmetic progression nZ+j",
            Criterion::SphereParity => "the index set contains infinitely many even and infinitely many odd integers",
            Criterion::InfiniteSupport => "the index set is infinite",
            Criterion::ComplexProgressions => {
                "the set of index differences m-n meets every full arithmetic progression nZ+j"
            }
        }
    }

    fn for_space(space: &Space) -> Result<Criterion> {
        Ok(match space {
            Space::Circle => Criterion::CircleProgressions,
            Space::Sphere { .. } | Space::SphereInf => Criterion::SphereParity,
            Space::ProjR { .. } | Space::ProjC { .. } | Space::ProjH { .. } | Space::Cayley16 | Space::ProjInf => {
                Criterion::InfiniteSupport
            }
            Space::ComplexSphere { .. } => Criterion::ComplexProgressions,
            Space::Spacetime { .. } => {
                return Err(Error::Usage(
                    "space-time kernels are checked by sampling; use the space-time check".into(),
                ))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Why a kernel is positive definite but not strictly so.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A progression `modulus * Z + residue` disjoint from the evidence set.
    MissedProgression { modulus: i64, residue: i64 },
    /// Only finitely many members of this parity (listed).
    ParityDeficiency { parity: Parity, members: Vec<i64> },
    /// The evidence set is finite; `max` is its largest member.
    FiniteSupport { max: Option<i64>, size: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::MissedProgression { modulus, residue } => {
                write!(
                    f,
                    "misses the progression {}",
                    Progression {
                        modulus: *modulus,
                        residue: *residue
                    }
                )
            }
            Witness::ParityDeficiency { parity, members } => {
                let name = match parity {
                    Parity::Even => "even",
                    Parity::Odd => "odd",
                };
                if members.is_empty() {
                    write!(f, "no {name} indices")
                } else {
                    let list: Vec<String> = members.iter().map(i64::to_string).collect();
                    write!(f, "finitely many {name} indices: {{{}}}", list.join(","))
                }
            }
            Witness::FiniteSupport { max, size } => match max {
                Some(m) => write!(f, "sumset finite ({size} members, largest {m})"),
                None => write!(f, "sumset finite (empty)"),
            },
        }
    }
}

/// A named set the verdict was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub label: String,
    /// Rendered as `finite ∪ rays`.
    pub text: String,
    pub set: SemilinearSet,
}

impl Evidence {
    fn new(label: impl Into<String>, set: SemilinearSet) -> Self {
        Evidence {
            label: label.into(),
            text: set.to_string(),
            set,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpdVerdict {
    pub decision: Decision,
    pub criterion: Criterion,
    pub space: String,
    pub evidence: Vec<Evidence>,
    pub witness: Option<Witness>,
}

impl SpdVerdict {
    pub fn is_strict(&self) -> bool {
        self.decision == Decision::Strict
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts always serialize")
    }
}

fn check_kernel(f: &Kernel, space: &Space, name: &str) -> Result<()> {
    if f.space() != *space {
        return Err(Error::Usage(format!(
            "{name} is a kernel on {}, not on {space}",
            f.space()
        )));
    }
    if f.is_zero() {
        return Err(Error::Degenerate(format!("{name} has no nonzero coefficients")));
    }
    Ok(())
}

/// Applies `criterion` to the evidence set.
fn judge(criterion: Criterion, set: &SemilinearSet) -> Result<(Decision, Option<Witness>)> {
    Ok(match criterion {
        Criterion::CircleProgressions | Criterion::ComplexProgressions => {
            let cover = set.hits_every_full_ap()?;
            match cover.witness {
                None => (Decision::Strict, None),
                Some(p) => (
                    Decision::PositiveOnly,
                    Some(Witness::MissedProgression {
                        modulus: p.modulus,
                        residue: p.residue,
                    }),
                ),
            }
        }
        Criterion::SphereParity => {
            let (even, odd) = set.parity_split();
            for (part, parity) in [(even, Parity::Even), (odd, Parity::Odd)] {
                if !part.is_infinite() {
                    let members = part.finite().iter().copied().collect();
                    return Ok((
                        Decision::PositiveOnly,
                        Some(Witness::ParityDeficiency { parity, members }),
                    ));
                }
            }
            (Decision::Strict, None)
        }
        Criterion::InfiniteSupport => {
            if set.is_infinite() {
                (Decision::Strict, None)
            } else {
                let witness = Witness::FiniteSupport {
                    max: set.max(),
                    size: set.finite().len(),
                };
                (Decision::PositiveOnly, Some(witness))
            }
        }
    })
}

/// Decides strict positive definiteness of the kernel with isotropic part
/// `f` on `space`.
pub fn decide_single(f: &Kernel, space: &Space) -> Result<SpdVerdict> {
    let criterion = Criterion::for_space(space)?;
    check_kernel(f, space, "f")?;
    let support = f.index_support();
    let mut evidence = Vec::new();
    let set = match space {
        Space::Circle => {
            let signed = support.union(&support.negate());
            evidence.push(Evidence::new("support(f)", support));
            evidence.push(Evidence::new("±support(f)", signed.clone()));
            signed
        }
        Space::ComplexSphere { q } if *q >= 2 => {
            evidence.push(Evidence::new("{m-n : a_{m,n}(f) > 0}", support.clone()));
            support
        }
        _ => {
            evidence.push(Evidence::new("support(f)", support.clone()));
            support
        }
    };
    let (decision, witness) = judge(criterion, &set)?;
    Ok(SpdVerdict {
        decision,
        criterion,
        space: space.to_string(),
        evidence,
        witness,
    })
}

/// Decides strict positive definiteness of the product kernel with
/// isotropic part `fg`; only the supports of `f` and `g` matter.
pub fn decide_product(f: &Kernel, g: &Kernel, space: &Space) -> Result<SpdVerdict> {
    let criterion = Criterion::for_space(space)?;
    check_kernel(f, space, "f")?;
    check_kernel(g, space, "g")?;
    let set = product_support(f, g)?;
    let label = match space {
        Space::Circle => "{±k±l : a_k(f) a_l(g) > 0}",
        Space::ComplexSphere { q } if *q >= 2 => "{(m-n)+(m'-n') : a_{m,n}(f) a_{m',n'}(g) > 0}",
        _ => "{k+l : a_k(f) a_l(g) > 0}",
    };
    let evidence = vec![
        Evidence::new("support(f)", f.index_support()),
        Evidence::new("support(g)", g.index_support()),
        Evidence::new(label, set.clone()),
    ];
    let (decision, witness) = judge(criterion, &set)?;
    Ok(SpdVerdict {
        decision,
        criterion,
        space: space.to_string(),
        evidence,
        witness,
    })
}

/// Stable plain-text rendering of a verdict.
pub fn explain(verdict: &SpdVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "decision: {}", verdict.decision);
    let _ = writeln!(out, "space: {}", verdict.space);
    let _ = writeln!(
        out,
        "criterion: {} ({})",
        verdict.criterion.tag(),
        verdict.criterion.statement()
    );
    for e in &verdict.evidence {
        let _ = writeln!(out, "evidence: {} = {}", e.label, e.text);
    }
    match &verdict.witness {
        Some(w) => {
            let _ = writeln!(out, "witness: {w}");
        }
        None => {
            let _ = writeln!(out, "witness: none (criterion satisfied)");
        }
    }
    out
}
