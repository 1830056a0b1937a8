use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numverify::GroupDescriptor;
use crate::orthopoly::{Basis, PolyParams};

/// The manifold (or class of manifolds) a kernel lives on.
///
/// `d` is the real dimension of the manifold; `q` the complex dimension of
/// the ambient `C^q` for the complex sphere `Omega_{2q}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub enum Space {
    Circle,
    Sphere {
        d: u32,
    },
    ProjR {
        d: u32,
    },
    ProjC {
        d: u32,
    },
    ProjH {
        d: u32,
    },
    Cayley16,
    /// Unit sphere of `l_2`; kernels are power series in `t`.
    SphereInf,
    /// Kernels are power series in `(1 + t) / 2`, positive definite on every
    /// real, complex and quaternionic projective space.
    ProjInf,
    ComplexSphere {
        q: u32,
    },
    Spacetime {
        group: GroupDescriptor,
        d: u32,
    },
}

impl Space {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::validation("space", msg));
        match *self {
            Space::Sphere { d } if d < 2 => bad(format!("sphere needs d >= 2, got {d}")),
            Space::ProjR { d } if d < 2 => bad(format!("real projective space needs d >= 2, got {d}")),
            Space::ProjC { d } if d < 4 || d % 2 != 0 => {
                bad(format!("complex projective space needs even d >= 4, got {d}"))
            }
            Space::ProjH { d } if d < 8 || d % 4 != 0 => {
                bad(format!("quaternionic projective space needs d = 8, 12, ..., got {d}"))
            }
            Space::ComplexSphere { q } if q < 1 => bad("complex sphere needs q >= 1".into()),
            Space::Spacetime { ref group, d } => {
                if d < 2 {
                    return bad(format!("space-time sphere factor needs d >= 2, got {d}"));
                }
                group.validate()
            }
            _ => Ok(()),
        }
    }

    /// Real dimension of the manifold, where one is defined.
    pub fn dimension(&self) -> Option<u32> {
        match *self {
            Space::Circle => Some(1),
            Space::Sphere { d } | Space::ProjR { d } | Space::ProjC { d } | Space::ProjH { d } => Some(d),
            Space::Cayley16 => Some(16),
            Space::ComplexSphere { q } => Some(2 * q - 1),
            Space::Spacetime { d, .. } => Some(d),
            Space::SphereInf | Space::ProjInf => None,
        }
    }

    /// Jacobi exponents `alpha = (d - 2)/2` and the class-dependent `beta`.
    pub fn params(&self) -> Option<PolyParams> {
        let half = |d: u32| (f64::from(d) - 2.0) / 2.0;
        let (alpha, beta) = match *self {
            Space::Circle => (-0.5, -0.5),
            Space::Sphere { d } => (half(d), half(d)),
            Space::ProjR { d } => (half(d), -0.5),
            Space::ProjC { d } => (half(d), 0.0),
            Space::ProjH { d } => (half(d), 1.0),
            Space::Cayley16 => (7.0, 3.0),
            _ => return None,
        };
        Some(PolyParams { alpha, beta })
    }

    /// Expansion basis for real-argument isotropic parts.
    pub fn basis(&self) -> Option<Basis> {
        match self {
            Space::SphereInf => Some(Basis::Monomial),
            Space::ProjInf => Some(Basis::HalfShiftedPower),
            _ => self.params().map(Basis::Jacobi),
        }
    }

    pub fn is_wang(&self) -> bool {
        self.params().is_some()
    }

    /// Spheres in the sense of the parity criterion: `S^d` with `d >= 2`
    /// and `S^infinity`.
    pub fn is_sphere_like(&self) -> bool {
        matches!(self, Space::Sphere { .. } | Space::SphereInf)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Space::Circle => "circle",
            Space::Sphere { .. } => "sphere",
            Space::ProjR { .. } => "projR",
            Space::ProjC { .. } => "projC",
            Space::ProjH { .. } => "projH",
            Space::Cayley16 => "cayley16",
            Space::SphereInf => "sphereInf",
            Space::ProjInf => "projInf",
            Space::ComplexSphere { .. } => "complexSphere",
            Space::Spacetime { .. } => "spacetime",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Sphere { d } | Space::ProjR { d } | Space::ProjC { d } | Space::ProjH { d } => {
                write!(f, "{}({d})", self.kind_name())
            }
            Space::ComplexSphere { q } => write!(f, "complexSphere({q})"),
            Space::Spacetime { d, .. } => write!(f, "spacetime(G, {d})"),
            _ => write!(f, "{}", self.kind_name()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<GroupDescriptor>,
}

impl TryFrom<RawSpace> for Space {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        let need_d = || {
            raw.d
                .ok_or_else(|| Error::validation("space.d", format!("kind {:?} requires d", raw.kind)))
        };
        let forbid = |field: &str, present: bool| {
            if present {
                Err(Error::validation(
                    format!("space.{field}"),
                    format!("not allowed for kind {:?}", raw.kind),
                ))
            } else {
                Ok(())
            }
        };
        let uses_d = matches!(
            raw.kind.as_str(),
            "sphere" | "projR" | "projC" | "projH" | "spacetime" | "cayley16"
        );
        forbid("d", raw.d.is_some() && !uses_d)?;
        forbid("q", raw.q.is_some() && raw.kind != "complexSphere")?;
        forbid("group", raw.group.is_some() && raw.kind != "spacetime")?;
        let space = match raw.kind.as_str() {
            "circle" => Space::Circle,
            "sphere" => Space::Sphere { d: need_d()? },
            "projR" => Space::ProjR { d: need_d()? },
            "projC" => Space::ProjC { d: need_d()? },
            "projH" => Space::ProjH { d: need_d()? },
            "cayley16" => {
                if let Some(d) = raw.d.filter(|&d| d != 16) {
                    return Err(Error::validation(
                        "space.d",
                        format!("Cayley plane has d = 16, got {d}"),
                    ));
                }
                Space::Cayley16
            }
            "sphereInf" => Space::SphereInf,
            "projInf" => Space::ProjInf,
            "complexSphere" => Space::ComplexSphere {
                q: raw
                    .q
                    .ok_or_else(|| Error::validation("space.q", "complexSphere requires q"))?,
            },
            "spacetime" => Space::Spacetime {
                group: raw
                    .group
                    .clone()
                    .ok_or_else(|| Error::validation("space.group", "spacetime requires a group"))?,
                d: need_d()?,
            },
            other => return Err(Error::validation("space.kind", format!("unknown space kind {other:?}"))),
        };
        space.validate()?;
        Ok(space)
    }
}

impl From<Space> for RawSpace {
    fn from(space: Space) -> Self {
        let kind = space.kind_name().to_string();
        let (d, q, group) = match space {
            Space::Sphere { d } | Space::ProjR { d } | Space::ProjC { d } | Space::ProjH { d } => (Some(d), None, None),
            Space::ComplexSphere { q } => (None, Some(q), None),
            Space::Spacetime { group, d } => (Some(d), None, Some(group)),
            _ => (None, None, None),
        };
        RawSpace { kind, d, q, group }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wang_exponents() {
        let cases = [
            (Space::Sphere { d: 2 }, 0.0, 0.0),
            (Space::Sphere { d: 5 }, 1.5, 1.5),
            (Space::ProjR { d: 3 }, 0.5, -0.5),
            (Space::ProjC { d: 4 }, 1.0, 0.0),
            (Space::ProjH { d: 8 }, 3.0, 1.0),
            (Space::Cayley16, 7.0, 3.0),
            (Space::Circle, -0.5, -0.5),
        ];
        for (space, a, b) in cases {
            let p = space.params().unwrap();
            assert_eq!((p.alpha, p.beta), (a, b), "{space}");
            assert!(p.nonnegative_linearization());
        }
        assert!(Space::SphereInf.params().is_none());
    }

    #[test]
    fn admissible_dimensions() {
        assert!(Space::Sphere { d: 1 }.validate().is_err());
        assert!(Space::ProjC { d: 5 }.validate().is_err());
        assert!(Space::ProjC { d: 6 }.validate().is_ok());
        assert!(Space::ProjH { d: 10 }.validate().is_err());
        assert!(Space::ProjH { d: 12 }.validate().is_ok());
    }

    #[test]
    fn json_forms() {
        let s: Space = serde_json::from_str(r#"{"kind":"sphere","d":2}"#).unwrap();
        assert_eq!(s, Space::Sphere { d: 2 });
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"sphere","d":2}"#);
        let c: Space = serde_json::from_str(r#"{"kind":"complexSphere","q":3}"#).unwrap();
        assert_eq!(c, Space::ComplexSphere { q: 3 });
        assert!(serde_json::from_str::<Space>(r#"{"kind":"sphere"}"#).is_err());
        assert!(serde_json::from_str::<Space>(r#"{"kind":"circle","d":1}"#).is_err());
        assert!(serde_json::from_str::<Space>(r#"{"kind":"sphere","d":2,"extra":1}"#).is_err());
        assert!(serde_json::from_str::<Space>(r#"{"kind":"torus"}"#).is_err());
    }
}
