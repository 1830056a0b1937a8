//! The JSON kernel spec document.
//!
//! ```json
//! {
//!   "space": {"kind": "sphere", "d": 2},
//!   "head": {"0": 1.0, "1": 1.0},
//!   "tails": [{"base": 1, "step": 2, "c": 0.3333333333333333, "r": 0.1111111111111111}]
//! }
//! ```
//!
//! Complex spheres with `q >= 2` key the head by `"m,n"` and give each tail
//! either a `"diff"` (a line `m - n = diff`, the ray running over
//! `min(m, n)`) or an `"s"` (a fan at fixed `min(m, n) = s`, the ray running
//! over `m - n` in direction `"dir"`). For `q = 1` keys are signed integers
//! and tails may carry `"dir": "-"`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bi::{BiCoefficientSeq, DiskTail, LaurentSeq};
use super::seq::CoefficientSeq;
use super::tail::GeometricTail;
use super::{Kernel, Space};
use crate::error::{Error, Result};
use crate::semilinear::{Direction, Ray};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    space: Space,
    #[serde(default)]
    head: Head,
    #[serde(default)]
    tails: Vec<RawTail>,
}

/// Head entries in document order; duplicate keys are rejected.
#[derive(Debug, Default)]
struct Head(Vec<(String, f64)>);

impl Serialize for Head {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Head {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct HeadVisitor;

        impl<'de> Visitor<'de> for HeadVisitor {
            type Value = Head;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from index keys to coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Head, A::Error> {
                let mut entries: Vec<(String, f64)> = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, f64>()? {
                    if entries.iter().any(|(seen, _)| *seen == k) {
                        return Err(serde::de::Error::custom(format!("duplicate head key {k:?}")));
                    }
                    entries.push((k, v));
                }
                Ok(Head(entries))
            }
        }

        deserializer.deserialize_map(HeadVisitor)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTail {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diff: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<i64>,
    base: i64,
    step: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dir: Option<Direction>,
    c: f64,
    r: f64,
}

fn head_path(key: &str) -> String {
    format!("head[{key:?}]")
}

fn parse_index<T: std::str::FromStr>(key: &str, what: &str) -> Result<T> {
    key.trim()
        .parse()
        .map_err(|_| Error::validation(head_path(key), format!("expected {what}, got {key:?}")))
}

fn parse_bi_index(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::validation(head_path(key), format!("expected \"m,n\" with m, n >= 0, got {key:?}"));
    let (m, n) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        m.trim().parse().map_err(|_| bad())?,
        n.trim().parse().map_err(|_| bad())?,
    ))
}

fn insert_once<K: Ord>(head: &mut BTreeMap<K, f64>, index: K, key: &str, value: f64) -> Result<()> {
    if head.insert(index, value).is_some() {
        return Err(Error::validation(head_path(key), "index listed twice"));
    }
    Ok(())
}

impl RawTail {
    fn ray(&self, i: usize, allow_down: bool) -> Result<Ray> {
        if self.dir.is_some() && !allow_down {
            return Err(Error::validation(
                format!("tails[{i}].dir"),
                "only integer-indexed and fan tails take a direction",
            ));
        }
        let dir = self.dir.unwrap_or(Direction::Up);
        Ray::new(self.base, self.step, dir).map_err(|e| Error::validation(format!("tails[{i}].step"), e.to_string()))
    }

    fn geometric(&self, i: usize, allow_down: bool) -> Result<GeometricTail> {
        GeometricTail::new(self.ray(i, allow_down)?, self.c, self.r, &format!("tails[{i}]"))
    }

    fn check_no_diff(&self, i: usize) -> Result<()> {
        for (name, present) in [("diff", self.diff.is_some()), ("s", self.s.is_some())] {
            if present {
                return Err(Error::validation(
                    format!("tails[{i}].{name}"),
                    "only bi-indexed complexSphere kernels take this field",
                ));
            }
        }
        Ok(())
    }

    fn disk_tail(&self, i: usize) -> Result<DiskTail> {
        match (self.diff, self.s) {
            (Some(diff), None) => Ok(DiskTail::Line {
                diff,
                tail: self.geometric(i, false)?,
            }),
            (None, Some(s)) => Ok(DiskTail::Fan {
                s,
                tail: self.geometric(i, true)?,
            }),
            _ => Err(Error::validation(
                format!("tails[{i}]"),
                "bi-indexed tails need exactly one of diff (a line m - n = diff) or s (a fan over m - n)",
            )),
        }
    }
}

impl TryFrom<Document> for Kernel {
    type Error = Error;

    fn try_from(doc: Document) -> Result<Kernel> {
        match doc.space {
            Space::Spacetime { .. } => Err(Error::validation(
                "space.kind",
                "space-time kernels have function-valued coefficients; use the space-time check",
            )),
            Space::ComplexSphere { q } if q >= 2 => {
                let mut head = BTreeMap::new();
                for (k, v) in &doc.head.0 {
                    insert_once(&mut head, parse_bi_index(k)?, k, *v)?;
                }
                let tails = doc
                    .tails
                    .iter()
                    .enumerate()
                    .map(|(i, t)| t.disk_tail(i))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Kernel::Disk(BiCoefficientSeq::new(q, head, tails)?))
            }
            Space::ComplexSphere { .. } => {
                let mut head = BTreeMap::new();
                for (k, v) in &doc.head.0 {
                    insert_once(&mut head, parse_index::<i64>(k, "an integer index")?, k, *v)?;
                }
                let tails = doc
                    .tails
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        t.check_no_diff(i)?;
                        t.geometric(i, true)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Kernel::Laurent(LaurentSeq::new(head, tails)?))
            }
            space => {
                let mut head = BTreeMap::new();
                for (k, v) in &doc.head.0 {
                    insert_once(
                        &mut head,
                        parse_index::<usize>(k, "a nonnegative integer index")?,
                        k,
                        *v,
                    )?;
                }
                let tails = doc
                    .tails
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        t.check_no_diff(i)?;
                        t.geometric(i, false)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Kernel::Series(CoefficientSeq::new(space, head, tails)?))
            }
        }
    }
}

fn raw_tail(tail: &GeometricTail, diff: Option<i64>, s: Option<i64>, with_dir: bool) -> RawTail {
    RawTail {
        diff,
        s,
        base: tail.ray.base,
        step: tail.ray.step,
        dir: with_dir.then_some(tail.ray.dir),
        c: tail.c,
        r: tail.r,
    }
}

impl From<&Kernel> for Document {
    fn from(kernel: &Kernel) -> Document {
        match kernel {
            Kernel::Series(f) => Document {
                space: f.space().clone(),
                head: Head(f.head().iter().map(|(k, v)| (k.to_string(), *v)).collect()),
                tails: f.tails().iter().map(|t| raw_tail(t, None, None, false)).collect(),
            },
            Kernel::Disk(f) => Document {
                space: Space::ComplexSphere { q: f.q() },
                head: Head(f.head().iter().map(|((m, n), v)| (format!("{m},{n}"), *v)).collect()),
                tails: f
                    .tails()
                    .iter()
                    .map(|t| match *t {
                        DiskTail::Line { diff, ref tail } => raw_tail(tail, Some(diff), None, false),
                        DiskTail::Fan { s, ref tail } => raw_tail(tail, None, Some(s), true),
                    })
                    .collect(),
            },
            Kernel::Laurent(f) => Document {
                space: Space::ComplexSphere { q: 1 },
                head: Head(f.head().iter().map(|(k, v)| (k.to_string(), *v)).collect()),
                tails: f.tails().iter().map(|t| raw_tail(t, None, None, true)).collect(),
            },
        }
    }
}

impl Kernel {
    /// Parses and validates a kernel spec document.
    pub fn from_json(text: &str) -> Result<Kernel> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::validation("document", e.to_string()))?;
        Kernel::try_from(doc)
    }

    /// Canonical pretty-printed document: head keys in index order, tails
    /// in stored order. Parsing the output reproduces the kernel exactly.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&Document::from(self)).expect("kernel documents always serialize")
    }
}

impl Serialize for Kernel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Document::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Kernel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = Document::deserialize(deserializer)?;
        Kernel::try_from(doc).map_err(serde::de::Error::custom)
    }
}
