use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-width of the box real group elements are drawn from.
pub const REAL_SAMPLE_RADIUS: f64 = 10.0;

/// The group factor `G` of a space-time domain `G x S^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GroupDescriptor {
    /// `(R, +)`.
    #[serde(rename = "real-line")]
    RealLine,
    /// `(R^m, +)`.
    #[serde(rename = "real-vector")]
    RealVector { m: usize },
    /// A finite group given by its multiplication table:
    /// `table[a][b]` is the index of `a * b`.
    #[serde(rename = "finite")]
    Finite { table: Vec<Vec<usize>>, identity: usize },
}

/// An element of a [`GroupDescriptor`] group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupElement {
    Vector(Vec<f64>),
    Index(usize),
}

impl GroupElement {
    /// The single coordinate of a real-line element.
    pub fn scalar(&self) -> Option<f64> {
        match self {
            GroupElement::Vector(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }
}

impl GroupDescriptor {
    /// Checks closure, identity, associativity and inverses of a finite
    /// table, and `m >= 1` for vector groups.
    pub fn validate(&self) -> Result<()> {
        let bad = |path: &str, msg: String| Err(Error::validation(format!("space.group{path}"), msg));
        match self {
            GroupDescriptor::RealLine => Ok(()),
            GroupDescriptor::RealVector { m } => {
                if *m == 0 {
                    return bad(".m", "dimension must be at least 1".into());
                }
                Ok(())
            }
            GroupDescriptor::Finite { table, identity } => {
                let n = table.len();
                if n == 0 {
                    return bad(".table", "a group has at least one element".into());
                }
                for (a, row) in table.iter().enumerate() {
                    if row.len() != n {
                        return bad(
                            &format!(".table[{a}]"),
                            format!("row has {} entries, expected {n}", row.len()),
                        );
                    }
                    if let Some(b) = row.iter().position(|&c| c >= n) {
                        return bad(
                            &format!(".table[{a}][{b}]"),
                            format!("entry {} is not an element", row[b]),
                        );
                    }
                }
                let e = *identity;
                if e >= n || (0..n).any(|a| table[e][a] != a || table[a][e] != a) {
                    return bad(".identity", format!("{e} is not a two-sided identity"));
                }
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            if table[table[a][b]][c] != table[a][table[b][c]] {
                                return bad(".table", format!("not associative at ({a}, {b}, {c})"));
                            }
                        }
                    }
                    if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                        return bad(".table", format!("element {a} has no inverse"));
                    }
                }
                Ok(())
            }
        }
    }

    /// Number of elements of a finite group.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupDescriptor::Finite { table, .. } => Some(table.len()),
            _ => None,
        }
    }

    fn dimension(&self) -> usize {
        match self {
            GroupDescriptor::RealLine => 1,
            GroupDescriptor::RealVector { m } => *m,
            GroupDescriptor::Finite { .. } => 0,
        }
    }

    /// Uniform draw: from `[-R, R]^m` for vector groups, from the table for
    /// finite ones.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        match self {
            GroupDescriptor::Finite { table, .. } => GroupElement::Index(rng.random_range(0..table.len())),
            _ => GroupElement::Vector(
                (0..self.dimension())
                    .map(|_| rng.random_range(-REAL_SAMPLE_RADIUS..REAL_SAMPLE_RADIUS))
                    .collect(),
            ),
        }
    }

    pub fn inverse(&self, u: &GroupElement) -> Result<GroupElement> {
        match (self, u) {
            (GroupDescriptor::Finite { table, identity }, GroupElement::Index(a)) => (0..table.len())
                .find(|&b| table[*a][b] == *identity)
                .map(GroupElement::Index)
                .ok_or_else(|| Error::Domain(format!("element {a} has no inverse"))),
            (_, GroupElement::Vector(v)) if v.len() == self.dimension() => {
                Ok(GroupElement::Vector(v.iter().map(|x| -x).collect()))
            }
            _ => Err(Error::Domain("element does not belong to the group".into())),
        }
    }

    pub fn op(&self, u: &GroupElement, v: &GroupElement) -> Result<GroupElement> {
        match (self, u, v) {
            (GroupDescriptor::Finite { table, .. }, GroupElement::Index(a), GroupElement::Index(b))
                if *a < table.len() && *b < table.len() =>
            {
                Ok(GroupElement::Index(table[*a][*b]))
            }
            (_, GroupElement::Vector(a), GroupElement::Vector(b))
                if a.len() == self.dimension() && b.len() == self.dimension() =>
            {
                Ok(GroupElement::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            _ => Err(Error::Domain("elements do not belong to the group".into())),
        }
    }

    /// `u^{-1} * v`.
    pub fn difference(&self, u: &GroupElement, v: &GroupElement) -> Result<GroupElement> {
        self.op(&self.inverse(u)?, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The symmetric group on three letters, elements as permutations.
    pub(crate) fn s3() -> GroupDescriptor {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        GroupDescriptor::Finite { table, identity: 0 }
    }

    #[test]
    fn symmetric_group_is_valid() {
        let g = s3();
        g.validate().unwrap();
        for a in 0..6 {
            let inv = g.inverse(&GroupElement::Index(a)).unwrap();
            assert_eq!(g.op(&GroupElement::Index(a), &inv).unwrap(), GroupElement::Index(0));
        }
    }

    #[test]
    fn broken_tables_rejected() {
        let not_closed = GroupDescriptor::Finite {
            table: vec![vec![0, 1], vec![1, 2]],
            identity: 0,
        };
        assert!(not_closed.validate().is_err());
        let no_inverse = GroupDescriptor::Finite {
            table: vec![vec![0, 1], vec![1, 1]],
            identity: 0,
        };
        assert!(no_inverse.validate().is_err());
        let bad_identity = GroupDescriptor::Finite {
            table: vec![vec![0, 1], vec![1, 0]],
            identity: 1,
        };
        assert!(bad_identity.validate().is_err());
    }

    #[test]
    fn real_differences() {
        let g = GroupDescriptor::RealVector { m: 2 };
        let d = g
            .difference(
                &GroupElement::Vector(vec![1.0, 2.0]),
                &GroupElement::Vector(vec![4.0, 0.5]),
            )
            .unwrap();
        assert_eq!(d, GroupElement::Vector(vec![3.0, -1.5]));
    }

    #[test]
    fn json_forms() {
        let g: GroupDescriptor = serde_json::from_str(r#"{"kind":"real-line"}"#).unwrap();
        assert_eq!(g, GroupDescriptor::RealLine);
        let g: GroupDescriptor =
            serde_json::from_str(r#"{"kind":"finite","table":[[0,1],[1,0]],"identity":0}"#).unwrap();
        g.validate().unwrap();
    }
}
