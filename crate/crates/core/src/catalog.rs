//! Transitive group metadata and the exclusions known from earlier work.
//!
//! The catalog is a line-oriented text file:
//!
//! ```text
//! # comment
//! T <degree> <index> <order> <2group:0|1> [q=<ref>(,<ref>)*] [iso=<ref>(,<ref>)*] [psl2=<j>] [gen2=0|1]
//! N <identifier> <order> <2group:0|1> [psl2=<j>] [gen2=0|1]
//! ```
//!
//! `T` lines describe the conjugacy class `dTj` of transitive subgroups of
//! `S_d`. `q=` lists the isomorphism classes of its proper nontrivial
//! quotients, each either `dTj` or `name:<identifier>`. `iso=` lists the other
//! classes `dTj` of the same abstract group. `N` lines define the
//! named groups those references may point to. `psl2=j` marks a group
//! isomorphic to `PSL(2, 2^j)`; `gen2` carries the optional "generated by two
//! elements, one an involution" flag for 2-groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use crate::rational::ord_p;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate record {group}")]
    Duplicate { line: usize, group: GroupRef },
    #[error("{from} refers to unknown group {to}")]
    Dangling { from: GroupRef, to: GroupRef },
    #[error("cannot read catalog {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A reference to a group: a transitive class `dTj` or a named group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupRef {
    Transitive { degree: u32, index: u32 },
    Named(String),
}

impl GroupRef {
    pub fn transitive(degree: u32, index: u32) -> Self {
        GroupRef::Transitive { degree, index }
    }
}

impl fmt::Display for GroupRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupRef::Transitive { degree, index } => write!(f, "{degree}T{index}"),
            GroupRef::Named(name) => write!(f, "name:{name}"),
        }
    }
}

impl Serialize for GroupRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for GroupRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(name) = s.strip_prefix("name:") {
            let valid = !name.is_empty()
                && name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || "_()+.^-".contains(c));
            return if valid {
                Ok(GroupRef::Named(name.to_string()))
            } else {
                Err(format!("bad group name {name:?}"))
            };
        }
        let (d, j) = s
            .split_once('T')
            .ok_or_else(|| format!("bad group reference {s:?}"))?;
        let degree = d.parse().map_err(|_| format!("bad degree in {s:?}"))?;
        let index = j.parse().map_err(|_| format!("bad index in {s:?}"))?;
        if degree == 0 || index == 0 {
            return Err(format!("degree and index must be positive in {s:?}"));
        }
        Ok(GroupRef::Transitive { degree, index })
    }
}

/// One conjugacy class of transitive groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitiveGroupRecord {
    pub degree: u32,
    pub t_index: u32,
    pub order: u64,
    pub quotients: Vec<GroupRef>,
    /// Other transitive classes isomorphic to this one as abstract groups.
    pub isomorphic: Vec<GroupRef>,
    pub is_two_group: bool,
    /// `j` when the group is isomorphic to `PSL(2, 2^j)`.
    pub psl2_exponent: Option<u32>,
    /// Two-generated with an involution among the generators (2-groups only).
    pub two_generated_with_involution: Option<bool>,
}

impl TransitiveGroupRecord {
    pub fn group_ref(&self) -> GroupRef {
        GroupRef::transitive(self.degree, self.t_index)
    }

    pub fn ord2(&self) -> u32 {
        ord2(self.order)
    }
}

/// A group known only abstractly, referenced as `name:<identifier>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedGroup {
    pub name: String,
    pub order: u64,
    pub is_two_group: bool,
    pub psl2_exponent: Option<u32>,
    pub two_generated_with_involution: Option<bool>,
}

/// Loaded catalog: transitive records and named groups.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    records: BTreeMap<(u32, u32), TransitiveGroupRecord>,
    named: BTreeMap<String, NamedGroup>,
}

pub fn ord2(n: u64) -> u32 {
    ord_p(2, n)
}

fn parse_flag(value: &str, line: usize) -> Result<bool, CatalogError> {
    match value {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(CatalogError::Parse {
            line,
            message: format!("expected 0 or 1, found {other:?}"),
        }),
    }
}

impl Catalog {
    /// Parses catalog text and checks that every quotient reference resolves.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut catalog = Catalog::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| CatalogError::Parse { line, message };
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields[0] {
                "T" => {
                    if fields.len() < 5 {
                        return Err(err(
                            "expected 'T <degree> <index> <order> <2group> [attributes]'".into(),
                        ));
                    }
                    let num = |k: usize, what: &str| -> Result<u64, CatalogError> {
                        fields[k]
                            .parse::<u64>()
                            .ok()
                            .filter(|v| *v > 0)
                            .ok_or_else(|| err(format!("bad {what} {:?}", fields[k])))
                    };
                    let degree = num(1, "degree")? as u32;
                    let t_index = num(2, "index")? as u32;
                    let order = num(3, "order")?;
                    if order < degree as u64 || order % degree as u64 != 0 {
                        return Err(err(format!(
                            "order {order} is not a multiple of the degree {degree}"
                        )));
                    }
                    let is_two_group = parse_flag(fields[4], line)?;
                    if is_two_group != order.is_power_of_two() {
                        return Err(err(format!(
                            "2-group flag disagrees with the order {order}"
                        )));
                    }
                    let mut record = TransitiveGroupRecord {
                        degree,
                        t_index,
                        order,
                        quotients: Vec::new(),
                        isomorphic: Vec::new(),
                        is_two_group,
                        psl2_exponent: None,
                        two_generated_with_involution: None,
                    };
                    for attr in &fields[5..] {
                        let (key, value) = attr
                            .split_once('=')
                            .ok_or_else(|| err(format!("bad attribute {attr:?}")))?;
                        match key {
                            "q" => {
                                for r in value.split(',') {
                                    record.quotients.push(r.parse().map_err(err)?);
                                }
                            }
                            "iso" => {
                                for r in value.split(',') {
                                    let r: GroupRef = r.parse().map_err(err)?;
                                    if !matches!(r, GroupRef::Transitive { .. }) {
                                        return Err(err(format!("iso= takes dTj, found {r}")));
                                    }
                                    record.isomorphic.push(r);
                                }
                            }
                            "psl2" => {
                                record.psl2_exponent = Some(
                                    value
                                        .parse()
                                        .map_err(|_| err(format!("bad psl2 {value:?}")))?,
                                )
                            }
                            "gen2" => {
                                record.two_generated_with_involution =
                                    Some(parse_flag(value, line)?)
                            }
                            _ => return Err(err(format!("unknown attribute {key:?}"))),
                        }
                    }
                    if catalog.records.contains_key(&(degree, t_index)) {
                        return Err(CatalogError::Duplicate {
                            line,
                            group: record.group_ref(),
                        });
                    }
                    catalog.records.insert((degree, t_index), record);
                }
                "N" => {
                    if fields.len() < 4 {
                        return Err(err("expected 'N <identifier> <order> <2group>'".into()));
                    }
                    let name = fields[1].to_string();
                    let GroupRef::Named(_) =
                        format!("name:{name}").parse::<GroupRef>().map_err(err)?
                    else {
                        unreachable!()
                    };
                    let order: u64 = fields[2]
                        .parse()
                        .ok()
                        .filter(|v| *v > 0)
                        .ok_or_else(|| err(format!("bad order {:?}", fields[2])))?;
                    let is_two_group = parse_flag(fields[3], line)?;
                    if is_two_group != order.is_power_of_two() {
                        return Err(err(format!(
                            "2-group flag disagrees with the order {order}"
                        )));
                    }
                    let mut psl2_exponent = None;
                    let mut two_generated_with_involution = None;
                    for attr in &fields[4..] {
                        match attr.split_once('=') {
                            Some(("psl2", v)) => {
                                psl2_exponent =
                                    Some(v.parse().map_err(|_| err(format!("bad psl2 {v:?}")))?)
                            }
                            Some(("gen2", v)) => {
                                two_generated_with_involution = Some(parse_flag(v, line)?)
                            }
                            _ => return Err(err(format!("unknown attribute {attr:?}"))),
                        }
                    }
                    if catalog.named.contains_key(&name) {
                        return Err(CatalogError::Duplicate {
                            line,
                            group: GroupRef::Named(name),
                        });
                    }
                    catalog.named.insert(
                        name.clone(),
                        NamedGroup {
                            name,
                            order,
                            is_two_group,
                            psl2_exponent,
                            two_generated_with_involution,
                        },
                    );
                }
                other => return Err(err(format!("unknown record type {other:?}"))),
            }
        }
        catalog.check_references()?;
        Ok(catalog)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    fn check_references(&self) -> Result<(), CatalogError> {
        for record in self.records.values() {
            for q in record.quotients.iter().chain(&record.isomorphic) {
                if !self.contains(q) {
                    return Err(CatalogError::Dangling {
                        from: record.group_ref(),
                        to: q.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, r: &GroupRef) -> bool {
        match r {
            GroupRef::Transitive { degree, index } => self.records.contains_key(&(*degree, *index)),
            GroupRef::Named(name) => self.named.contains_key(name),
        }
    }

    pub fn record(&self, degree: u32, index: u32) -> Option<&TransitiveGroupRecord> {
        self.records.get(&(degree, index))
    }

    pub fn named(&self, name: &str) -> Option<&NamedGroup> {
        self.named.get(name)
    }

    /// Records of one degree, ordered by T-index.
    pub fn degree(&self, degree: u32) -> impl Iterator<Item = &TransitiveGroupRecord> {
        self.records
            .range((degree, 0)..=(degree, u32::MAX))
            .map(|(_, r)| r)
    }

    pub fn records(&self) -> impl Iterator<Item = &TransitiveGroupRecord> {
        self.records.values()
    }

    pub fn degrees(&self) -> BTreeSet<u32> {
        self.records.keys().map(|(d, _)| *d).collect()
    }

    pub fn count_by_degree(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for (d, _) in self.records.keys() {
            *counts.entry(*d).or_insert(0) += 1;
        }
        counts
    }

    /// `(order, is_two_group, psl2 exponent)` for any resolvable reference.
    pub fn describe(&self, r: &GroupRef) -> Option<GroupFacts> {
        match r {
            GroupRef::Transitive { degree, index } => {
                self.record(*degree, *index).map(|rec| GroupFacts {
                    transitive_degree: Some(rec.degree),
                    order: rec.order,
                    is_two_group: rec.is_two_group,
                    psl2_exponent: rec.psl2_exponent,
                    two_generated_with_involution: rec.two_generated_with_involution,
                })
            }
            GroupRef::Named(name) => self.named(name).map(|g| GroupFacts {
                transitive_degree: None,
                order: g.order,
                is_two_group: g.is_two_group,
                psl2_exponent: g.psl2_exponent,
                two_generated_with_involution: g.two_generated_with_involution,
            }),
        }
    }
}

/// What the base exclusions need to know about a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFacts {
    /// Degree of a faithful transitive action, when the group is given as one.
    pub transitive_degree: Option<u32>,
    pub order: u64,
    pub is_two_group: bool,
    pub psl2_exponent: Option<u32>,
    pub two_generated_with_involution: Option<bool>,
}

impl GroupFacts {
    pub fn abstract_group(order: u64) -> Self {
        Self {
            transitive_degree: None,
            order,
            is_two_group: order.is_power_of_two(),
            psl2_exponent: None,
            two_generated_with_involution: None,
        }
    }
}

/// Which earlier result rules a group out of the Galois groups of fields
/// unramified away from 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseFact {
    /// No such fields of degree 3, 5, 6 or 7.
    Degree3567,
    /// Below degree 9 the Galois group is a 2-group.
    SmallDegreeNonTwoGroup,
    /// Groups of order below 272 are 2-groups.
    SmallOrderNonTwoGroup,
    /// `PSL(2, 2^j)` never occurs.
    Psl2PowerOfTwo,
    /// 2-groups must be generated by two elements, one an involution.
    TwoGroupGeneration,
}

impl fmt::Display for BaseFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseFact::Degree3567 => "no fields of degree 3, 5, 6, 7",
            BaseFact::SmallDegreeNonTwoGroup => "degree <= 8 forces a 2-group",
            BaseFact::SmallOrderNonTwoGroup => "order < 272 forces a 2-group",
            BaseFact::Psl2PowerOfTwo => "PSL(2,2^j) does not occur",
            BaseFact::TwoGroupGeneration => "2-group not 2-generated with an involution",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "fact")]
pub enum BaseVerdict {
    Impossible(BaseFact),
    Unknown,
}

/// The exclusions that depend only on the degree of a transitive action.
pub fn degree_exclusion(degree: u32, is_two_group: bool) -> Option<BaseFact> {
    if matches!(degree, 3 | 5 | 6 | 7) {
        Some(BaseFact::Degree3567)
    } else if degree <= 8 && !is_two_group {
        Some(BaseFact::SmallDegreeNonTwoGroup)
    } else {
        None
    }
}

/// Applies the earlier exclusion results to a group.
pub fn base_exclusion(g: &GroupFacts) -> BaseVerdict {
    use BaseFact::*;
    if let Some(fact) = g
        .transitive_degree
        .and_then(|d| degree_exclusion(d, g.is_two_group))
    {
        return BaseVerdict::Impossible(fact);
    }
    if g.order < 272 && !g.is_two_group {
        return BaseVerdict::Impossible(SmallOrderNonTwoGroup);
    }
    if g.psl2_exponent.is_some_and(|j| j >= 1) {
        return BaseVerdict::Impossible(Psl2PowerOfTwo);
    }
    if g.is_two_group && g.two_generated_with_involution == Some(false) {
        return BaseVerdict::Impossible(TwoGroupGeneration);
    }
    BaseVerdict::Unknown
}

/// A few abstract groups by conventional name, for quick checks.
pub fn well_known(name: &str) -> Option<GroupFacts> {
    let t = |degree: u32, order: u64| GroupFacts {
        transitive_degree: Some(degree),
        ..GroupFacts::abstract_group(order)
    };
    let psl = |j: u32| {
        let q = 1u64 << j;
        GroupFacts {
            psl2_exponent: Some(j),
            ..GroupFacts::abstract_group(q * (q * q - 1))
        }
    };
    Some(match name {
        "C2" => t(2, 2),
        "C3" => t(3, 3),
        "S3" => t(3, 6),
        "C4" => t(4, 4),
        "V4" => t(4, 4),
        "D4" => t(4, 8),
        "A4" => t(4, 12),
        "S4" => t(4, 24),
        "C5" => t(5, 5),
        "A5" => t(5, 60),
        "S5" => t(5, 120),
        "C7" => t(7, 7),
        "PSL(2,4)" => psl(2),
        "PSL(2,8)" => psl(3),
        "PSL(2,16)" => psl(4),
        "PSL(2,32)" => psl(5),
        "M11" => t(11, 7920),
        "M12" => t(12, 95040),
        "PSL(3,3)" => t(13, 5616),
        _ => return None,
    })
}
