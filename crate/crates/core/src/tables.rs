//! Reference data: unconditional root-discriminant lower bounds, octic
//! maximum slope contents and per-degree local caps for 2-adic factors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::Serialize;
use thiserror::Error;

use crate::rational::{parse_decimal, Rational};
use crate::slope::{SlopeContent, SlopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("gms {0} is at or above every tabulated threshold; no order bound available")]
    NoBound(String),
    #[error("no octic content with {slopes} wild slopes under constraint {constraint}")]
    UnsupportedOctic {
        slopes: usize,
        constraint: OcticConstraint,
    },
    #[error("sextic factors are not capped; replace them with their twin algebra")]
    Sextic,
    #[error("no cap for a degree-{degree} factor of class {class}")]
    UnknownCap { degree: u32, class: String },
    #[error("unknown cap class {0:?}")]
    UnknownClass(String),
    #[error("line {line}: {message}")]
    Override { line: usize, message: String },
    #[error(transparent)]
    Slope(#[from] SlopeError),
}

/// One row of the root-discriminant table: every number field of degree at
/// least `degree` has root discriminant at least `rd_value`, so a field
/// unramified away from 2 with such a degree has `gms_2 >= threshold`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RdBoundEntry {
    #[serde(with = "crate::rational::serde_fraction")]
    pub gms2_threshold: Rational,
    pub rd_value: &'static str,
    pub degree: u64,
}

impl RdBoundEntry {
    /// `2^threshold <= rd`, decided exactly as `2^a <= rd^b` for
    /// `threshold = a/b`.
    pub fn threshold_below_log2_rd(&self) -> bool {
        let rd = parse_decimal(self.rd_value).expect("table decimals parse");
        let a = self.gms2_threshold.numer();
        let b: usize = self
            .gms2_threshold
            .denom()
            .try_into()
            .expect("small denominator");
        let a: usize = a.try_into().expect("small numerator");
        let lhs: BigInt = Pow::pow(BigInt::from(2), a) * Pow::pow(rd.denom(), b);
        let rhs: BigInt = Pow::pow(rd.numer(), b);
        lhs <= rhs
    }
}

const RD_ROWS: [(&str, &str, u64); 8] = [
    ("4.002", "16.032", 88),
    ("4.066", "16.756", 110),
    ("4.216", "18.597", 220),
    ("4.231", "18.788", 240),
    ("4.303", "19.742", 400),
    ("4.428", "21.535", 2400),
    ("4.449", "21.843", 4800),
    ("4.460", "22.021", 8862),
];

/// The eight unconditional bound rows, thresholds as exact decimals.
pub fn rd_bound_table() -> Vec<RdBoundEntry> {
    RD_ROWS
        .iter()
        .map(|&(g, rd, n)| RdBoundEntry {
            gms2_threshold: parse_decimal(g).expect("table decimals parse"),
            rd_value: rd,
            degree: n,
        })
        .collect()
}

/// Smallest tabulated degree `n` whose threshold exceeds `g`.
///
/// A field unramified away from 2 whose Galois closure has `gms_2 <= g` has
/// closure degree `< n`, so its Galois group has order `< n`.
pub fn order_bound_for_gms(g: &Rational) -> Result<u64, TableError> {
    rd_bound_table()
        .into_iter()
        .find(|row| row.gms2_threshold > *g)
        .map(|row| row.degree)
        .ok_or_else(|| TableError::NoBound(g.to_string()))
}

/// Side conditions on the octic factor used in the 7+ slope case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OcticConstraint {
    None,
    /// 5 is not a slope.
    No5,
    /// 5 is a slope but 17/4 is not.
    No17Over4With5,
    /// Both 17/4 and 5 are slopes.
    Both17Over4And5,
}

impl OcticConstraint {
    pub const ALL: [OcticConstraint; 4] = [
        OcticConstraint::None,
        OcticConstraint::No5,
        OcticConstraint::No17Over4With5,
        OcticConstraint::Both17Over4And5,
    ];

    fn tag(self) -> &'static str {
        match self {
            OcticConstraint::None => "none",
            OcticConstraint::No5 => "no-5",
            OcticConstraint::No17Over4With5 => "no-17/4-with-5",
            OcticConstraint::Both17Over4And5 => "both-17/4-and-5",
        }
    }
}

impl fmt::Display for OcticConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for OcticConstraint {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| TableError::UnknownClass(s.to_string()))
    }
}

/// Maximal slope content for a 2-adic octic with the given number of wild
/// slopes in its Galois closure (3 to 6), or under a case constraint.
pub fn octic_max_content(
    num_slopes: usize,
    constraint: OcticConstraint,
) -> Result<SlopeContent, TableError> {
    let text = match (constraint, num_slopes) {
        (OcticConstraint::None, 3) => "[3,4,5]_1",
        (OcticConstraint::None, 4) => "[2,3,4,5]_1",
        (OcticConstraint::None, 5) => "[2,3,7/2,4,5]_1",
        (OcticConstraint::None, 6) => "[2,3,7/2,4,17/4,5]_1",
        (OcticConstraint::No5, 5) => "[3,7/2,4,17/4,19/4]_1",
        (OcticConstraint::No17Over4With5, 5) => "[2,3,7/2,4,5]_1",
        (OcticConstraint::Both17Over4And5, 6) => "[2,3,7/2,4,17/4,5]_1",
        (constraint, slopes) => {
            return Err(TableError::UnsupportedOctic { slopes, constraint });
        }
    };
    Ok(text.parse()?)
}

/// Kind of local factor a cap applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CapClass {
    /// `Q_2` itself.
    Trivial,
    Quadratic,
    /// Tamely ramified factor of odd degree.
    Tame,
    /// Quartic whose Galois closure has a 2-group as Galois group.
    QuarticTwoGroup,
    /// Same, restricted to two wild slopes.
    QuarticTwoGroupTwoSlopes,
    /// Quartic whose Galois group (A4 or S4) is not a 2-group.
    QuarticNonTwoGroup,
    Octic {
        slopes: usize,
        constraint: OcticConstraint,
    },
}

impl fmt::Display for CapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapClass::Trivial => f.write_str("trivial"),
            CapClass::Quadratic => f.write_str("quadratic"),
            CapClass::Tame => f.write_str("tame"),
            CapClass::QuarticTwoGroup => f.write_str("quartic-2group"),
            CapClass::QuarticTwoGroupTwoSlopes => f.write_str("quartic-2group-2"),
            CapClass::QuarticNonTwoGroup => f.write_str("quartic-non-2group"),
            CapClass::Octic {
                slopes,
                constraint: OcticConstraint::None,
            } => write!(f, "octic-{slopes}"),
            CapClass::Octic { slopes, constraint } => write!(f, "octic-{slopes}-{constraint}"),
        }
    }
}

impl FromStr for CapClass {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let class = match s {
            "trivial" => CapClass::Trivial,
            "quadratic" => CapClass::Quadratic,
            "tame" => CapClass::Tame,
            "quartic-2group" => CapClass::QuarticTwoGroup,
            "quartic-2group-2" => CapClass::QuarticTwoGroupTwoSlopes,
            "quartic-non-2group" => CapClass::QuarticNonTwoGroup,
            _ => {
                let rest = s
                    .strip_prefix("octic-")
                    .ok_or_else(|| TableError::UnknownClass(s.to_string()))?;
                let (count, constraint) = match rest.split_once('-') {
                    Some((count, tag)) => (count, tag.parse()?),
                    None => (rest, OcticConstraint::None),
                };
                let slopes = count
                    .parse()
                    .map_err(|_| TableError::UnknownClass(s.to_string()))?;
                CapClass::Octic { slopes, constraint }
            }
        };
        Ok(class)
    }
}

/// Maximal slope contents for local factors, keyed by `(degree, class)`.
///
/// Below degree 8 every 2-adic field has all Galois slopes at most 4; the
/// defaults encode the specific maxima the case analysis uses. Entries can
/// be replaced from an override file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapTable {
    caps: BTreeMap<(u32, CapClass), SlopeContent>,
}

impl Default for CapTable {
    fn default() -> Self {
        let mut caps = BTreeMap::new();
        let mut put = |d: u32, class: CapClass, text: &str| {
            caps.insert((d, class), text.parse().expect("embedded caps are valid"));
        };
        put(1, CapClass::Trivial, "[]_1");
        put(2, CapClass::Quadratic, "[3]_1");
        put(3, CapClass::Tame, "[]_3");
        put(4, CapClass::QuarticTwoGroup, "[2,3,4]_1");
        put(4, CapClass::QuarticTwoGroupTwoSlopes, "[3,4]_1");
        put(4, CapClass::QuarticNonTwoGroup, "[8/3,8/3]_3");
        put(5, CapClass::Tame, "[]_5");
        put(7, CapClass::Tame, "[]_7");
        let mut table = Self { caps };
        for slopes in 3..=6 {
            table.insert_octic(slopes, OcticConstraint::None);
        }
        table.insert_octic(5, OcticConstraint::No5);
        table.insert_octic(5, OcticConstraint::No17Over4With5);
        table.insert_octic(6, OcticConstraint::Both17Over4And5);
        table
    }
}

impl CapTable {
    fn insert_octic(&mut self, slopes: usize, constraint: OcticConstraint) {
        let content = octic_max_content(slopes, constraint).expect("tabulated octic");
        self.caps
            .insert((8, CapClass::Octic { slopes, constraint }), content);
    }

    /// Cap for a degree-`d` factor of the given class.
    pub fn local_cap(&self, d: u32, class: CapClass) -> Result<&SlopeContent, TableError> {
        if d == 6 {
            return Err(TableError::Sextic);
        }
        self.caps.get(&(d, class)).ok_or(TableError::UnknownCap {
            degree: d,
            class: class.to_string(),
        })
    }

    /// All `(class, cap)` pairs for local degree `d`.
    pub fn caps_of_degree(&self, d: u32) -> impl Iterator<Item = (CapClass, &SlopeContent)> {
        self.caps
            .range((d, CapClass::Trivial)..)
            .take_while(move |((deg, _), _)| *deg == d)
            .map(|((_, class), sc)| (*class, sc))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, CapClass, &SlopeContent)> {
        self.caps.iter().map(|((d, c), sc)| (*d, *c, sc))
    }

    /// Applies `cap <degree> <class> <slope-content>` lines. `#` starts a
    /// comment; blank lines are skipped.
    pub fn apply_overrides(&mut self, text: &str) -> Result<usize, TableError> {
        let mut applied = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| TableError::Override {
                line: i + 1,
                message,
            };
            let mut parts = line.splitn(4, char::is_whitespace);
            if parts.next() != Some("cap") {
                return Err(err("expected 'cap <degree> <class> <content>'".into()));
            }
            let degree: u32 = parts
                .next()
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| err("bad degree".into()))?;
            let class: CapClass = parts
                .next()
                .ok_or_else(|| err("missing class".into()))?
                .parse()
                .map_err(|e: TableError| err(e.to_string()))?;
            let content: SlopeContent = parts
                .next()
                .ok_or_else(|| err("missing slope content".into()))?
                .trim()
                .parse()
                .map_err(|e: SlopeError| err(e.to_string()))?;
            if degree == 6 {
                return Err(err(TableError::Sextic.to_string()));
            }
            self.caps.insert((degree, class), content);
            applied += 1;
        }
        Ok(applied)
    }
}

/// Cap from the default table.
pub fn local_cap(d: u32, class: CapClass) -> Result<SlopeContent, TableError> {
    CapTable::default().local_cap(d, class).cloned()
}
