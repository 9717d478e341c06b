//! Slope contents `[s_1,...,s_m]_t^f` and the Galois mean slope.
//!
//! A [`SlopeContent`] records the wild slopes (upper-numbering jumps above 1,
//! repeated with multiplicity), the tame degree `t` and the residue degree `f`
//! of a finite Galois extension of the `p`-adic numbers. The prime is carried
//! with the value but is never written in the textual form; parsers take it
//! as a parameter.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, Rational};

/// Prime used when none is given.
pub const DEFAULT_PRIME: u64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("wild slope {0} is not greater than 1")]
    SlopeNotWild(String),
    #[error("tame degree {tame} is divisible by the prime {p}")]
    TameNotPrimeToP { tame: u64, p: u64 },
    #[error("{what} must be a positive integer")]
    NotPositive { what: &'static str },
    #[error("{0} is not a prime")]
    NotPrime(u64),
}

/// The slope content of a Galois extension of `Q_p`.
///
/// Equality is componentwise on `(p, wild, tame, residue)`. Use
/// [`SlopeContent::same_gms`] to compare by Galois mean slope.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlopeContent {
    p: u64,
    wild: Vec<Rational>,
    tame: u64,
    residue: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl SlopeContent {
    /// Builds a validated content. The wild slopes are sorted.
    pub fn new(
        p: u64,
        mut wild: Vec<Rational>,
        tame: u64,
        residue: u64,
    ) -> Result<Self, SlopeError> {
        if !is_prime(p) {
            return Err(SlopeError::NotPrime(p));
        }
        if tame == 0 {
            return Err(SlopeError::NotPositive {
                what: "tame degree",
            });
        }
        if residue == 0 {
            return Err(SlopeError::NotPositive {
                what: "residue degree",
            });
        }
        if tame.gcd(&p) != 1 {
            return Err(SlopeError::TameNotPrimeToP { tame, p });
        }
        if let Some(s) = wild.iter().find(|s| **s <= Rational::one()) {
            return Err(SlopeError::SlopeNotWild(format_rational(s)));
        }
        wild.sort();
        Ok(Self {
            p,
            wild,
            tame,
            residue,
        })
    }

    /// Content with no wild slopes.
    pub fn tame_only(p: u64, tame: u64) -> Result<Self, SlopeError> {
        Self::new(p, Vec::new(), tame, 1)
    }

    /// Parses `text` with the given prime. See [`parse_slope_content`].
    pub fn parse_with_prime(text: &str, p: u64) -> Result<Self, SlopeError> {
        parse_slope_content(text, p)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn wild(&self) -> &[Rational] {
        &self.wild
    }

    pub fn tame(&self) -> u64 {
        self.tame
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    /// Number of wild slopes `m`.
    pub fn wild_count(&self) -> usize {
        self.wild.len()
    }

    pub fn max_slope(&self) -> Option<&Rational> {
        self.wild.last()
    }

    /// Same content with a different residue degree.
    pub fn with_residue(&self, residue: u64) -> Result<Self, SlopeError> {
        Self::new(self.p, self.wild.clone(), self.tame, residue)
    }

    /// Galois mean slope: the exponent `g` with `rd(F) = p^g`.
    ///
    /// `(1/p^m) * (sum_i p^(i-1) (p-1) s_i + (t-1)/t)`. The residue degree
    /// does not enter.
    pub fn gms(&self) -> Rational {
        let p = BigInt::from(self.p);
        let pm1 = Rational::from_integer(&p - 1u32);
        let mut sum = Rational::zero();
        let mut weight = BigInt::one();
        for s in &self.wild {
            sum += Rational::from_integer(weight.clone()) * &pm1 * s;
            weight *= &p;
        }
        let t = BigInt::from(self.tame);
        sum += Rational::new(&t - 1u32, t);
        sum / Rational::from_integer(Pow::pow(&p, self.wild.len()))
    }

    /// True when both contents have the same Galois mean slope.
    pub fn same_gms(&self, other: &Self) -> bool {
        self.gms() == other.gms()
    }

    /// `m_s`: how many wild slopes equal `s`.
    pub fn multiplicity(&self, s: &Rational) -> Result<usize, SlopeError> {
        check_wild(s)?;
        Ok(self.wild.iter().filter(|x| *x == s).count())
    }

    /// `m_{>=s}`: how many wild slopes are at least `s`.
    pub fn multiplicity_ge(&self, s: &Rational) -> Result<usize, SlopeError> {
        check_wild(s)?;
        Ok(self.wild.iter().filter(|x| *x >= s).count())
    }

    pub(crate) fn count_eq(&self, s: &Rational) -> usize {
        self.wild.iter().filter(|x| *x == s).count()
    }

    pub(crate) fn count_ge(&self, s: &Rational) -> usize {
        self.wild.iter().filter(|x| *x >= s).count()
    }

    /// The factor `p^gms` this content contributes to a Galois root
    /// discriminant.
    pub fn grd_factor(&self) -> GrdFactor {
        GrdFactor {
            p: self.p,
            exponent: self.gms(),
        }
    }
}

fn check_wild(s: &Rational) -> Result<(), SlopeError> {
    if *s <= Rational::one() {
        Err(SlopeError::SlopeNotWild(format_rational(s)))
    } else {
        Ok(())
    }
}

/// One prime's contribution `p^exponent` to a Galois root discriminant.
///
/// Comparisons against thresholds are made on exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrdFactor {
    pub p: u64,
    #[serde(with = "crate::rational::serde_fraction")]
    pub exponent: Rational,
}

impl fmt::Display for GrdFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^({})", self.p, format_rational(&self.exponent))
    }
}

impl fmt::Display for SlopeContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.wild.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_rational(s))?;
        }
        write!(f, "]_{}", self.tame)?;
        if self.residue > 1 {
            write!(f, "^{}", self.residue)?;
        }
        Ok(())
    }
}

/// Parses with the default prime 2.
impl FromStr for SlopeContent {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_slope_content(s, DEFAULT_PRIME)
    }
}

impl Serialize for SlopeContent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Canonical text form, e.g. `[2,3,7/2]_9` or `[17/4]_1^2`.
pub fn format_slope_content(sc: &SlopeContent) -> String {
    sc.to_string()
}

/// Parses `content := "[" slopes? "]" "_" posint ("^" posint)?` where
/// `slopes := slope ("," slope)*` and `slope := posint ("/" posint)?`.
/// Whitespace is allowed between tokens. Decimals are rejected.
pub fn parse_slope_content(text: &str, p: u64) -> Result<SlopeContent, SlopeError> {
    let mut cur = Cursor::new(text);
    cur.expect(b'[')?;
    let mut wild = Vec::new();
    if cur.peek() != Some(b']') {
        loop {
            wild.push(cur.slope()?);
            match cur.peek() {
                Some(b',') => cur.bump(),
                _ => break,
            }
        }
    }
    cur.expect(b']')?;
    cur.expect(b'_')?;
    let (_, tame) = cur.posint()?;
    let residue = if cur.peek() == Some(b'^') {
        cur.bump();
        cur.posint()?.1
    } else {
        1
    };
    cur.skip_ws();
    if cur.pos < cur.bytes.len() {
        return Err(cur.error("trailing input"));
    }
    SlopeContent::new(p, wild, tame, residue)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn error(&self, message: impl Into<String>) -> SlopeError {
        SlopeError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SlopeError> {
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected '{}', found '{}'", c as char, x as char))),
            None => Err(self.error(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn posint(&mut self) -> Result<(usize, u64), SlopeError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a positive integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let value: u64 = digits.parse().map_err(|_| SlopeError::Syntax {
            pos: start,
            message: format!("integer {digits} out of range"),
        })?;
        if value == 0 {
            return Err(SlopeError::Syntax {
                pos: start,
                message: "expected a positive integer, found 0".into(),
            });
        }
        if self.bytes.get(self.pos) == Some(&b'.') {
            return Err(self.error("decimal slopes are not accepted; write a fraction"));
        }
        Ok((start, value))
    }

    fn slope(&mut self) -> Result<Rational, SlopeError> {
        let (_, num) = self.posint()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let (_, den) = self.posint()?;
            Ok(Rational::new(num.into(), den.into()))
        } else {
            Ok(Rational::from_integer(num.into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sc(text: &str) -> SlopeContent {
        text.parse().unwrap()
    }

    #[test]
    fn parses_paper_style_contents() {
        let a = sc("[2,3,7/2]_9");
        assert_eq!(a.wild(), &[rat(2, 1), rat(3, 1), rat(7, 2)]);
        assert_eq!((a.tame(), a.residue()), (9, 1));

        let e = sc("[]_1");
        assert!(e.wild().is_empty());
        assert_eq!((e.tame(), e.residue()), (1, 1));

        let b = sc("[4/3,4/3,3]_3");
        assert_eq!(b.wild(), &[rat(4, 3), rat(4, 3), rat(3, 1)]);
        assert_eq!(b.tame(), 3);
    }

    #[test]
    fn parse_sorts_reduces_and_skips_whitespace() {
        let a = sc(" [ 4 , 6/2 ,  7/2 ]_ 1 ^ 2 ");
        assert_eq!(a.to_string(), "[3,7/2,4]_1^2");
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(sc("[2,3,7/2]_9").to_string(), "[2,3,7/2]_9");
        assert_eq!(sc("[]_1").to_string(), "[]_1");
        let c = SlopeContent::new(2, vec![rat(17, 4)], 1, 2).unwrap();
        assert_eq!(format_slope_content(&c), "[17/4]_1^2");
        assert_eq!(sc("[17/4]_1^1").to_string(), "[17/4]_1");
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_slope_content("[2,3", 2) {
            Err(SlopeError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_slope_content("[3.5]_1", 2),
            Err(SlopeError::Syntax { .. })
        ));
        assert!(matches!(
            parse_slope_content("[3]_1 x", 2),
            Err(SlopeError::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_slope_content("[3/0]_1", 2),
            Err(SlopeError::Syntax { .. })
        ));
        assert!(matches!(
            parse_slope_content("[3]", 2),
            Err(SlopeError::Syntax { .. })
        ));
    }

    #[test]
    fn invariant_violations_are_distinct_from_syntax() {
        assert!(matches!(
            parse_slope_content("[1]_1", 2),
            Err(SlopeError::SlopeNotWild(_))
        ));
        assert!(matches!(
            parse_slope_content("[2/3]_1", 2),
            Err(SlopeError::SlopeNotWild(_))
        ));
        assert!(matches!(
            parse_slope_content("[2]_6", 2),
            Err(SlopeError::TameNotPrimeToP { tame: 6, p: 2 })
        ));
        assert!(matches!(
            parse_slope_content("[2]_6", 3),
            Err(SlopeError::TameNotPrimeToP { .. })
        ));
        assert!(parse_slope_content("[2]_5", 3).is_ok());
        assert!(matches!(
            parse_slope_content("[2]_1", 4),
            Err(SlopeError::NotPrime(4))
        ));
    }

    #[test]
    fn gms_table_values() {
        assert_eq!(sc("[3,4,5]_1").gms(), rat(31, 8));
        assert_eq!(sc("[]_1").gms(), rat(0, 1));
        assert_eq!(sc("[2,3,7/2,4,17/4,5]_1").gms(), rat(141, 32));
        assert_eq!(sc("[3,3,4,4,5]_3").gms(), rat(413, 96));
    }

    #[test]
    fn gms_tame_only_is_t_minus_one_over_t() {
        for t in [1u64, 3, 5, 7, 9, 45] {
            let c = SlopeContent::tame_only(2, t).unwrap();
            assert_eq!(c.gms(), rat(t as i64 - 1, t as i64));
        }
    }

    #[test]
    fn gms_other_prime() {
        // (1/3)(1*2*2 + 1/2) = 3/2
        let c = parse_slope_content("[2]_2", 3).unwrap();
        assert_eq!(c.gms(), rat(3, 2));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(sc("[2,3,3,4]_1").multiplicity(&rat(3, 1)).unwrap(), 2);
        assert_eq!(
            sc("[2,3,7/2,4,5]_1").multiplicity_ge(&rat(7, 2)).unwrap(),
            3
        );
        assert_eq!(sc("[]_1").multiplicity(&rat(2, 1)).unwrap(), 0);
        assert!(sc("[2]_1").multiplicity(&rat(1, 1)).is_err());
        assert!(sc("[2]_1").multiplicity_ge(&rat(1, 2)).is_err());
    }

    #[test]
    fn grd_factors() {
        assert_eq!(
            sc("[3]_1").grd_factor(),
            GrdFactor {
                p: 2,
                exponent: rat(3, 2)
            }
        );
        assert_eq!(sc("[]_1").grd_factor().exponent, rat(0, 1));
        assert_eq!(sc("[2,3,4,5]_1").grd_factor().exponent, rat(4, 1));
    }

    #[test]
    fn equality_is_componentwise_not_by_gms() {
        let a = sc("[2]_1");
        let b = sc("[2]_1^2");
        assert_ne!(a, b);
        assert!(a.same_gms(&b));
    }

    #[test]
    fn slopes_need_not_grow_by_at_most_one() {
        // Galois slope sequences may jump by more than 1 between neighbours.
        assert!(parse_slope_content("[4/3,4/3,3]_3", 2).is_ok());
    }
}
