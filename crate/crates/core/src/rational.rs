//! Exact rationals and small integer helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rational = BigRational;

/// `num/den` in lowest terms. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `a/b`, or `a` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `a`, `-a` or `a/b`. Decimals are rejected.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) || den.starts_with('-') {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Parses a finite decimal such as `4.002` into the exact rational `4002/1000`.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = format!("{int}{frac}").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(Rational::new(num, den))
}

/// `p`-adic valuation of a positive integer.
pub fn ord_p(p: u64, mut n: u64) -> u32 {
    assert!(p >= 2 && n >= 1, "ord_p needs p >= 2 and n >= 1");
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

/// Serialize a rational as its `a/b` string.
pub mod serde_fraction {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad fraction {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("97/24"), Some(rat(97, 24)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-3"), Some(rat(-3, 1)));
        assert_eq!(parse_rational("4.5"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(format_rational(&rat(8, 2)), "4");
        assert_eq!(format_rational(&rat(141, 32)), "141/32");
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("4.002"), Some(rat(4002, 1000)));
        assert_eq!(parse_decimal("16"), Some(rat(16, 1)));
        assert_eq!(parse_decimal("4.0e1"), None);
        assert_eq!(parse_decimal(".5"), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(ord_p(2, 144), 4);
        assert_eq!(ord_p(2, 5616), 4);
        assert_eq!(ord_p(2, 1), 0);
        assert_eq!(ord_p(3, 81), 4);
    }
}
