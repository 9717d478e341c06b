//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn catalog_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/groups.dat")
}

/// Root discriminant exponent of a Galois extension of `Q_p` from its
/// ramification filtration: `p^m` wild part with upper breaks `s_i - 1`,
/// tame index `t`. Lower breaks come from the Herbrand function and the
/// different from Hilbert's formula.
pub fn gms_via_different(p: u64, slopes: &[Q], t: u64) -> Q {
    let mut upper: Vec<Q> = slopes.iter().map(|s| s - Q::one()).collect();
    upper.sort();
    let m = upper.len() as u32;
    let pb = BigInt::from(p);
    let tb = BigInt::from(t);
    let pm = num_traits::pow(pb.clone(), m as usize);
    let order = &pm * &tb;
    // [-1, 0]: the whole inertia group
    let mut different = Q::from_integer(&order - BigInt::one());
    let mut lower_prev = Q::zero();
    let mut upper_prev = Q::zero();
    for (k, u) in upper.iter().enumerate() {
        // index of G_y in G_0 on this piece is t p^k
        let index = Q::from_integer(&tb * num_traits::pow(pb.clone(), k));
        let lower = &lower_prev + (u - &upper_prev) * &index;
        let size = num_traits::pow(pb.clone(), (m as usize) - k);
        different += (&lower - &lower_prev) * Q::from_integer(size - BigInt::one());
        lower_prev = lower;
        upper_prev = u.clone();
    }
    different / Q::from_integer(order)
}

/// Parses `[a,b/c,...]_t` without the library, for cross-checks.
pub fn parse_plain(text: &str) -> (Vec<Q>, u64) {
    let text = text.trim();
    let (inside, tail) = text[1..].split_once(']').expect("closing bracket");
    let tame_part = tail.trim_start_matches('_');
    let tame_part = tame_part.split('^').next().unwrap();
    let t = tame_part.parse().unwrap();
    let slopes = inside
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| match s.trim().split_once('/') {
            Some((a, b)) => q(a.parse().unwrap(), b.parse().unwrap()),
            None => q(s.trim().parse().unwrap(), 1),
        })
        .collect();
    (slopes, t)
}

pub fn counts(slopes: &[Q]) -> BTreeMap<Q, usize> {
    let mut m = BTreeMap::new();
    for s in slopes {
        *m.entry(s.clone()).or_insert(0) += 1;
    }
    m
}

/// Multiplicity constraints of a compositum content `beta` of `a` and `b`,
/// checked at every rational in a fine grid as well as at the slopes.
pub fn compositum_ok(a: &[Q], b: &[Q], beta: &[Q]) -> bool {
    let mut probes: Vec<Q> = a.iter().chain(b).chain(beta).cloned().collect();
    for k in 5..=48 {
        probes.push(q(k, 8));
    }
    probes.sort();
    probes.dedup();
    let eq = |v: &[Q], s: &Q| v.iter().filter(|x| *x == s).count();
    let ge = |v: &[Q], s: &Q| v.iter().filter(|x| *x >= s).count();
    probes
        .iter()
        .filter(|s| **s > Q::one())
        .all(|s| eq(beta, s) >= eq(a, s).max(eq(b, s)) && ge(beta, s) <= ge(a, s) + ge(b, s))
}

pub fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Groups left for the refined order bound in each degree, with orders.
/// 12T248 is absent: its sextic quotient 6T13 removes it one stage earlier.
pub fn expected_m_refined() -> BTreeMap<u32, Vec<(u32, u64)>> {
    let mut twelve = vec![(215, 1296), (216, 1296)];
    twelve.extend([244, 245, 246, 247, 249].map(|j| (j, 2592)));
    twelve.extend([262, 263, 264].map(|j| (j, 5184)));
    BTreeMap::from([
        (9, vec![(19, 144)]),
        (
            10,
            vec![(28, 400), (30, 720), (31, 720), (33, 800), (35, 1440)],
        ),
        (11, vec![]),
        (12, twelve),
        (13, vec![(7, 5616)]),
        (14, vec![(16, 336)]),
        (15, vec![]),
    ])
}
