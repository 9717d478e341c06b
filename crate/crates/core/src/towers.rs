//! Discriminant exponents and average slopes along wildly ramified towers.
//!
//! For `F/E` totally ramified of degree `p^n` with `[E : Q_p] = e f`,
//! `c(F) = p^n c(E) + f nu` where `e p^n <= nu <= p^n - 1 + n e p^n`, and the
//! average slope of `F/E` is `c(E)/(e f) + nu/((p^n - 1) e)`.
//!
//! A tower `F_0 ⊆ F_1 ⊆ ... ⊆ F_m` of degree-`p` totally ramified steps over
//! a tame base `F_0` gives `S_i <= i + p/(p-1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use serde::Serialize;
use thiserror::Error;

use crate::rational::{ord_p, Rational};
use crate::slope::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("nu = {nu} outside [{lo}, {hi}]")]
    NuOutOfRange { nu: BigInt, lo: BigInt, hi: BigInt },
    #[error("stage {stage}: nu = {nu} outside [{lo}, {hi}]")]
    StageNuOutOfRange {
        stage: usize,
        nu: BigInt,
        lo: BigInt,
        hi: BigInt,
    },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{what} must be at least 1")]
    NotPositive { what: &'static str },
    #[error("base ramification e = {e} is divisible by p = {p}")]
    WildBase { e: u64, p: u64 },
    #[error("a tame base with e = {e}, f = {f} has c0 = {expected}, got {got}")]
    BaseExponent {
        e: u64,
        f: u64,
        expected: BigInt,
        got: BigInt,
    },
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn pow(p: u64, k: u32) -> BigInt {
    Pow::pow(big(p), k)
}

/// Admissible range `(e p^n, p^n - 1 + n e p^n)` for the different exponent
/// `nu` of a totally ramified degree-`p^n` step over a field with
/// ramification index `e`.
pub fn nu_range(p: u64, n: u32, e: &BigInt) -> (BigInt, BigInt) {
    let pn = pow(p, n);
    let lo = e * &pn;
    let hi = &pn - 1 + BigInt::from(n) * e * &pn;
    (lo, hi)
}

fn check_nu(p: u64, n: u32, e: &BigInt, nu: &BigInt) -> Result<(), TowerError> {
    let (lo, hi) = nu_range(p, n, e);
    if *nu < lo || *nu > hi {
        return Err(TowerError::NuOutOfRange {
            nu: nu.clone(),
            lo,
            hi,
        });
    }
    Ok(())
}

/// `c(F) = p^n c(E) + f nu`.
pub fn disc_step(
    p: u64,
    n: u32,
    c_e: &BigInt,
    e: &BigInt,
    f: u64,
    nu: &BigInt,
) -> Result<BigInt, TowerError> {
    check_nu(p, n, e, nu)?;
    Ok(pow(p, n) * c_e + big(f) * nu)
}

/// Average slope `c(E)/(e f) + nu/((p^n - 1) e)` of the step `F/E`.
pub fn avg_slope(
    p: u64,
    n: u32,
    c_e: &BigInt,
    e: &BigInt,
    f: u64,
    nu: &BigInt,
) -> Result<Rational, TowerError> {
    check_nu(p, n, e, nu)?;
    let base = Rational::new(c_e.clone(), e * big(f));
    let step = Rational::new(nu.clone(), (pow(p, n) - 1) * e);
    Ok(base + step)
}

/// How the different exponent of a tower step is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NuChoice {
    /// Lower end of the admissible range (e.g. `x^p + pi x + pi`).
    Min,
    /// Upper end of the admissible range (e.g. `x^p + pi`).
    Max,
    Value(BigInt),
}

impl NuChoice {
    fn resolve(&self, p: u64, e: &BigInt) -> BigInt {
        let (lo, hi) = nu_range(p, 1, e);
        match self {
            NuChoice::Min => lo,
            NuChoice::Max => hi,
            NuChoice::Value(v) => v.clone(),
        }
    }
}

/// A tame base `F_0` with `[F_0 : Q_p] = e f` followed by degree-`p` totally
/// ramified steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub c0: BigInt,
    pub steps: Vec<NuChoice>,
}

impl TowerSpec {
    /// Spec whose base exponent is that of the tame base, `f (e - 1)`.
    pub fn over_tame_base(p: u64, e: u64, f: u64, steps: Vec<NuChoice>) -> Self {
        Self {
            p,
            e,
            f,
            c0: big(f) * (big(e) - 1),
            steps,
        }
    }

    fn validate(&self) -> Result<(), TowerError> {
        if !is_prime(self.p) {
            return Err(TowerError::NotPrime(self.p));
        }
        if self.e == 0 {
            return Err(TowerError::NotPositive { what: "e" });
        }
        if self.f == 0 {
            return Err(TowerError::NotPositive { what: "f" });
        }
        if self.e.gcd(&self.p) != 1 {
            return Err(TowerError::WildBase {
                e: self.e,
                p: self.p,
            });
        }
        let expected = big(self.f) * (big(self.e) - 1);
        if self.c0 != expected {
            return Err(TowerError::BaseExponent {
                e: self.e,
                f: self.f,
                expected,
                got: self.c0.clone(),
            });
        }
        Ok(())
    }
}

/// Exponents `c_0..c_m`, average slopes `S_1..S_m`, chosen `nu_1..nu_m` and
/// the first differences `S_{i+1} - S_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerTrace {
    pub p: u64,
    pub e: u64,
    #[serde(serialize_with = "ser_ints")]
    pub exponents: Vec<BigInt>,
    #[serde(serialize_with = "ser_ints")]
    pub nus: Vec<BigInt>,
    #[serde(serialize_with = "ser_fracs")]
    pub slopes: Vec<Rational>,
    #[serde(serialize_with = "ser_fracs")]
    pub differences: Vec<Rational>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_fracs<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl TowerTrace {
    /// Right-hand side of `S_{i+1} - S_i = (nu_{i+1} - nu_i)/((p-1) p^i e)`,
    /// for `i = 1..m-1`.
    pub fn predicted_differences(&self) -> Vec<Rational> {
        self.nus
            .windows(2)
            .enumerate()
            .map(|(k, w)| {
                let i = k as u32 + 1;
                Rational::new(
                    &w[1] - &w[0],
                    big(self.p - 1) * pow(self.p, i) * big(self.e),
                )
            })
            .collect()
    }
}

/// Runs the tower recursion. Stage `i` is a degree-`p` step over a field of
/// ramification index `e p^(i-1)`.
pub fn simulate_tower(spec: &TowerSpec) -> Result<TowerTrace, TowerError> {
    spec.validate()?;
    let p = spec.p;
    let mut exponents = vec![spec.c0.clone()];
    let mut nus = Vec::with_capacity(spec.steps.len());
    let mut slopes = Vec::with_capacity(spec.steps.len());
    let mut e_stage = big(spec.e);
    for (k, choice) in spec.steps.iter().enumerate() {
        let nu = choice.resolve(p, &e_stage);
        let c_prev = exponents.last().expect("c0 present");
        let slope = avg_slope(p, 1, c_prev, &e_stage, spec.f, &nu).map_err(|err| match err {
            TowerError::NuOutOfRange { nu, lo, hi } => TowerError::StageNuOutOfRange {
                stage: k + 1,
                nu,
                lo,
                hi,
            },
            other => other,
        })?;
        let c = disc_step(p, 1, c_prev, &e_stage, spec.f, &nu)?;
        exponents.push(c);
        slopes.push(slope);
        nus.push(nu);
        e_stage *= p;
    }
    let differences = slopes.windows(2).map(|w| &w[1] - &w[0]).collect();
    Ok(TowerTrace {
        p,
        e: spec.e,
        exponents,
        nus,
        slopes,
        differences,
    })
}

/// `i + p/(p-1)`: bound on the `i`-th wild slope of a Galois extension.
pub fn max_slope_bound(p: u64, i: u64) -> Rational {
    Rational::from_integer(big(i)) + Rational::new(big(p), big(p - 1))
}

/// `p/(p-1) + ord_p(n)`: bound on every slope of the Galois closure of a
/// degree-`n` extension.
pub fn closure_slope_bound(p: u64, n: u64) -> Rational {
    Rational::new(big(p), big(p - 1)) + Rational::from_integer(big(ord_p(p, n) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn ranges() {
        assert_eq!(nu_range(2, 1, &b(1)), (b(2), b(3)));
        assert_eq!(nu_range(2, 3, &b(1)), (b(8), b(31)));
        assert_eq!(nu_range(3, 1, &b(2)), (b(6), b(8)));
    }

    #[test]
    fn discriminant_steps() {
        // ramified quadratic extensions of Q_2 have c in {2, 3}
        assert_eq!(disc_step(2, 1, &b(0), &b(1), 1, &b(3)).unwrap(), b(3));
        assert_eq!(disc_step(2, 1, &b(0), &b(1), 1, &b(2)).unwrap(), b(2));
        assert_eq!(disc_step(2, 1, &b(3), &b(1), 1, &b(3)).unwrap(), b(9));
        assert!(matches!(
            disc_step(2, 1, &b(0), &b(1), 1, &b(4)),
            Err(TowerError::NuOutOfRange { .. })
        ));
    }

    #[test]
    fn average_slopes() {
        assert_eq!(avg_slope(2, 1, &b(0), &b(1), 1, &b(3)).unwrap(), rat(3, 1));
        assert_eq!(avg_slope(2, 1, &b(0), &b(1), 1, &b(2)).unwrap(), rat(2, 1));
        assert_eq!(avg_slope(2, 1, &b(2), &b(1), 2, &b(2)).unwrap(), rat(3, 1));
        assert!(avg_slope(2, 1, &b(0), &b(1), 1, &b(1)).is_err());
    }

    #[test]
    fn maximal_tower_hits_the_bound() {
        let spec = TowerSpec::over_tame_base(2, 1, 1, vec![NuChoice::Max; 5]);
        let trace = simulate_tower(&spec).unwrap();
        let expected: Vec<_> = (3..8).map(|s| rat(s, 1)).collect();
        assert_eq!(trace.slopes, expected);
        assert!(trace.differences.iter().all(|d| *d == rat(1, 1)));
        assert_eq!(
            trace.exponents,
            vec![b(0), b(3), b(11), b(31), b(79), b(191)]
        );
    }

    #[test]
    fn minimal_tower_starts_at_two() {
        let spec = TowerSpec::over_tame_base(2, 1, 1, vec![NuChoice::Min; 3]);
        let trace = simulate_tower(&spec).unwrap();
        assert_eq!(trace.slopes[0], rat(2, 1));
    }

    #[test]
    fn empty_tower() {
        let spec = TowerSpec::over_tame_base(2, 3, 2, vec![]);
        let trace = simulate_tower(&spec).unwrap();
        assert_eq!(trace.exponents, vec![b(4)]);
        assert!(trace.slopes.is_empty());
    }

    #[test]
    fn stage_violation_names_the_stage() {
        let spec = TowerSpec::over_tame_base(2, 1, 1, vec![NuChoice::Max, NuChoice::Value(b(3))]);
        match simulate_tower(&spec) {
            Err(TowerError::StageNuOutOfRange { stage, lo, hi, .. }) => {
                assert_eq!((stage, lo, hi), (2, b(4), b(5)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_specs() {
        let mut spec = TowerSpec::over_tame_base(2, 2, 1, vec![]);
        assert!(matches!(
            simulate_tower(&spec),
            Err(TowerError::WildBase { .. })
        ));
        spec = TowerSpec::over_tame_base(2, 3, 1, vec![]);
        spec.c0 = b(0);
        assert!(matches!(
            simulate_tower(&spec),
            Err(TowerError::BaseExponent { .. })
        ));
        spec = TowerSpec::over_tame_base(6, 1, 1, vec![]);
        assert!(matches!(
            simulate_tower(&spec),
            Err(TowerError::NotPrime(6))
        ));
    }

    #[test]
    fn slope_bounds() {
        for i in 1..6 {
            assert_eq!(max_slope_bound(2, i), rat(i as i64 + 2, 1));
        }
        assert_eq!(max_slope_bound(3, 1), rat(5, 2));
        assert_eq!(max_slope_bound(2, 3), rat(5, 1));
        assert_eq!(closure_slope_bound(2, 12), rat(4, 1));
        assert_eq!(closure_slope_bound(2, 14), rat(3, 1));
        assert_eq!(closure_slope_bound(2, 7), rat(2, 1));
        assert_eq!(closure_slope_bound(3, 9), rat(7, 2));
    }
}
