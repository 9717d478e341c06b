//! Upper bounds for the slope content of a compositum of Galois extensions.
//!
//! If `F_1` and `F_2` have slope contents `a` and `b`, then the content
//! `beta` of `F_1 F_2` satisfies, for every `s > 1`,
//!
//! * `m_s(beta) >= max(m_s(a), m_s(b))`,
//! * `m_{>=s}(beta) <= m_{>=s}(a) + m_{>=s}(b)`,
//!
//! and its tame degree is `lcm(t_a, t_b)`. The *crude bound* concatenates
//! the wild slopes. Capping the number of wild slopes removes slopes that
//! both operands share, smallest first, which keeps the Galois mean slope
//! as large as the constraints allow.

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

use crate::rational::Rational;
use crate::slope::{SlopeContent, SlopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error(
        "cannot cap at {requested} wild slopes: the compositum keeps at least {floor} (shared slopes only cover {removable} removals)"
    )]
    Infeasible {
        requested: usize,
        floor: usize,
        removable: usize,
    },
    #[error("nothing to compose")]
    Empty,
    #[error(transparent)]
    Slope(#[from] SlopeError),
}

fn same_prime(a: &SlopeContent, b: &SlopeContent) -> Result<(), ComposeError> {
    if a.prime() != b.prime() {
        return Err(ComposeError::PrimeMismatch(a.prime(), b.prime()));
    }
    Ok(())
}

/// Crude upper bound: merged wild slopes, `lcm` of tame and residue degrees.
pub fn crude_compose(a: &SlopeContent, b: &SlopeContent) -> Result<SlopeContent, ComposeError> {
    same_prime(a, b)?;
    let wild = a.wild().iter().chain(b.wild()).cloned().collect();
    Ok(SlopeContent::new(
        a.prime(),
        wild,
        a.tame().lcm(&b.tame()),
        a.residue().lcm(&b.residue()),
    )?)
}

/// Distinct slope values with `min(m_s(a), m_s(b))`, ascending.
fn shared_slopes(a: &SlopeContent, b: &SlopeContent) -> Vec<(Rational, usize)> {
    let values: BTreeSet<&Rational> = a.wild().iter().collect();
    values
        .into_iter()
        .map(|s| (s.clone(), a.count_eq(s).min(b.count_eq(s))))
        .filter(|(_, k)| *k > 0)
        .collect()
}

/// Removes shared slopes from the crude bound, smallest first, until at most
/// `mmax` wild slopes remain or nothing more may be removed.
pub(crate) fn reduce_shared(
    a: &SlopeContent,
    b: &SlopeContent,
    mmax: usize,
) -> Result<(SlopeContent, usize), ComposeError> {
    let crude = crude_compose(a, b)?;
    let mut wild = crude.wild().to_vec();
    let mut removable = 0;
    for (s, k) in shared_slopes(a, b) {
        removable += k;
        for _ in 0..k {
            if wild.len() <= mmax {
                break;
            }
            let idx = wild
                .iter()
                .position(|x| *x == s)
                .expect("shared slope present");
            wild.remove(idx);
        }
    }
    let capped = SlopeContent::new(crude.prime(), wild, crude.tame(), crude.residue())?;
    Ok((capped, removable))
}

/// Largest-gms content for the compositum with at most `mmax` wild slopes.
pub fn cap_wild_count(
    a: &SlopeContent,
    b: &SlopeContent,
    mmax: usize,
) -> Result<SlopeContent, ComposeError> {
    let (capped, removable) = reduce_shared(a, b, mmax)?;
    if capped.wild_count() > mmax {
        return Err(ComposeError::Infeasible {
            requested: mmax,
            floor: capped.wild_count(),
            removable,
        });
    }
    Ok(capped)
}

/// Folds a list of contents left to right.
///
/// Without a cap this is the crude bound of the whole list, which does not
/// depend on the order. With a cap each pairwise step removes shared slopes
/// (smallest first) from the running result and the next operand until the
/// cap is met or that pair has nothing left to share; the final result must
/// meet the cap.
pub fn compose_many(
    contents: &[SlopeContent],
    mmax: Option<usize>,
) -> Result<SlopeContent, ComposeError> {
    let (first, rest) = contents.split_first().ok_or(ComposeError::Empty)?;
    let mut acc = first.clone();
    let mut removable = 0;
    for next in rest {
        acc = match mmax {
            None => crude_compose(&acc, next)?,
            Some(cap) => {
                let (reduced, r) = reduce_shared(&acc, next, cap)?;
                removable += r;
                reduced
            }
        };
    }
    if let Some(cap) = mmax {
        if acc.wild_count() > cap {
            return Err(ComposeError::Infeasible {
                requested: cap,
                floor: acc.wild_count(),
                removable,
            });
        }
    }
    Ok(acc)
}

/// Checks the compositum constraints of `beta` against operands `a`, `b`.
///
/// Both multiplicity functions are step functions that only change at slope
/// values occurring in `a`, `b` or `beta`, so only those values are tested.
pub fn check_compositum_bounds(
    a: &SlopeContent,
    b: &SlopeContent,
    beta: &SlopeContent,
) -> Result<bool, ComposeError> {
    same_prime(a, b)?;
    same_prime(a, beta)?;
    if beta.tame() != a.tame().lcm(&b.tame()) {
        return Ok(false);
    }
    let values: BTreeSet<&Rational> = a.wild().iter().chain(b.wild()).chain(beta.wild()).collect();
    Ok(values.into_iter().all(|s| {
        beta.count_eq(s) >= a.count_eq(s).max(b.count_eq(s))
            && beta.count_ge(s) <= a.count_ge(s) + b.count_ge(s)
    }))
}

/// Crude bound of `a` and `b`, with each slope value's multiplicity clipped
/// to its multiplicity in `ceiling`. Used when the compositum is known to lie
/// inside a field whose slope content is `ceiling`.
pub fn bounded_compose(
    a: &SlopeContent,
    b: &SlopeContent,
    ceiling: &SlopeContent,
) -> Result<SlopeContent, ComposeError> {
    same_prime(a, ceiling)?;
    let crude = crude_compose(a, b)?;
    let mut wild = Vec::with_capacity(crude.wild_count());
    let values: BTreeSet<&Rational> = crude.wild().iter().collect();
    for s in values {
        let k = crude.count_eq(s).min(ceiling.count_eq(s));
        wild.extend(std::iter::repeat_n(s.clone(), k));
    }
    Ok(SlopeContent::new(
        crude.prime(),
        wild,
        crude.tame(),
        crude.residue(),
    )?)
}

/// Slope content of the compositum of all 2-adic quartic fields whose Galois
/// group is a 2-group: degree `2^8`, residue degree 4.
pub fn quartic_compositum_cap() -> SlopeContent {
    "[2,2,3,3,7/2,4]_1^4"
        .parse()
        .expect("embedded content is valid")
}
