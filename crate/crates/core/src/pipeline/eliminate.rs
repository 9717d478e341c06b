//! Staged elimination of transitive groups of degree 9 to 15.
//!
//! Stages, in order:
//!
//! 1. `|G|` is not a multiple of 16.
//! 2. `|G|` is at least the general order bound for the degree.
//! 3. Some proper quotient of `G` is already eliminated, in any degree, or is
//!    excluded by the base facts; or `G` itself is, through another of its
//!    transitive actions (eliminated there, or of degree 3, 5, 6 or 7). Runs
//!    to a fixed point.
//! 4. `|G|` is at least the order bound for `m = ord_2 |G|` wild slopes.
//!
//! Whatever is left is a survivor. Degrees are taken in increasing order, so
//! the quotient stage of degree `n` sees everything settled in lower degrees;
//! survivors get one more quotient pass once all degrees are done.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::caps::{order_bounds_for_degree, Bucket, CapsError, Mode};
use crate::catalog::{
    base_exclusion, degree_exclusion, ord2, BaseFact, BaseVerdict, Catalog, GroupRef,
    TransitiveGroupRecord,
};

pub const DEGREES: std::ops::RangeInclusive<u32> = 9..=15;

#[derive(Debug, Error)]
pub enum EliminationError {
    #[error("catalog has no groups of degree {0}")]
    MissingDegree(u32),
    #[error("degree {0} is outside 9..=15")]
    DegreeOutOfRange(u32),
    #[error("{from} lists quotient {to}, which the catalog cannot resolve")]
    UnresolvedQuotient { from: GroupRef, to: GroupRef },
    #[error(transparent)]
    Caps(#[from] CapsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    #[serde(rename = "divisibility-16")]
    Divisibility16,
    GeneralOrderBound,
    Quotient,
    MRefinedOrderBound,
    Survivor,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Divisibility16,
        Stage::GeneralOrderBound,
        Stage::Quotient,
        Stage::MRefinedOrderBound,
        Stage::Survivor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Divisibility16 => "divisibility-16",
            Stage::GeneralOrderBound => "general-order-bound",
            Stage::Quotient => "quotient",
            Stage::MRefinedOrderBound => "m-refined-order-bound",
            Stage::Survivor => "survivor",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationVerdict {
    pub group: GroupRef,
    pub order: u64,
    pub stage: Stage,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationTrace {
    pub degree: u32,
    pub stages: Vec<Stage>,
    pub general_bound: u64,
    pub refined_bounds: BTreeMap<String, u64>,
    pub verdicts: Vec<EliminationVerdict>,
    pub survivors: Vec<GroupRef>,
}

impl EliminationTrace {
    pub fn at_stage(&self, stage: Stage) -> impl Iterator<Item = &EliminationVerdict> {
        self.verdicts.iter().filter(move |v| v.stage == stage)
    }

    pub fn verdict(&self, group: &GroupRef) -> Option<&EliminationVerdict> {
        self.verdicts.iter().find(|v| &v.group == group)
    }

    pub fn stage_counts(&self) -> BTreeMap<Stage, usize> {
        let mut counts: BTreeMap<Stage, usize> = Stage::ALL.iter().map(|s| (*s, 0)).collect();
        for v in &self.verdicts {
            *counts.entry(v.stage).or_default() += 1;
        }
        counts
    }

    pub fn theorem_holds(&self) -> bool {
        self.survivors.is_empty()
    }

    /// Plain text form; carries the same facts as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = format!("degree {}: {} groups\n", self.degree, self.verdicts.len());
        out.push_str(&format!("general order bound: {}\n", self.general_bound));
        let bounds: Vec<String> = self
            .refined_bounds
            .iter()
            .map(|(m, b)| format!("{m}: {b}"))
            .collect();
        out.push_str(&format!("refined order bounds: {}\n", bounds.join(", ")));
        for v in &self.verdicts {
            out.push_str(&format!(
                "{} |G|={} {} ({})\n",
                v.group, v.order, v.stage, v.detail
            ));
        }
        if self.survivors.is_empty() {
            out.push_str("survivors: none\n");
        } else {
            let names: Vec<String> = self.survivors.iter().map(|g| g.to_string()).collect();
            out.push_str(&format!("survivors: {}\n", names.join(" ")));
        }
        out
    }
}

/// `n` with its 2-part split off, e.g. `144 = 2^4·9`.
pub fn two_part(n: u64) -> String {
    let k = ord2(n);
    let odd = n >> k;
    match (k, odd) {
        (0, _) => n.to_string(),
        (_, 1) => format!("{n} = 2^{k}"),
        _ => format!("{n} = 2^{k}·{odd}"),
    }
}

struct Bounds {
    general: u64,
    refined: BTreeMap<Bucket, u64>,
}

impl Bounds {
    fn for_degree(n: u32, mode: Mode) -> Result<Self, EliminationError> {
        let refined = order_bounds_for_degree(n, mode)?;
        Ok(Bounds {
            general: refined[&Bucket::Any],
            refined,
        })
    }

    fn refined_for(&self, order: u64) -> u64 {
        self.refined[&Bucket::for_valuation(ord2(order))]
    }
}

/// Runs every stage on all degrees 9 to 15 of the catalog.
pub fn eliminate_all(
    catalog: &Catalog,
    mode: Mode,
) -> Result<Vec<EliminationTrace>, EliminationError> {
    let mut bounds = BTreeMap::new();
    for n in DEGREES {
        if catalog.degree(n).next().is_none() {
            return Err(EliminationError::MissingDegree(n));
        }
        bounds.insert(n, Bounds::for_degree(n, mode)?);
    }
    let groups: Vec<&TransitiveGroupRecord> = DEGREES.flat_map(|n| catalog.degree(n)).collect();
    for g in &groups {
        for q in &g.quotients {
            if catalog.describe(q).is_none() {
                return Err(EliminationError::UnresolvedQuotient {
                    from: g.group_ref(),
                    to: q.clone(),
                });
            }
        }
    }

    let mut verdicts: BTreeMap<GroupRef, EliminationVerdict> = BTreeMap::new();
    let settle: Settle = |verdicts, g, stage, detail| {
        verdicts.insert(
            g.group_ref(),
            EliminationVerdict {
                group: g.group_ref(),
                order: g.order,
                stage,
                detail,
            },
        );
    };

    for g in &groups {
        let b = &bounds[&g.degree];
        if g.order % 16 != 0 {
            settle(
                &mut verdicts,
                g,
                Stage::Divisibility16,
                format!("{} is not a multiple of 16", two_part(g.order)),
            );
        } else if g.order >= b.general {
            settle(
                &mut verdicts,
                g,
                Stage::GeneralOrderBound,
                format!("{} ≥ {}", g.order, b.general),
            );
        }
    }

    // Degrees in increasing order: the quotient stage sees every verdict
    // reached so far, then the refined bound settles the rest of the degree.
    for n in DEGREES {
        let current: Vec<&TransitiveGroupRecord> =
            groups.iter().copied().filter(|g| g.degree == n).collect();
        settle_quotients(catalog, &current, &mut verdicts, settle);
        for g in current {
            if verdicts.contains_key(&g.group_ref()) {
                continue;
            }
            let bound = bounds[&g.degree].refined_for(g.order);
            if g.order >= bound {
                settle(
                    &mut verdicts,
                    g,
                    Stage::MRefinedOrderBound,
                    format!("{} ≥ {bound}", two_part(g.order)),
                );
            } else {
                settle(
                    &mut verdicts,
                    g,
                    Stage::Survivor,
                    format!("{} < {bound}", two_part(g.order)),
                );
            }
        }
    }
    // A survivor may still have a quotient settled in a later degree.
    let survivors: Vec<&TransitiveGroupRecord> = groups
        .iter()
        .copied()
        .filter(|g| verdicts[&g.group_ref()].stage == Stage::Survivor)
        .collect();
    for g in &survivors {
        verdicts.remove(&g.group_ref());
    }
    settle_quotients(catalog, &survivors, &mut verdicts, settle);
    for g in survivors {
        if !verdicts.contains_key(&g.group_ref()) {
            let bound = bounds[&g.degree].refined_for(g.order);
            settle(
                &mut verdicts,
                g,
                Stage::Survivor,
                format!("{} < {bound}", two_part(g.order)),
            );
        }
    }

    Ok(DEGREES
        .map(|n| {
            let b = &bounds[&n];
            let degree_verdicts: Vec<EliminationVerdict> = catalog
                .degree(n)
                .map(|g| verdicts[&g.group_ref()].clone())
                .collect();
            let survivors = degree_verdicts
                .iter()
                .filter(|v| v.stage == Stage::Survivor)
                .map(|v| v.group.clone())
                .collect();
            EliminationTrace {
                degree: n,
                stages: Stage::ALL.to_vec(),
                general_bound: b.general,
                refined_bounds: b
                    .refined
                    .iter()
                    .filter(|(k, _)| **k != Bucket::Any)
                    .map(|(k, v)| (k.to_string(), *v))
                    .collect(),
                verdicts: degree_verdicts,
                survivors,
            }
        })
        .collect())
}

type Settle =
    fn(&mut BTreeMap<GroupRef, EliminationVerdict>, &TransitiveGroupRecord, Stage, String);

/// Quotient stage over `pending`, repeated until nothing changes.
fn settle_quotients(
    catalog: &Catalog,
    pending: &[&TransitiveGroupRecord],
    verdicts: &mut BTreeMap<GroupRef, EliminationVerdict>,
    settle: Settle,
) {
    loop {
        let newly: Vec<_> = pending
            .iter()
            .filter(|g| !verdicts.contains_key(&g.group_ref()))
            .filter_map(|g| excluded_quotient(catalog, g, verdicts).map(|r| (*g, r)))
            .collect();
        if newly.is_empty() {
            return;
        }
        for (g, reason) in newly {
            settle(verdicts, g, Stage::Quotient, reason);
        }
    }
}

/// Why the abstract group behind `r` is already ruled out, looking at `r`
/// and at every class isomorphic to it. Unless `direct`, `r` counts as just
/// another action.
fn ruled_out(
    catalog: &Catalog,
    r: &GroupRef,
    direct: bool,
    verdicts: &BTreeMap<GroupRef, EliminationVerdict>,
) -> Option<String> {
    let isomorphic = match r {
        GroupRef::Transitive { degree, index } => catalog
            .record(*degree, *index)
            .map_or(&[][..], |rec| &rec.isomorphic[..]),
        GroupRef::Named(_) => &[],
    };
    for x in std::iter::once(r).chain(isomorphic) {
        let name = if x == r {
            r.to_string()
        } else {
            format!("{r} ≅ {x}")
        };
        if let Some(v) = verdicts.get(x) {
            if v.stage != Stage::Survivor {
                return Some(format!("{name} eliminated at {}", v.stage));
            }
        }
        if let Some(rec) = catalog.describe(x) {
            // through another action only the field-degree fact carries over
            let fact = rec
                .transitive_degree
                .and_then(|d| degree_exclusion(d, rec.is_two_group))
                .filter(|f| (direct && x == r) || *f == BaseFact::Degree3567);
            if let Some(fact) = fact {
                return Some(format!("{name} excluded: {fact}"));
            }
        }
    }
    None
}

fn excluded_quotient(
    catalog: &Catalog,
    g: &TransitiveGroupRecord,
    verdicts: &BTreeMap<GroupRef, EliminationVerdict>,
) -> Option<String> {
    for q in &g.quotients {
        if let Some(why) = ruled_out(catalog, q, true, verdicts) {
            return Some(format!("quotient {why}"));
        }
        let facts = catalog.describe(q).expect("references checked");
        if let BaseVerdict::Impossible(fact) = base_exclusion(&facts) {
            return Some(format!("quotient {q} excluded: {fact}"));
        }
    }
    for x in &g.isomorphic {
        if let Some(why) = ruled_out(catalog, x, false, verdicts) {
            return Some(format!("isomorphic to {why}"));
        }
    }
    None
}

/// Trace for one degree. The quotient stage still looks at every degree.
pub fn eliminate(
    degree: u32,
    catalog: &Catalog,
    mode: Mode,
) -> Result<EliminationTrace, EliminationError> {
    if !DEGREES.contains(&degree) {
        return Err(EliminationError::DegreeOutOfRange(degree));
    }
    let traces = eliminate_all(catalog, mode)?;
    Ok(traces
        .into_iter()
        .find(|t| t.degree == degree)
        .expect("every degree is traced"))
}
