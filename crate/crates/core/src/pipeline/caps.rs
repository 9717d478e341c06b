//! Upper bounds for `gms_2` of the Galois closure of a degree-`n` field, by
//! number of wild slopes, and the group-order bounds they imply.
//!
//! A degree-`n` field splits over `Q_2` into local factors whose degrees sum
//! to `n`. Factors of degree below 8 have all Galois slopes at most 4 and
//! factors of degree 9 to 15 have none above `2 + ord_2(d) <= 4`, so every
//! bound above 4 comes from an octic factor combined with small ones.
//!
//! Two evaluation modes are provided:
//!
//! * [`Mode::Paper`] evaluates a fixed list of [`Scenario`]s, one per case of
//!   the published case analysis.
//! * [`Mode::Exhaustive`] enumerates every multiset of local caps whose
//!   degrees fit, and takes the maximum.
//!
//! They agree everywhere except below degree 12 with at most four wild
//! slopes, where an octic with three slopes and a quadratic give `65/16`
//! against the published `97/24`. [`compare_modes`] reports such gaps.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::composita::{
    bounded_compose, check_compositum_bounds, crude_compose, quartic_compositum_cap, reduce_shared,
    ComposeError,
};
use crate::rational::{rat, Rational};
use crate::slope::SlopeContent;
use crate::tables::{order_bound_for_gms, CapClass, CapTable, OcticConstraint, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapsError {
    #[error("degree {0} is outside 9..=15")]
    DegreeOutOfRange(u32),
    #[error("scenario {label}: {source}")]
    Scenario {
        label: String,
        #[source]
        source: Box<CapsError>,
    },
    #[error("no admissible combination for bucket {0}")]
    EmptyBucket(Bucket),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Paper,
    Exhaustive,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Exhaustive => "exhaustive",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Mode::Paper),
            "exhaustive" => Ok(Mode::Exhaustive),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// A bound on the number `m` of wild slopes of the local Galois closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bucket {
    AtMost(usize),
    Any,
}

impl Bucket {
    pub const ALL: [Bucket; 4] = [
        Bucket::AtMost(4),
        Bucket::AtMost(5),
        Bucket::AtMost(6),
        Bucket::Any,
    ];

    /// Bucket whose bound applies to a group with `v = ord_2(|G|)`.
    pub fn for_valuation(v: u32) -> Bucket {
        match v {
            0..=4 => Bucket::AtMost(4),
            5 => Bucket::AtMost(5),
            6 => Bucket::AtMost(6),
            _ => Bucket::Any,
        }
    }

    fn admits(self, wild: usize) -> bool {
        match self {
            Bucket::AtMost(k) => wild <= k,
            Bucket::Any => true,
        }
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bucket::AtMost(k) => write!(f, "m<={k}"),
            Bucket::Any => f.write_str("any"),
        }
    }
}

impl Serialize for Bucket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Degree classes sharing one set of caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DegreeClass {
    /// `9 <= n <= 11`
    #[serde(rename = "n<=11")]
    Below12,
    /// `12 <= n <= 15`
    #[serde(rename = "n<=15")]
    Below16,
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeClass::Below12 => "n<=11",
            DegreeClass::Below16 => "n<=15",
        })
    }
}

impl DegreeClass {
    pub fn of(n: u32) -> Result<Self, CapsError> {
        match n {
            9..=11 => Ok(DegreeClass::Below12),
            12..=15 => Ok(DegreeClass::Below16),
            _ => Err(CapsError::DegreeOutOfRange(n)),
        }
    }

    /// Largest global degree in the class; local degrees sum to at most this.
    pub fn max_degree(self) -> u32 {
        match self {
            DegreeClass::Below12 => 11,
            DegreeClass::Below16 => 15,
        }
    }
}

/// One local factor of a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentSpec {
    /// Looked up in the cap table.
    Cap { degree: u32, class: CapClass },
    /// The compositum of all 2-group quartics.
    QuarticCompositum,
}

impl fmt::Display for ComponentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentSpec::Cap { degree, class } => write!(f, "{class}({degree})"),
            ComponentSpec::QuarticCompositum => f.write_str("quartic-compositum"),
        }
    }
}

/// A combination of local factors from the case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub label: &'static str,
    pub class: DegreeClass,
    pub components: Vec<ComponentSpec>,
    /// Cap on the number of wild slopes, `None` for the crude bound.
    pub mmax: Option<usize>,
    /// Exact Galois mean slope of the evaluated content.
    pub expected: Rational,
    /// Figure printed in the case analysis when it differs from `expected`.
    pub printed: Option<Rational>,
}

fn cap(degree: u32, class: CapClass) -> ComponentSpec {
    ComponentSpec::Cap { degree, class }
}

fn octic(slopes: usize, constraint: OcticConstraint) -> ComponentSpec {
    cap(8, CapClass::Octic { slopes, constraint })
}

/// The shipped scenario set.
pub fn paper_scenarios() -> Vec<Scenario> {
    use CapClass::*;
    use OcticConstraint::*;
    let s = |label, class, components, mmax, expected, printed| Scenario {
        label,
        class,
        components,
        mmax,
        expected,
        printed,
    };
    let below12 = DegreeClass::Below12;
    let below16 = DegreeClass::Below16;
    vec![
        s(
            "4-slope octic with a tame cubic",
            below12,
            vec![octic(4, None), cap(3, Tame)],
            Some(4),
            rat(97, 24),
            Option::None,
        ),
        s(
            "5-slope octic with a tame cubic",
            below12,
            vec![octic(5, None), cap(3, Tame)],
            Some(5),
            rat(101, 24),
            Option::None,
        ),
        s(
            "6-slope octic with a tame cubic",
            below12,
            vec![octic(6, None), cap(3, Tame)],
            Some(6),
            rat(53, 12),
            Option::None,
        ),
        s(
            "6-slope octic with a quadratic",
            below12,
            vec![octic(6, None), cap(2, Quadratic)],
            Option::None,
            rat(71, 16),
            Option::None,
        ),
        s(
            "3-slope octic, 2-slope quartic and tame cubic, capped at 4",
            below16,
            vec![
                octic(3, None),
                cap(4, QuarticTwoGroupTwoSlopes),
                cap(3, Tame),
            ],
            Some(4),
            rat(203, 48),
            Option::None,
        ),
        s(
            "3-slope octic, 2-slope quartic and tame cubic",
            below16,
            vec![
                octic(3, None),
                cap(4, QuarticTwoGroupTwoSlopes),
                cap(3, Tame),
            ],
            Some(5),
            rat(413, 96),
            Option::None,
        ),
        s(
            "6-slope octic with a tame septic",
            below16,
            vec![octic(6, None), cap(7, Tame)],
            Some(6),
            rat(495, 112),
            Option::None,
        ),
        s(
            "octic without slope 5, 2-group quartic and quadratic",
            below16,
            vec![octic(5, No5), cap(4, QuarticTwoGroup), cap(2, Quadratic)],
            Option::None,
            rat(561, 128),
            Some(rat(421, 96)),
        ),
        s(
            "octic with 5 but not 17/4, 2-group quartic and quadratic",
            below16,
            vec![
                octic(5, No17Over4With5),
                cap(4, QuarticTwoGroup),
                cap(2, Quadratic),
            ],
            Option::None,
            rat(1125, 256),
            Option::None,
        ),
        s(
            "octic with 17/4 and 5, all 2-group quartics and a tame cubic",
            below16,
            vec![
                octic(6, Both17Over4And5),
                ComponentSpec::QuarticCompositum,
                cap(3, Tame),
            ],
            Option::None,
            rat(427, 96),
            Option::None,
        ),
        s(
            "octic with 17/4 and 5, non-2-group quartic and quadratic",
            below16,
            vec![
                octic(6, Both17Over4And5),
                cap(4, QuarticNonTwoGroup),
                cap(2, Quadratic),
            ],
            Option::None,
            rat(107, 24),
            Option::None,
        ),
    ]
}

/// How one step of an evaluation combined its operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepRule {
    Crude,
    Capped,
    /// Clipped to the quartic compositum plus the slopes 17/4 and 5.
    QuarticCeiling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalStep {
    pub left: SlopeContent,
    pub right: SlopeContent,
    pub result: SlopeContent,
    pub rule: StepRule,
}

/// Content bound for a list of local factors, with the fold steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub content: SlopeContent,
    #[serde(with = "crate::rational::serde_fraction")]
    pub gms: Rational,
    pub steps: Vec<EvalStep>,
}

impl Evaluation {
    /// Every step satisfies the compositum multiplicity constraints.
    pub fn steps_consistent(&self) -> bool {
        self.steps
            .iter()
            .all(|s| check_compositum_bounds(&s.left, &s.right, &s.result).unwrap_or(false))
    }
}

fn is_two_group_content(sc: &SlopeContent) -> bool {
    sc.tame() == 1 && sc.residue().is_power_of_two()
}

/// An octic carrying both 17/4 and 5 has a 2-group as Galois group and its
/// four lowest slopes are visible in its quartic subfields.
fn has_top_octic_slopes(sc: &SlopeContent) -> bool {
    sc.prime() == 2 && sc.count_eq(&rat(17, 4)) > 0 && sc.count_eq(&rat(5, 1)) > 0
}

fn quartic_ceiling() -> SlopeContent {
    let base = quartic_compositum_cap();
    let mut wild = base.wild().to_vec();
    wild.push(rat(17, 4));
    wild.push(rat(5, 1));
    SlopeContent::new(2, wild, 1, base.residue()).expect("valid ceiling")
}

/// Combines local contents. With `mmax` the fold is pairwise capped; without
/// it the fold is crude, except that 2-group factors joining an octic with
/// slopes 17/4 and 5 are clipped to the quartic compositum ceiling.
pub fn evaluate(
    components: &[(bool, SlopeContent)],
    mmax: Option<usize>,
) -> Result<Evaluation, CapsError> {
    let ordered: Vec<&SlopeContent> = components.iter().map(|(_, c)| c).collect();
    let first = *ordered.first().ok_or(ComposeError::Empty)?;
    let mut steps = Vec::new();
    let content = match mmax {
        Some(cap) => {
            let mut acc = first.clone();
            let mut removable = 0;
            for next in &ordered[1..] {
                let (result, r) = reduce_shared(&acc, next, cap)?;
                removable += r;
                steps.push(EvalStep {
                    left: acc.clone(),
                    right: (*next).clone(),
                    result: result.clone(),
                    rule: StepRule::Capped,
                });
                acc = result;
            }
            if acc.wild_count() > cap {
                return Err(ComposeError::Infeasible {
                    requested: cap,
                    floor: acc.wild_count(),
                    removable,
                }
                .into());
            }
            acc
        }
        None => {
            let top = components
                .iter()
                .position(|(is_octic, c)| *is_octic && has_top_octic_slopes(c));
            let mut acc;
            let rest: Vec<&SlopeContent>;
            match top {
                Some(i) => {
                    acc = components[i].1.clone();
                    let ceiling = quartic_ceiling();
                    let others: Vec<&SlopeContent> = components
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, (_, c))| c)
                        .collect();
                    for c in others.iter().filter(|c| is_two_group_content(c)) {
                        let result = bounded_compose(&acc, c, &ceiling)?;
                        steps.push(EvalStep {
                            left: acc.clone(),
                            right: (*c).clone(),
                            result: result.clone(),
                            rule: StepRule::QuarticCeiling,
                        });
                        acc = result;
                    }
                    rest = others
                        .into_iter()
                        .filter(|c| !is_two_group_content(c))
                        .collect();
                }
                None => {
                    acc = first.clone();
                    rest = ordered[1..].to_vec();
                }
            }
            for c in rest {
                let result = crude_compose(&acc, c)?;
                steps.push(EvalStep {
                    left: acc.clone(),
                    right: c.clone(),
                    result: result.clone(),
                    rule: StepRule::Crude,
                });
                acc = result;
            }
            acc
        }
    };
    Ok(Evaluation {
        gms: content.gms(),
        content,
        steps,
    })
}

fn resolve(table: &CapTable, spec: &ComponentSpec) -> Result<(bool, SlopeContent), CapsError> {
    match spec {
        ComponentSpec::Cap { degree, class } => {
            Ok((*degree == 8, table.local_cap(*degree, *class)?.clone()))
        }
        ComponentSpec::QuarticCompositum => Ok((false, quartic_compositum_cap())),
    }
}

/// Evaluates one scenario against a cap table.
pub fn evaluate_scenario(table: &CapTable, scenario: &Scenario) -> Result<Evaluation, CapsError> {
    let wrap = |e: CapsError| CapsError::Scenario {
        label: scenario.label.to_string(),
        source: Box::new(e),
    };
    let parts = scenario
        .components
        .iter()
        .map(|c| resolve(table, c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(wrap)?;
    evaluate(&parts, scenario.mmax).map_err(wrap)
}

/// The winning combination for one bucket.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapEntry {
    pub bucket: Bucket,
    #[serde(with = "crate::rational::serde_fraction")]
    pub gms: Rational,
    pub content: SlopeContent,
    pub source: String,
    pub order_bound: u64,
}

/// Per-bucket gms caps for one degree class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GmsCaps {
    pub class: DegreeClass,
    pub mode: Mode,
    pub entries: Vec<CapEntry>,
}

impl GmsCaps {
    pub fn get(&self, bucket: Bucket) -> &CapEntry {
        self.entries
            .iter()
            .find(|e| e.bucket == bucket)
            .expect("every bucket is filled")
    }

    pub fn gms(&self, bucket: Bucket) -> &Rational {
        &self.get(bucket).gms
    }

    pub fn order_bound(&self, bucket: Bucket) -> u64 {
        self.get(bucket).order_bound
    }

    pub fn as_map(&self) -> BTreeMap<Bucket, Rational> {
        self.entries
            .iter()
            .map(|e| (e.bucket, e.gms.clone()))
            .collect()
    }
}

struct Candidate {
    content: SlopeContent,
    source: String,
}

fn fill_buckets(
    class: DegreeClass,
    mode: Mode,
    mut best: impl FnMut(Bucket) -> Result<Option<Candidate>, CapsError>,
) -> Result<GmsCaps, CapsError> {
    let mut entries: Vec<CapEntry> = Vec::new();
    for bucket in Bucket::ALL {
        let mut winner = best(bucket)?;
        // a bound for fewer slopes also bounds this bucket
        if let Some(prev) = entries.last() {
            if winner.as_ref().is_none_or(|w| w.content.gms() < prev.gms) {
                winner = Some(Candidate {
                    content: prev.content.clone(),
                    source: prev.source.clone(),
                });
            }
        }
        let winner = winner.ok_or(CapsError::EmptyBucket(bucket))?;
        let gms = winner.content.gms();
        entries.push(CapEntry {
            bucket,
            order_bound: order_bound_for_gms(&gms)?,
            gms,
            content: winner.content,
            source: winner.source,
        });
    }
    Ok(GmsCaps {
        class,
        mode,
        entries,
    })
}

fn better(current: &Option<Candidate>, content: &SlopeContent) -> bool {
    match current {
        None => true,
        Some(c) => content.gms() > c.content.gms(),
    }
}

fn paper_caps(table: &CapTable, class: DegreeClass) -> Result<GmsCaps, CapsError> {
    let evaluated: Vec<(Scenario, Evaluation)> = paper_scenarios()
        .into_iter()
        .filter(|s| s.class == class)
        .map(|s| {
            let e = evaluate_scenario(table, &s)?;
            Ok((s, e))
        })
        .collect::<Result<_, CapsError>>()?;
    fill_buckets(class, Mode::Paper, |bucket| {
        let mut best: Option<Candidate> = None;
        for (s, e) in &evaluated {
            if bucket.admits(e.content.wild_count()) && better(&best, &e.content) {
                best = Some(Candidate {
                    content: e.content.clone(),
                    source: s.label.to_string(),
                });
            }
        }
        Ok(best)
    })
}

/// Cap-table entries usable in exhaustive mode for a bucket. The octic case
/// variants are upper bounds for the case split on seven or more slopes and
/// only enter the unrestricted bucket.
fn exhaustive_pool(table: &CapTable, bucket: Bucket) -> Vec<(u32, CapClass, SlopeContent)> {
    table
        .iter()
        .filter(|(d, _, _)| *d > 1)
        .filter(|(_, class, _)| {
            bucket == Bucket::Any
                || !matches!(
                    class,
                    CapClass::Octic { constraint, .. } if *constraint != OcticConstraint::None
                )
        })
        .map(|(d, c, sc)| (d, c, sc.clone()))
        .collect()
}

/// All multisets (as index lists, non-decreasing) of pool entries whose
/// degrees sum to at most `budget`, with at most one octic.
fn multisets(pool: &[(u32, CapClass, SlopeContent)], budget: u32) -> Vec<Vec<usize>> {
    fn go(
        pool: &[(u32, CapClass, SlopeContent)],
        start: usize,
        budget: u32,
        octic_used: bool,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        for i in start..pool.len() {
            let (d, _, _) = pool[i];
            if d > budget || (d == 8 && octic_used) {
                continue;
            }
            current.push(i);
            go(pool, i, budget - d, octic_used || d == 8, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, budget, false, &mut Vec::new(), &mut out);
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        if items[..i].contains(&items[i]) {
            continue;
        }
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn describe(pool: &[(u32, CapClass, SlopeContent)], idx: &[usize]) -> String {
    idx.iter()
        .map(|&i| format!("{}({})", pool[i].1, pool[i].0))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn exhaustive_caps(table: &CapTable, class: DegreeClass) -> Result<GmsCaps, CapsError> {
    let budget = class.max_degree();
    fill_buckets(class, Mode::Exhaustive, |bucket| {
        let pool = exhaustive_pool(table, bucket);
        let mut best: Option<Candidate> = None;
        for set in multisets(&pool, budget) {
            let (wild, tame): (Vec<usize>, Vec<usize>) =
                set.iter().partition(|&&i| pool[i].2.wild_count() > 0);
            let orders = match bucket {
                Bucket::Any => vec![wild.clone()],
                Bucket::AtMost(_) => permutations(&wild),
            };
            for order in orders {
                let idx: Vec<usize> = order.iter().chain(&tame).copied().collect();
                let parts: Vec<(bool, SlopeContent)> = idx
                    .iter()
                    .map(|&i| (pool[i].0 == 8, pool[i].2.clone()))
                    .collect();
                let mmax = match bucket {
                    Bucket::AtMost(k) => Some(k),
                    Bucket::Any => None,
                };
                let content = match evaluate(&parts, mmax) {
                    Ok(e) => e.content,
                    Err(CapsError::Compose(ComposeError::Infeasible { .. })) => continue,
                    Err(e) => return Err(e),
                };
                if bucket.admits(content.wild_count()) && better(&best, &content) {
                    best = Some(Candidate {
                        content,
                        source: describe(&pool, &idx),
                    });
                }
            }
        }
        Ok(best)
    })
}

/// Per-bucket gms caps for a field of degree `n`, `9 <= n <= 15`.
pub fn gms_caps_for_degree(n: u32, mode: Mode) -> Result<GmsCaps, CapsError> {
    gms_caps_with_table(&CapTable::default(), n, mode)
}

pub fn gms_caps_with_table(table: &CapTable, n: u32, mode: Mode) -> Result<GmsCaps, CapsError> {
    let class = DegreeClass::of(n)?;
    match mode {
        Mode::Paper => paper_caps(table, class),
        Mode::Exhaustive => exhaustive_caps(table, class),
    }
}

/// Order bounds: a Galois group with `ord_2 |G|` in the bucket has order
/// below the given value.
pub fn order_bounds_for_degree(n: u32, mode: Mode) -> Result<BTreeMap<Bucket, u64>, CapsError> {
    let caps = gms_caps_for_degree(n, mode)?;
    Ok(caps
        .entries
        .iter()
        .map(|e| (e.bucket, e.order_bound))
        .collect())
}

/// Paper and exhaustive values side by side for one bucket.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapComparison {
    pub bucket: Bucket,
    #[serde(with = "crate::rational::serde_fraction")]
    pub paper: Rational,
    #[serde(with = "crate::rational::serde_fraction")]
    pub exhaustive: Rational,
    pub exhaustive_source: String,
    pub diverges: bool,
    pub order_bounds_agree: bool,
}

pub fn compare_modes(n: u32) -> Result<Vec<CapComparison>, CapsError> {
    let paper = gms_caps_for_degree(n, Mode::Paper)?;
    let full = gms_caps_for_degree(n, Mode::Exhaustive)?;
    Ok(Bucket::ALL
        .iter()
        .map(|&bucket| {
            let p = paper.get(bucket);
            let x = full.get(bucket);
            CapComparison {
                bucket,
                paper: p.gms.clone(),
                exhaustive: x.gms.clone(),
                exhaustive_source: x.source.clone(),
                diverges: p.gms != x.gms,
                order_bounds_agree: p.order_bound == x.order_bound,
            }
        })
        .collect())
}
