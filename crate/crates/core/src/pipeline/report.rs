//! End-to-end report over degrees 9 to 15.
//!
//! The JSON form follows `schema/report.schema.json`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::caps::{compare_modes, Bucket, DegreeClass, Mode};
use super::eliminate::{eliminate_all, EliminationError, EliminationTrace, Stage};
use crate::catalog::{Catalog, GroupRef};
use crate::rational::Rational;

/// Simple groups with a transitive action of degree 9 to 15, by their
/// point-action record.
pub const SIMPLE_GROUPS: [(&str, u32, u32); 10] = [
    ("A9", 9, 33),
    ("A10", 10, 44),
    ("A11", 11, 7),
    ("A12", 12, 300),
    ("A13", 13, 8),
    ("A14", 14, 62),
    ("A15", 15, 103),
    ("M11", 11, 6),
    ("M12", 12, 295),
    ("PSL(3,3)", 13, 7),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LateGroup {
    pub group: GroupRef,
    pub order: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub degree: u32,
    pub groups: usize,
    pub general_bound: u64,
    pub refined_bounds: BTreeMap<String, u64>,
    pub stage_counts: BTreeMap<Stage, usize>,
    pub m_refined: Vec<LateGroup>,
    pub survivors: Vec<GroupRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleGroupEntry {
    pub name: &'static str,
    pub group: GroupRef,
    pub order: Option<u64>,
    pub stage: Option<Stage>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapDivergence {
    pub degrees: DegreeClass,
    pub bucket: Bucket,
    #[serde(with = "crate::rational::serde_fraction")]
    pub paper: Rational,
    #[serde(with = "crate::rational::serde_fraction")]
    pub exhaustive: Rational,
    pub exhaustive_source: String,
    pub order_bounds_agree: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Reproduced,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub status: Status,
    pub theorem_reproduced: bool,
    pub mode: Mode,
    pub degrees: Vec<DegreeSummary>,
    pub survivors: Vec<GroupRef>,
    pub simple_groups: Vec<SimpleGroupEntry>,
    pub cap_divergences: Vec<CapDivergence>,
}

fn summarize(t: &EliminationTrace) -> DegreeSummary {
    DegreeSummary {
        degree: t.degree,
        groups: t.verdicts.len(),
        general_bound: t.general_bound,
        refined_bounds: t.refined_bounds.clone(),
        stage_counts: t.stage_counts(),
        m_refined: t
            .at_stage(Stage::MRefinedOrderBound)
            .map(|v| LateGroup {
                group: v.group.clone(),
                order: v.order,
                detail: v.detail.clone(),
            })
            .collect(),
        survivors: t.survivors.clone(),
    }
}

/// Cap buckets where the two evaluation modes disagree.
pub fn cap_divergences() -> Result<Vec<CapDivergence>, EliminationError> {
    let mut out = Vec::new();
    for (class, n) in [(DegreeClass::Below12, 9), (DegreeClass::Below16, 12)] {
        for c in compare_modes(n)? {
            if c.diverges {
                out.push(CapDivergence {
                    degrees: class,
                    bucket: c.bucket,
                    paper: c.paper,
                    exhaustive: c.exhaustive,
                    exhaustive_source: c.exhaustive_source,
                    order_bounds_agree: c.order_bounds_agree,
                });
            }
        }
    }
    Ok(out)
}

pub fn report(catalog: &Catalog, mode: Mode) -> Result<Report, EliminationError> {
    let traces = eliminate_all(catalog, mode)?;
    let survivors: Vec<GroupRef> = traces.iter().flat_map(|t| t.survivors.clone()).collect();
    let simple_groups = SIMPLE_GROUPS
        .iter()
        .map(|&(name, degree, index)| {
            let group = GroupRef::transitive(degree, index);
            let verdict = traces
                .iter()
                .find(|t| t.degree == degree)
                .and_then(|t| t.verdict(&group));
            SimpleGroupEntry {
                name,
                order: verdict.map(|v| v.order),
                stage: verdict.map(|v| v.stage),
                detail: verdict.map_or_else(|| "not in catalog".to_string(), |v| v.detail.clone()),
                group,
            }
        })
        .collect();
    let theorem_reproduced = survivors.is_empty();
    Ok(Report {
        status: if theorem_reproduced {
            Status::Reproduced
        } else {
            Status::Failed
        },
        theorem_reproduced,
        mode,
        degrees: traces.iter().map(summarize).collect(),
        survivors,
        simple_groups,
        cap_divergences: cap_divergences()?,
    })
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Reproduced => "REPRODUCED",
            Status::Failed => "FAILED",
        };
        out.push_str(&format!(
            "theorem: {status} ({} degrees, {} survivors)\n",
            self.degrees.len(),
            self.survivors.len()
        ));
        for d in &self.degrees {
            let counts: Vec<String> = d
                .stage_counts
                .iter()
                .map(|(s, k)| format!("{s}={k}"))
                .collect();
            out.push_str(&format!(
                "degree {}: {} groups; {}\n",
                d.degree,
                d.groups,
                counts.join(" ")
            ));
            for g in &d.m_refined {
                out.push_str(&format!("  {} ({})\n", g.group, g.detail));
            }
            if !d.survivors.is_empty() {
                let names: Vec<String> = d.survivors.iter().map(|g| g.to_string()).collect();
                out.push_str(&format!("  survivors: {}\n", names.join(" ")));
            }
        }
        out.push_str("simple groups:\n");
        for s in &self.simple_groups {
            let stage = s.stage.map_or("missing".to_string(), |st| st.to_string());
            out.push_str(&format!(
                "  {} = {}: {stage} ({})\n",
                s.name, s.group, s.detail
            ));
        }
        for c in &self.cap_divergences {
            out.push_str(&format!(
                "cap divergence {} {}: paper {} exhaustive {} ({})\n",
                c.degrees,
                c.bucket,
                crate::rational::format_rational(&c.paper),
                crate::rational::format_rational(&c.exhaustive),
                c.exhaustive_source
            ));
        }
        out
    }
}
