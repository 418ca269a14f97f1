//! The analysis document: every quantity computed for one group, in a fixed
//! serialization order.

use std::fmt::Write as _;

use serde::Serialize;

use cdscope_core::analysis::{
    cd_report, quasi_antichain_report, CdContext, CdReport, MonotoneWitness,
};
use cdscope_core::Result;

use crate::names::subgroup_name;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GroupInfo {
    pub name: String,
    pub order: usize,
    pub center_order: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SubgroupRow {
    pub id: usize,
    pub label: String,
    pub order: usize,
    pub centralizer_id: usize,
    pub measure: u64,
    pub in_cd: bool,
    pub in_cent: bool,
    pub subnormal: bool,
    pub normal: bool,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct Flags {
    #[serde(rename = "increasing_on_S")]
    pub increasing_on_s: bool,
    #[serde(rename = "increasing_on_C")]
    pub increasing_on_c: bool,
    #[serde(rename = "decreasing_on_S")]
    pub decreasing_on_s: bool,
    pub cd_equals_interval: bool,
    pub cd_equals_cent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cheng: Option<bool>,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct Numbers {
    pub k: usize,
    pub image_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Fiber {
    pub measure: u64,
    pub subgroups: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MeasureSummary {
    pub max: u64,
    pub image: Vec<u64>,
    pub fibers: Vec<Fiber>,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct PairWitness {
    pub lower: usize,
    pub upper: usize,
    pub lower_measure: u64,
    pub upper_measure: u64,
}

impl From<MonotoneWitness> for PairWitness {
    fn from(w: MonotoneWitness) -> Self {
        PairWitness {
            lower: w.lower,
            upper: w.upper,
            lower_measure: w.lower_measure,
            upper_measure: w.upper_measure,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CentralizerWitness {
    pub element: String,
    pub centralizer: usize,
    pub centralizer_order: usize,
    pub above: usize,
    pub above_order: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, Default)]
pub struct Witnesses {
    #[serde(rename = "increasing_on_S", skip_serializing_if = "Option::is_none")]
    pub increasing_on_s: Option<PairWitness>,
    #[serde(rename = "increasing_on_C", skip_serializing_if = "Option::is_none")]
    pub increasing_on_c: Option<PairWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_maximal_centralizer: Option<CentralizerWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub nonabelian_maximal_centralizers: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AnalysisDocument {
    pub group: GroupInfo,
    pub subgroups: Vec<SubgroupRow>,
    pub hasse: Vec<[usize; 2]>,
    pub flags: Flags,
    pub numbers: Numbers,
    pub measure: MeasureSummary,
    pub cd: Vec<usize>,
    pub cent: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency_class: Option<usize>,
    pub witnesses: Witnesses,
}

impl AnalysisDocument {
    pub fn build(ctx: &CdContext<'_>) -> Result<Self> {
        let report = cd_report(ctx)?;
        Self::from_report(ctx, &report)
    }

    pub fn from_report(ctx: &CdContext<'_>, report: &CdReport) -> Result<Self> {
        let lattice = ctx.lattice();
        let group = ctx.group();
        let subnormal = ctx.subnormal_flags()?;
        let subgroups = (0..lattice.len())
            .map(|i| SubgroupRow {
                id: i,
                label: subgroup_name(ctx, i),
                order: lattice.subgroup(i).order(),
                centralizer_id: ctx.centralizer_of(i),
                measure: ctx.measure().value(i),
                in_cd: report.cd.contains(i),
                in_cent: report.cent.contains(i),
                subnormal: subnormal[i],
                normal: lattice.is_normal(i),
            })
            .collect();
        let quasi = quasi_antichain_report(ctx)?;
        let non_maximal_centralizer = quasi.non_maximal_witness.map(|w| CentralizerWitness {
            element: group.label(w.element).to_string(),
            centralizer: w.centralizer,
            centralizer_order: lattice.subgroup(w.centralizer).order(),
            above: w.above,
            above_order: lattice.subgroup(w.above).order(),
        });
        let f = report.flags;
        let n = report.numbers;
        Ok(AnalysisDocument {
            group: GroupInfo {
                name: group.name().to_string(),
                order: group.order(),
                center_order: lattice.subgroup(ctx.center()).order(),
            },
            subgroups,
            hasse: lattice
                .hasse_edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            flags: Flags {
                increasing_on_s: f.increasing_on_s,
                increasing_on_c: f.increasing_on_c,
                decreasing_on_s: f.decreasing_on_s,
                cd_equals_interval: f.cd_equals_interval,
                cd_equals_cent: f.cd_equals_cent,
                cheng: f.cheng,
                nilpotent: f.nilpotent,
            },
            numbers: Numbers {
                k: n.k,
                image_size: n.image_size,
                width: n.width,
                a: n.a,
                b: n.b,
            },
            measure: MeasureSummary {
                max: ctx.measure().max_value(),
                image: ctx.measure().image(),
                fibers: ctx
                    .measure()
                    .fibers()
                    .iter()
                    .map(|(&measure, ids)| Fiber {
                        measure,
                        subgroups: ids.clone(),
                    })
                    .collect(),
            },
            cd: report.cd.indices().to_vec(),
            cent: report.cent.indices().to_vec(),
            nilpotency_class: report.nilpotency_class,
            witnesses: Witnesses {
                increasing_on_s: report.increasing_witness.map(Into::into),
                increasing_on_c: report.centralizer_witness.map(Into::into),
                non_maximal_centralizer,
                nonabelian_maximal_centralizers: quasi.nonabelian_maximal,
            },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Plain-text rendering for terminals.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let g = &self.group;
        let _ = writeln!(
            out,
            "group {}  order {}  |Z| {}",
            g.name, g.order, g.center_order
        );
        let width = self
            .subgroups
            .iter()
            .map(|s| s.label.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let _ = writeln!(
            out,
            "{:>4}  {:<width$}  {:>6}  {:>6}  {:>8}  {:>2}  {:>2}  {:>2}  {:>2}",
            "id", "label", "order", "|C(H)|", "m", "CD", "C", "sn", "nm"
        );
        let mark = |b: bool| if b { "*" } else { "" };
        for s in &self.subgroups {
            let c = self.subgroups[s.centralizer_id].order;
            let _ = writeln!(
                out,
                "{:>4}  {:<width$}  {:>6}  {:>6}  {:>8}  {:>2}  {:>2}  {:>2}  {:>2}",
                s.id,
                s.label,
                s.order,
                c,
                s.measure,
                mark(s.in_cd),
                mark(s.in_cent),
                mark(s.subnormal),
                mark(s.normal)
            );
        }
        let _ = writeln!(
            out,
            "image {:?}  max {}",
            self.measure.image, self.measure.max
        );
        let f = &self.flags;
        let _ = writeln!(
            out,
            "increasing_on_S {}  increasing_on_C {}  decreasing_on_S {}",
            f.increasing_on_s, f.increasing_on_c, f.decreasing_on_s
        );
        let _ = writeln!(
            out,
            "cd_equals_interval {}  cd_equals_cent {}  nilpotent {}{}",
            f.cd_equals_interval,
            f.cd_equals_cent,
            f.nilpotent,
            f.cheng.map(|c| format!("  cheng {c}")).unwrap_or_default()
        );
        let n = &self.numbers;
        let opt =
            |name: &str, v: Option<String>| v.map(|v| format!("  {name} {v}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "k {}  image_size {}{}{}{}",
            n.k,
            n.image_size,
            opt("width", n.width.map(|w| w.to_string())),
            opt("a", n.a.map(|a| a.to_string())),
            opt("b", n.b.map(|b| b.to_string()))
        );
        if let Some(w) = self.witnesses.increasing_on_s {
            let _ = writeln!(
                out,
                "not increasing: {} <= {} but m = {} > {}",
                self.subgroups[w.lower].label,
                self.subgroups[w.upper].label,
                w.lower_measure,
                w.upper_measure
            );
        }
        out
    }
}
