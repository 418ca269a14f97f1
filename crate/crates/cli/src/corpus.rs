//! Corpus files and the parallel runner.
//!
//! A corpus is one expression per line; `#` starts a comment. The directive
//! `@families N` adds every named family member of order at most `N` that
//! is not already listed.

use rayon::prelude::*;
use serde::Serialize;

use cdscope_core::analysis::CdContext;
use cdscope_core::expr::{evaluate_full, parse, GroupExpr};
use cdscope_core::families::Family;
use cdscope_core::group::Limits;
use cdscope_core::{Error, Result};

use crate::document::{AnalysisDocument, Flags, Numbers, Witnesses};
use crate::verify::{run_theorem, Outcome, Status, TheoremId};

pub const DEFAULT_CORPUS: &str = include_str!("../corpus/default.txt");

/// Cap on the summed (capped) predicted orders of one corpus.
pub const DEFAULT_ORDER_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub line: usize,
    pub text: String,
    pub parsed: std::result::Result<GroupExpr, Error>,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusSpec {
    pub entries: Vec<CorpusEntry>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Named family members of order at most `bound`, in a fixed order.
pub fn family_range(bound: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=bound {
        out.push(Family::Cyclic(n));
    }
    for n in (6..=bound).step_by(2) {
        out.push(Family::Dihedral(n));
    }
    let mut q = 8;
    while q <= bound {
        out.push(Family::Quaternion(q));
        q *= 2;
    }
    for n in 3.. {
        if Family::Symmetric(n).predicted_order() > bound {
            break;
        }
        out.push(Family::Symmetric(n));
    }
    for n in 4.. {
        if Family::Alternating(n).predicted_order() > bound {
            break;
        }
        out.push(Family::Alternating(n));
    }
    out.into_iter()
        .map(|f| {
            let s = f.to_string();
            format!("{}({})", &s[..1], &s[1..])
        })
        .collect()
}

impl CorpusSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut generated = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("@families") {
                let bound: usize = rest.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!(
                        "line {}: '@families' needs an order bound",
                        i + 1
                    ))
                })?;
                generated.extend(family_range(bound).into_iter().map(|t| (i + 1, t)));
                continue;
            }
            entries.push(CorpusEntry {
                line: i + 1,
                text: line.to_string(),
                parsed: parse(line),
            });
        }
        for (line, text) in generated {
            let dup = entries.iter().any(|e| match &e.parsed {
                Ok(p) => parse(&text).map(|q| q.structurally_eq(p)).unwrap_or(false),
                Err(_) => false,
            });
            if !dup {
                entries.push(CorpusEntry {
                    line,
                    parsed: parse(&text),
                    text,
                });
            }
        }
        Ok(CorpusSpec { entries })
    }

    pub fn default_corpus() -> Self {
        Self::parse(DEFAULT_CORPUS).expect("the bundled corpus parses")
    }

    /// Rejects corpora whose summed predicted orders exceed `budget`. Each
    /// entry counts at most `limits.max_order`.
    pub fn check_budget(&self, limits: &Limits, budget: usize) -> Result<()> {
        let total: usize = self
            .entries
            .iter()
            .filter_map(|e| e.parsed.as_ref().ok())
            .map(|e| e.predicted_order().min(limits.max_order))
            .fold(0usize, |a, b| a.saturating_add(b));
        if total > budget {
            return Err(Error::OrderCap { cap: budget });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub center_order: usize,
    pub subgroups: usize,
    pub cd_size: usize,
    pub cent_size: usize,
    pub flags: Flags,
    pub numbers: Numbers,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupResult {
    pub line: usize,
    pub expr: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<GroupSummary>,
    pub results: Vec<Outcome>,
}

fn errored(entry: &CorpusEntry, e: &Error) -> GroupResult {
    GroupResult {
        line: entry.line,
        expr: entry.text.clone(),
        status: Status::of_error(e),
        error: Some(e.to_string()),
        summary: None,
        results: Vec::new(),
    }
}

/// Runs `theorems` on one entry. Never panics on bad input; every failure
/// becomes a status.
pub fn run_entry(entry: &CorpusEntry, theorems: &[TheoremId], limits: &Limits) -> GroupResult {
    let expr = match &entry.parsed {
        Ok(e) => e,
        Err(e) => return errored(entry, e),
    };
    let evaluated = match evaluate_full(expr, &entry.text, limits) {
        Ok(ev) => ev,
        Err(e) => return errored(entry, &e),
    };
    let ctx = match CdContext::new(evaluated.group(), limits) {
        Ok(c) => c,
        Err(e) => return errored(entry, &e),
    };
    let doc = match AnalysisDocument::build(&ctx) {
        Ok(d) => d,
        Err(e) => return errored(entry, &e),
    };
    let results: Vec<Outcome> = theorems
        .iter()
        .map(|&t| run_theorem(t, &ctx, &evaluated))
        .collect();
    let status = results
        .iter()
        .map(|o| o.status)
        .max()
        .unwrap_or(Status::Pass)
        .max(Status::Pass);
    GroupResult {
        line: entry.line,
        expr: entry.text.clone(),
        status: if status == Status::Skip {
            Status::Pass
        } else {
            status
        },
        error: None,
        summary: Some(GroupSummary {
            name: doc.group.name,
            order: doc.group.order,
            center_order: doc.group.center_order,
            subgroups: doc.subgroups.len(),
            cd_size: doc.cd.len(),
            cent_size: doc.cent.len(),
            flags: doc.flags,
            numbers: doc.numbers,
            witnesses: doc.witnesses,
        }),
        results,
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct Tally {
    pub groups: usize,
    pub pass: usize,
    pub fail: usize,
    pub input_errors: usize,
    pub resource_errors: usize,
    pub theorem_pass: usize,
    pub theorem_skip: usize,
    pub theorem_fail: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub theorems: Vec<&'static str>,
    pub groups: Vec<GroupResult>,
    pub tally: Tally,
}

impl CorpusReport {
    pub fn worst(&self) -> Status {
        self.groups
            .iter()
            .map(|g| g.status)
            .max()
            .unwrap_or(Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Runs every entry on a pool of `jobs` threads. Results are in corpus
/// order whatever the completion order.
pub fn run_corpus(
    spec: &CorpusSpec,
    theorems: &[TheoremId],
    limits: &Limits,
    jobs: usize,
) -> Result<CorpusReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {jobs} workers: {e}")))?;
    let groups: Vec<GroupResult> = pool.install(|| {
        spec.entries
            .par_iter()
            .map(|e| run_entry(e, theorems, limits))
            .collect()
    });
    let mut tally = Tally {
        groups: groups.len(),
        ..Tally::default()
    };
    for g in &groups {
        match g.status {
            Status::Pass | Status::Skip => tally.pass += 1,
            Status::Fail => tally.fail += 1,
            Status::InputError => tally.input_errors += 1,
            Status::ResourceError => tally.resource_errors += 1,
        }
        for o in &g.results {
            match o.status {
                Status::Pass => tally.theorem_pass += 1,
                Status::Skip => tally.theorem_skip += 1,
                _ => tally.theorem_fail += 1,
            }
        }
    }
    Ok(CorpusReport {
        theorems: theorems.iter().map(TheoremId::as_str).collect(),
        groups,
        tally,
    })
}
