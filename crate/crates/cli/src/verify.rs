//! Named verifiers, each run against one evaluated group.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use cdscope_core::analysis::invariants::{
    centralizer_invariants, derived_invariants, subnormal_invariants,
};
use cdscope_core::analysis::pgroup::{cheng_record, prime_power};
use cdscope_core::analysis::product::verify_product;
use cdscope_core::analysis::theorems::verify_decreasing_trivial;
use cdscope_core::analysis::{
    image_profile, index_factorization_check, quasi_antichain_report, sylow_decomposition_verify,
    verify_theorem_centralizers, verify_theorem_increasing, verify_theorem_poset, CdContext,
};
use cdscope_core::expr::Evaluated;
use cdscope_core::{Error, ErrorClass, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Increasing,
    Centralizers,
    Poset,
    DecreasingTrivial,
    ImageBound,
    ChengIff,
    Sylow,
    Product,
    Quasi,
    Subnormal,
    Structure,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Increasing,
        TheoremId::Centralizers,
        TheoremId::Poset,
        TheoremId::DecreasingTrivial,
        TheoremId::ImageBound,
        TheoremId::ChengIff,
        TheoremId::Sylow,
        TheoremId::Product,
        TheoremId::Quasi,
        TheoremId::Subnormal,
        TheoremId::Structure,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Increasing => "increasing",
            TheoremId::Centralizers => "centralizers",
            TheoremId::Poset => "poset",
            TheoremId::DecreasingTrivial => "decreasing-trivial",
            TheoremId::ImageBound => "image-bound",
            TheoremId::ChengIff => "cheng-iff",
            TheoremId::Sylow => "sylow",
            TheoremId::Product => "product",
            TheoremId::Quasi => "quasi",
            TheoremId::Subnormal => "subnormal",
            TheoremId::Structure => "structure",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| {
                let ids: Vec<&str> = TheoremId::ALL.iter().map(TheoremId::as_str).collect();
                format!(
                    "unknown theorem id '{s}'; expected one of {}",
                    ids.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Skip,
    InputError,
    ResourceError,
    Fail,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Skip => "SKIP",
            Status::InputError => "INPUT-ERROR",
            Status::ResourceError => "RESOURCE-ERROR",
            Status::Fail => "FAIL",
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e.class() {
            ErrorClass::Input => Status::InputError,
            ErrorClass::Resource => Status::ResourceError,
            ErrorClass::Violation => Status::Fail,
        }
    }

    /// Process exit status for the worst outcome seen.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Pass | Status::Skip => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::ResourceError => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub theorem: &'static str,
    pub status: Status,
    pub detail: String,
}

fn skip(why: impl Into<String>) -> Result<(Status, String)> {
    Ok((Status::Skip, why.into()))
}

fn pass(detail: impl Into<String>) -> Result<(Status, String)> {
    Ok((Status::Pass, detail.into()))
}

fn run_inner(
    id: TheoremId,
    ctx: &CdContext<'_>,
    evaluated: &Evaluated,
) -> Result<(Status, String)> {
    let lattice = ctx.lattice();
    match id {
        TheoremId::Increasing => {
            let r = verify_theorem_increasing(ctx)?;
            pass(format!(
                "increasing={} center-meet={} cd=[G/Z]={}",
                r.increasing, r.center_meet, r.cd_equals_interval
            ))
        }
        TheoremId::Centralizers => {
            let r = verify_theorem_centralizers(ctx)?;
            pass(format!(
                "increasing_on_C={} C=CD={} nilpotent={}",
                r.increasing_on_c, r.cent_equals_cd, r.nilpotent
            ))
        }
        TheoremId::Poset => {
            let selections = [
                ("C(G)", ctx.cent().clone()),
                ("S(G)", lattice.full_selection()),
                ("[G/Z]", ctx.interval_over_center()),
            ];
            let mut parts = Vec::new();
            for (name, sel) in &selections {
                let r = verify_theorem_poset(ctx, sel)?;
                parts.push(format!(
                    "{name}: increasing={} |CD∩P|={} intervals={}",
                    r.increasing,
                    r.cd_part.len(),
                    r.intervals_checked
                ));
            }
            pass(parts.join("; "))
        }
        TheoremId::DecreasingTrivial => {
            let r = verify_decreasing_trivial(ctx)?;
            pass(format!("decreasing={} trivial={}", r.decreasing, r.trivial))
        }
        TheoremId::ImageBound => {
            let p = image_profile(ctx)?;
            pass(format!(
                "|Im|={} k={} increasing={} equality={}",
                p.image_size, p.k, p.increasing, p.equality
            ))
        }
        TheoremId::ChengIff => {
            if prime_power(ctx.group().order() as u64).is_none() {
                return skip("order is not a prime power");
            }
            let rec = cheng_record(ctx.group())?;
            let inc = ctx.increasing_on_subgroups().holds();
            if rec.holds != inc {
                return Err(Error::TheoremViolation {
                    theorem: "cheng-iff",
                    group: ctx.group().name().to_string(),
                    detail: format!(
                        "derived-subgroup condition {} but increasing_on_S {inc}",
                        rec.holds
                    ),
                });
            }
            let mut detail = format!(
                "cheng={} increasing_on_S={inc} |G'|={}",
                rec.holds, rec.derived_order
            );
            if rec.holds {
                let n = index_factorization_check(ctx)?;
                detail.push_str(&format!(" index-factorization on {n} subgroups"));
            }
            pass(detail)
        }
        TheoremId::Sylow => {
            let r = sylow_decomposition_verify(ctx)?;
            let factors: Vec<String> = r
                .factors
                .iter()
                .map(|f| {
                    format!(
                        "{}:{}(C=CD {}, cheng {})",
                        f.prime, f.order, f.cent_equals_cd, f.cheng
                    )
                })
                .collect();
            pass(format!(
                "nilpotent={} increasing_on_C={} increasing_on_S={} factors [{}]",
                r.nilpotent,
                r.increasing_on_c,
                r.increasing_on_s,
                factors.join(", ")
            ))
        }
        TheoremId::Product => match evaluated {
            Evaluated::Product {
                product,
                left,
                right,
            } => {
                let r = verify_product(product, left, right, ctx)?;
                pass(format!(
                    "|CD|={} (factors {}) |C|={} (factors {})",
                    r.cd_actual, r.cd_expected, r.cent_actual, r.cent_expected
                ))
            }
            Evaluated::Single(_) => skip("not a direct product"),
        },
        TheoremId::Quasi => {
            let r = quasi_antichain_report(ctx)?;
            if r.abelian {
                return pass("abelian: degenerate");
            }
            let mut detail = format!(
                "maximal={} quasi_antichain={} width={}",
                r.maximal.len(),
                r.quasi_antichain,
                r.width.map_or("-".to_string(), |w| w.to_string())
            );
            if let Some(w) = r.non_maximal_witness {
                detail.push_str(&format!(
                    " witness C({}) order {} < order {}",
                    ctx.group().label(w.element),
                    lattice.subgroup(w.centralizer).order(),
                    lattice.subgroup(w.above).order()
                ));
            }
            if !r.nonabelian_maximal.is_empty() {
                detail.push_str(&format!(
                    " nonabelian maximal centralizers {}",
                    r.nonabelian_maximal.len()
                ));
            }
            pass(detail)
        }
        TheoremId::Subnormal => {
            let r = subnormal_invariants(ctx)?;
            pass(format!(
                "nilpotent={} |Sn|={} of {}",
                r.nilpotent,
                r.subnormal_count,
                lattice.len()
            ))
        }
        TheoremId::Structure => {
            let r = centralizer_invariants(ctx)?;
            derived_invariants(ctx)?;
            pass(format!(
                "|C(G)|={} pairs={}",
                r.centralizers, r.pairs_checked
            ))
        }
    }
}

pub fn run_theorem(id: TheoremId, ctx: &CdContext<'_>, evaluated: &Evaluated) -> Outcome {
    let (status, detail) = match run_inner(id, ctx, evaluated) {
        Ok(r) => r,
        Err(e) => (Status::of_error(&e), e.to_string()),
    };
    Outcome {
        theorem: id.as_str(),
        status,
        detail,
    }
}
