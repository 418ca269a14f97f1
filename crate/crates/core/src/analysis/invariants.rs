//! Structural facts about centralizers, subnormality and `CD(G)` that hold
//! for every finite group. Each check returns a summary or a
//! [`Error::TheoremViolation`] naming the offending subgroups.

use crate::error::{Error, Result};
use crate::lattice::is_nilpotent;

use super::CdContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralizerInvariants {
    pub centralizers: usize,
    /// Comparable pairs checked for inclusion reversal.
    pub pairs_checked: usize,
}

/// Double centralizers, measure duality, inclusion reversal, closure of
/// `C(G)` under intersection, and `CD(G) ⊆ C(G)`.
pub fn centralizer_invariants(ctx: &CdContext<'_>) -> Result<CentralizerInvariants> {
    let lattice = ctx.lattice();
    let m = ctx.measure();
    let name = ctx.group().name();
    let fail = |theorem: &'static str, detail: String| Err(Error::violation(theorem, name, detail));
    for c in ctx.cent().iter() {
        let cc = ctx.centralizer_of(c);
        if ctx.centralizer_of(cc) != c {
            return fail("double-centralizer", format!("C(C({c})) ≠ {c}"));
        }
        if m.value(c) != m.value(cc) {
            return fail(
                "measure-duality",
                format!("m({c}) = {} but m(C({c})) = {}", m.value(c), m.value(cc)),
            );
        }
        if !ctx.cent().contains(cc) {
            return fail("duality", format!("C({c}) = {cc} is not a centralizer"));
        }
    }
    let mut pairs_checked = 0;
    for h in 0..lattice.len() {
        for k in lattice.down_set(h).iter() {
            pairs_checked += 1;
            if !lattice.leq(ctx.centralizer_of(h), ctx.centralizer_of(k)) {
                return fail(
                    "centralizer-reversal",
                    format!("{k} ≤ {h} but C({h}) ≰ C({k})"),
                );
            }
        }
    }
    for a in ctx.cent().iter() {
        for b in ctx.cent().iter().filter(|&b| b > a) {
            let meet = lattice.meet(a, b)?;
            if !ctx.cent().contains(meet) {
                return fail(
                    "centralizer-meet",
                    format!("{a} ∧ {b} = {meet} is not a centralizer"),
                );
            }
        }
    }
    if !ctx.cd().is_subset(ctx.cent()) {
        return fail("cd-in-cent", "CD(G) is not contained in C(G)".into());
    }
    Ok(CentralizerInvariants {
        centralizers: ctx.cent().len(),
        pairs_checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubnormalRecord {
    pub nilpotent: bool,
    pub all_subnormal: bool,
    pub centralizers_subnormal: bool,
    pub subnormal_count: usize,
}

/// Nilpotent ⟺ every subgroup subnormal ⟺ every centralizer subnormal;
/// joins of subnormal subgroups are subnormal; `CD(G) ⊆ Sn(G)`.
pub fn subnormal_invariants(ctx: &CdContext<'_>) -> Result<SubnormalRecord> {
    let lattice = ctx.lattice();
    let name = ctx.group().name();
    let sn = ctx.subnormal_flags()?;
    let nilpotent = is_nilpotent(ctx.group()).nilpotent;
    let all_subnormal = sn.iter().all(|&s| s);
    let centralizers_subnormal = ctx.cent().iter().all(|c| sn[c]);
    if nilpotent != all_subnormal || all_subnormal != centralizers_subnormal {
        return Err(Error::violation(
            "nilpotent-subnormal",
            name,
            format!(
                "nilpotent={nilpotent}, all subnormal={all_subnormal}, centralizers subnormal={centralizers_subnormal}"
            ),
        ));
    }
    if !all_subnormal {
        let subnormal: Vec<usize> = (0..lattice.len()).filter(|&i| sn[i]).collect();
        for (x, &s) in subnormal.iter().enumerate() {
            for &t in &subnormal[x + 1..] {
                let j = lattice.join(s, t)?;
                if !sn[j] {
                    return Err(Error::violation(
                        "subnormal-join",
                        name,
                        format!("{s} and {t} are subnormal but their join {j} is not"),
                    ));
                }
            }
        }
    }
    if let Some(h) = ctx.cd().iter().find(|&h| !sn[h]) {
        return Err(Error::violation(
            "cd-subnormal",
            name,
            format!("subgroup {h} of CD(G) is not subnormal"),
        ));
    }
    Ok(SubnormalRecord {
        nilpotent,
        all_subnormal,
        centralizers_subnormal,
        subnormal_count: sn.iter().filter(|&&s| s).count(),
    })
}

/// `G'` is normal and `G/G'` is abelian.
pub fn derived_invariants(ctx: &CdContext<'_>) -> Result<()> {
    let g = ctx.group();
    let d = g.derived_subgroup();
    if !g.is_normal(&d) {
        return Err(Error::violation("derived", g.name(), "G' is not normal"));
    }
    for x in g.elements() {
        for y in g.elements() {
            if !d.contains(g.commutator(x, y)) {
                return Err(Error::violation(
                    "derived",
                    g.name(),
                    format!("[{x},{y}] lies outside G'"),
                ));
            }
        }
    }
    Ok(())
}
