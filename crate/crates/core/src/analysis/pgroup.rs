//! p-group conditions and the Sylow decomposition of nilpotent groups.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::is_nilpotent;

use super::CdContext;

/// `Some((p, e))` when `n = p^e` with `e ≥ 1`. The trivial group is not
/// treated as a p-group.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Distinct prime factors with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The evaluated pieces of the derived-subgroup condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChengRecord {
    pub prime: u64,
    pub derived_order: usize,
    pub derived_cyclic: bool,
    /// Generator of `G'` used for the commutator test, when `G'` is cyclic.
    pub generator: Option<usize>,
    pub commutator_order: Option<usize>,
    pub fourth_power_order: Option<usize>,
    pub holds: bool,
}

/// `G' = ⟨a⟩` cyclic with `[a, G] ≤ ⟨a⁴⟩`.
///
/// The choice of generator does not matter: for `b = aᵏ` with `k` prime to
/// `|a|`, `[b, G] = [a, G]` and `⟨b⁴⟩ = ⟨a⁴⟩`. For odd `p` the commutator
/// test is still run and must agree with "`G'` cyclic".
pub fn cheng_record(group: &FiniteGroup) -> Result<ChengRecord> {
    let (p, _) = prime_power(group.order() as u64).ok_or_else(|| {
        Error::Precondition(format!(
            "{} has order {}, which is not a prime power",
            group.name(),
            group.order()
        ))
    })?;
    let derived = group.derived_subgroup();
    let generator = derived
        .iter()
        .find(|&x| group.element_order(x) == derived.order());
    let mut rec = ChengRecord {
        prime: p,
        derived_order: derived.order(),
        derived_cyclic: generator.is_some(),
        generator,
        commutator_order: None,
        fourth_power_order: None,
        holds: false,
    };
    if let Some(a) = generator {
        let commutators = group.commutator_with_group(a)?;
        let fourth = group.generate(&[group.pow(a, 4)]);
        rec.commutator_order = Some(commutators.order());
        rec.fourth_power_order = Some(fourth.order());
        rec.holds = commutators.is_subgroup_of(&fourth);
    }
    if p > 2 && rec.holds != rec.derived_cyclic {
        return Err(Error::violation(
            "cheng",
            group.name(),
            format!(
                "odd p = {p}: G' cyclic is {} but [a,G] ≤ ⟨a⁴⟩ is {}",
                rec.derived_cyclic, rec.holds
            ),
        ));
    }
    Ok(rec)
}

pub fn cheng_condition(group: &FiniteGroup) -> Result<bool> {
    Ok(cheng_record(group)?.holds)
}

/// Checks `|G/Z| = |H/Z|·|C_G(H)/Z|` for every `Z ≤ H ≤ G`.
///
/// Returns the number of intermediate subgroups checked.
pub fn index_factorization_check(ctx: &CdContext<'_>) -> Result<usize> {
    let group = ctx.group();
    if !cheng_condition(group)? {
        return Err(Error::Precondition(format!(
            "{} does not satisfy the derived-subgroup condition",
            group.name()
        )));
    }
    let lattice = ctx.lattice();
    let z = lattice.subgroup(ctx.center()).order();
    let gz = group.order() / z;
    let interval = ctx.interval_over_center();
    for h in interval.iter() {
        let ho = lattice.subgroup(h).order();
        let co = lattice.subgroup(ctx.centralizer_of(h)).order();
        if (ho / z) * (co / z) != gz {
            return Err(Error::violation(
                "index-factorization",
                group.name(),
                format!(
                    "|G/Z| = {gz} but |H/Z|·|C(H)/Z| = {}·{} for subgroup {h}",
                    ho / z,
                    co / z
                ),
            ));
        }
    }
    Ok(interval.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowFactor {
    pub prime: u64,
    pub order: usize,
    /// Lattice index of the Sylow subgroup in the ambient group.
    pub subgroup: usize,
    pub cent_equals_cd: bool,
    pub cheng: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowRecord {
    pub nilpotent: bool,
    pub factors: Vec<SylowFactor>,
    pub increasing_on_c: bool,
    pub increasing_on_s: bool,
}

/// Splits a nilpotent group into its Sylow subgroups and checks that the
/// measure is increasing on `C(G)` (resp. `S(G)`) exactly when every factor
/// has `C = CD` (resp. satisfies [`cheng_condition`]).
pub fn sylow_decomposition_verify(ctx: &CdContext<'_>) -> Result<SylowRecord> {
    let group = ctx.group();
    let lattice = ctx.lattice();
    let nilpotent = is_nilpotent(group).nilpotent;
    let increasing_on_c = ctx.increasing_on_centralizers().holds();
    let increasing_on_s = ctx.increasing_on_subgroups().holds();
    let name = group.name();
    if !nilpotent {
        if increasing_on_c || increasing_on_s {
            return Err(Error::violation(
                "sylow",
                name,
                "measure increasing on a non-nilpotent group",
            ));
        }
        return Ok(SylowRecord {
            nilpotent,
            factors: Vec::new(),
            increasing_on_c,
            increasing_on_s,
        });
    }
    let primes = factorize(group.order() as u64);
    let mut factors = Vec::with_capacity(primes.len());
    for &(p, e) in &primes {
        let order = p.pow(e) as usize;
        let candidates: Vec<usize> = (0..lattice.len())
            .filter(|&i| lattice.subgroup(i).order() == order)
            .collect();
        let [subgroup] = candidates[..] else {
            return Err(Error::violation(
                "sylow",
                name,
                format!(
                    "{} Sylow {p}-subgroups in a nilpotent group",
                    candidates.len()
                ),
            ));
        };
        let (cent_equals_cd, cheng) = if primes.len() == 1 {
            (ctx.cent() == ctx.cd(), cheng_condition(group)?)
        } else {
            let (pg, _) = lattice
                .group()
                .subgroup_as_group(lattice.subgroup(subgroup), format!("{name} Sylow {p}"))?;
            let sub = CdContext::new(&pg, ctx.limits())?;
            (sub.cent() == sub.cd(), cheng_condition(&pg)?)
        };
        factors.push(SylowFactor {
            prime: p,
            order,
            subgroup,
            cent_equals_cd,
            cheng,
        });
    }
    let all_cd = factors.iter().all(|f| f.cent_equals_cd);
    let all_cheng = factors.iter().all(|f| f.cheng);
    if increasing_on_c != all_cd {
        return Err(Error::violation(
            "sylow",
            name,
            format!(
                "increasing on C(G) is {increasing_on_c} but every factor has C = CD is {all_cd}"
            ),
        ));
    }
    if increasing_on_s != all_cheng {
        return Err(Error::violation(
            "sylow",
            name,
            format!("increasing on S(G) is {increasing_on_s} but the derived-subgroup condition on all Sylow factors is {all_cheng}"),
        ));
    }
    Ok(SylowRecord {
        nilpotent,
        factors,
        increasing_on_c,
        increasing_on_s,
    })
}
