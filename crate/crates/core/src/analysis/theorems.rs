//! Verifiers for the monotonicity theorems and the image bound.
//!
//! Each verifier evaluates every side of an equivalence independently and
//! returns the values. A disagreement is reported as
//! [`Error::TheoremViolation`]; since the statements are theorems, that can
//! only mean a bug in the kernel.

use crate::error::{Error, Result};
use crate::lattice::{is_nilpotent, PosetSelection};

use super::{divisor_count, CdContext, Direction, MonotoneWitness};

/// The three conditions of the increasing-measure equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncreasingRecord {
    pub increasing: bool,
    /// `m(H) = m(H ∩ Z(G))` for all `H`.
    pub center_meet: bool,
    pub cd_equals_interval: bool,
    pub witness: Option<MonotoneWitness>,
    /// First `H` with `m(H) ≠ m(H ∩ Z)`.
    pub center_meet_witness: Option<usize>,
}

pub fn verify_theorem_increasing(ctx: &CdContext<'_>) -> Result<IncreasingRecord> {
    let lattice = ctx.lattice();
    let m = ctx.measure();
    let inc = ctx.increasing_on_subgroups();
    let mut center_meet_witness = None;
    for h in 0..lattice.len() {
        if m.value(h) != m.value(lattice.meet(h, ctx.center())?) {
            center_meet_witness = Some(h);
            break;
        }
    }
    let rec = IncreasingRecord {
        increasing: inc.holds(),
        center_meet: center_meet_witness.is_none(),
        cd_equals_interval: *ctx.cd() == ctx.interval_over_center(),
        witness: inc.witness(),
        center_meet_witness,
    };
    if rec.increasing != rec.center_meet || rec.center_meet != rec.cd_equals_interval {
        return Err(Error::violation(
            "increasing",
            ctx.group().name(),
            format!(
                "increasing={}, m(H)=m(H∩Z)={}, CD=[G/Z]={}",
                rec.increasing, rec.center_meet, rec.cd_equals_interval
            ),
        ));
    }
    Ok(rec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralizerRecord {
    pub increasing_on_c: bool,
    pub cent_equals_cd: bool,
    pub nilpotent: bool,
    pub witness: Option<MonotoneWitness>,
}

pub fn verify_theorem_centralizers(ctx: &CdContext<'_>) -> Result<CentralizerRecord> {
    let inc = ctx.increasing_on_centralizers();
    let rec = CentralizerRecord {
        increasing_on_c: inc.holds(),
        cent_equals_cd: ctx.cent() == ctx.cd(),
        nilpotent: is_nilpotent(ctx.group()).nilpotent,
        witness: inc.witness(),
    };
    if rec.increasing_on_c != rec.cent_equals_cd {
        return Err(Error::violation(
            "centralizers",
            ctx.group().name(),
            format!(
                "increasing on C(G) is {} but C(G)=CD(G) is {}",
                rec.increasing_on_c, rec.cent_equals_cd
            ),
        ));
    }
    if rec.increasing_on_c && !rec.nilpotent {
        return Err(Error::violation(
            "centralizers",
            ctx.group().name(),
            "measure increasing on C(G) but G is not nilpotent",
        ));
    }
    Ok(rec)
}

/// Outcome of the poset theorem and the interval-constancy statements on
/// one selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetRecord {
    pub increasing: bool,
    pub witness: Option<MonotoneWitness>,
    /// `CD(G) ∩ P`.
    pub cd_part: PosetSelection,
    /// `{H ∈ P : Z(G) ≤ H}`.
    pub above_center: PosetSelection,
    /// Abelian centralizers `C ∈ P` with `C_G(C) ∈ P` whose interval was
    /// checked.
    pub intervals_checked: usize,
}

pub fn verify_theorem_poset(ctx: &CdContext<'_>, sel: &PosetSelection) -> Result<PosetRecord> {
    let lattice = ctx.lattice();
    let z = ctx.center();
    if !sel.contains(z) || !sel.contains(lattice.top()) {
        return Err(Error::Precondition(
            "the selection must contain Z(G) and G".into(),
        ));
    }
    if sel.intersection(ctx.cd()).is_empty() {
        return Err(Error::Precondition("the selection must meet CD(G)".into()));
    }
    let mono = ctx.monotone(sel, Direction::Increasing);
    let cd_part = sel.intersection(ctx.cd());
    let above_center: PosetSelection = sel.iter().filter(|&h| lattice.leq(z, h)).collect();
    let group = ctx.group().name();
    if mono.holds() && cd_part != above_center {
        return Err(Error::violation(
            "poset",
            group,
            format!(
                "increasing on the selection but CD∩P = {:?} differs from members above Z = {:?}",
                cd_part.indices(),
                above_center.indices()
            ),
        ));
    }
    let m = ctx.measure();
    let mut intervals_checked = 0;
    if mono.holds() {
        for c in sel.iter() {
            let cc = ctx.centralizer_of(c);
            if ctx.centralizer_of(cc) != c || !ctx.is_abelian_subgroup(c) || !sel.contains(cc) {
                continue;
            }
            intervals_checked += 1;
            let interval: Vec<usize> = sel
                .iter()
                .filter(|&x| lattice.leq(c, x) && lattice.leq(x, cc))
                .collect();
            if let Some(&x) = interval.iter().find(|&&x| m.value(x) != m.value(c)) {
                return Err(Error::violation(
                    "interval-constancy",
                    group,
                    format!(
                        "m({x}) = {} differs from m({c}) = {}",
                        m.value(x),
                        m.value(c)
                    ),
                ));
            }
            let touches_cd = interval.iter().any(|&x| ctx.cd().contains(x));
            if touches_cd && !interval.iter().all(|&x| ctx.cd().contains(x)) {
                return Err(Error::violation(
                    "interval-in-cd",
                    group,
                    format!("interval [{cc}/{c}] meets CD(G) without lying inside it"),
                ));
            }
        }
    }
    Ok(PosetRecord {
        increasing: mono.holds(),
        witness: mono.witness(),
        cd_part,
        above_center,
        intervals_checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecreasingRecord {
    pub decreasing: bool,
    pub trivial: bool,
    pub witness: Option<MonotoneWitness>,
}

pub fn verify_decreasing_trivial(ctx: &CdContext<'_>) -> Result<DecreasingRecord> {
    let mono = ctx.monotone(&ctx.lattice().full_selection(), Direction::Decreasing);
    let rec = DecreasingRecord {
        decreasing: mono.holds(),
        trivial: ctx.group().order() == 1,
        witness: mono.witness(),
    };
    if rec.decreasing != rec.trivial {
        return Err(Error::violation(
            "decreasing-trivial",
            ctx.group().name(),
            format!(
                "decreasing={} on a group of order {}",
                rec.decreasing,
                ctx.group().order()
            ),
        ));
    }
    Ok(rec)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageProfile {
    pub image: Vec<u64>,
    pub image_size: usize,
    pub k: usize,
    pub bound_ok: bool,
    pub increasing: bool,
    /// `|Im| = k`; only asserted when the measure is increasing.
    pub equality: bool,
}

pub fn image_profile(ctx: &CdContext<'_>) -> Result<ImageProfile> {
    let g = ctx.group();
    let z = ctx.lattice().subgroup(ctx.center()).order() as u64;
    let image = ctx.measure().image();
    let order = g.order() as u64;
    let forced: Vec<u64> = (1..=z)
        .filter(|n| z.is_multiple_of(*n))
        .map(|n| n * order)
        .collect();
    if let Some(v) = forced.iter().find(|v| image.binary_search(v).is_err()) {
        return Err(Error::violation(
            "image-bound",
            g.name(),
            format!("{v} = n·|G| with n dividing |Z(G)| is missing from the image"),
        ));
    }
    let k = divisor_count(z);
    let increasing = ctx.increasing_on_subgroups().holds();
    let equality = image.len() == k;
    if increasing && image != forced {
        return Err(Error::violation(
            "image-bound",
            g.name(),
            format!("measure is increasing but the image {image:?} is not {forced:?}"),
        ));
    }
    Ok(ImageProfile {
        image_size: image.len(),
        image,
        k,
        bound_ok: true,
        increasing,
        equality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, cyclic, dihedral, heisenberg, quaternion, symmetric};
    use crate::group::{FiniteGroup, Limits};

    fn ctx(g: &FiniteGroup) -> CdContext<'_> {
        CdContext::new(g, &Limits::default()).unwrap()
    }

    #[test]
    fn increasing_records() {
        let d8 = dihedral(8);
        let r = verify_theorem_increasing(&ctx(&d8)).unwrap();
        assert!(r.increasing && r.center_meet && r.cd_equals_interval);
        let a4 = alternating(4, &Limits::default()).unwrap();
        let r = verify_theorem_increasing(&ctx(&a4)).unwrap();
        assert!(!r.increasing && !r.center_meet && !r.cd_equals_interval);
        let q8 = quaternion(8);
        let r = verify_theorem_increasing(&ctx(&q8)).unwrap();
        assert!(r.increasing && r.center_meet && r.cd_equals_interval);
    }

    #[test]
    fn centralizer_records() {
        let h = heisenberg(3, 1, &Limits::default()).unwrap();
        let r = verify_theorem_centralizers(&ctx(&h)).unwrap();
        assert!(r.increasing_on_c && r.cent_equals_cd && r.nilpotent);
        let s3 = symmetric(3, &Limits::default()).unwrap();
        let r = verify_theorem_centralizers(&ctx(&s3)).unwrap();
        assert!(!r.increasing_on_c && !r.cent_equals_cd);
        let c5 = cyclic(5);
        let r = verify_theorem_centralizers(&ctx(&c5)).unwrap();
        assert!(r.increasing_on_c && r.cent_equals_cd);
    }

    #[test]
    fn poset_on_centralizers_of_d8() {
        let d8 = dihedral(8);
        let c = ctx(&d8);
        let r = verify_theorem_poset(&c, c.cent()).unwrap();
        assert!(r.increasing);
        assert_eq!(r.cd_part.len(), 5);
        assert_eq!(r.cd_part, r.above_center);
    }

    #[test]
    fn poset_on_center_and_top_of_abelian() {
        let g = cyclic(6);
        let c = ctx(&g);
        let sel = PosetSelection::new([c.center(), c.lattice().top()]);
        let r = verify_theorem_poset(&c, &sel).unwrap();
        assert!(r.increasing);
        assert_eq!(r.cd_part, r.above_center);
    }

    #[test]
    fn poset_preconditions() {
        let a4 = alternating(4, &Limits::default()).unwrap();
        let c = ctx(&a4);
        let missing_top = PosetSelection::new([0, 8]);
        assert!(matches!(
            verify_theorem_poset(&c, &missing_top),
            Err(Error::Precondition(_))
        ));
        let misses_cd = PosetSelection::new([0, 9]);
        assert!(matches!(
            verify_theorem_poset(&c, &misses_cd),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn decreasing_only_on_trivial() {
        let one = cyclic(1);
        assert!(verify_decreasing_trivial(&ctx(&one)).unwrap().decreasing);
        let c2 = cyclic(2);
        let r = verify_decreasing_trivial(&ctx(&c2)).unwrap();
        assert!(!r.decreasing && !r.trivial);
    }

    #[test]
    fn image_profiles() {
        let s3 = symmetric(3, &Limits::default()).unwrap();
        let p = image_profile(&ctx(&s3)).unwrap();
        assert_eq!((p.image.clone(), p.k, p.bound_ok), (vec![4, 6, 9], 1, true));
        let q8 = quaternion(8);
        let p = image_profile(&ctx(&q8)).unwrap();
        assert_eq!((p.image.clone(), p.k, p.equality), (vec![8, 16], 2, true));
        let one = cyclic(1);
        let p = image_profile(&ctx(&one)).unwrap();
        assert_eq!((p.image.clone(), p.k, p.equality), (vec![1], 1, true));
    }
}
