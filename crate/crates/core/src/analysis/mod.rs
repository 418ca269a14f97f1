//! Chermak–Delgado measure, its maximal fiber, and the centralizer lattice.
//!
//! [`CdContext`] bundles everything the verifiers need for one group: the
//! subgroup lattice, the centralizer of every subgroup (as a lattice index),
//! the measure map, `CD(G)` and `C(G)`. All of it is derived once from the
//! multiplication table; every flag in [`CdReport`] is recomputed from these
//! pieces and nothing else.

use std::collections::BTreeMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::lattice::{is_nilpotent, PosetSelection, SubgroupLattice};

pub mod invariants;
pub mod pgroup;
pub mod product;
pub mod quasi;
pub mod theorems;

pub use pgroup::{
    cheng_condition, index_factorization_check, prime_power, sylow_decomposition_verify,
};
pub use quasi::quasi_antichain_report;
pub use theorems::{
    image_profile, verify_theorem_centralizers, verify_theorem_increasing, verify_theorem_poset,
};

/// `m_G(H) = |H|·|C_G(H)|` for every lattice index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureMap {
    values: Vec<u64>,
    max_value: u64,
    fibers: BTreeMap<u64, Vec<usize>>,
}

impl MeasureMap {
    pub fn from_values(values: Vec<u64>) -> Self {
        let mut fibers: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, &v) in values.iter().enumerate() {
            fibers.entry(v).or_default().push(i);
        }
        let max_value = values.iter().copied().max().unwrap_or(0);
        MeasureMap {
            values,
            max_value,
            fibers,
        }
    }

    pub fn value(&self, i: usize) -> u64 {
        self.values[i]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn max_value(&self) -> u64 {
        self.max_value
    }

    /// Indices grouped by measure, ascending by measure.
    pub fn fibers(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.fibers
    }

    /// Distinct values, ascending.
    pub fn image(&self) -> Vec<u64> {
        self.fibers.keys().copied().collect()
    }

    /// Sorted multiset of values.
    pub fn multiset(&self) -> Vec<u64> {
        let mut v = self.values.clone();
        v.sort_unstable();
        v
    }
}

/// Lattice index of `C_G(H)` for every subgroup `H`.
pub fn centralizer_indices(lattice: &SubgroupLattice<'_>) -> Vec<usize> {
    let group = lattice.group();
    let element_centralizers: Vec<BitSet> = group
        .elements()
        .map(|x| group.element_centralizer(x))
        .collect();
    (0..lattice.len())
        .map(|i| {
            let mut c = BitSet::full(group.order());
            for &x in lattice.generators(i) {
                c.intersect_with(&element_centralizers[x]);
            }
            lattice
                .index_of_set(&c)
                .expect("a centralizer is a subgroup and therefore in the lattice")
        })
        .collect()
}

pub fn measure_map(lattice: &SubgroupLattice<'_>) -> MeasureMap {
    let cent = centralizer_indices(lattice);
    measure_from_centralizers(lattice, &cent)
}

fn measure_from_centralizers(lattice: &SubgroupLattice<'_>, cent: &[usize]) -> MeasureMap {
    MeasureMap::from_values(
        (0..lattice.len())
            .map(|i| (lattice.subgroup(i).order() * lattice.subgroup(cent[i]).order()) as u64)
            .collect(),
    )
}

/// The maximal fiber of `m_G`, checked to be closed under meet and join.
pub fn cd_lattice(lattice: &SubgroupLattice<'_>, measure: &MeasureMap) -> Result<PosetSelection> {
    let fiber = measure
        .fibers()
        .get(&measure.max_value())
        .cloned()
        .unwrap_or_default();
    let sel = PosetSelection::new(fiber);
    for a in sel.iter() {
        for b in sel.iter().filter(|&b| b > a) {
            let (m, j) = (lattice.meet(a, b)?, lattice.join(a, b)?);
            if !sel.contains(m) || !sel.contains(j) {
                return Err(Error::violation(
                    "cd-sublattice",
                    lattice.group().name(),
                    format!("maximal fiber not closed under meet/join at subgroups {a}, {b}"),
                ));
            }
        }
    }
    Ok(sel)
}

/// All subgroups of the form `C_G(H)`.
pub fn centralizer_lattice(lattice: &SubgroupLattice<'_>) -> PosetSelection {
    PosetSelection::new(centralizer_indices(lattice))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A comparable pair `lower ≤ upper` on which monotonicity fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotoneWitness {
    pub lower: usize,
    pub upper: usize,
    pub lower_measure: u64,
    pub upper_measure: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Holds,
    Fails(MonotoneWitness),
}

impl Monotone {
    pub fn holds(&self) -> bool {
        matches!(self, Monotone::Holds)
    }

    pub fn witness(&self) -> Option<MonotoneWitness> {
        match self {
            Monotone::Holds => None,
            Monotone::Fails(w) => Some(*w),
        }
    }
}

/// Checks `H ≤ K ⇒ m(H) ≤ m(K)` (or `≥` when decreasing) on `sel`.
///
/// On the full lattice only Hasse covers are examined. On a proper selection
/// every comparable pair is, since the selection's covers differ from the
/// ambient ones. Pairs are scanned with the lower index outermost, so the
/// reported witness is the first failure in that order.
pub fn is_monotone_on(
    measure: &MeasureMap,
    lattice: &SubgroupLattice<'_>,
    sel: &PosetSelection,
    direction: Direction,
) -> Monotone {
    let ok = |lo: u64, hi: u64| match direction {
        Direction::Increasing => lo <= hi,
        Direction::Decreasing => lo >= hi,
    };
    let check = |lower: usize, upper: usize| {
        let (lo, hi) = (measure.value(lower), measure.value(upper));
        (!ok(lo, hi)).then_some(MonotoneWitness {
            lower,
            upper,
            lower_measure: lo,
            upper_measure: hi,
        })
    };
    if sel.len() == lattice.len() {
        for lower in 0..lattice.len() {
            for &upper in lattice.covers_up(lower) {
                if let Some(w) = check(lower, upper) {
                    return Monotone::Fails(w);
                }
            }
        }
    } else {
        for lower in sel.iter() {
            for upper in sel.iter().filter(|&u| u != lower && lattice.leq(lower, u)) {
                if let Some(w) = check(lower, upper) {
                    return Monotone::Fails(w);
                }
            }
        }
    }
    Monotone::Holds
}

/// Everything the verifiers need for one group, computed once.
#[derive(Debug, Clone)]
pub struct CdContext<'g> {
    lattice: SubgroupLattice<'g>,
    centralizer_of: Vec<usize>,
    center: usize,
    measure: MeasureMap,
    cd: PosetSelection,
    cent: PosetSelection,
    limits: Limits,
}

impl<'g> CdContext<'g> {
    pub fn new(group: &'g FiniteGroup, limits: &Limits) -> Result<Self> {
        let lattice = SubgroupLattice::new(group, limits)?;
        let centralizer_of = centralizer_indices(&lattice);
        let measure = measure_from_centralizers(&lattice, &centralizer_of);
        let cd = cd_lattice(&lattice, &measure)?;
        let cent = PosetSelection::new(centralizer_of.iter().copied());
        let center = centralizer_of[lattice.top()];
        Ok(CdContext {
            lattice,
            centralizer_of,
            center,
            measure,
            cd,
            cent,
            limits: *limits,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.lattice.group()
    }

    pub fn lattice(&self) -> &SubgroupLattice<'g> {
        &self.lattice
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Lattice index of `Z(G)`.
    pub fn center(&self) -> usize {
        self.center
    }

    /// Lattice index of `C_G(Hᵢ)`.
    pub fn centralizer_of(&self, i: usize) -> usize {
        self.centralizer_of[i]
    }

    pub fn centralizers(&self) -> &[usize] {
        &self.centralizer_of
    }

    pub fn measure(&self) -> &MeasureMap {
        &self.measure
    }

    pub fn cd(&self) -> &PosetSelection {
        &self.cd
    }

    pub fn cent(&self) -> &PosetSelection {
        &self.cent
    }

    /// `[G / Z(G)]`.
    pub fn interval_over_center(&self) -> PosetSelection {
        self.lattice
            .interval(self.center, self.lattice.top())
            .expect("Z(G) ≤ G")
    }

    pub fn is_abelian_subgroup(&self, i: usize) -> bool {
        // H is abelian iff H ≤ C_G(H)
        self.lattice.leq(i, self.centralizer_of[i])
    }

    pub fn monotone(&self, sel: &PosetSelection, direction: Direction) -> Monotone {
        is_monotone_on(&self.measure, &self.lattice, sel, direction)
    }

    pub fn increasing_on_subgroups(&self) -> Monotone {
        self.monotone(&self.lattice.full_selection(), Direction::Increasing)
    }

    pub fn increasing_on_centralizers(&self) -> Monotone {
        self.monotone(&self.cent, Direction::Increasing)
    }

    pub fn subnormal_flags(&self) -> Result<Vec<bool>> {
        (0..self.lattice.len())
            .map(|i| self.lattice.is_subnormal(i))
            .collect()
    }
}

/// Named booleans summarising one group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdFlags {
    pub increasing_on_s: bool,
    pub increasing_on_c: bool,
    pub decreasing_on_s: bool,
    pub cd_equals_interval: bool,
    pub cd_equals_cent: bool,
    /// Present only for groups of prime-power order.
    pub cheng: Option<bool>,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdNumbers {
    /// Number of divisors of `|Z(G)|`.
    pub k: usize,
    pub image_size: usize,
    /// Width of `C(G)` when it is a quasi-antichain (0 when it has at most
    /// two members).
    pub width: Option<usize>,
    /// `|G| = p^a`, present only for prime-power order.
    pub a: Option<u32>,
    /// `|Z(G)| = p^b`, present only for prime-power order.
    pub b: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct CdReport {
    pub cd: PosetSelection,
    pub cent: PosetSelection,
    pub interval_gz: PosetSelection,
    pub flags: CdFlags,
    pub numbers: CdNumbers,
    pub nilpotency_class: Option<usize>,
    pub increasing_witness: Option<MonotoneWitness>,
    pub centralizer_witness: Option<MonotoneWitness>,
}

pub fn divisor_count(n: u64) -> usize {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count()
}

pub fn cd_report(ctx: &CdContext<'_>) -> Result<CdReport> {
    let lattice = ctx.lattice();
    let full = lattice.full_selection();
    let inc_s = ctx.increasing_on_subgroups();
    let inc_c = ctx.increasing_on_centralizers();
    let dec_s = ctx.monotone(&full, Direction::Decreasing);
    let interval_gz = ctx.interval_over_center();
    let nil = is_nilpotent(ctx.group());
    let pp = prime_power(ctx.group().order() as u64);
    let cheng = match pp {
        Some(_) => Some(cheng_condition(ctx.group())?),
        None => None,
    };
    let b = pp.map(|(p, _)| {
        let z = lattice.subgroup(ctx.center()).order() as u64;
        z.ilog(p)
    });
    let flags = CdFlags {
        increasing_on_s: inc_s.holds(),
        increasing_on_c: inc_c.holds(),
        decreasing_on_s: dec_s.holds(),
        cd_equals_interval: *ctx.cd() == interval_gz,
        cd_equals_cent: ctx.cd() == ctx.cent(),
        cheng,
        nilpotent: nil.nilpotent,
    };
    let numbers = CdNumbers {
        k: divisor_count(lattice.subgroup(ctx.center()).order() as u64),
        image_size: ctx.measure().image().len(),
        width: lattice.quasi_antichain_width(ctx.cent())?,
        a: pp.map(|(_, e)| e),
        b,
    };
    Ok(CdReport {
        cd: ctx.cd().clone(),
        cent: ctx.cent().clone(),
        interval_gz,
        flags,
        numbers,
        nilpotency_class: nil.class,
        increasing_witness: inc_s.witness(),
        centralizer_witness: inc_c.witness(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, cyclic, dihedral, heisenberg, quaternion, symmetric};

    fn limits() -> Limits {
        Limits::default()
    }

    fn by_order(ctx: &CdContext<'_>) -> Vec<(usize, u64)> {
        let l = ctx.lattice();
        (0..l.len())
            .map(|i| (l.subgroup(i).order(), ctx.measure().value(i)))
            .collect()
    }

    #[test]
    fn s3_measures() {
        let g = symmetric(3, &limits()).unwrap();
        let ctx = CdContext::new(&g, &limits()).unwrap();
        assert_eq!(
            by_order(&ctx),
            vec![(1, 6), (2, 4), (2, 4), (2, 4), (3, 9), (6, 6)]
        );
        assert_eq!(ctx.measure().image(), vec![4, 6, 9]);
        let c3 = 4;
        assert_eq!(ctx.centralizer_of(c3), c3);
    }

    #[test]
    fn a4_measures_and_cd() {
        let g = alternating(4, &limits()).unwrap();
        let ctx = CdContext::new(&g, &limits()).unwrap();
        let mut expected = vec![(1, 12)];
        expected.extend([(2, 8); 3]);
        expected.extend([(3, 9); 4]);
        expected.extend([(4, 16), (12, 12)]);
        assert_eq!(by_order(&ctx), expected);
        assert_eq!(ctx.cd().indices(), &[8]);
        let w = ctx.increasing_on_subgroups().witness().unwrap();
        assert_eq!((w.lower, w.lower_measure, w.upper_measure), (0, 12, 8));
        assert_eq!(ctx.lattice().subgroup(w.upper).order(), 2);
    }

    #[test]
    fn d8_cd_is_interval_over_center() {
        let g = dihedral(8);
        let ctx = CdContext::new(&g, &limits()).unwrap();
        assert_eq!(ctx.cd().len(), 5);
        assert_eq!(*ctx.cd(), ctx.interval_over_center());
        assert!(ctx.increasing_on_subgroups().holds());
        let fibers = ctx.measure().fibers();
        assert_eq!(fibers.keys().copied().collect::<Vec<_>>(), vec![8, 16]);
        assert!(fibers.values().all(|f| f.len() == 5));
    }

    #[test]
    fn d8_centralizer_lattice() {
        let g = dihedral(8);
        let ctx = CdContext::new(&g, &limits()).unwrap();
        let orders: Vec<usize> = ctx
            .cent()
            .iter()
            .map(|i| ctx.lattice().subgroup(i).order())
            .collect();
        assert_eq!(orders, vec![2, 4, 4, 4, 8]);
    }

    #[test]
    fn abelian_groups() {
        let g = cyclic(6);
        let ctx = CdContext::new(&g, &limits()).unwrap();
        let top = ctx.lattice().top();
        assert_eq!(ctx.cent().indices(), &[top]);
        assert!(ctx.cd().contains(top));
        assert_eq!(ctx.measure().value(top), 36);
    }

    #[test]
    fn measure_of_whole_group() {
        for g in [
            symmetric(4, &limits()).unwrap(),
            quaternion(16),
            heisenberg(3, 1, &limits()).unwrap(),
        ] {
            let ctx = CdContext::new(&g, &limits()).unwrap();
            let top = ctx.lattice().top();
            assert_eq!(
                ctx.measure().value(top),
                (g.order() * g.center().order()) as u64
            );
        }
    }

    #[test]
    fn trivial_group_is_monotone_both_ways() {
        let g = cyclic(1);
        let ctx = CdContext::new(&g, &limits()).unwrap();
        let full = ctx.lattice().full_selection();
        assert!(ctx.monotone(&full, Direction::Increasing).holds());
        assert!(ctx.monotone(&full, Direction::Decreasing).holds());
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(4), 3);
        assert_eq!(divisor_count(12), 6);
    }

    #[test]
    fn report_for_trivial_group() {
        let g = cyclic(1);
        let ctx = CdContext::new(&g, &limits()).unwrap();
        let r = cd_report(&ctx).unwrap();
        assert!(r.flags.increasing_on_s && r.flags.increasing_on_c && r.flags.decreasing_on_s);
        assert!(r.flags.cd_equals_interval && r.flags.cd_equals_cent && r.flags.nilpotent);
        assert_eq!(r.flags.cheng, None);
        assert_eq!(r.numbers.a, None);
        assert_eq!(r.numbers.k, 1);
    }
}
