//! Finite groups as dense multiplication tables, and subgroups as bitsets.
//!
//! Elements are indices `0..order`; index `0` is always the identity. Every
//! constructor in this crate enumerates elements deterministically, so
//! subgroup indices and labels are reproducible across runs.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Element index within a [`FiniteGroup`].
pub type Elem = usize;

/// Size caps shared by constructors and lattice enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_points: usize,
    pub max_subgroups: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 2000,
            max_points: 16,
            max_subgroups: 100_000,
        }
    }
}

impl Limits {
    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    pub(crate) fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            Err(Error::OrderCap {
                cap: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

/// Identity of a constructed group; subgroups remember which group owns them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupId(u64);

impl GroupId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        GroupId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    id: GroupId,
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    elem_orders: Vec<u32>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table.
    ///
    /// Checks that `0` is a two-sided identity, that every element has a
    /// two-sided inverse, that labels are unique and (when the order is at
    /// most `associativity_cap`) that the table is associative.
    pub fn from_table(
        name: impl Into<String>,
        mul: Vec<u32>,
        labels: Vec<String>,
        associativity_cap: usize,
    ) -> Result<Self> {
        let order = labels.len();
        if order == 0 {
            return Err(Error::InvalidTable(
                "a group has at least one element".into(),
            ));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidTable("table entry out of range".into()));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::InvalidTable(format!(
                    "element 0 is not a two-sided identity (fails at {x})"
                )));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            match row.iter().position(|&y| y == 0) {
                Some(y) if mul[y * order + x] == 0 => inv[x] = y as u32,
                _ => {
                    return Err(Error::InvalidTable(format!(
                        "element {x} has no two-sided inverse"
                    )))
                }
            }
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTable("element labels are not unique".into()));
        }
        let group = Self::assemble(name.into(), mul, inv, labels);
        if order <= associativity_cap {
            group.check_associative()?;
        }
        Ok(group)
    }

    /// Trusted constructor for tables produced inside the crate.
    pub(crate) fn assemble(
        name: String,
        mul: Vec<u32>,
        inv: Vec<u32>,
        labels: Vec<String>,
    ) -> Self {
        let order = labels.len();
        let mut elem_orders = vec![0u32; order];
        for x in 0..order {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = mul[y * order + x] as usize;
                k += 1;
            }
            elem_orders[x] = k;
        }
        FiniteGroup {
            id: GroupId::fresh(),
            name,
            order,
            mul,
            inv,
            labels,
            elem_orders,
        }
    }

    /// Exhaustive associativity check over all triples.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        let k = k % self.elem_orders[a] as usize;
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        self.elem_orders[a] as usize
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.elem_orders
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(self.mul(a, x), y)
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn check_index(&self, x: Elem) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.order)
    }

    // ---------------------------------------------------------------------
    // Subgroup primitives
    // ---------------------------------------------------------------------

    fn wrap(&self, members: BitSet) -> Subgroup {
        Subgroup {
            order: members.count(),
            members,
            group: self.id,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.wrap(BitSet::from_indices(self.order, [0]))
    }

    pub fn whole(&self) -> Subgroup {
        self.wrap(BitSet::full(self.order))
    }

    /// Smallest set containing `base` that is closed under right
    /// multiplication by every element of `gens`.
    ///
    /// `base` must already be a subgroup contained in `⟨gens⟩`; the result
    /// is then exactly `⟨gens⟩`.
    pub(crate) fn extend_closure(&self, base: &BitSet, gens: &[Elem]) -> BitSet {
        let mut set = base.clone();
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for x in base.iter() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// `⟨gens⟩`.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        let base = BitSet::from_indices(self.order, [0]);
        self.wrap(self.extend_closure(&base, gens))
    }

    /// `⟨S⟩` for an arbitrary element set `S`.
    pub fn generate_set(&self, set: &BitSet) -> Subgroup {
        let gens = self.generators_of(set);
        self.generate(&gens)
    }

    /// A small generating set for `⟨S⟩`, chosen greedily in index order.
    pub fn generators_of(&self, set: &BitSet) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = BitSet::from_indices(self.order, [0]);
        for x in set.iter() {
            if !current.contains(x) {
                gens.push(x);
                current = self.extend_closure(&current, &gens);
            }
        }
        gens
    }

    /// Wraps a member set, verifying it is a subgroup.
    pub fn subgroup_from_set(&self, set: BitSet) -> Result<Subgroup> {
        if set.universe() != self.order {
            return Err(Error::Precondition(
                "element set has the wrong width".into(),
            ));
        }
        if !set.contains(0) {
            return Err(Error::Precondition(
                "subgroup must contain the identity".into(),
            ));
        }
        for a in set.iter() {
            if !set.contains(self.inv(a)) {
                return Err(Error::Precondition(format!(
                    "not closed under inverse at {a}"
                )));
            }
            for b in set.iter() {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::Precondition(format!(
                        "not closed under multiplication at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(self.wrap(set))
    }

    /// `C_G(x)` as a member set.
    pub fn element_centralizer(&self, x: Elem) -> BitSet {
        BitSet::from_indices(self.order, (0..self.order).filter(|&g| self.commutes(g, x)))
    }

    /// `C_G(S) = { g : gs = sg for all s ∈ S }`. The empty set yields `G`.
    pub fn centralizer(&self, set: &BitSet) -> Result<Subgroup> {
        if set.universe() != self.order {
            return Err(Error::Precondition(
                "element set has the wrong width".into(),
            ));
        }
        let gens = self.generators_of(set);
        Ok(self.centralizer_of_elements(&gens))
    }

    /// Centralizer of a list of elements (typically a generating set).
    pub fn centralizer_of_elements(&self, elems: &[Elem]) -> Subgroup {
        let members = BitSet::from_indices(
            self.order,
            (0..self.order).filter(|&g| elems.iter().all(|&s| self.commutes(g, s))),
        );
        self.wrap(members)
    }

    pub fn center(&self) -> Subgroup {
        let all: Vec<Elem> = self.elements().collect();
        let gens = self.generators_of(&BitSet::from_indices(self.order, all));
        self.centralizer_of_elements(&gens)
    }

    /// True if `h` is normalized by every element of `k` (checked on
    /// generating sets of both).
    pub fn normalizes(&self, k: &Subgroup, h: &Subgroup) -> bool {
        let h_gens = self.generators_of(&h.members);
        let k_gens = self.generators_of(&k.members);
        h_gens
            .iter()
            .all(|&x| k_gens.iter().all(|&g| h.contains(self.conjugate(x, g))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normalizes(&self.whole(), h)
    }

    /// Smallest normal subgroup of `k` containing `h`. Requires `h ≤ k`.
    pub fn normal_closure(&self, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
        self.owns(h)?;
        self.owns(k)?;
        if !h.is_subgroup_of(k) {
            return Err(Error::Precondition(
                "normal closure requires H to be contained in K".into(),
            ));
        }
        let k_gens = self.generators_of(&k.members);
        let mut gens = self.generators_of(&h.members);
        let mut members = h.members.clone();
        let mut next = 0;
        while next < gens.len() {
            let x = gens[next];
            next += 1;
            for &g in &k_gens {
                let y = self.conjugate(x, g);
                if !members.contains(y) {
                    gens.push(y);
                    members = self.extend_closure(&members, &gens);
                }
            }
        }
        Ok(self.wrap(members))
    }

    /// `G' = ⟨x⁻¹y⁻¹xy⟩`.
    pub fn derived_subgroup(&self) -> Subgroup {
        self.generate_set(&self.commutator_set(&self.whole()))
    }

    fn commutator_set(&self, h: &Subgroup) -> BitSet {
        let mut set = self.empty_set();
        for x in h.iter() {
            for y in self.elements() {
                set.insert(self.commutator(x, y));
            }
        }
        set
    }

    /// `[a, G] = ⟨[a, g] : g ∈ G⟩`.
    pub fn commutator_with_group(&self, a: Elem) -> Result<Subgroup> {
        self.check_index(a)?;
        let set = BitSet::from_indices(self.order, self.elements().map(|g| self.commutator(a, g)));
        Ok(self.generate_set(&set))
    }

    /// Upper central series `1 = Z₀ < Z₁ < …`, stopping when it stabilises.
    /// The last entry is the hypercenter.
    pub fn upper_central_series(&self) -> Vec<Subgroup> {
        let all_gens = self.generators_of(&BitSet::full(self.order));
        let mut series = vec![self.trivial_subgroup()];
        loop {
            let current = series.last().expect("series is nonempty");
            let next = BitSet::from_indices(
                self.order,
                self.elements().filter(|&g| {
                    all_gens
                        .iter()
                        .all(|&x| current.contains(self.commutator(g, x)))
                }),
            );
            if next == current.members {
                return series;
            }
            series.push(self.wrap(next));
        }
    }

    /// Copies a subgroup out as a standalone group, relabelling its elements
    /// `0..|H|` in ascending ambient index order. Returns the group and the
    /// ambient index of each new element.
    pub fn subgroup_as_group(
        &self,
        h: &Subgroup,
        name: impl Into<String>,
    ) -> Result<(FiniteGroup, Vec<Elem>)> {
        self.owns(h)?;
        let members: Vec<Elem> = h.iter().collect();
        let mut position = vec![u32::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            position[x] = i as u32;
        }
        let n = members.len();
        let mut mul = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                mul.push(position[self.mul(a, b)]);
            }
        }
        let inv = members.iter().map(|&a| position[self.inv(a)]).collect();
        let labels = members.iter().map(|&a| self.labels[a].clone()).collect();
        Ok((
            FiniteGroup::assemble(name.into(), mul, inv, labels),
            members,
        ))
    }

    fn owns(&self, h: &Subgroup) -> Result<()> {
        if h.group == self.id {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "subgroup does not belong to {}",
                self.name
            )))
        }
    }
}

/// Closes a set of permutations into a group.
///
/// Elements are enumerated breadth-first from the identity, applying the
/// generators in sorted order; the identity is index 0 and every other
/// element gets the next index on discovery. Products are read left to
/// right: `ab` applies `a` first.
pub fn close_generators(
    name: impl Into<String>,
    gens: &[Permutation],
    limits: &Limits,
) -> Result<FiniteGroup> {
    let degree = gens.iter().map(Permutation::degree).max().unwrap_or(0);
    if degree > limits.max_points {
        return Err(Error::PointCap {
            degree,
            cap: limits.max_points,
        });
    }
    let mut sorted: Vec<Permutation> = gens.iter().map(|g| g.with_degree(degree)).collect();
    sorted.sort();
    sorted.dedup();

    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut cursor = 0;
    while cursor < elements.len() {
        let x = elements[cursor].clone();
        cursor += 1;
        for g in &sorted {
            let y = x.then(g);
            if !index.contains_key(&y) {
                if elements.len() == limits.max_order {
                    return Err(Error::OrderCap {
                        cap: limits.max_order,
                    });
                }
                index.insert(y.clone(), elements.len() as u32);
                elements.push(y);
            }
        }
    }

    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            mul.push(index[&a.then(b)]);
        }
    }
    let mut inv = vec![0u32; n];
    for a in 0..n {
        let row = &mul[a * n..(a + 1) * n];
        inv[a] = row
            .iter()
            .position(|&x| x == 0)
            .expect("finite permutation group") as u32;
    }
    let labels = elements.iter().map(|p| p.to_string()).collect();
    Ok(FiniteGroup::assemble(name.into(), mul, inv, labels))
}

/// A subgroup of a specific [`FiniteGroup`], stored as a member bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: BitSet,
    order: usize,
    group: GroupId,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> crate::bitset::Iter<'_> {
        self.members.iter()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `H ∩ K` is always a subgroup.
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.intersection(&other.members);
        Subgroup {
            order: members.count(),
            members,
            group: self.group,
        }
    }

    pub(crate) fn from_parts(members: BitSet, group: GroupId) -> Subgroup {
        Subgroup {
            order: members.count(),
            members,
            group,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(cycles: &[&[u32]]) -> Permutation {
        let cycles: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(&cycles, 0).unwrap()
    }

    /// Independent closure oracle: repeatedly multiply every pair of known
    /// words until nothing new appears.
    fn closure_oracle(gens: &[Permutation]) -> usize {
        let degree = gens.iter().map(Permutation::degree).max().unwrap_or(0);
        let mut set: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
        set.insert(Permutation::identity(degree).images().to_vec());
        for g in gens {
            set.insert(g.with_degree(degree).images().to_vec());
        }
        loop {
            let current: Vec<Vec<u32>> = set.iter().cloned().collect();
            let before = set.len();
            for a in &current {
                for b in &current {
                    let c: Vec<u32> = a.iter().map(|&i| b[i as usize]).collect();
                    set.insert(c);
                }
            }
            if set.len() == before {
                return set.len();
            }
        }
    }

    fn d8() -> FiniteGroup {
        close_generators(
            "D8",
            &[perm(&[&[1, 2, 3, 4]]), perm(&[&[1, 3]])],
            &Limits::default(),
        )
        .unwrap()
    }

    #[test]
    fn closes_s3() {
        let gens = [perm(&[&[1, 2, 3]]), perm(&[&[1, 2]])];
        let g = close_generators("S3", &gens, &Limits::default()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(closure_oracle(&gens), 6);
        assert_eq!(g.label(0), "()");
        g.check_associative().unwrap();
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = close_generators("1", &[], &Limits::default()).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closes_klein_four() {
        let gens = [perm(&[&[1, 2], &[3, 4]]), perm(&[&[1, 3], &[2, 4]])];
        let g = close_generators("K4", &gens, &Limits::default()).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(closure_oracle(&gens), 4);
        assert!((1..4).all(|x| g.element_order(x) == 2));
    }

    #[test]
    fn order_cap_is_reported() {
        let gens = [perm(&[&[1, 2, 3, 4, 5]]), perm(&[&[1, 2]])];
        let err =
            close_generators("S5", &gens, &Limits::default().with_max_order(100)).unwrap_err();
        assert_eq!(err, Error::OrderCap { cap: 100 });
    }

    #[test]
    fn point_cap_is_reported() {
        let gens = [perm(&[&[1, 17]])];
        assert!(matches!(
            close_generators("big", &gens, &Limits::default()),
            Err(Error::PointCap {
                degree: 17,
                cap: 16
            })
        ));
    }

    #[test]
    fn rejects_bad_tables() {
        // identity row broken
        let err =
            FiniteGroup::from_table("bad", vec![0, 0, 1, 0], vec!["e".into(), "a".into()], 10);
        assert!(err.is_err());
        let err =
            FiniteGroup::from_table("dup", vec![0, 1, 1, 0], vec!["e".into(), "e".into()], 10);
        assert!(err.is_err());
        let ok = FiniteGroup::from_table("C2", vec![0, 1, 1, 0], vec!["e".into(), "a".into()], 10);
        assert!(ok.is_ok());
    }

    #[test]
    fn centralizer_of_identity_and_center() {
        let g = d8();
        let c = g.centralizer(&BitSet::from_indices(8, [0])).unwrap();
        assert_eq!(c.order(), 8);
        let z = g.centralizer(&BitSet::full(8)).unwrap();
        assert_eq!(z.order(), 2);
        assert_eq!(g.center(), z);
        // brute force: elements commuting with everything
        let brute = (0..8).filter(|&x| (0..8).all(|y| g.commutes(x, y))).count();
        assert_eq!(brute, 2);
    }

    #[test]
    fn centralizer_of_generating_set_matches_subgroup() {
        let g = d8();
        let h = g.generate(&[1]);
        let via_gens = g.centralizer(&BitSet::from_indices(8, [1])).unwrap();
        let via_subgroup = g.centralizer(h.members()).unwrap();
        assert_eq!(via_gens, via_subgroup);
    }

    #[test]
    fn derived_subgroup_of_d8() {
        let g = d8();
        let d = g.derived_subgroup();
        assert_eq!(d.order(), 2);
        assert_eq!(d, g.center());
    }

    #[test]
    fn normal_closure_of_reflection_in_d8() {
        let g = d8();
        let reflection = (1..8)
            .find(|&x| g.element_order(x) == 2 && !g.center().contains(x))
            .unwrap();
        let h = g.generate(&[reflection]);
        let n = g.normal_closure(&h, &g.whole()).unwrap();
        assert_eq!(n.order(), 4);
        assert!(n.iter().all(|x| x == 0 || g.element_order(x) == 2));
        // idempotent
        assert_eq!(g.normal_closure(&n, &g.whole()).unwrap(), n);
    }

    #[test]
    fn normal_closure_requires_containment() {
        let g = d8();
        let a = g.generate(&[1]);
        let b = g.generate(&[2]);
        if !a.is_subgroup_of(&b) {
            assert!(matches!(
                g.normal_closure(&a, &b),
                Err(Error::Precondition(_))
            ));
        }
    }

    #[test]
    fn subgroup_from_set_validates() {
        let g = d8();
        let rotation = (1..8).find(|&x| g.element_order(x) == 4).unwrap();
        assert!(g
            .subgroup_from_set(BitSet::from_indices(8, [0, rotation]))
            .is_err());
        assert!(g
            .subgroup_from_set(BitSet::from_indices(8, [rotation]))
            .is_err());
        let cyclic = g.generate(&[rotation]);
        assert_eq!(
            g.subgroup_from_set(cyclic.members().clone()).unwrap(),
            cyclic
        );
    }

    #[test]
    fn upper_central_series_of_d8() {
        let g = d8();
        let series = g.upper_central_series();
        let orders: Vec<usize> = series.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 8]);
    }
}
