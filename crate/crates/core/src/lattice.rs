//! Subgroup lattices: enumeration, Hasse diagram and poset machinery.
//!
//! Subgroups are found by taking every cyclic subgroup and saturating under
//! joins with cyclic subgroups until nothing new appears. The finished list
//! is sorted by `(order, member list)`, which fixes indices: index 0 is the
//! trivial subgroup and the last index is the whole group.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Limits, Subgroup};

#[derive(Debug, Clone)]
pub struct SubgroupLattice<'g> {
    group: &'g FiniteGroup,
    subgroups: Vec<Subgroup>,
    gens: Vec<Vec<Elem>>,
    index: HashMap<BitSet, usize>,
    /// `below[j]` holds every `i` with `Hᵢ ≤ Hⱼ` (including `j`).
    below: Vec<BitSet>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
}

impl<'g> SubgroupLattice<'g> {
    pub fn new(group: &'g FiniteGroup, limits: &Limits) -> Result<Self> {
        limits.check_order(group.order())?;
        let found = enumerate(group, limits.max_subgroups)?;
        let mut entries: Vec<(Subgroup, Vec<Elem>)> = found;
        entries.sort_by(|a, b| {
            a.0.order()
                .cmp(&b.0.order())
                .then_with(|| a.0.members().cmp(b.0.members()))
        });
        let (subgroups, gens): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members().clone(), i))
            .collect();

        let n = subgroups.len();
        let mut below = vec![BitSet::new(n); n];
        for j in 0..n {
            for i in 0..=j {
                let (hi, hj) = (&subgroups[i], &subgroups[j]);
                if hj.order() % hi.order() == 0 && hi.members().is_subset(hj.members()) {
                    below[j].insert(i);
                }
            }
        }
        let mut covers_down = vec![Vec::new(); n];
        let mut covers_up = vec![Vec::new(); n];
        for j in 0..n {
            let mut strict = below[j].clone();
            strict.remove(j);
            let mut shadow = BitSet::new(n);
            for k in strict.iter() {
                let mut under = below[k].clone();
                under.remove(k);
                shadow.union_with(&under);
            }
            for i in strict.difference(&shadow).iter() {
                covers_down[j].push(i);
                covers_up[i].push(j);
            }
        }
        Ok(SubgroupLattice {
            group,
            subgroups,
            gens,
            index,
            below,
            covers_up,
            covers_down,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// Generating set recorded during enumeration.
    pub fn generators(&self, i: usize) -> &[Elem] {
        &self.gens[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        if h.group_id() != self.group.id() {
            return None;
        }
        self.index.get(h.members()).copied()
    }

    pub fn index_of_set(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "lattice index {i} out of range ({} subgroups)",
                self.len()
            )))
        }
    }

    /// `Hᵢ ≤ Hⱼ`.
    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    /// All `i` with `Hᵢ ≤ Hⱼ`.
    pub fn down_set(&self, j: usize) -> &BitSet {
        &self.below[j]
    }

    pub fn covers_up(&self, i: usize) -> &[usize] {
        &self.covers_up[i]
    }

    pub fn covers_down(&self, i: usize) -> &[usize] {
        &self.covers_down[i]
    }

    /// Hasse edges `(lower, upper)` in ascending order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .covers_up
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        let members = self.subgroups[i]
            .members()
            .intersection(self.subgroups[j].members());
        Ok(self.index[&members])
    }

    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        let mut gens = self.gens[i].clone();
        gens.extend_from_slice(&self.gens[j]);
        let h = self.group.generate(&gens);
        Ok(self.index[h.members()])
    }

    /// `[top / bottom]`: every `X` with `bottom ≤ X ≤ top`.
    pub fn interval(&self, bottom: usize, top: usize) -> Result<PosetSelection> {
        self.check(bottom)?;
        self.check(top)?;
        if !self.leq(bottom, top) {
            return Err(Error::Precondition(format!(
                "interval endpoints are not comparable: {bottom} is not below {top}"
            )));
        }
        Ok(PosetSelection::new(
            self.below[top].iter().filter(|&x| self.leq(bottom, x)),
        ))
    }

    pub fn full_selection(&self) -> PosetSelection {
        PosetSelection::new(0..self.len())
    }

    pub fn is_normal(&self, i: usize) -> bool {
        let h = &self.subgroups[i];
        let g = self.group;
        self.gens[i].iter().all(|&x| {
            self.gens[self.top()]
                .iter()
                .all(|&y| h.contains(g.conjugate(x, y)))
        })
    }

    /// `H` is subnormal iff the chain `K₀ = G`, `Kₜ₊₁ = ⟨H^{Kₜ}⟩` reaches `H`.
    pub fn is_subnormal(&self, i: usize) -> Result<bool> {
        self.check(i)?;
        let h = &self.subgroups[i];
        let mut k = self.group.whole();
        loop {
            if &k == h {
                return Ok(true);
            }
            let next = self.group.normal_closure(h, &k)?;
            if next == k {
                return Ok(false);
            }
            k = next;
        }
    }

    // ---------------------------------------------------------------------
    // Selections as posets
    // ---------------------------------------------------------------------

    /// Unique maximum of the selection under containment, if any.
    pub fn selection_top(&self, sel: &PosetSelection) -> Option<usize> {
        sel.iter().find(|&t| sel.iter().all(|x| self.leq(x, t)))
    }

    pub fn selection_bottom(&self, sel: &PosetSelection) -> Option<usize> {
        sel.iter().find(|&b| sel.iter().all(|x| self.leq(b, x)))
    }

    fn bounds(&self, sel: &PosetSelection) -> Result<(usize, usize)> {
        for i in sel.iter() {
            self.check(i)?;
        }
        match (self.selection_bottom(sel), self.selection_top(sel)) {
            (Some(b), Some(t)) => Ok((b, t)),
            _ => Err(Error::Precondition(
                "selection has no unique top and bottom".into(),
            )),
        }
    }

    /// Minimal members of the selection other than its bottom.
    pub fn atoms(&self, sel: &PosetSelection) -> Result<Vec<usize>> {
        let (bottom, _) = self.bounds(sel)?;
        let rest: Vec<usize> = sel.iter().filter(|&x| x != bottom).collect();
        Ok(rest
            .iter()
            .copied()
            .filter(|&x| !rest.iter().any(|&y| y != x && self.leq(y, x)))
            .collect())
    }

    /// Maximal members of the selection other than its top.
    pub fn coatoms(&self, sel: &PosetSelection) -> Result<Vec<usize>> {
        let (_, top) = self.bounds(sel)?;
        let rest: Vec<usize> = sel.iter().filter(|&x| x != top).collect();
        Ok(rest
            .iter()
            .copied()
            .filter(|&x| !rest.iter().any(|&y| y != x && self.leq(x, y)))
            .collect())
    }

    /// Every member is the top, the bottom, or both an atom and a coatom.
    ///
    /// A one-element selection (top equal to bottom) is not a
    /// quasi-antichain. A two-element chain is one, of width 0.
    pub fn is_quasi_antichain(&self, sel: &PosetSelection) -> Result<bool> {
        let (bottom, top) = self.bounds(sel)?;
        if bottom == top {
            return Ok(false);
        }
        let atoms = self.atoms(sel)?;
        let coatoms = self.coatoms(sel)?;
        Ok(sel
            .iter()
            .all(|x| x == top || x == bottom || (atoms.contains(&x) && coatoms.contains(&x))))
    }

    /// Width of a quasi-antichain: the number of atoms, or 0 for selections
    /// with at most two members. `None` when the selection is not a
    /// quasi-antichain.
    pub fn quasi_antichain_width(&self, sel: &PosetSelection) -> Result<Option<usize>> {
        self.bounds(sel)?;
        if sel.len() <= 2 {
            return Ok(Some(0));
        }
        if self.is_quasi_antichain(sel)? {
            Ok(Some(self.atoms(sel)?.len()))
        } else {
            Ok(None)
        }
    }
}

/// Saturation: start from cyclic subgroups, join each new subgroup with every
/// cyclic subgroup not already inside it, repeat until closed.
fn enumerate(group: &FiniteGroup, limit: usize) -> Result<Vec<(Subgroup, Vec<Elem>)>> {
    let n = group.order();
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    let mut found: Vec<(Subgroup, Vec<Elem>)> = Vec::new();

    let push = |h: Subgroup,
                gens: Vec<Elem>,
                seen: &mut HashMap<BitSet, usize>,
                found: &mut Vec<(Subgroup, Vec<Elem>)>|
     -> Result<bool> {
        if seen.contains_key(h.members()) {
            return Ok(false);
        }
        if found.len() == limit {
            return Err(Error::SubgroupLimit { limit });
        }
        seen.insert(h.members().clone(), found.len());
        found.push((h, gens));
        Ok(true)
    };

    let mut cyclic_gens: Vec<Elem> = Vec::new();
    for x in 0..n {
        let h = group.generate(&[x]);
        let gens = if x == 0 { vec![] } else { vec![x] };
        if push(h, gens, &mut seen, &mut found)? && x != 0 {
            cyclic_gens.push(x);
        }
    }

    let mut cursor = 0;
    while cursor < found.len() {
        let (h, h_gens) = found[cursor].clone();
        cursor += 1;
        for &c in &cyclic_gens {
            if h.contains(c) {
                continue;
            }
            let mut gens = h_gens.clone();
            gens.push(c);
            let members = group.extend_closure(h.members(), &gens);
            if seen.contains_key(&members) {
                continue;
            }
            let joined = Subgroup::from_parts(members, group.id());
            push(joined, gens, &mut seen, &mut found)?;
        }
    }
    Ok(found)
}

/// A subset of lattice indices, ordered by inherited containment.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PosetSelection {
    indices: Vec<usize>,
}

impl PosetSelection {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        PosetSelection { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &PosetSelection) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn intersection(&self, other: &PosetSelection) -> PosetSelection {
        PosetSelection::new(self.iter().filter(|&i| other.contains(i)))
    }
}

impl FromIterator<usize> for PosetSelection {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        PosetSelection::new(iter)
    }
}

/// Result of the upper-central-series test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// Length of the upper central series when it reaches `G`.
    pub class: Option<usize>,
}

pub fn is_nilpotent(group: &FiniteGroup) -> Nilpotency {
    let series = group.upper_central_series();
    let reached = series.last().is_some_and(|z| z.order() == group.order());
    Nilpotency {
        nilpotent: reached,
        class: reached.then(|| series.len() - 1),
    }
}
