//! Maximal centralizers and quasi-antichain centralizer lattices.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{is_nilpotent, PosetSelection};

use super::pgroup::prime_power;
use super::CdContext;

/// A non-central `x` whose centralizer is not a maximal centralizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonMaximalWitness {
    pub element: usize,
    /// Lattice index of `C_G(x)`.
    pub centralizer: usize,
    /// A maximal centralizer strictly above it.
    pub above: usize,
}

/// Claims that hold for p-groups with `C(G) = CD(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCentralizingCheck {
    pub a: u32,
    pub b: u32,
    /// Lattice indices of abelian `A` with `A = C_G(A)`.
    pub self_centralizing: Vec<usize>,
    /// `p^((a+b)/2)`.
    pub common_order: usize,
}

/// Conditions of the quasi-antichain characterization for p-groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterizationCheck {
    /// `C(G) = CD(G)` and `C(G)` is a quasi-antichain.
    pub lhs: bool,
    pub class_two: bool,
    /// Atoms are maximal abelian of order `√(|G||Z|)`.
    pub atoms_ok: bool,
    /// `|G/Z| = p^(2a)` and `w = p^b + 1` with `1 ≤ b ≤ a`.
    pub exponents: Option<(u32, u32)>,
}

impl CharacterizationCheck {
    pub fn rhs(&self) -> bool {
        self.class_two && self.atoms_ok && self.exponents.is_some()
    }
}

/// Conclusions checked when `CD(G)` is a quasi-antichain of width at least 3
/// containing `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdQuasiCheck {
    pub width: usize,
    pub class_two: bool,
    pub prime: u64,
    pub a: u32,
    pub b: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiReport {
    pub abelian: bool,
    /// Coatoms of `C(G)`.
    pub maximal: Vec<usize>,
    /// Atoms of `C(G)`.
    pub minimal: Vec<usize>,
    /// For each maximal centralizer, a non-central `x` with `M = C_G(x)`.
    pub maximal_elements: Vec<usize>,
    pub nonabelian_maximal: Vec<usize>,
    pub quasi_antichain: bool,
    pub width: Option<usize>,
    pub union_covers: bool,
    pub non_maximal_witness: Option<NonMaximalWitness>,
    pub self_centralizing: Option<SelfCentralizingCheck>,
    pub characterization: Option<CharacterizationCheck>,
    pub cd_quasi: Option<CdQuasiCheck>,
}

/// Smallest `(a, b)` with `gz = p^(2a)`, `w = p^b + 1`, `1 ≤ b ≤ a`.
fn width_exponents(gz: u64, w: usize) -> Option<(u64, u32, u32)> {
    let (p, e) = prime_power(w.checked_sub(1)? as u64)?;
    let (q, f) = prime_power(gz)?;
    (p == q && f % 2 == 0 && e <= f / 2).then_some((p, f / 2, e))
}

pub fn quasi_antichain_report(ctx: &CdContext<'_>) -> Result<QuasiReport> {
    let group = ctx.group();
    let lattice = ctx.lattice();
    let name = group.name();
    let cent = ctx.cent();
    let quasi_antichain = lattice.is_quasi_antichain(cent)?;
    let width = lattice.quasi_antichain_width(cent)?;
    if group.is_abelian() {
        return Ok(QuasiReport {
            abelian: true,
            maximal: Vec::new(),
            minimal: Vec::new(),
            maximal_elements: Vec::new(),
            nonabelian_maximal: Vec::new(),
            quasi_antichain,
            width,
            union_covers: true,
            non_maximal_witness: None,
            self_centralizing: None,
            characterization: None,
            cd_quasi: None,
        });
    }
    let violation =
        |theorem: &'static str, detail: String| Err(Error::violation(theorem, name, detail));
    let maximal = lattice.coatoms(cent)?;
    let minimal = lattice.atoms(cent)?;
    let z = ctx.center();
    let center = lattice.subgroup(z);

    let element_cent: Vec<usize> = group
        .elements()
        .map(|x| {
            lattice
                .index_of_set(&group.element_centralizer(x))
                .expect("element centralizers are subgroups")
        })
        .collect();
    let mut maximal_elements = Vec::with_capacity(maximal.len());
    for &m in &maximal {
        match group
            .elements()
            .find(|&x| !center.contains(x) && element_cent[x] == m)
        {
            Some(x) => maximal_elements.push(x),
            None => {
                return violation(
                    "maximal-centralizer-element",
                    format!("maximal centralizer {m} is not C_G(x) for any non-central x"),
                )
            }
        }
    }
    let non_maximal_witness = group
        .elements()
        .filter(|&x| !center.contains(x))
        .find_map(|x| {
            let c = element_cent[x];
            if maximal.contains(&c) {
                return None;
            }
            let above = *maximal.iter().find(|&&m| lattice.leq(c, m))?;
            Some(NonMaximalWitness {
                element: x,
                centralizer: c,
                above,
            })
        });

    let nonabelian_maximal: Vec<usize> = maximal
        .iter()
        .copied()
        .filter(|&m| !ctx.is_abelian_subgroup(m))
        .collect();
    if quasi_antichain != nonabelian_maximal.is_empty() {
        return violation(
            "quasi-antichain",
            format!(
                "C(G) quasi-antichain is {quasi_antichain} but all maximal centralizers abelian is {}",
                nonabelian_maximal.is_empty()
            ),
        );
    }

    let mut covered = BitSet::new(group.order());
    for &m in &maximal {
        covered.union_with(lattice.subgroup(m).members());
    }
    let union_covers = covered.count() == group.order();
    if !union_covers {
        return violation(
            "maximal-union",
            "maximal centralizers do not cover G".into(),
        );
    }
    if maximal.len() <= 2 || minimal.len() != maximal.len() {
        return violation(
            "maximal-count",
            format!(
                "{} maximal and {} minimal centralizers",
                maximal.len(),
                minimal.len()
            ),
        );
    }

    let nil = is_nilpotent(group);
    let order = group.order() as u64;
    let z_order = center.order() as u64;
    let cent_is_cd = cent == ctx.cd();
    let pp = prime_power(order);

    let self_centralizing = match pp {
        Some((p, a)) if cent_is_cd => {
            let b = z_order.ilog(p);
            if (a + b) % 2 != 0 {
                return violation("self-centralizing", format!("a + b = {a} + {b} is odd"));
            }
            let common_order = p.pow((a + b) / 2) as usize;
            let self_centralizing: Vec<usize> = (0..lattice.len())
                .filter(|&i| ctx.centralizer_of(i) == i)
                .collect();
            if let Some(&i) = self_centralizing
                .iter()
                .find(|&&i| lattice.subgroup(i).order() != common_order)
            {
                return violation(
                    "self-centralizing",
                    format!(
                        "self-centralizing subgroup {i} has order {}, expected {common_order}",
                        lattice.subgroup(i).order()
                    ),
                );
            }
            Some(SelfCentralizingCheck {
                a,
                b,
                self_centralizing,
                common_order,
            })
        }
        _ => None,
    };

    let characterization = pp.map(|_| {
        let lhs = cent_is_cd && quasi_antichain;
        let class_two = nil.class == Some(2);
        let target = order * z_order;
        let atoms_ok = quasi_antichain
            && minimal.iter().all(|&m| {
                let o = lattice.subgroup(m).order() as u64;
                ctx.is_abelian_subgroup(m) && ctx.centralizer_of(m) == m && o * o == target
            });
        let exponents = width
            .and_then(|w| width_exponents(order / z_order, w))
            .map(|(_, a, b)| (a, b));
        CharacterizationCheck {
            lhs,
            class_two,
            atoms_ok,
            exponents,
        }
    });
    if let Some(c) = characterization {
        if c.lhs != c.rhs() {
            return violation(
                "quasi-characterization",
                format!(
                    "C = CD quasi-antichain is {} but the structural conditions give {}",
                    c.lhs,
                    c.rhs()
                ),
            );
        }
    }

    let cd = ctx.cd();
    let cd_quasi = match lattice.quasi_antichain_width(cd)? {
        Some(w) if w >= 3 && cd.contains(lattice.top()) && lattice.is_quasi_antichain(cd)? => {
            let class_two = nil.class == Some(2);
            let Some((prime, a, b)) = width_exponents(order / z_order, w) else {
                return violation(
                    "cd-quasi-antichain",
                    format!("width {w} and |G/Z| = {} admit no p, a, b", order / z_order),
                );
            };
            if !class_two {
                return violation(
                    "cd-quasi-antichain",
                    format!("nilpotency class {:?}, expected 2", nil.class),
                );
            }
            Some(CdQuasiCheck {
                width: w,
                class_two,
                prime,
                a,
                b,
            })
        }
        _ => None,
    };

    Ok(QuasiReport {
        abelian: false,
        maximal,
        minimal,
        maximal_elements,
        nonabelian_maximal,
        quasi_antichain,
        width,
        union_covers,
        non_maximal_witness,
        self_centralizing,
        characterization,
        cd_quasi,
    })
}

/// Selection of maximal centralizers, for callers that want it as a poset.
pub fn maximal_centralizers(ctx: &CdContext<'_>) -> Result<PosetSelection> {
    Ok(PosetSelection::new(ctx.lattice().coatoms(ctx.cent())?))
}
