//! Named group families, direct products and Heisenberg groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{close_generators, Elem, FiniteGroup, Limits, Subgroup};
use crate::perm::Permutation;

/// Families reachable through `make_named`. The parameter is the group
/// order for cyclic, dihedral and quaternion groups, and the degree for
/// symmetric and alternating groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Symmetric(usize),
    Alternating(usize),
}

impl Family {
    /// Validates the parameter without building anything.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            Family::Cyclic(0) => bad("cyclic group order must be at least 1".into()),
            Family::Dihedral(n) if n < 2 || n % 2 != 0 => bad(format!(
                "dihedral group order must be even and at least 2, got {n}"
            )),
            Family::Quaternion(n) if n < 8 || !n.is_power_of_two() => bad(format!(
                "generalized quaternion order must be a power of two, at least 8, got {n}"
            )),
            Family::Symmetric(0) | Family::Alternating(0) => {
                bad("degree must be at least 1".into())
            }
            _ => Ok(()),
        }
    }

    /// Group order, saturating on overflow.
    pub fn predicted_order(&self) -> usize {
        let factorial = |n: usize| (1..=n).fold(1usize, |acc, k| acc.saturating_mul(k));
        match *self {
            Family::Cyclic(n) | Family::Dihedral(n) | Family::Quaternion(n) => n,
            Family::Symmetric(n) => factorial(n),
            Family::Alternating(n) => (factorial(n) / 2).max(1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "C{n}"),
            Family::Dihedral(n) => write!(f, "D{n}"),
            Family::Quaternion(n) => write!(f, "Q{n}"),
            Family::Symmetric(n) => write!(f, "S{n}"),
            Family::Alternating(n) => write!(f, "A{n}"),
        }
    }
}

pub fn make_named(family: Family, limits: &Limits) -> Result<FiniteGroup> {
    family.validate()?;
    limits.check_order(family.predicted_order())?;
    match family {
        Family::Cyclic(n) => Ok(cyclic(n)),
        Family::Dihedral(n) => Ok(dihedral(n)),
        Family::Quaternion(n) => Ok(quaternion(n)),
        Family::Symmetric(n) => symmetric(n, limits),
        Family::Alternating(n) => alternating(n, limits),
    }
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// `Cₙ = ⟨a⟩`, element `k` is `a^k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    let mul = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
        .collect();
    let inv = (0..n).map(|i| ((n - i) % n) as u32).collect();
    let labels = (0..n)
        .map(|k| {
            if k == 0 {
                "1".to_string()
            } else {
                power_label("a", k)
            }
        })
        .collect();
    FiniteGroup::assemble(Family::Cyclic(n).to_string(), mul, inv, labels)
}

/// Groups of the form `r^i s^j` with `r` of order `m` and `j ∈ {0, 1}`,
/// where `s r = r⁻¹ s` and `s² = r^{s_sq}`. Element `i + m·j` is `r^i s^j`.
fn metacyclic_order_two(name: String, m: usize, s_sq: usize) -> FiniteGroup {
    let n = 2 * m;
    let index = |i: usize, j: usize| (i % m + m * j) as u32;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (i, a) = (x % m, x / m);
        for y in 0..n {
            let (k, b) = (y % m, y / m);
            // r^i s^a r^k s^b = r^(i ± k) s^(a + b)
            let rot = if a == 0 { i + k } else { i + m - k };
            let entry = if a + b == 2 {
                index(rot + s_sq, 0)
            } else {
                index(rot, a + b)
            };
            mul.push(entry);
        }
    }
    let mut inv = vec![0u32; n];
    for x in 0..n {
        inv[x] = (0..n).find(|&y| mul[x * n + y] == 0).expect("group table") as u32;
    }
    let labels = (0..n)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            let r = power_label("r", i);
            match (r.is_empty(), j) {
                (true, 0) => "1".to_string(),
                (false, 0) => r,
                (true, _) => "s".to_string(),
                (false, _) => format!("{r} s"),
            }
        })
        .collect();
    FiniteGroup::assemble(name, mul, inv, labels)
}

/// Dihedral group of order `n` (`n/2` rotations, `n/2` reflections).
pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic_order_two(Family::Dihedral(n).to_string(), n / 2, 0)
}

/// Generalized quaternion group of order `n = 2^m`, with
/// `r^{2^{m-1}} = 1`, `s² = r^{2^{m-2}}` and `s⁻¹ r s = r⁻¹`.
pub fn quaternion(n: usize) -> FiniteGroup {
    metacyclic_order_two(Family::Quaternion(n).to_string(), n / 2, n / 4)
}

fn cycle(points: impl IntoIterator<Item = u32>, degree: usize) -> Permutation {
    let c: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(&[c], degree).expect("well-formed cycle")
}

/// `Sₙ = ⟨(1 2), (1 2 … n)⟩`.
pub fn symmetric(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let gens = if n < 2 {
        vec![]
    } else {
        vec![cycle([1, 2], n), cycle(1..=n as u32, n)]
    };
    close_generators(Family::Symmetric(n).to_string(), &gens, limits)
}

/// `Aₙ = ⟨(1 2 k) : 3 ≤ k ≤ n⟩`.
pub fn alternating(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let gens: Vec<Permutation> = (3..=n as u32).map(|k| cycle([1, 2, k], n)).collect();
    close_generators(Family::Alternating(n).to_string(), &gens, limits)
}

/// `G₁ × G₂` together with the factor orders needed to embed subgroups.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub left_order: usize,
    pub right_order: usize,
}

impl DirectProduct {
    /// Index of the pair `(a, b)`.
    pub fn pair(&self, a: Elem, b: Elem) -> Elem {
        a * self.right_order + b
    }

    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        (x / self.right_order, x % self.right_order)
    }

    /// `A × B` for subgroups `A ≤ G₁`, `B ≤ G₂`.
    pub fn product_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let members = crate::bitset::BitSet::from_indices(
            self.group.order(),
            a.iter()
                .flat_map(|x| b.iter().map(move |y| x * self.right_order + y)),
        );
        Subgroup::from_parts(members, self.group.id())
    }

    /// Image of `G₁` as `G₁ × 1`.
    pub fn left_factor(&self) -> Subgroup {
        let members = crate::bitset::BitSet::from_indices(
            self.group.order(),
            (0..self.left_order).map(|x| x * self.right_order),
        );
        Subgroup::from_parts(members, self.group.id())
    }

    /// Image of `G₂` as `1 × G₂`.
    pub fn right_factor(&self) -> Subgroup {
        let members = crate::bitset::BitSet::from_indices(self.group.order(), 0..self.right_order);
        Subgroup::from_parts(members, self.group.id())
    }
}

/// Componentwise product; the pair `(a, b)` has index `a·|G₂| + b`.
pub fn direct_product(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    limits: &Limits,
) -> Result<DirectProduct> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1.checked_mul(n2).ok_or(Error::OrderCap {
        cap: limits.max_order,
    })?;
    limits.check_order(n)?;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n1 {
        for b in 0..n2 {
            for c in 0..n1 {
                let ac = g1.mul(a, c) * n2;
                for d in 0..n2 {
                    mul.push((ac + g2.mul(b, d)) as u32);
                }
            }
        }
    }
    let inv = (0..n)
        .map(|x| (g1.inv(x / n2) * n2 + g2.inv(x % n2)) as u32)
        .collect();
    let labels = (0..n)
        .map(|x| format!("({},{})", g1.label(x / n2), g2.label(x % n2)))
        .collect();
    let name = format!("{} x {}", g1.name(), g2.name());
    Ok(DirectProduct {
        group: FiniteGroup::assemble(name, mul, inv, labels),
        left_order: n1,
        right_order: n2,
    })
}

/// Lower unitriangular 3×3 matrices over `GF(pⁿ)`:
///
/// ```text
/// [1 0 0]
/// [x 1 0]
/// [z y 1]
/// ```
///
/// The element `(x, y, z)` (entries (2,1), (3,2), (3,1)) has index
/// `x + q·y + q²·z` in field-index encoding, and label `[x,y,z]`.
pub fn heisenberg(p: u32, n: u32, limits: &Limits) -> Result<FiniteGroup> {
    let field = Field::supported(p, n)?;
    let q = field.order();
    let order = q.checked_pow(3).ok_or(Error::OrderCap {
        cap: limits.max_order,
    })?;
    limits.check_order(order)?;
    let split = |e: usize| (e % q, (e / q) % q, e / (q * q));
    let join = |x: usize, y: usize, z: usize| (x + q * y + q * q * z) as u32;
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        let (x1, y1, z1) = split(a);
        for b in 0..order {
            let (x2, y2, z2) = split(b);
            let z = field.add_idx(field.add_idx(z1, field.mul_idx(y1, x2)), z2);
            mul.push(join(field.add_idx(x1, x2), field.add_idx(y1, y2), z));
        }
    }
    let inv = (0..order)
        .map(|a| {
            let (x, y, z) = split(a);
            // (x, y, z)⁻¹ = (−x, −y, xy − z)
            join(
                field.neg_idx(x),
                field.neg_idx(y),
                field.add_idx(field.mul_idx(x, y), field.neg_idx(z)),
            )
        })
        .collect();
    let labels = (0..order)
        .map(|a| {
            let (x, y, z) = split(a);
            format!(
                "[{},{},{}]",
                field.display(x),
                field.display(y),
                field.display(z)
            )
        })
        .collect();
    Ok(FiniteGroup::assemble(
        format!("Heis({p},{n})"),
        mul,
        inv,
        labels,
    ))
}
