//! `C` and `CD` of a direct product, compared with the factors.

use crate::error::{Error, Result};
use crate::families::DirectProduct;
use crate::group::FiniteGroup;
use crate::lattice::PosetSelection;

use super::CdContext;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRecord {
    /// `|CD(G1)|·|CD(G2)|`.
    pub cd_expected: usize,
    pub cd_actual: usize,
    pub cent_expected: usize,
    pub cent_actual: usize,
}

fn embed(
    product: &DirectProduct,
    ambient: &CdContext<'_>,
    left: (&CdContext<'_>, &PosetSelection),
    right: (&CdContext<'_>, &PosetSelection),
) -> PosetSelection {
    let mut out = Vec::with_capacity(left.1.len() * right.1.len());
    for a in left.1.iter() {
        for b in right.1.iter() {
            let h = product
                .product_subgroup(left.0.lattice().subgroup(a), right.0.lattice().subgroup(b));
            out.push(
                ambient
                    .lattice()
                    .index_of(&h)
                    .expect("a product of subgroups is a subgroup"),
            );
        }
    }
    PosetSelection::new(out)
}

/// Checks `CD(G1 × G2) = CD(G1) × CD(G2)` and `C(G1 × G2) = C(G1) × C(G2)`
/// under the canonical embeddings.
pub fn verify_product(
    product: &DirectProduct,
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    ctx: &CdContext<'_>,
) -> Result<ProductRecord> {
    let limits = ctx.limits();
    let c1 = CdContext::new(g1, limits)?;
    let c2 = CdContext::new(g2, limits)?;
    let cd = embed(product, ctx, (&c1, c1.cd()), (&c2, c2.cd()));
    let cent = embed(product, ctx, (&c1, c1.cent()), (&c2, c2.cent()));
    let name = ctx.group().name();
    if cd != *ctx.cd() {
        return Err(Error::violation(
            "product",
            name,
            format!(
                "CD has {} members, the factor product has {}",
                ctx.cd().len(),
                cd.len()
            ),
        ));
    }
    if cent != *ctx.cent() {
        return Err(Error::violation(
            "product",
            name,
            format!(
                "C has {} members, the factor product has {}",
                ctx.cent().len(),
                cent.len()
            ),
        ));
    }
    Ok(ProductRecord {
        cd_expected: c1.cd().len() * c2.cd().len(),
        cd_actual: ctx.cd().len(),
        cent_expected: c1.cent().len() * c2.cent().len(),
        cent_actual: ctx.cent().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic, dihedral, direct_product, quaternion, symmetric};
    use crate::group::Limits;

    #[test]
    fn d8_squared() {
        let limits = Limits::default();
        let d8 = dihedral(8);
        let p = direct_product(&d8, &d8, &limits).unwrap();
        let ctx = CdContext::new(&p.group, &limits).unwrap();
        let r = verify_product(&p, &d8, &d8, &ctx).unwrap();
        assert_eq!((r.cd_expected, r.cd_actual), (25, 25));
        assert_eq!(r.cent_actual, 25);
    }

    #[test]
    fn mixed_products() {
        let limits = Limits::default();
        let s3 = symmetric(3, &limits).unwrap();
        for (g1, g2) in [
            (s3.clone(), cyclic(2)),
            (quaternion(8), cyclic(3)),
            (s3, cyclic(1)),
        ] {
            let p = direct_product(&g1, &g2, &limits).unwrap();
            let ctx = CdContext::new(&p.group, &limits).unwrap();
            verify_product(&p, &g1, &g2, &ctx).unwrap();
        }
    }
}
