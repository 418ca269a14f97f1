//! Display names for subgroups, from order, commutativity and element-order
//! counts. Names are for reading diagrams; they are not an isomorphism test.

use std::collections::BTreeMap;

use cdscope_core::analysis::pgroup::factorize;
use cdscope_core::analysis::CdContext;

/// Name for lattice index `i`, falling back to `H{i}:o{order}`.
pub fn subgroup_name(ctx: &CdContext<'_>, i: usize) -> String {
    let lattice = ctx.lattice();
    let h = lattice.subgroup(i);
    let group = ctx.group();
    let mut census: BTreeMap<usize, usize> = BTreeMap::new();
    for x in h.iter() {
        *census.entry(group.element_order(x)).or_default() += 1;
    }
    let order = h.order();
    let recognized = if ctx.is_abelian_subgroup(i) {
        Some(abelian_name(order, &census))
    } else {
        nonabelian_name(order, &census)
    };
    recognized.unwrap_or_else(|| format!("H{i}:o{order}"))
}

/// Invariant factors of an abelian group from its element-order census.
pub fn invariant_factors(order: usize, census: &BTreeMap<usize, usize>) -> Vec<usize> {
    let mut factors: Vec<usize> = Vec::new();
    for (p, e) in factorize(order as u64) {
        let p = p as usize;
        // log_p of the number of elements of order dividing p^k
        let mut logs = vec![0u32];
        for k in 1..=e {
            let pk = p.pow(k);
            let n: usize = census
                .iter()
                .filter(|(&o, _)| pk % o == 0)
                .map(|(_, &c)| c)
                .sum();
            logs.push(n.ilog(p));
        }
        // at_least[k] = number of cyclic p-factors of exponent ≥ k
        let mut exps: Vec<u32> = Vec::new();
        for k in 1..=e as usize {
            let at_least = (logs[k] - logs[k - 1]) as usize;
            for slot in exps.iter_mut().take(at_least) {
                *slot += 1;
            }
            while exps.len() < at_least {
                exps.push(1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (j, &x) in exps.iter().enumerate() {
            if factors.len() <= j {
                factors.push(1);
            }
            factors[j] *= p.pow(x);
        }
    }
    factors
}

fn abelian_name(order: usize, census: &BTreeMap<usize, usize>) -> String {
    if order == 1 {
        return "1".into();
    }
    let factors = invariant_factors(order, census);
    match factors[..] {
        [n] => format!("C{n}"),
        [2, 2] => "K4".into(),
        _ if factors.iter().all(|&f| f == factors[0]) => {
            format!("C{}^{}", factors[0], factors.len())
        }
        _ => factors
            .iter()
            .map(|f| format!("C{f}"))
            .collect::<Vec<_>>()
            .join("x"),
    }
}

fn nonabelian_name(order: usize, census: &BTreeMap<usize, usize>) -> Option<String> {
    let count = |o: usize| census.get(&o).copied().unwrap_or(0);
    let half = order / 2;
    let has_index_two_cyclic = order.is_multiple_of(2) && count(half) > 0;
    let involutions = count(2);
    if order == 6 {
        return Some("S3".into());
    }
    if order == 12 && count(3) == 8 && involutions == 3 {
        return Some("A4".into());
    }
    if order == 24 && count(2) == 9 && count(3) == 8 && count(4) == 6 {
        return Some("S4".into());
    }
    if has_index_two_cyclic {
        let reflections = half + usize::from(half.is_multiple_of(2));
        if involutions == reflections {
            return Some(format!("D{order}"));
        }
        // a nonabelian 2-group with one involution is generalized quaternion
        if involutions == 1 && order.is_power_of_two() {
            return Some(format!("Q{order}"));
        }
        if involutions == 1 && order == 12 {
            return Some("Dic12".into());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use cdscope_core::expr::build;
    use cdscope_core::group::Limits;

    fn names(src: &str) -> Vec<String> {
        let limits = Limits::default();
        let g = build(src, &limits).unwrap().into_group();
        let ctx = CdContext::new(&g, &limits).unwrap();
        (0..ctx.lattice().len())
            .map(|i| subgroup_name(&ctx, i))
            .collect()
    }

    #[test]
    fn small_group_names() {
        assert_eq!(names("S(3)"), vec!["1", "C2", "C2", "C2", "C3", "S3"]);
        assert_eq!(
            names("A(4)"),
            vec!["1", "C2", "C2", "C2", "C3", "C3", "C3", "C3", "K4", "A4"]
        );
        let d8 = names("D(8)");
        assert_eq!(d8.last().unwrap(), "D8");
        assert_eq!(d8.iter().filter(|n| *n == "K4").count(), 2);
    }

    #[test]
    fn larger_names() {
        assert_eq!(names("Q(8)").last().unwrap(), "Q8");
        assert_eq!(names("Q(16)").last().unwrap(), "Q16");
        assert_eq!(names("S(4)").last().unwrap(), "S4");
        assert_eq!(names("D(12)").last().unwrap(), "D12");
        assert!(names("Q(8) x C(3)").last().unwrap().starts_with("H"));
        assert_eq!(names("C(4) x C(2)").last().unwrap(), "C4xC2");
        assert_eq!(names("C(2) x C(2) x C(2)").last().unwrap(), "C2^3");
        assert_eq!(names("C(2) x C(3)").last().unwrap(), "C6");
        assert!(names("Heis(3,1)").last().unwrap().starts_with("H"));
    }
}
