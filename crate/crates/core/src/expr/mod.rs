//! A small language naming groups.
//!
//! ```text
//! expr      := term { "x" term }
//! term      := named | heis | perms | "(" expr ")"
//! named     := ("S"|"A"|"D"|"Q"|"C") "(" integer ")"
//! heis      := "Heis" "(" integer "," integer ")"
//! perms     := "perm" "[" cycleperm { "," cycleperm } "]"
//! cycleperm := cycle { cycle }
//! cycle     := "(" integer { integer } ")"
//! ```
//!
//! `D(n)` and `Q(n)` take the group order, so `D(8)` has eight elements.
//! `S(n)` and `A(n)` take the degree. Products associate to the left.

mod parse;

use std::fmt;

use crate::error::{Error, Result};
use crate::families::{direct_product, heisenberg, make_named, DirectProduct, Family};
use crate::group::{close_generators, FiniteGroup, Limits};
use crate::perm::Permutation;

pub use parse::parse;

/// Byte range `[start, end)` in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

/// 1-based line and column of byte offset `at`.
pub fn line_column(source: &str, at: usize) -> (usize, usize) {
    let before = &source[..at.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// A permutation written as disjoint cycles on points `1..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePerm {
    pub cycles: Vec<Vec<u32>>,
}

impl CyclePerm {
    pub fn to_permutation(&self) -> Result<Permutation> {
        Permutation::from_cycles(&self.cycles, 0)
    }
}

impl fmt::Display for CyclePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Named(Family),
    Heisenberg(u32, u32),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Generators(Vec<CyclePerm>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupExpr {
    pub kind: ExprKind,
    pub span: Span,
}

impl GroupExpr {
    /// Equality ignoring spans.
    pub fn structurally_eq(&self, other: &GroupExpr) -> bool {
        match (&self.kind, &other.kind) {
            (ExprKind::Product(a, b), ExprKind::Product(c, d)) => {
                a.structurally_eq(c) && b.structurally_eq(d)
            }
            (a, b) => a == b,
        }
    }

    /// Upper bound on the order, saturating. Permutation groups report the
    /// factorial of their degree.
    pub fn predicted_order(&self) -> usize {
        match &self.kind {
            ExprKind::Named(f) => f.predicted_order(),
            ExprKind::Heisenberg(p, n) => (*p as usize).checked_pow(3 * n).unwrap_or(usize::MAX),
            ExprKind::Product(a, b) => a.predicted_order().saturating_mul(b.predicted_order()),
            ExprKind::Generators(gens) => {
                let degree = gens
                    .iter()
                    .flat_map(|g| g.cycles.iter().flatten())
                    .copied()
                    .max()
                    .unwrap_or(1) as usize;
                Family::Symmetric(degree).predicted_order()
            }
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Named(family) => {
                let (letter, n) = match *family {
                    Family::Cyclic(n) => ("C", n),
                    Family::Dihedral(n) => ("D", n),
                    Family::Quaternion(n) => ("Q", n),
                    Family::Symmetric(n) => ("S", n),
                    Family::Alternating(n) => ("A", n),
                };
                write!(f, "{letter}({n})")
            }
            ExprKind::Heisenberg(p, n) => write!(f, "Heis({p},{n})"),
            ExprKind::Product(a, b) => {
                if matches!(b.kind, ExprKind::Product(..)) {
                    write!(f, "{a} x ({b})")
                } else {
                    write!(f, "{a} x {b}")
                }
            }
            ExprKind::Generators(gens) => {
                f.write_str("perm[")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Result of evaluating an expression. Top-level products keep their
/// factors so that callers can relate the lattices.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Evaluated {
    Single(FiniteGroup),
    Product {
        product: DirectProduct,
        left: FiniteGroup,
        right: FiniteGroup,
    },
}

impl Evaluated {
    pub fn group(&self) -> &FiniteGroup {
        match self {
            Evaluated::Single(g) => g,
            Evaluated::Product { product, .. } => &product.group,
        }
    }

    pub fn into_group(self) -> FiniteGroup {
        match self {
            Evaluated::Single(g) => g,
            Evaluated::Product { product, .. } => product.group,
        }
    }
}

fn spanned(source: &str, span: Span, err: Error) -> Error {
    if matches!(err, Error::Spanned { .. } | Error::Parse { .. }) {
        return err;
    }
    let (line, column) = line_column(source, span.start);
    Error::Spanned {
        source: Box::new(err),
        line,
        column,
        span: (span.start, span.end),
    }
}

/// Builds the group. `source` is the text the expression was parsed from and
/// is only used to place errors.
pub fn evaluate_full(expr: &GroupExpr, source: &str, limits: &Limits) -> Result<Evaluated> {
    let at = |e| spanned(source, expr.span, e);
    match &expr.kind {
        ExprKind::Named(family) => make_named(*family, limits)
            .map(Evaluated::Single)
            .map_err(at),
        ExprKind::Heisenberg(p, n) => heisenberg(*p, *n, limits)
            .map(Evaluated::Single)
            .map_err(at),
        ExprKind::Generators(gens) => {
            let degree = gens
                .iter()
                .flat_map(|g| g.cycles.iter().flatten())
                .copied()
                .max()
                .unwrap_or(0) as usize;
            if degree > limits.max_points {
                return Err(at(Error::PointCap {
                    degree,
                    cap: limits.max_points,
                }));
            }
            let perms = gens
                .iter()
                .map(CyclePerm::to_permutation)
                .collect::<Result<Vec<_>>>()
                .map_err(at)?;
            close_generators(expr.to_string(), &perms, limits)
                .map(Evaluated::Single)
                .map_err(at)
        }
        ExprKind::Product(a, b) => {
            let left = evaluate_full(a, source, limits)?.into_group();
            let right = evaluate_full(b, source, limits)?.into_group();
            let product = direct_product(&left, &right, limits).map_err(at)?;
            Ok(Evaluated::Product {
                product,
                left,
                right,
            })
        }
    }
}

pub fn evaluate(expr: &GroupExpr, source: &str, limits: &Limits) -> Result<FiniteGroup> {
    evaluate_full(expr, source, limits).map(Evaluated::into_group)
}

/// `parse` followed by `evaluate_full`.
pub fn build(source: &str, limits: &Limits) -> Result<Evaluated> {
    evaluate_full(&parse(source)?, source, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::measure_map;
    use crate::lattice::SubgroupLattice;

    fn order_of(src: &str) -> usize {
        build(src, &Limits::default()).unwrap().group().order()
    }

    #[test]
    fn evaluates_examples() {
        assert_eq!(order_of("A(4)"), 12);
        assert_eq!(order_of("D(8) x D(8)"), 64);
        assert_eq!(order_of("perm[(1 2)]"), 2);
        assert_eq!(order_of("Heis(3,1)"), 27);
        assert_eq!(order_of("C(2) x C(2) x C(2)"), 8);
        assert_eq!(order_of("C(1)"), 1);
    }

    #[test]
    fn a4_matches_generated_permutations() {
        let limits = Limits::default();
        let a = build("A(4)", &limits).unwrap().into_group();
        let b = build("perm[(1 2 3), (2 3 4)]", &limits)
            .unwrap()
            .into_group();
        let ma = measure_map(&SubgroupLattice::new(&a, &limits).unwrap()).multiset();
        let mb = measure_map(&SubgroupLattice::new(&b, &limits).unwrap()).multiset();
        assert_eq!(ma, mb);
    }

    #[test]
    fn constructor_errors_carry_spans() {
        let limits = Limits::default();
        let err = build("C(2) x Heis(7,2)", &limits).unwrap_err();
        match err {
            Error::Spanned { span, column, .. } => {
                assert_eq!(span, (7, 16));
                assert_eq!(column, 8);
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = build("perm[(1 4000000000)]", &limits).unwrap_err();
        assert_eq!(err.class(), crate::error::ErrorClass::Resource);
        let err = build("S(9)", &limits).unwrap_err();
        assert_eq!(err.class(), crate::error::ErrorClass::Resource);
    }

    #[test]
    fn product_keeps_factors() {
        match build("D(8) x C(3)", &Limits::default()).unwrap() {
            Evaluated::Product { left, right, .. } => {
                assert_eq!((left.order(), right.order()), (8, 3));
            }
            Evaluated::Single(_) => panic!("expected a product"),
        }
    }

    #[test]
    fn line_columns() {
        assert_eq!(line_column("abc", 0), (1, 1));
        assert_eq!(line_column("ab\ncd", 4), (2, 2));
    }
}
