use crate::error::{Error, Result};
use crate::families::Family;
use crate::field::is_prime;

use super::{line_column, CyclePerm, ExprKind, GroupExpr, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Family(char),
    Heis,
    Perm,
    Times,
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Family(c) => format!("'{c}'"),
            Tok::Heis => "'Heis'".into(),
            Tok::Perm => "'perm'".into(),
            Tok::Times => "'x'".into(),
            Tok::Int(n) => format!("integer {n}"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const KEYWORDS: [(&str, Tok); 8] = [
    ("Heis", Tok::Heis),
    ("perm", Tok::Perm),
    ("S", Tok::Family('S')),
    ("A", Tok::Family('A')),
    ("D", Tok::Family('D')),
    ("Q", Tok::Family('Q')),
    ("C", Tok::Family('C')),
    ("x", Tok::Times),
];

fn error(source: &str, span: Span, message: impl Into<String>) -> Error {
    // keep the span inside the text even at end of input
    let span = if span.start >= source.len() && !source.is_empty() {
        let last = source.char_indices().last().map_or(0, |(i, _)| i);
        Span::new(last, source.len())
    } else {
        span
    };
    let (line, column) = line_column(source, span.start);
    Error::Parse {
        message: message.into(),
        line,
        column,
        span: (span.start, span.end),
    }
}

fn lex(source: &str) -> Result<Vec<(Tok, Span)>> {
    let bytes = source.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, Span::new(i, i + 1)));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let span = Span::new(start, i);
            let n = source[start..i]
                .parse::<u64>()
                .map_err(|_| error(source, span, "integer literal is too large"))?;
            out.push((Tok::Int(n), span));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            // a run such as "xD" from "D(8)xD(8)" splits into keywords
            let word = &source[start..i];
            let mut pos = 0;
            let mut toks = Vec::new();
            while pos < word.len() {
                let Some((kw, tok)) = KEYWORDS.iter().find(|(kw, _)| word[pos..].starts_with(kw))
                else {
                    return Err(error(
                        source,
                        Span::new(start, i),
                        format!("unknown family name '{word}'"),
                    ));
                };
                toks.push((*tok, Span::new(start + pos, start + pos + kw.len())));
                pos += kw.len();
            }
            out.extend(toks);
        } else {
            let ch = source[i..].chars().next().unwrap_or('?');
            return Err(error(
                source,
                Span::new(i, i + ch.len_utf8()),
                format!("unexpected character '{ch}'"),
            ));
        }
    }
    out.push((Tok::Eof, Span::new(source.len(), source.len())));
    Ok(out)
}

struct Parser<'a> {
    source: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> (Tok, Span) {
        self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos];
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, span: Span, message: impl Into<String>) -> Result<T> {
        Err(error(self.source, span, message))
    }

    fn expect(&mut self, want: Tok) -> Result<Span> {
        let (t, span) = self.bump();
        if t == want {
            Ok(span)
        } else {
            self.err(
                span,
                format!("expected {}, found {}", want.describe(), t.describe()),
            )
        }
    }

    fn int(&mut self) -> Result<(u64, Span)> {
        match self.bump() {
            (Tok::Int(n), span) => Ok((n, span)),
            (t, span) => self.err(span, format!("expected an integer, found {}", t.describe())),
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut left = self.term()?;
        while self.peek().0 == Tok::Times {
            self.bump();
            let right = self.term()?;
            let span = left.span.join(right.span);
            left = GroupExpr {
                kind: ExprKind::Product(Box::new(left), Box::new(right)),
                span,
            };
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<GroupExpr> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Family(letter) => self.named(letter, span),
            Tok::Heis => self.heis(span),
            Tok::Perm => self.perms(span),
            Tok::LParen => {
                let mut inner = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                inner.span = span.join(close);
                Ok(inner)
            }
            t => self.err(span, format!("expected a group, found {}", t.describe())),
        }
    }

    fn named(&mut self, letter: char, start: Span) -> Result<GroupExpr> {
        self.expect(Tok::LParen)?;
        let (n, nspan) = self.int()?;
        let close = self.expect(Tok::RParen)?;
        let Ok(n) = usize::try_from(n) else {
            return self.err(nspan, "parameter out of range");
        };
        let family = match letter {
            'S' => Family::Symmetric(n),
            'A' => Family::Alternating(n),
            'D' => Family::Dihedral(n),
            'Q' => Family::Quaternion(n),
            _ => Family::Cyclic(n),
        };
        if let Err(e) = family.validate() {
            let msg = match e {
                Error::InvalidParameter(m) => m,
                other => other.to_string(),
            };
            return self.err(nspan, format!("parameter out of range: {msg}"));
        }
        Ok(GroupExpr {
            kind: ExprKind::Named(family),
            span: start.join(close),
        })
    }

    fn heis(&mut self, start: Span) -> Result<GroupExpr> {
        self.expect(Tok::LParen)?;
        let (p, pspan) = self.int()?;
        self.expect(Tok::Comma)?;
        let (n, nspan) = self.int()?;
        let close = self.expect(Tok::RParen)?;
        let p = match u32::try_from(p) {
            Ok(q) if is_prime(p) => q,
            _ => return self.err(pspan, format!("parameter out of range: {p} is not prime")),
        };
        let n = match u32::try_from(n) {
            Ok(n) if n >= 1 => n,
            _ => return self.err(nspan, "parameter out of range: degree must be at least 1"),
        };
        Ok(GroupExpr {
            kind: ExprKind::Heisenberg(p, n),
            span: start.join(close),
        })
    }

    fn perms(&mut self, start: Span) -> Result<GroupExpr> {
        self.expect(Tok::LBracket)?;
        let mut gens = vec![self.cycleperm()?];
        while self.peek().0 == Tok::Comma {
            self.bump();
            gens.push(self.cycleperm()?);
        }
        let close = self.expect(Tok::RBracket)?;
        Ok(GroupExpr {
            kind: ExprKind::Generators(gens),
            span: start.join(close),
        })
    }

    fn cycleperm(&mut self) -> Result<CyclePerm> {
        let mut cycles = Vec::new();
        let mut seen = std::collections::HashSet::new();
        loop {
            let open = self.expect(Tok::LParen)?;
            let mut cycle = Vec::new();
            while let (Tok::Int(_), _) = self.peek() {
                let (p, span) = self.int()?;
                let p = match u32::try_from(p) {
                    Ok(p) if p >= 1 => p,
                    _ => return self.err(span, format!("parameter out of range: point {p}")),
                };
                if !seen.insert(p) {
                    return self.err(
                        span,
                        format!("point {p} appears twice; cycles must be disjoint"),
                    );
                }
                cycle.push(p);
            }
            let close = self.expect(Tok::RParen)?;
            if cycle.is_empty() {
                return self.err(open.join(close), "empty cycle");
            }
            cycles.push(cycle);
            if self.peek().0 != Tok::LParen {
                return Ok(CyclePerm { cycles });
            }
        }
    }
}

/// Parses a group expression. Errors name the line and column.
pub fn parse(source: &str) -> Result<GroupExpr> {
    if source.trim().is_empty() {
        return Err(error(
            source,
            Span::new(0, source.len()),
            "empty expression",
        ));
    }
    let mut parser = Parser {
        source,
        toks: lex(source)?,
        pos: 0,
    };
    let expr = parser.expr()?;
    match parser.bump() {
        (Tok::Eof, _) => Ok(expr),
        (t, span) => parser.err(
            span,
            format!("expected 'x' or end of input, found {}", t.describe()),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn named(f: Family) -> ExprKind {
        ExprKind::Named(f)
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse("D(8)").unwrap().kind, named(Family::Dihedral(8)));
        let e = parse("S(3) x C(2)").unwrap();
        match e.kind {
            ExprKind::Product(a, b) => {
                assert_eq!(a.kind, named(Family::Symmetric(3)));
                assert_eq!(b.kind, named(Family::Cyclic(2)));
            }
            other => panic!("unexpected {other:?}"),
        }
        let e = parse("perm[(1 2 3), (1 2)]").unwrap();
        assert_eq!(
            e.kind,
            ExprKind::Generators(vec![
                CyclePerm {
                    cycles: vec![vec![1, 2, 3]]
                },
                CyclePerm {
                    cycles: vec![vec![1, 2]]
                },
            ])
        );
    }

    #[test]
    fn splits_keyword_runs() {
        let a = parse("D(8)xD(8)").unwrap();
        let b = parse("D(8) x D(8)").unwrap();
        assert!(a.structurally_eq(&b));
        assert_eq!(a.span, Span::new(0, 9));
    }

    #[test]
    fn products_associate_left() {
        let e = parse("C(2) x C(3) x C(5)").unwrap();
        let ExprKind::Product(left, right) = e.kind else {
            panic!()
        };
        assert!(matches!(left.kind, ExprKind::Product(..)));
        assert_eq!(right.kind, named(Family::Cyclic(5)));
        let e = parse("C(2) x (C(3) x C(5))").unwrap();
        let ExprKind::Product(_, right) = e.kind else {
            panic!()
        };
        assert!(matches!(right.kind, ExprKind::Product(..)));
        assert_eq!(e.span, Span::new(0, 20));
    }

    #[test]
    fn multi_cycle_generators() {
        let e = parse("perm[(1 2)(3 4), (1 3)(2 4)]").unwrap();
        let ExprKind::Generators(g) = e.kind else {
            panic!()
        };
        assert_eq!(g[0].cycles, vec![vec![1, 2], vec![3, 4]]);
    }

    fn parse_err(src: &str) -> (String, usize, usize, (usize, usize)) {
        match parse(src).unwrap_err() {
            Error::Parse {
                message,
                line,
                column,
                span,
            } => (message, line, column, span),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_have_positions() {
        let (m, _, col, span) = parse_err("Foo(3)");
        assert!(m.contains("unknown family name 'Foo'"));
        assert_eq!((col, span), (1, (0, 3)));
        let (m, _, col, _) = parse_err("D(7)");
        assert!(m.contains("parameter out of range"));
        assert_eq!(col, 3);
        let (m, line, col, _) = parse_err("C(2) x\n  Heis(4,1)");
        assert!(m.contains("not prime"));
        assert_eq!((line, col), (2, 8));
        let (m, ..) = parse_err("perm[(1 2)(2 3)]");
        assert!(m.contains("disjoint"));
        let (m, ..) = parse_err("perm[(0 1)]");
        assert!(m.contains("out of range"));
        let (m, _, _, span) = parse_err("S(3) x");
        assert!(m.contains("end of input"));
        assert_eq!(span, (5, 6));
        let (m, ..) = parse_err("C(0)");
        assert!(m.contains("out of range"));
        let (m, ..) = parse_err("C(99999999999999999999999)");
        assert!(m.contains("too large"));
        let (m, ..) = parse_err("   ");
        assert!(m.contains("empty"));
        let (m, ..) = parse_err("S(3) S(3)");
        assert!(m.contains("expected 'x'"));
        let (m, ..) = parse_err("perm[()]");
        assert!(m.contains("empty cycle"));
        let (m, ..) = parse_err("C(2) + C(3)");
        assert!(m.contains("unexpected character '+'"));
    }

    fn leaf() -> impl Strategy<Value = String> {
        prop_oneof![
            (1usize..40).prop_map(|n| format!("C({n})")),
            (1usize..20).prop_map(|n| format!("D({})", 2 * n)),
            (3u32..6).prop_map(|e| format!("Q({})", 1usize << e)),
            (1usize..7).prop_map(|n| format!("S({n})")),
            (1usize..7).prop_map(|n| format!("A({n})")),
            (prop::sample::select(vec![2u32, 3, 5, 7]), 1u32..3)
                .prop_map(|(p, n)| format!("Heis({p},{n})")),
            prop::collection::vec(cycleperm_text(), 1..4)
                .prop_map(|g| format!("perm[{}]", g.join(", "))),
        ]
    }

    fn cycleperm_text() -> impl Strategy<Value = String> {
        let points: Vec<u32> = (1..=8).collect();
        (
            prop::sample::subsequence(points, 1..=6).prop_shuffle(),
            any::<prop::sample::Index>(),
        )
            .prop_map(|(pts, cut)| {
                let fmt = |c: &[u32]| {
                    format!(
                        "({})",
                        c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
                    )
                };
                let (a, b) = pts.split_at(1 + cut.index(pts.len()));
                if b.is_empty() {
                    fmt(a)
                } else {
                    format!("{}{}", fmt(a), fmt(b))
                }
            })
    }

    fn expr_text() -> impl Strategy<Value = String> {
        leaf().prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} x {b}")),
                (inner.clone(), inner).prop_map(|(a, b)| format!("{a}x({b})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn round_trip(src in expr_text()) {
            let e = parse(&src).unwrap();
            let printed = e.to_string();
            let again = parse(&printed).unwrap();
            prop_assert!(e.structurally_eq(&again), "{src} -> {printed}");
            prop_assert_eq!(again.to_string(), printed);
        }

        #[test]
        fn errors_point_inside_input(src in "[ -~]{1,24}") {
            if let Err(Error::Parse { span, .. }) = parse(&src) {
                prop_assert!(span.0 < src.len() && span.1 <= src.len() && span.0 <= span.1);
            }
        }
    }
}
