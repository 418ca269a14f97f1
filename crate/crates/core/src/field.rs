//! Small finite fields `GF(pⁿ)` with `pⁿ ≤ 32`, as residue polynomials.
//!
//! Each supported field has one fixed irreducible modulus. Elements are
//! coefficient vectors of length `n` (constant term first); arithmetic goes
//! through precomputed `q × q` tables indexed by the base-`p` encoding of the
//! coefficients.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order this module supports.
pub const MAX_FIELD_ORDER: u32 = 32;

/// Fixed moduli for the non-prime fields, constant coefficient first.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
];

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// All `(p, n)` with `pⁿ ≤ 32`, sorted by field order.
pub fn supported_fields() -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = (2..=MAX_FIELD_ORDER)
        .filter(|&p| is_prime(p as u64))
        .map(|p| (p, 1))
        .chain(MODULI.iter().map(|&(p, n, _)| (p, n)))
        .collect();
    out.sort_by_key(|&(p, n)| (p.pow(n), p));
    out
}

fn supported_list() -> String {
    supported_fields()
        .iter()
        .map(|(p, n)| format!("({p},{n})"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Monic, degree `n`, constant coefficient first.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// The baked-in spec for `GF(pⁿ)`.
    pub fn supported(p: u32, n: u32) -> Result<Self> {
        let unsupported = || Error::UnsupportedField {
            p,
            n,
            supported: supported_list(),
        };
        if n == 0 || !is_prime(p as u64) {
            return Err(unsupported());
        }
        if n == 1 {
            if p > MAX_FIELD_ORDER {
                return Err(unsupported());
            }
            return FieldSpec::new(p, 1, vec![0, 1]);
        }
        let modulus = MODULI
            .iter()
            .find(|&&(mp, mn, _)| mp == p && mn == n)
            .map(|&(_, _, m)| m.to_vec())
            .ok_or_else(unsupported)?;
        FieldSpec::new(p, n, modulus)
    }

    /// A spec with a caller-chosen modulus, checked irreducible by trial
    /// division against every monic polynomial of degree `1..=n/2`.
    pub fn new(p: u32, n: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) || n == 0 {
            return Err(Error::InvalidParameter(format!(
                "GF({p}^{n}) is not a field"
            )));
        }
        if p.checked_pow(n).is_none_or(|q| q > MAX_FIELD_ORDER) {
            return Err(Error::UnsupportedField {
                p,
                n,
                supported: supported_list(),
            });
        }
        if modulus.len() != n as usize + 1 || modulus[n as usize] != 1 {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus:?} is not monic of degree {n}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter(
                "modulus coefficient out of range".into(),
            ));
        }
        let spec = FieldSpec { p, n, modulus };
        if !spec.modulus_is_irreducible() {
            return Err(Error::InvalidParameter(format!(
                "modulus {:?} is reducible over GF({p})",
                spec.modulus
            )));
        }
        Ok(spec)
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.n)
    }

    fn modulus_is_irreducible(&self) -> bool {
        let p = self.p;
        for degree in 1..=self.n / 2 {
            let count = p.pow(degree);
            for low in 0..count {
                let mut divisor: Vec<u32> = digits(low, p, degree as usize);
                divisor.push(1);
                if poly_rem(&self.modulus, &divisor, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn digits(mut value: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(value % p);
        value /= p;
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u32> = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
        }
    }
    r.resize(dm, 0);
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Residue polynomial of degree below `n`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coeffs: Vec<u32>,
}

/// Arithmetic tables for one field.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.order() as usize;
        let p = spec.p;
        let n = spec.n as usize;
        let elems: Vec<Vec<u32>> = (0..q as u32).map(|i| digits(i, p, n)).collect();
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = elems[a]
                    .iter()
                    .zip(&elems[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = encode(&sum);
                let prod = poly_rem(&poly_mul(&elems[a], &elems[b], p), &spec.modulus, p);
                mul[a * q + b] = encode(&prod);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| (0..q).find(|&b| mul[a * q + b] == 1).map_or(0, |b| b as u8))
            .collect();
        Field {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn supported(p: u32, n: u32) -> Result<Self> {
        Ok(Field::new(FieldSpec::supported(p, n)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    // Index-level arithmetic, used by the matrix constructors.

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn inv_idx(&self, a: usize) -> Result<usize> {
        if a == 0 {
            Err(Error::ZeroInverse(self.spec.order()))
        } else {
            Ok(self.inv[a] as usize)
        }
    }

    pub fn element(&self, index: usize) -> FieldElement {
        FieldElement {
            coeffs: digits(index as u32, self.spec.p, self.spec.n as usize),
        }
    }

    pub fn index_of(&self, e: &FieldElement) -> Result<usize> {
        if e.coeffs.len() != self.spec.n as usize || e.coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::InvalidParameter(format!(
                "{:?} is not a reduced element of GF({})",
                e.coeffs, self.q
            )));
        }
        Ok(e.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.spec.p as usize + d as usize))
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.add_idx(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.mul_idx(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.neg_idx(self.index_of(a)?)))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.inv_idx(self.index_of(a)?)?))
    }

    /// Display form of an element: digits for prime fields, otherwise a
    /// polynomial in `t` such as `t^2+2`.
    pub fn display(&self, index: usize) -> String {
        let e = self.element(index);
        if self.spec.n == 1 {
            return e.coeffs[0].to_string();
        }
        let terms: Vec<String> = e
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coeff = if c == 1 && i > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}t"),
                    _ => format!("{coeff}t^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(coeffs: &[u32]) -> FieldElement {
        FieldElement {
            coeffs: coeffs.to_vec(),
        }
    }

    #[test]
    fn gf4_x_squared() {
        let f = Field::supported(2, 2).unwrap();
        // x * x = x + 1 modulo x^2 + x + 1
        assert_eq!(f.mul(&fe(&[0, 1]), &fe(&[0, 1])).unwrap(), fe(&[1, 1]));
    }

    #[test]
    fn gf9_x_squared() {
        let f = Field::supported(3, 2).unwrap();
        // x * x = -1 = 2 modulo x^2 + 1
        assert_eq!(f.mul(&fe(&[0, 1]), &fe(&[0, 1])).unwrap(), fe(&[2, 0]));
    }

    #[test]
    fn additive_identity() {
        for (p, n) in supported_fields() {
            let f = Field::supported(p, n).unwrap();
            for a in 0..f.order() {
                let e = f.element(a);
                assert_eq!(f.add(&e, &f.zero()).unwrap(), e);
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = Field::supported(5, 1).unwrap();
        assert_eq!(f.inv(&f.zero()), Err(Error::ZeroInverse(5)));
    }

    #[test]
    fn every_baked_modulus_is_irreducible() {
        for &(p, n, m) in MODULI {
            assert!(FieldSpec::new(p, n, m.to_vec()).is_ok(), "GF({p}^{n})");
        }
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(FieldSpec::new(2, 2, vec![1, 0, 1]).is_err());
        // x^2 + 4 = (x + 1)(x + 4) over GF(5)
        assert!(FieldSpec::new(5, 2, vec![4, 0, 1]).is_err());
    }

    #[test]
    fn unsupported_fields() {
        assert!(matches!(
            FieldSpec::supported(2, 6),
            Err(Error::UnsupportedField { .. })
        ));
        assert!(matches!(
            FieldSpec::supported(37, 1),
            Err(Error::UnsupportedField { .. })
        ));
        assert!(matches!(
            FieldSpec::supported(4, 1),
            Err(Error::UnsupportedField { .. })
        ));
    }

    #[test]
    fn supported_list_covers_all_orders() {
        let orders: Vec<u32> = supported_fields().iter().map(|&(p, n)| p.pow(n)).collect();
        let expected: Vec<u32> = (2..=32)
            .filter(|&q| (2..=32u32).any(|p| is_prime(p as u64) && (1..6).any(|n| p.pow(n) == q)))
            .collect();
        assert_eq!(orders, expected);
    }

    /// Field axioms, checked exhaustively on every supported field.
    #[test]
    fn field_axioms_exhaustive() {
        for (p, n) in supported_fields() {
            let f = Field::supported(p, n).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add_idx(a, f.neg_idx(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul_idx(a, f.inv_idx(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add_idx(a, b), f.add_idx(b, a));
                    assert_eq!(f.mul_idx(a, b), f.mul_idx(b, a));
                    for c in 0..q {
                        assert_eq!(f.add_idx(f.add_idx(a, b), c), f.add_idx(a, f.add_idx(b, c)));
                        assert_eq!(f.mul_idx(f.mul_idx(a, b), c), f.mul_idx(a, f.mul_idx(b, c)));
                        assert_eq!(
                            f.mul_idx(a, f.add_idx(b, c)),
                            f.add_idx(f.mul_idx(a, b), f.mul_idx(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn display_polynomials() {
        let f = Field::supported(3, 2).unwrap();
        assert_eq!(f.display(0), "0");
        assert_eq!(f.display(1), "1");
        assert_eq!(f.display(3), "t");
        assert_eq!(f.display(3 + 2), "t+2");
        assert_eq!(f.display(2 * 3 + 1), "2t+1");
    }
}
