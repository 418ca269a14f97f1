//! Permutations of `{1..m}` with cycle-notation input and output.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{1..degree}`, stored 0-based as an image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from a 0-based image table, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image table {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based cycles. Points not mentioned are fixed; the degree
    /// is the larger of `degree` and the largest point used.
    pub fn from_cycles(cycles: &[Vec<u32>], degree: usize) -> Result<Self> {
        let max_point = cycles.iter().flatten().copied().max().unwrap_or(0) as usize;
        let degree = degree.max(max_point);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 {
                    return Err(Error::InvalidPermutation(
                        "points are numbered from 1".into(),
                    ));
                }
                let idx = p as usize - 1;
                if used[idx] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears in more than one cycle position"
                    )));
                }
                used[idx] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[p as usize - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`; points beyond the degree are fixed.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images.get(i).map_or(i, |&j| j as usize)
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Extends the permutation to act on `degree` points (fixing new ones).
    pub fn with_degree(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(images.len() as u32..degree as u32);
        Permutation { images }
    }

    /// `self` followed by `other`: the point `i` goes to `other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        let degree = self.degree().max(other.degree());
        Permutation {
            images: (0..degree)
                .map(|i| other.apply(self.apply(i)) as u32)
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32 + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parity: `true` for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
