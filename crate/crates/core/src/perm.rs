//! Permutations of `{1, ..., n}`, stored 0-based, with a cached cycle
//! decomposition.

use std::fmt;

use crate::{Error, Result};

/// A bijection of `{0, ..., n-1}`. Displayed 1-based in cycle notation.
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
    cycles: Vec<Vec<usize>>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self::from_images_unchecked((0..n).collect())
    }

    /// Builds from the image list `images[i] = pi(i)`, 0-based.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::invalid(format!(
                    "image list of length {n} is not a bijection"
                )));
            }
        }
        Ok(Self::from_images_unchecked(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        let cycles = decompose(&images);
        Permutation { images, cycles }
    }

    /// Builds from disjoint cycles written with 1-based labels. Points not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::invalid(format!("label out of range 1..={n}")));
                }
                if std::mem::replace(&mut touched[a - 1], true) {
                    return Err(Error::invalid(format!("label {a} appears twice")));
                }
                images[a - 1] = b - 1;
            }
        }
        Ok(Self::from_images_unchecked(images))
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Cycles (0-based), each starting at its smallest element, ordered by
    /// that element. Fixed points are included.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Cycle lengths in weakly decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles.iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "cannot compose permutations of {} and {} points",
                self.len(),
                other.len()
            )));
        }
        Ok(Self::from_images_unchecked(
            other.images.iter().map(|&x| self.images[x]).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self::from_images_unchecked(inv)
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| x != i && self.images[x] == i)
    }
}

fn decompose(images: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; images.len()];
    let mut cycles = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = images[x];
        }
        cycles.push(cycle);
    }
    cycles
}

/// Number of cycles of `outer * inner` without materialising it.
pub(crate) fn product_cycle_count(outer: &[usize], inner: &[usize], seen: &mut Vec<bool>) -> usize {
    seen.clear();
    seen.resize(inner.len(), false);
    let mut count = 0;
    for start in 0..inner.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = outer[inner[x]];
        }
    }
    count
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation with fixed points shown, e.g. `(1 3 5 4)(2)(6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}
