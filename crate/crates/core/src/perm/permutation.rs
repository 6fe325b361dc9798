use std::fmt;

use crate::error::{Error, Result};

/// A permutation of {0, …, n-1}; `images[v]` is the image of `v`.
///
/// Products compose left to right: `g.compose(h)` applies `g` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPerm(format!("image list is not a bijection on 0..{n}")));
            }
        }
        Ok(Perm { images: images.into_iter().map(|x| x as u32).collect() })
    }

    /// Builds a permutation from a point map, which must be a bijection.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_images((0..n).map(f).collect())
    }

    /// Product of disjoint or overlapping cycles, applied left to right.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut acc = Perm::identity(n);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..n).collect();
            for (k, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(k + 1) % cycle.len()];
            }
            acc = acc.compose(&Perm::from_images(images)?);
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse().compose(&other.inverse()).compose(self).compose(other)
    }

    /// `by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &Perm) -> Perm {
        by.inverse().compose(self).compose(by)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut acc = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            acc = lcm(acc, len);
        }
        acc
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_to_right() {
        let g = Perm::from_images(vec![1, 2, 0]).unwrap();
        let h = Perm::from_images(vec![0, 2, 1]).unwrap();
        // 0 -g-> 1 -h-> 2
        assert_eq!(g.compose(&h).apply(0), 2);
        assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn orders() {
        assert_eq!(Perm::from_cycles(6, &[&[0, 1], &[2, 3, 4]]).unwrap().order(), 6);
        assert_eq!(Perm::identity(4).order(), 1);
        let c = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert!(c.pow(5).is_identity());
        assert!(!c.pow(4).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![2, 0]).is_err());
    }
}
