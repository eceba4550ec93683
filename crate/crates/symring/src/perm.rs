//! Permutations of `{1,..,N}` in one-line form.
//!
//! The one-line image vector is the canonical encoding; the lexicographic
//! order on image vectors is the order used by the basis-search scan and
//! by all file formats. Cycle notation is display-only.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1,..,N}`, stored as the image vector `[p(1),..,p(N)]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// Builds a permutation from 1-based images, validating bijectivity.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > 127 {
            return Err(Error::InvalidPermutation(format!("degree {n} out of range")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `(p∘q)(i) = p(q(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let images = other
            .images
            .iter()
            .map(|&q| self.images[q as usize - 1])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { images }
    }

    /// +1 for even, -1 for odd.
    pub fn sign(&self) -> i64 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur] as usize - 1;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Cycle type as weakly decreasing cycle lengths.
    pub fn cycle_type(&self) -> Vec<u8> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u8;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur] as usize - 1;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Strict lexicographic successor of the one-line form, `None` at the maximum.
    pub fn next_permutation(&self) -> Option<Permutation> {
        let mut v = self.images.clone();
        let n = v.len();
        if n < 2 {
            return None;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        Some(Permutation { images: v })
    }

    /// The adjacent transposition `(k, k+1)` with 1-based `k`.
    pub fn adjacent_transposition(n: usize, k: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.images.swap(k - 1, k);
        p
    }

    /// Writes `self` as a composition of adjacent transpositions
    /// `self = s_{ks.last()} ∘ ... ∘ s_{ks[0]}` (1-based positions).
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let mut v = self.images.clone();
        let n = v.len();
        let mut ks = Vec::new();
        // Bubble sort: each recorded swap multiplies by s_k on the right.
        loop {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1) {
                if v[i] > v[i + 1] {
                    v.swap(i, i + 1);
                    ks.push(i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        ks
    }

    /// All permutations of degree `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut p = Permutation::identity(n);
        loop {
            out.push(p.clone());
            match p.next_permutation() {
                Some(q) => p = q,
                None => break,
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images: Vec<u8> = s
            .split_whitespace()
            .map(|t| t.parse::<u8>().map_err(|e| Error::Parse(format!("bad image `{t}`: {e}"))))
            .collect::<Result<_>>()?;
        Permutation::from_images(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u8]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_pointwise() {
        assert_eq!(p(&[2, 1, 3]).compose(&p(&[1, 3, 2])).unwrap(), p(&[2, 3, 1]));
        assert_eq!(
            Permutation::identity(3).compose(&p(&[3, 1, 2])).unwrap(),
            p(&[3, 1, 2])
        );
        assert_eq!(
            p(&[2, 3, 1]).compose(&p(&[3, 1, 2])).unwrap(),
            Permutation::identity(3)
        );
    }

    #[test]
    fn compose_degree_mismatch() {
        assert!(p(&[2, 1]).compose(&p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn associativity_and_inverse() {
        let perms = Permutation::all(4);
        for a in perms.iter().step_by(5) {
            for b in perms.iter().step_by(7) {
                for c in perms.iter().step_by(3) {
                    let lhs = a.compose(&b.compose(c).unwrap()).unwrap();
                    let rhs = a.compose(b).unwrap().compose(c).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            assert!(a.compose(&a.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn lex_successor() {
        assert_eq!(p(&[1, 2, 3]).next_permutation(), Some(p(&[1, 3, 2])));
        assert_eq!(p(&[1, 3, 2]).next_permutation(), Some(p(&[2, 1, 3])));
        assert_eq!(p(&[3, 2, 1]).next_permutation(), None);
    }

    #[test]
    fn enumeration_counts_factorial() {
        for n in 1..=7 {
            let count = Permutation::all(n).len();
            let fact: usize = (1..=n).product();
            assert_eq!(count, fact);
        }
    }

    #[test]
    fn sign_is_homomorphism() {
        for a in Permutation::all(4) {
            for b in Permutation::all(4).iter().step_by(4) {
                assert_eq!(a.compose(b).unwrap().sign(), a.sign() * b.sign());
            }
        }
    }

    #[test]
    fn adjacent_factorization_reconstructs() {
        for q in Permutation::all(5).iter().step_by(7) {
            let mut acc = Permutation::identity(5);
            for k in q.adjacent_factorization() {
                let s = Permutation::adjacent_transposition(5, k);
                acc = s.compose(&acc).unwrap();
            }
            assert_eq!(&acc, q);
        }
    }

    #[test]
    fn roundtrip_text() {
        let q = p(&[2, 1, 3]);
        assert_eq!(q.to_string(), "2 1 3");
        assert_eq!("2 1 3".parse::<Permutation>().unwrap(), q);
    }
}
