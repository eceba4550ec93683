//! Integer partitions, conjugation, hooks and the hook-length dimension.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition of `N`: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u8>,
}

impl Partition {
    pub fn new(parts: Vec<u8>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty".into()));
        }
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!("{parts:?} not weakly decreasing")));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0] as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u8)
            .collect();
        Partition { parts }
    }

    /// Hook length of the cell `(r, c)` (0-based).
    pub fn hook_length(&self, r: usize, c: usize) -> usize {
        let arm = self.parts[r] as usize - c - 1;
        let leg = self.parts[r + 1..].iter().filter(|&&p| p as usize > c).count();
        arm + leg + 1
    }

    /// Count of standard tableaux of this shape, via the hook length formula.
    pub fn dimension(&self) -> u64 {
        let n = self.n();
        let mut num: u128 = 1;
        for k in 1..=n as u128 {
            num *= k;
        }
        let mut den: u128 = 1;
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len as usize {
                den *= self.hook_length(r, c) as u128;
            }
        }
        debug_assert_eq!(num % den, 0);
        (num / den) as u64
    }

    /// All partitions of `n`, in descending lexicographic order (so `(n)` first
    /// and `(1^n)` last).
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = Vec::new();
        fn rec(rest: usize, max: usize, cur: &mut Vec<u8>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                cur.push(part as u8);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", strs.join(" "))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses comma- or space-separated parts, e.g. `5,2` or `5 2`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u8> = s
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u8>().map_err(|e| Error::Parse(format!("bad part `{t}`: {e}"))))
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }
}
