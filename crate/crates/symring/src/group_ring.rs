//! Sparse exact arithmetic in the complex group ring of `S_N`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite linear combination of permutations with no zero terms stored.
#[derive(Clone, PartialEq)]
pub struct GroupRingElement {
    degree: usize,
    terms: BTreeMap<Permutation, Coefficient>,
}

impl GroupRingElement {
    pub fn zero(degree: usize) -> Self {
        GroupRingElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(degree: usize) -> Self {
        Self::basis(Permutation::identity(degree))
    }

    /// The single permutation `p` with coefficient 1.
    pub fn basis(p: Permutation) -> Self {
        let degree = p.degree();
        let mut terms = BTreeMap::new();
        terms.insert(p, Coefficient::one());
        GroupRingElement { degree, terms }
    }

    pub fn from_terms<I>(degree: usize, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Permutation, Coefficient)>,
    {
        let mut out = GroupRingElement::zero(degree);
        for (p, c) in iter {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Permutation) -> Coefficient {
        self.terms.get(p).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// First nonzero term in lexicographic order of permutations.
    pub fn leading_term(&self) -> Option<(&Permutation, &Coefficient)> {
        self.terms.iter().next()
    }

    fn add_term(&mut self, p: Permutation, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.add(&other.scale(&-Coefficient::one()))
    }

    pub fn scale(&self, k: &Coefficient) -> GroupRingElement {
        if k.is_zero() {
            return GroupRingElement::zero(self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), c * k))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        GroupRingElement {
            degree: self.degree,
            terms,
        }
    }

    /// Convolution product `a·b = Σ_p Σ_q a_p b_q (p∘q)`.
    pub fn multiply(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = GroupRingElement::zero(self.degree);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.compose_unchecked(q), a * b);
            }
        }
        Ok(out)
    }

    /// `a* = Σ_p a_p p^{-1}`.
    pub fn star(&self) -> GroupRingElement {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.inverse(), c.clone()))
            .collect();
        GroupRingElement {
            degree: self.degree,
            terms,
        }
    }

    /// Complex conjugation of all coefficients.
    pub fn conj(&self) -> GroupRingElement {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), c.conj()))
            .collect();
        GroupRingElement {
            degree: self.degree,
            terms,
        }
    }

    /// `ā* `: conjugated coefficients attached to inverse permutations.
    pub fn bar_star(&self) -> GroupRingElement {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.inverse(), c.conj()))
            .collect();
        GroupRingElement {
            degree: self.degree,
            terms,
        }
    }

    /// Property (S): `ā* = a`.
    pub fn has_property_s(&self) -> bool {
        self.equals(&self.bar_star())
    }

    /// Exact equality in exact mode; floating terms compare with tolerance.
    pub fn equals(&self, other: &GroupRingElement) -> bool {
        if self.degree != other.degree {
            return false;
        }
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// Essential idempotency test: returns `Some(κ)` with `a·a = κ·a`
    /// (`κ = 0` marks `a·a = 0`), `None` if the square is not proportional.
    pub fn essential_idempotency(&self) -> Option<Coefficient> {
        assert!(!self.is_zero(), "essential idempotency of zero element");
        let sq = self.multiply(self).expect("degrees match");
        if sq.is_zero() {
            return Some(Coefficient::zero());
        }
        let (p0, c0) = self.leading_term().expect("nonzero");
        let kappa = sq.coeff(p0) / c0.clone();
        if sq.equals(&self.scale(&kappa)) {
            Some(kappa)
        } else {
            None
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self.multiply(self) {
            Ok(sq) => sq.equals(self),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("({c})·[{p}]"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
