//! Irreducible characters of `S_N` (Murnaghan–Nakayama), character
//! idempotents for subgroups, central idempotents `z_λ`, and commutation
//! symmetries.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElement;
use crate::partition::Partition;
use crate::perm::Permutation;

static CHARACTER_CACHE: OnceLock<Mutex<HashMap<(Vec<u8>, Vec<u8>), i64>>> = OnceLock::new();

fn mn_recursive(shape: &[u8], cycles: &[u8]) -> i64 {
    if cycles.is_empty() {
        return 1;
    }
    let key = (shape.to_vec(), cycles.to_vec());
    let cache = CHARACTER_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&key) {
        return v;
    }
    let strip = cycles[0] as usize;
    let rest = &cycles[1..];
    let mut total = 0i64;
    // Remove every border strip of length `strip`: one per cell whose hook
    // length equals `strip`.
    for r in 0..shape.len() {
        for c in 0..shape[r] as usize {
            let arm = shape[r] as usize - c - 1;
            let leg = shape[r + 1..].iter().filter(|&&p| p as usize > c).count();
            if arm + leg + 1 != strip {
                continue;
            }
            let mut reduced: Vec<u8> = shape.to_vec();
            for i in r..r + leg {
                reduced[i] = shape[i + 1] - 1;
            }
            reduced[r + leg] = c as u8;
            while let Some(&0) = reduced.last() {
                reduced.pop();
            }
            let sign = if leg % 2 == 0 { 1 } else { -1 };
            total += sign * mn_recursive(&reduced, rest);
        }
    }
    cache.lock().unwrap().insert(key, total);
    total
}

/// Irreducible character value `χ_λ` on the cycle type `μ`.
pub fn character_value(shape: &Partition, cycle_type: &[u8]) -> i64 {
    debug_assert_eq!(shape.n(), cycle_type.iter().map(|&c| c as usize).sum::<usize>());
    mn_recursive(shape.parts(), cycle_type)
}

/// Irreducible character of the full symmetric group evaluated at `p`.
pub fn character_snn(shape: &Partition, p: &Permutation) -> i64 {
    assert_eq!(shape.n(), p.degree(), "degree mismatch");
    character_value(shape, &p.cycle_type())
}

/// The centrally primitive idempotent `z_λ = (d_λ/N!) Σ_p χ_λ(p) p`.
pub fn central_idempotent(shape: &Partition) -> GroupRingElement {
    let n = shape.n();
    let fact: i64 = (1..=n as i64).product();
    let d = shape.dimension() as i64;
    let scale = Coefficient::from_ratio(d, fact);
    let terms = Permutation::all(n).into_iter().filter_map(|p| {
        let chi = character_snn(shape, &p);
        if chi == 0 {
            None
        } else {
            Some((p, scale.mul_int(chi)))
        }
    });
    GroupRingElement::from_terms(n, terms).expect("degrees match")
}

/// A character table row for a subgroup `G ⊆ S_N`: the group elements with
/// one character value each.
#[derive(Clone)]
pub struct CharacterTable {
    degree: usize,
    elements: Vec<Permutation>,
    values: Vec<Coefficient>,
}

impl CharacterTable {
    /// Validates that `elements` form a group and that the values are a class
    /// function with positive integer value at the identity.
    pub fn new(elements: Vec<Permutation>, values: Vec<Coefficient>) -> Result<Self> {
        if elements.is_empty() || elements.len() != values.len() {
            return Err(Error::InvalidInput(
                "character table needs one value per group element".into(),
            ));
        }
        let degree = elements[0].degree();
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::NotAGroup("duplicate elements".into()));
        }
        if !index.contains_key(&Permutation::identity(degree)) {
            return Err(Error::NotAGroup("missing identity".into()));
        }
        for p in &elements {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
            for q in &elements {
                if !index.contains_key(&p.compose(q)?) {
                    return Err(Error::NotAGroup(format!("not closed: [{p}]∘[{q}]")));
                }
            }
        }
        let table = CharacterTable {
            degree,
            elements,
            values,
        };
        let id_val = table.value(&Permutation::identity(degree)).unwrap();
        let (re, im) = id_val.exact_parts().map_err(|_| Error::NotClassFunction)?;
        if !im.is_zero() || !re.is_integer() || *re <= num_rational::BigRational::from_integer(0.into())
        {
            return Err(Error::NotClassFunction);
        }
        // Class function check: χ(g h g^{-1}) = χ(h) for all g, h ∈ G.
        for g in &table.elements {
            let ginv = g.inverse();
            for (h, v) in table.elements.iter().zip(&table.values) {
                let conj = g.compose(h)?.compose(&ginv)?;
                let w = table.value(&conj).ok_or_else(|| Error::NotAGroup("not closed".into()))?;
                if !w.equals(v) {
                    return Err(Error::NotClassFunction);
                }
            }
        }
        Ok(table)
    }

    /// Character table of the irreducible `χ_λ` restricted to all of `S_N`.
    pub fn symmetric_group(shape: &Partition) -> Self {
        let n = shape.n();
        let elements = Permutation::all(n);
        let values = elements
            .iter()
            .map(|p| Coefficient::from_integer(character_snn(shape, p)))
            .collect();
        CharacterTable {
            degree: n,
            elements,
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn value(&self, p: &Permutation) -> Option<&Coefficient> {
        self.elements
            .iter()
            .position(|q| q == p)
            .map(|i| &self.values[i])
    }
}

/// The idempotent `(χ(id)/|G|) Σ_{p∈G} χ(p) p`.
pub fn character_idempotent(table: &CharacterTable) -> GroupRingElement {
    let id_val = table
        .value(&Permutation::identity(table.degree()))
        .expect("validated table contains the identity")
        .clone();
    let scale = id_val.mul_int(1) * Coefficient::from_ratio(1, table.order() as i64);
    let terms = table
        .elements
        .iter()
        .zip(&table.values)
        .map(|(p, v)| (p.clone(), v.clone() * scale.clone()));
    GroupRingElement::from_terms(table.degree(), terms).expect("degrees match")
}

/// A commutation symmetry `(C, ε)`: a subgroup with a unit-modulus
/// homomorphism, validated on construction.
#[derive(Clone)]
pub struct CommutationSymmetry {
    degree: usize,
    elements: Vec<Permutation>,
    epsilon: Vec<Coefficient>,
}

impl CommutationSymmetry {
    /// Closes the generated group and extends ε multiplicatively; fails if
    /// the assignment is inconsistent or not unit-modulus.
    pub fn from_generators(generators: Vec<(Permutation, Coefficient)>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("no generators".into()));
        }
        let degree = generators[0].0.degree();
        for (p, v) in &generators {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
            if !v.norm_sqr().is_one() {
                return Err(Error::NotAHomomorphism(format!("|ε([{p}])| ≠ 1")));
            }
        }
        let mut eps: HashMap<Permutation, Coefficient> = HashMap::new();
        eps.insert(Permutation::identity(degree), Coefficient::one());
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(g) = frontier.pop() {
            let vg = eps[&g].clone();
            for (s, vs) in &generators {
                let h = s.compose(&g)?;
                let vh = vs.clone() * vg.clone();
                match eps.get(&h) {
                    Some(existing) => {
                        if !existing.equals(&vh) {
                            return Err(Error::NotAHomomorphism(format!(
                                "inconsistent value at [{h}]"
                            )));
                        }
                    }
                    None => {
                        eps.insert(h.clone(), vh);
                        frontier.push(h);
                    }
                }
            }
        }
        let mut elements: Vec<Permutation> = eps.keys().cloned().collect();
        elements.sort();
        let epsilon = elements.iter().map(|p| eps[p].clone()).collect();
        let cs = CommutationSymmetry {
            degree,
            elements,
            epsilon,
        };
        cs.validate()?;
        Ok(cs)
    }

    pub fn from_table(elements: Vec<Permutation>, epsilon: Vec<Coefficient>) -> Result<Self> {
        if elements.is_empty() || elements.len() != epsilon.len() {
            return Err(Error::InvalidInput("need one ε value per element".into()));
        }
        let degree = elements[0].degree();
        let cs = CommutationSymmetry {
            degree,
            elements,
            epsilon,
        };
        cs.validate()?;
        Ok(cs)
    }

    fn validate(&self) -> Result<()> {
        let index: HashMap<&Permutation, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let id_idx = *index
            .get(&Permutation::identity(self.degree))
            .ok_or_else(|| Error::NotAGroup("missing identity".into()))?;
        if !self.epsilon[id_idx].is_one() {
            return Err(Error::NotAHomomorphism("ε(id) ≠ 1".into()));
        }
        for (i, p) in self.elements.iter().enumerate() {
            if !self.epsilon[i].norm_sqr().is_one() {
                return Err(Error::NotAHomomorphism(format!("|ε([{p}])| ≠ 1")));
            }
            for (j, q) in self.elements.iter().enumerate() {
                let pq = p.compose(q)?;
                let k = *index
                    .get(&pq)
                    .ok_or_else(|| Error::NotAGroup(format!("not closed: [{p}]∘[{q}]")))?;
                let prod = self.epsilon[i].clone() * self.epsilon[j].clone();
                if !self.epsilon[k].equals(&prod) {
                    return Err(Error::NotAHomomorphism(format!(
                        "ε([{p}]∘[{q}]) ≠ ε([{p}])·ε([{q}])"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn epsilon(&self, p: &Permutation) -> Option<&Coefficient> {
        self.elements
            .iter()
            .position(|q| q == p)
            .map(|i| &self.epsilon[i])
    }
}

/// The idempotent `ε = (1/|C|) Σ_{c∈C} ε(c) c`.
pub fn commutation_idempotent(cs: &CommutationSymmetry) -> GroupRingElement {
    let scale = Coefficient::from_ratio(1, cs.order() as i64);
    let terms = cs
        .elements
        .iter()
        .zip(&cs.epsilon)
        .map(|(p, v)| (p.clone(), v.clone() * scale.clone()));
    GroupRingElement::from_terms(cs.degree, terms).expect("degrees match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coefficient as C;

    fn perm(v: &[u8]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    fn lam(parts: &[u8]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn character_at_identity_is_dimension() {
        for n in 1..=6 {
            for shape in Partition::all(n) {
                let id = Permutation::identity(n);
                assert_eq!(
                    character_snn(&shape, &id),
                    shape.dimension() as i64,
                    "shape {shape}"
                );
            }
        }
    }

    #[test]
    fn sign_character() {
        for n in 2..=5 {
            let shape = Partition::new(vec![1; n]).unwrap();
            for p in Permutation::all(n) {
                assert_eq!(character_snn(&shape, &p), p.sign());
            }
        }
    }

    #[test]
    fn conjugate_twists_by_sign() {
        for shape in Partition::all(5) {
            let conj = shape.conjugate();
            for p in Permutation::all(5) {
                assert_eq!(
                    character_snn(&conj, &p),
                    p.sign() * character_snn(&shape, &p)
                );
            }
        }
    }

    #[test]
    fn s2_character_idempotents() {
        let s2 = vec![Permutation::identity(2), perm(&[2, 1])];
        let trivial = CharacterTable::new(s2.clone(), vec![C::one(), C::one()]).unwrap();
        let e = character_idempotent(&trivial);
        let expected = GroupRingElement::from_terms(
            2,
            vec![
                (Permutation::identity(2), C::from_ratio(1, 2)),
                (perm(&[2, 1]), C::from_ratio(1, 2)),
            ],
        )
        .unwrap();
        assert!(e.equals(&expected));

        let sign = CharacterTable::new(s2, vec![C::one(), -C::one()]).unwrap();
        let e = character_idempotent(&sign);
        let expected = GroupRingElement::from_terms(
            2,
            vec![
                (Permutation::identity(2), C::from_ratio(1, 2)),
                (perm(&[2, 1]), -C::from_ratio(1, 2)),
            ],
        )
        .unwrap();
        assert!(e.equals(&expected));
    }

    #[test]
    fn central_idempotents_sum_and_orthogonality() {
        for n in 2..=5 {
            let zs: Vec<GroupRingElement> =
                Partition::all(n).iter().map(central_idempotent).collect();
            let mut sum = GroupRingElement::zero(n);
            for z in &zs {
                assert!(z.is_idempotent());
                assert!(z.has_property_s());
                sum = sum.add(z).unwrap();
            }
            assert!(sum.equals(&GroupRingElement::identity(n)));
            if n <= 4 {
                for (i, a) in zs.iter().enumerate() {
                    for (j, b) in zs.iter().enumerate() {
                        let prod = a.multiply(b).unwrap();
                        if i == j {
                            assert!(prod.equals(a));
                        } else {
                            assert!(prod.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn z41_identity_coefficient() {
        let z = central_idempotent(&lam(&[4, 1]));
        assert_eq!(
            z.coeff(&Permutation::identity(5)),
            C::from_ratio(2, 15)
        );
    }

    #[test]
    fn centrality_of_z() {
        for shape in Partition::all(4) {
            let z = central_idempotent(&shape);
            for p in Permutation::all(4) {
                let b = GroupRingElement::basis(p);
                assert!(b.multiply(&z).unwrap().equals(&z.multiply(&b).unwrap()));
            }
        }
    }

    #[test]
    fn bar_star_fixes_central_idempotents() {
        for n in 2..=5 {
            for shape in Partition::all(n) {
                let z = central_idempotent(&shape);
                assert!(z.bar_star().equals(&z));
            }
        }
    }

    #[test]
    fn cyclic_gaussian_commutation_symmetry() {
        // 4-cycle with ε = i on the generator.
        let cs = CommutationSymmetry::from_generators(vec![(perm(&[2, 3, 4, 1]), C::i())]).unwrap();
        assert_eq!(cs.order(), 4);
        let e = commutation_idempotent(&cs);
        assert!(e.is_idempotent());
        assert!(e.has_property_s());
    }

    #[test]
    fn degenerate_and_sign_commutation_symmetries() {
        let cs = CommutationSymmetry::from_generators(vec![(
            Permutation::identity(3),
            C::one(),
        )])
        .unwrap();
        assert!(commutation_idempotent(&cs).equals(&GroupRingElement::identity(3)));

        let cs =
            CommutationSymmetry::from_generators(vec![(perm(&[2, 1]), -C::one())]).unwrap();
        let e = commutation_idempotent(&cs);
        let expected = GroupRingElement::from_terms(
            2,
            vec![
                (Permutation::identity(2), C::from_ratio(1, 2)),
                (perm(&[2, 1]), -C::from_ratio(1, 2)),
            ],
        )
        .unwrap();
        assert!(e.equals(&expected));
    }

    #[test]
    fn rejects_non_homomorphism() {
        // ε(swap) = i has order 4 but the swap has order 2.
        assert!(CommutationSymmetry::from_generators(vec![(perm(&[2, 1]), C::i())]).is_err());
        // Non-unit modulus.
        assert!(
            CommutationSymmetry::from_generators(vec![(perm(&[2, 1]), C::from_integer(2))])
                .is_err()
        );
    }

    #[test]
    fn rejects_non_class_function() {
        let s3 = Permutation::all(3);
        let mut values = vec![C::one(); 6];
        values[1] = -C::one(); // transpositions split inconsistently
        assert!(CharacterTable::new(s3, values).is_err());
    }
}
