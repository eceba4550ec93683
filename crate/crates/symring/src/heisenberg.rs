//! The ring-model Hilbert space: spin configurations, the permutation
//! action and symmetry-operator action, the annihilator ideal J_0,
//! symmetry-class membership, and the spin-1/2 Heisenberg Hamiltonians
//! with periodic boundary conditions.

use std::collections::BTreeMap;

use crate::coeff::Coefficient;
use crate::dft::dft;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElement;
use crate::matrix::CMatrix;
use crate::partition::Partition;
use crate::perm::Permutation;

/// One basis ket `|σ(1),…,σ(N)⟩` with letters in `1..=K`.
///
/// For K = 2 the convention is 2 = spin up, 1 = spin down.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SpinConfiguration {
    letters: u8,
    values: Vec<u8>,
}

impl SpinConfiguration {
    pub fn new(letters: u8, values: Vec<u8>) -> Result<Self> {
        if letters == 0 {
            return Err(Error::InvalidInput("need at least one letter".into()));
        }
        if values.is_empty() {
            return Err(Error::InvalidInput("need at least one site".into()));
        }
        if values.iter().any(|&v| v == 0 || v > letters) {
            return Err(Error::InvalidInput(format!(
                "spin values must lie in 1..={letters}"
            )));
        }
        Ok(SpinConfiguration { letters, values })
    }

    pub fn sites(&self) -> usize {
        self.values.len()
    }

    pub fn letters(&self) -> u8 {
        self.letters
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// σ(i), with 1-based site index.
    pub fn value(&self, i: usize) -> u8 {
        self.values[i - 1]
    }
}

impl std::fmt::Display for SpinConfiguration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All K^N configurations in lexicographic order of their value sequences.
pub fn all_configurations(sites: usize, letters: u8) -> Vec<SpinConfiguration> {
    let mut out = Vec::new();
    let mut values = vec![1u8; sites];
    loop {
        out.push(SpinConfiguration {
            letters,
            values: values.clone(),
        });
        let mut i = sites;
        loop {
            if i == 0 {
                return out;
            }
            if values[i - 1] < letters {
                values[i - 1] += 1;
                for v in &mut values[i..] {
                    *v = 1;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Sparse vector in the K^N-dimensional Hilbert space.
#[derive(Clone)]
pub struct HilbertVector {
    sites: usize,
    letters: u8,
    terms: BTreeMap<SpinConfiguration, Coefficient>,
}

impl HilbertVector {
    pub fn zero(sites: usize, letters: u8) -> Self {
        HilbertVector {
            sites,
            letters,
            terms: BTreeMap::new(),
        }
    }

    pub fn ket(sigma: SpinConfiguration) -> Self {
        let mut v = HilbertVector::zero(sigma.sites(), sigma.letters());
        v.terms.insert(sigma, Coefficient::one());
        v
    }

    pub fn from_terms<I>(sites: usize, letters: u8, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SpinConfiguration, Coefficient)>,
    {
        let mut v = HilbertVector::zero(sites, letters);
        for (sigma, c) in iter {
            if sigma.sites() != sites || sigma.letters() != letters {
                return Err(Error::SizeMismatch(format!(
                    "ket over {} sites / {} letters in a {}-site / {}-letter space",
                    sigma.sites(),
                    sigma.letters(),
                    sites,
                    letters
                )));
            }
            v.add_term(sigma, c);
        }
        Ok(v)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn letters(&self) -> u8 {
        self.letters
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SpinConfiguration, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, sigma: &SpinConfiguration) -> Coefficient {
        self.terms.get(sigma).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, sigma: SpinConfiguration, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(sigma) {
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

    pub fn add(&self, other: &HilbertVector) -> Result<HilbertVector> {
        self.space_check(other)?;
        let mut out = self.clone();
        for (sigma, c) in &other.terms {
            out.add_term(sigma.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HilbertVector) -> Result<HilbertVector> {
        self.add(&other.scale(&Coefficient::from_integer(-1)))
    }

    pub fn scale(&self, k: &Coefficient) -> HilbertVector {
        if k.is_zero() {
            return HilbertVector::zero(self.sites, self.letters);
        }
        HilbertVector {
            sites: self.sites,
            letters: self.letters,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), c * k))
                .collect(),
        }
    }

    /// `⟨self|other⟩ = Σ_σ self_σ · conj(other_σ)`, antilinear in `other`.
    pub fn inner(&self, other: &HilbertVector) -> Result<Coefficient> {
        self.space_check(other)?;
        let mut acc = Coefficient::zero();
        for (sigma, c) in &self.terms {
            if let Some(d) = other.terms.get(sigma) {
                acc = acc + c.clone() * d.conj();
            }
        }
        Ok(acc)
    }

    pub fn equals(&self, other: &HilbertVector) -> bool {
        self.sites == other.sites
            && self.letters == other.letters
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((s, c), (t, d))| s == t && c.equals(d))
    }

    fn space_check(&self, other: &HilbertVector) -> Result<()> {
        if self.sites != other.sites || self.letters != other.letters {
            return Err(Error::SizeMismatch(format!(
                "{} sites / {} letters vs {} sites / {} letters",
                self.sites, self.letters, other.sites, other.letters
            )));
        }
        Ok(())
    }
}

/// `p|σ⟩ = |σ∘p⁻¹⟩`: site `i` of the result carries `σ(p⁻¹(i))`.
pub fn permute_ket(p: &Permutation, sigma: &SpinConfiguration) -> Result<SpinConfiguration> {
    if p.degree() != sigma.sites() {
        return Err(Error::DegreeMismatch(p.degree(), sigma.sites()));
    }
    let pinv = p.inverse();
    let values = (1..=sigma.sites())
        .map(|i| sigma.value(pinv.image(i)))
        .collect();
    Ok(SpinConfiguration {
        letters: sigma.letters(),
        values,
    })
}

/// The symmetry-operator action `a·w = Σ_p Σ_σ a_p w_σ |σ∘p⁻¹⟩`.
pub fn apply_operator(a: &GroupRingElement, w: &HilbertVector) -> Result<HilbertVector> {
    if a.degree() != w.sites() {
        return Err(Error::DegreeMismatch(a.degree(), w.sites()));
    }
    let mut out = HilbertVector::zero(w.sites(), w.letters());
    for (p, c) in a.terms() {
        for (sigma, wc) in w.terms() {
            out.add_term(permute_ket(p, sigma)?, c * wc);
        }
    }
    Ok(out)
}

/// Matrix of `apply_operator(a, ·)` in the lexicographic basis of kets.
pub fn operator_matrix(a: &GroupRingElement, letters: u8) -> Result<CMatrix> {
    let basis = all_configurations(a.degree(), letters);
    let index: BTreeMap<&SpinConfiguration, usize> =
        basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let dim = basis.len();
    let mut m = CMatrix::zero(dim, dim);
    for (j, sigma) in basis.iter().enumerate() {
        let image = apply_operator(a, &HilbertVector::ket(sigma.clone()))?;
        for (tau, c) in image.terms() {
            m[(index[tau], j)] = c.clone();
        }
    }
    Ok(m)
}

/// Membership in the annihilator ideal J_0, decided spectrally: `a`
/// annihilates the K-letter space iff every block with at most K rows
/// vanishes (blocks with more rows always act as zero).
pub fn in_annihilator(a: &GroupRingElement, letters: u8) -> bool {
    let spectrum = dft(a);
    let in_ideal = spectrum
        .nonzero_blocks()
        .all(|(shape, block)| shape.num_rows() > letters as usize || block.is_zero());
    in_ideal
}

/// Brute-force J_0 oracle: applies `a` to every basis ket.
pub fn in_annihilator_bruteforce(a: &GroupRingElement, letters: u8) -> bool {
    all_configurations(a.degree(), letters)
        .into_iter()
        .all(|sigma| {
            apply_operator(a, &HilbertVector::ket(sigma))
                .expect("degrees match")
                .is_zero()
        })
}

/// Whether `u` lies in the symmetry class of the idempotent `e`,
/// i.e. `e·u = u`.
pub fn symmetry_class_contains(e: &GroupRingElement, u: &HilbertVector) -> Result<bool> {
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(apply_operator(e, u)?.equals(u))
}

/// Sum of the central idempotents of all shapes with more than K rows;
/// generates J_0, and `id − f_0` acts as the identity on the space.
pub fn f0(n: usize, letters: u8) -> GroupRingElement {
    let mut acc = GroupRingElement::zero(n);
    for shape in Partition::all(n) {
        if shape.num_rows() > letters as usize {
            acc = acc
                .add(&crate::characters::central_idempotent(&shape))
                .expect("degrees match");
        }
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CouplingSign {
    Ferro,
    Antiferro,
}

impl std::str::FromStr for CouplingSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ferro" => Ok(CouplingSign::Ferro),
            "antiferro" => Ok(CouplingSign::Antiferro),
            other => Err(Error::Parse(format!(
                "unknown coupling sign `{other}` (want ferro|antiferro)"
            ))),
        }
    }
}

/// Heisenberg ring Hamiltonian over the 2^N ket basis, periodic bonds
/// k → k+1 for k = 1..N with site N+1 identified with site 1:
///
///   H_F = −J Σ_k [½(S_k⁺ S_{k+1}⁻ + S_k⁻ S_{k+1}⁺) + S_kᶻ S_{k+1}ᶻ]
///
/// with Sᶻ|↑⟩ = +½|↑⟩, Sᶻ|↓⟩ = −½|↓⟩, and H_A = −H_F.
pub fn hamiltonian_matrix(
    sites: usize,
    coupling: &Coefficient,
    sign: CouplingSign,
) -> Result<CMatrix> {
    if sites < 2 {
        return Err(Error::InvalidInput("need at least two sites".into()));
    }
    let basis = all_configurations(sites, 2);
    let index: BTreeMap<&SpinConfiguration, usize> =
        basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let dim = basis.len();
    let quarter = Coefficient::from_ratio(1, 4);
    let half = Coefficient::from_ratio(1, 2);
    let mut m = CMatrix::zero(dim, dim);
    for (j, sigma) in basis.iter().enumerate() {
        for k in 0..sites {
            let a = sigma.values[k];
            let b = sigma.values[(k + 1) % sites];
            if a == b {
                let cur = std::mem::replace(&mut m[(j, j)], Coefficient::zero());
                m[(j, j)] = cur + quarter.clone();
            } else {
                let cur = std::mem::replace(&mut m[(j, j)], Coefficient::zero());
                m[(j, j)] = cur - quarter.clone();
                let mut flipped = sigma.values.clone();
                flipped.swap(k, (k + 1) % sites);
                let tau = SpinConfiguration {
                    letters: 2,
                    values: flipped,
                };
                let i = index[&tau];
                let cur = std::mem::replace(&mut m[(i, j)], Coefficient::zero());
                m[(i, j)] = cur + half.clone();
            }
        }
    }
    let factor = match sign {
        CouplingSign::Ferro => -coupling.clone(),
        CouplingSign::Antiferro => coupling.clone(),
    };
    Ok(m.scale(&factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::central_idempotent;
    use crate::coeff::Coefficient as C;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn conf(letters: u8, values: &[u8]) -> SpinConfiguration {
        SpinConfiguration::new(letters, values.to_vec()).unwrap()
    }

    fn random_vector(rng: &mut impl Rng, sites: usize, letters: u8) -> HilbertVector {
        let basis = all_configurations(sites, letters);
        let mut v = HilbertVector::zero(sites, letters);
        for sigma in basis {
            if rng.gen_bool(0.5) {
                let re = rng.gen_range(-4i64..=4);
                let im = rng.gen_range(-4i64..=4);
                let c = C::from_integer(re) + C::i() * C::from_integer(im);
                v.add_term(sigma, c);
            }
        }
        v
    }

    fn symmetrizer(n: usize) -> GroupRingElement {
        let fact: i64 = (1..=n as i64).product();
        GroupRingElement::from_terms(
            n,
            Permutation::all(n)
                .into_iter()
                .map(|p| (p, C::from_ratio(1, fact))),
        )
        .unwrap()
    }

    fn antisymmetrizer(n: usize) -> GroupRingElement {
        let fact: i64 = (1..=n as i64).product();
        GroupRingElement::from_terms(
            n,
            Permutation::all(n)
                .into_iter()
                .map(|p| (p.clone(), C::from_ratio(p.sign(), fact))),
        )
        .unwrap()
    }

    #[test]
    fn permute_swaps_sites() {
        let p = Permutation::from_images(vec![2, 1]).unwrap();
        let sigma = conf(2, &[2, 1]);
        assert_eq!(permute_ket(&p, &sigma).unwrap(), conf(2, &[1, 2]));
        let id = Permutation::identity(2);
        assert_eq!(permute_ket(&id, &sigma).unwrap(), sigma);
    }

    #[test]
    fn action_respects_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let perms = Permutation::all(4);
        for _ in 0..100 {
            let p = &perms[rng.gen_range(0..perms.len())];
            let q = &perms[rng.gen_range(0..perms.len())];
            let values: Vec<u8> = (0..4).map(|_| rng.gen_range(1..=3u8)).collect();
            let sigma = conf(3, &values);
            let lhs = permute_ket(p, &permute_ket(q, &sigma).unwrap()).unwrap();
            let rhs = permute_ket(&p.compose(q).unwrap(), &sigma).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn operator_action_is_module_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..30 {
            let a = crate::verify::random_element(&mut rng, 3, 4);
            let b = crate::verify::random_element(&mut rng, 3, 4);
            let w = random_vector(&mut rng, 3, 2);
            let lhs = apply_operator(&a, &apply_operator(&b, &w).unwrap()).unwrap();
            let rhs = apply_operator(&a.multiply(&b).unwrap(), &w).unwrap();
            assert!(lhs.equals(&rhs));
        }
    }

    #[test]
    fn antisymmetrizer_annihilates_two_letter_space() {
        let e = antisymmetrizer(3);
        for sigma in all_configurations(3, 2) {
            let out = apply_operator(&e, &HilbertVector::ket(sigma)).unwrap();
            assert!(out.is_zero());
        }
        assert!(in_annihilator(&e, 2));
        assert!(in_annihilator_bruteforce(&e, 2));
        assert!(!in_annihilator(&e, 3));
        assert!(!in_annihilator(&GroupRingElement::identity(3), 1));
    }

    #[test]
    fn adjointness() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let a = crate::verify::random_element(&mut rng, 4, 5);
            let u = random_vector(&mut rng, 4, 2);
            let v = random_vector(&mut rng, 4, 2);
            let lhs = apply_operator(&a, &u).unwrap().inner(&v).unwrap();
            let rhs = u
                .inner(&apply_operator(&a.bar_star(), &v).unwrap())
                .unwrap();
            assert!(lhs.equals(&rhs));
        }
    }

    #[test]
    fn spectral_annihilator_matches_bruteforce() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for n in 3..=4 {
            for letters in [2u8, 3] {
                for _ in 0..25 {
                    // Mix plain random elements with random multiples of
                    // f_0, which genuinely land in J_0.
                    let a = if rng.gen_bool(0.5) {
                        crate::verify::random_element(&mut rng, n, 4)
                    } else {
                        let m = crate::verify::random_element(&mut rng, n, 3);
                        m.multiply(&f0(n, letters)).unwrap()
                    };
                    assert_eq!(
                        in_annihilator(&a, letters),
                        in_annihilator_bruteforce(&a, letters),
                        "n={n} K={letters}"
                    );
                }
            }
        }
    }

    #[test]
    fn f0_splits_identity() {
        for (n, letters) in [(3usize, 2u8), (4, 2), (4, 3)] {
            let f = f0(n, letters);
            assert!(in_annihilator(&f, letters));
            assert!(in_annihilator_bruteforce(&f, letters));
            let rest = GroupRingElement::identity(n).sub(&f).unwrap();
            for sigma in all_configurations(n, letters) {
                let ket = HilbertVector::ket(sigma);
                assert!(apply_operator(&rest, &ket).unwrap().equals(&ket));
            }
        }
    }

    #[test]
    fn annihilator_closed_under_involutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..50 {
            let m = crate::verify::random_element(&mut rng, 4, 3);
            let a = m.multiply(&f0(4, 2)).unwrap();
            assert!(in_annihilator(&a, 2));
            assert!(in_annihilator(&a.conj(), 2));
            assert!(in_annihilator(&a.star(), 2));
            assert!(in_annihilator(&a.bar_star(), 2));
        }
    }

    #[test]
    fn symmetry_class_membership() {
        let e = symmetrizer(2);
        let ones = HilbertVector::from_terms(
            2,
            2,
            all_configurations(2, 2)
                .into_iter()
                .map(|s| (s, C::one())),
        )
        .unwrap();
        assert!(symmetry_class_contains(&e, &ones).unwrap());
        let anti = HilbertVector::ket(conf(2, &[2, 1]))
            .sub(&HilbertVector::ket(conf(2, &[1, 2])))
            .unwrap();
        assert!(!symmetry_class_contains(&e, &anti).unwrap());
        let not_idem = e.scale(&C::from_integer(2));
        assert!(matches!(
            symmetry_class_contains(&not_idem, &ones),
            Err(Error::NotIdempotent)
        ));
    }

    #[test]
    fn projection_lands_in_class() {
        // Projecting random vectors with the central idempotent of (3,1)
        // must land in its symmetry class.
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let z = central_idempotent(&Partition::new(vec![3, 1]).unwrap());
        for _ in 0..20 {
            let u = random_vector(&mut rng, 4, 2);
            let pu = apply_operator(&z, &u).unwrap();
            assert!(symmetry_class_contains(&z, &pu).unwrap());
        }
    }

    #[test]
    fn property_s_operators_are_hermitian_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let a = crate::verify::random_element(&mut rng, 4, 5);
            let s = a.add(&a.bar_star()).unwrap();
            assert!(s.has_property_s());
            let m = operator_matrix(&s, 2).unwrap();
            assert!(m.equals(&m.transpose().conj()));
        }
    }

    #[test]
    fn two_site_hamiltonian() {
        let j = C::one();
        let h = hamiltonian_matrix(2, &j, CouplingSign::Ferro).unwrap();
        // basis order: (1,1), (1,2), (2,1), (2,2); up-up is the last ket
        assert_eq!(h[(3, 3)], C::from_ratio(-1, 2));
        assert_eq!(h[(0, 0)], C::from_ratio(-1, 2));
        assert_eq!(h[(1, 1)], C::from_ratio(1, 2));
        assert_eq!(h[(1, 2)], C::from_integer(-1));
        let ha = hamiltonian_matrix(2, &j, CouplingSign::Antiferro).unwrap();
        assert!(ha.equals(&h.scale(&C::from_integer(-1))));
    }

    #[test]
    fn hamiltonian_hermitian_up_to_six_sites() {
        let j = C::from_ratio(3, 2);
        for n in 2..=6 {
            let h = hamiltonian_matrix(n, &j, CouplingSign::Ferro).unwrap();
            assert!(h.equals(&h.transpose()));
            let ha = hamiltonian_matrix(n, &j, CouplingSign::Antiferro).unwrap();
            assert!(ha.add(&h).unwrap().is_zero());
        }
    }

    #[test]
    fn configuration_enumeration() {
        let all = all_configurations(2, 2);
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], conf(2, &[1, 1]));
        assert_eq!(all[3], conf(2, &[2, 2]));
        assert_eq!(all_configurations(5, 3).len(), 243);
    }
}
