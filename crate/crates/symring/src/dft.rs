//! Young's natural representation as the discrete Fourier transform on
//! `C[S_N]`: per-partition integer matrices, forward transform, block
//! spectra and the exact trace-formula inverse.
//!
//! The representation is realized on the polytabloid basis of the Specht
//! module, indexed by standard tableaux in row-reading order. The matrix of
//! `p` is the transpose of the left-action matrix of `p^{-1}` on that basis;
//! this is the convention whose images match the published natural-DFT
//! matrices.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElement;
use crate::matrix::CMatrix;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::tableau::{standard_tableaux, StandardTableau};

/// Small dense integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub(crate) fn row_major(&self) -> Vec<i64> {
        self.data.clone()
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let v = a
                        .checked_mul(b)
                        .and_then(|ab| cur.checked_add(ab))
                        .expect("integer overflow in representation matrix product");
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub(crate) fn to_cmatrix(&self) -> CMatrix {
        let mut out = CMatrix::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                if v != 0 {
                    out[(i, j)] = Coefficient::from_integer(v);
                }
            }
        }
        out
    }
}

/// The Specht module of one shape: standard-tableau basis, generator
/// matrices, and a cache of representation matrices per permutation.
pub struct SpechtModule {
    shape: Partition,
    n: usize,
    dim: usize,
    tableaux: Vec<StandardTableau>,
    /// Left-action matrices of the adjacent transpositions `s_1..s_{N-1}`.
    generator_mats: Vec<IntMatrix>,
    rep_cache: Mutex<HashMap<Permutation, Arc<IntMatrix>>>,
}

/// Row index of every value in a tabloid, i.e. the map `value -> row`.
type Tabloid = Vec<u8>;

struct TabloidSpace {
    index: HashMap<Tabloid, usize>,
    tabloids: Vec<Tabloid>,
}

impl TabloidSpace {
    fn build(shape: &Partition) -> Self {
        let n = shape.n();
        let rows = shape.num_rows();
        let mut tabloids = Vec::new();
        let mut cur: Tabloid = vec![0; n];
        let mut remaining: Vec<u8> = shape.parts().to_vec();
        fn rec(v: usize, n: usize, rows: usize, remaining: &mut Vec<u8>, cur: &mut Tabloid, out: &mut Vec<Tabloid>) {
            if v == n {
                out.push(cur.clone());
                return;
            }
            for r in 0..rows {
                if remaining[r] == 0 {
                    continue;
                }
                remaining[r] -= 1;
                cur[v] = r as u8;
                rec(v + 1, n, rows, remaining, cur, out);
                remaining[r] += 1;
            }
        }
        rec(0, n, rows, &mut remaining, &mut cur, &mut tabloids);
        let index = tabloids
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        TabloidSpace { index, tabloids }
    }

    fn len(&self) -> usize {
        self.tabloids.len()
    }
}

/// Expands the polytabloid of `t` as a dense integer vector over tabloids.
fn polytabloid(space: &TabloidSpace, t: &crate::tableau::Tableau) -> Vec<i64> {
    let n = t.n();
    let mut base: Tabloid = vec![0; n];
    for (r, row) in t.rows().iter().enumerate() {
        for &v in row {
            base[v as usize - 1] = r as u8;
        }
    }
    let columns: Vec<Vec<u8>> = (0..t.num_columns()).map(|c| t.column(c)).collect();
    let mut out = vec![0i64; space.len()];
    // Iterate the column group as the product of per-column symmetric groups.
    fn rec(
        columns: &[Vec<u8>],
        ci: usize,
        assignment: &mut Tabloid,
        sign: i64,
        space: &TabloidSpace,
        out: &mut Vec<i64>,
    ) {
        if ci == columns.len() {
            let idx = space.index[assignment];
            out[idx] += sign;
            return;
        }
        let col = &columns[ci];
        let k = col.len();
        let mut order: Vec<usize> = (0..k).collect();
        loop {
            let mut inv = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if order[a] > order[b] {
                        inv += 1;
                    }
                }
            }
            let s = if inv % 2 == 0 { 1 } else { -1 };
            // Place value col[order[r]] at row r of this column.
            for (r, &oi) in order.iter().enumerate() {
                assignment[col[oi] as usize - 1] = r as u8;
            }
            rec(columns, ci + 1, assignment, sign * s, space, out);
            // next permutation of `order`
            if !next_index_permutation(&mut order) {
                break;
            }
        }
        // restore base rows for this column
        for (r, &v) in col.iter().enumerate() {
            assignment[v as usize - 1] = r as u8;
        }
    }
    rec(&columns, 0, &mut base, 1, space, &mut out);
    out
}

fn next_index_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl SpechtModule {
    fn build(shape: &Partition) -> SpechtModule {
        let n = shape.n();
        let tableaux = standard_tableaux(shape);
        let dim = tableaux.len();
        let space = TabloidSpace::build(shape);
        let basis: Vec<Vec<i64>> = tableaux
            .iter()
            .map(|t| polytabloid(&space, t.tableau()))
            .collect();

        // Pick `dim` tabloid coordinates on which the basis is invertible.
        let mut pivot_rows: Vec<usize> = Vec::new();
        let mut reduced: Vec<Vec<Coefficient>> = Vec::new();
        let mut pivot_cols: Vec<usize> = Vec::new();
        for row_idx in 0..space.len() {
            if pivot_rows.len() == dim {
                break;
            }
            let mut row: Vec<Coefficient> = basis
                .iter()
                .map(|b| Coefficient::from_integer(b[row_idx]))
                .collect();
            for (r, &pc) in reduced.iter().zip(&pivot_cols) {
                if row[pc].is_zero() {
                    continue;
                }
                let factor = row[pc].clone();
                for j in 0..dim {
                    let delta = factor.clone() * r[j].clone();
                    let cur = std::mem::replace(&mut row[j], Coefficient::zero());
                    row[j] = cur - delta;
                }
            }
            if let Some(pc) = row.iter().position(|c| !c.is_zero()) {
                let pinv = row[pc].recip();
                for c in row.iter_mut() {
                    let v = std::mem::replace(c, Coefficient::zero());
                    *c = v * pinv.clone();
                }
                reduced.push(row);
                pivot_cols.push(pc);
                pivot_rows.push(row_idx);
            }
        }
        assert_eq!(
            pivot_rows.len(),
            dim,
            "standard polytabloids of {shape} are not independent"
        );
        let mut pivot_mat = CMatrix::zero(dim, dim);
        for (i, &ri) in pivot_rows.iter().enumerate() {
            for j in 0..dim {
                pivot_mat[(i, j)] = Coefficient::from_integer(basis[j][ri]);
            }
        }
        let solver = pivot_mat.inverse().expect("pivot submatrix is invertible");

        // Image of each basis polytabloid under s_k, expressed in the basis.
        let mut generator_mats = Vec::with_capacity(n.saturating_sub(1));
        for k in 1..n {
            let mut mat = IntMatrix::zero(dim);
            for (j, b) in basis.iter().enumerate() {
                // s_k acts on a tabloid by swapping the rows of k and k+1.
                let mut image = vec![0i64; space.len()];
                for (idx, &coef) in b.iter().enumerate() {
                    if coef == 0 {
                        continue;
                    }
                    let mut tab = space.tabloids[idx].clone();
                    tab.swap(k - 1, k);
                    image[space.index[&tab]] += coef;
                }
                let rhs: Vec<Coefficient> = pivot_rows
                    .iter()
                    .map(|&ri| Coefficient::from_integer(image[ri]))
                    .collect();
                let coords = solver.mul_vec(&rhs).expect("sizes match");
                for (i, c) in coords.iter().enumerate() {
                    let (re, im) = c.exact_parts().expect("exact arithmetic");
                    assert!(im.is_zero() && re.is_integer(), "non-integer structure constant");
                    let v: i64 = re.numer().try_into().expect("structure constant fits i64");
                    mat.set(i, j, v);
                }
            }
            generator_mats.push(mat);
        }

        SpechtModule {
            shape: shape.clone(),
            n,
            dim,
            tableaux,
            generator_mats,
            rep_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    /// The DFT matrix of `p`: transpose of the left action of `p^{-1}`.
    pub(crate) fn rep_int(&self, p: &Permutation) -> Arc<IntMatrix> {
        assert_eq!(p.degree(), self.n, "degree mismatch");
        if let Some(m) = self.rep_cache.lock().unwrap().get(p) {
            return m.clone();
        }
        let q = p.inverse();
        let mut acc = IntMatrix::identity(self.dim);
        for k in q.adjacent_factorization() {
            acc = self.generator_mats[k - 1].mul(&acc);
        }
        let m = Arc::new(acc.transpose());
        self.rep_cache
            .lock()
            .unwrap()
            .insert(p.clone(), m.clone());
        m
    }

    pub fn rep(&self, p: &Permutation) -> CMatrix {
        self.rep_int(p).to_cmatrix()
    }
}

static MODULES: OnceLock<Mutex<HashMap<(usize, Vec<u8>), Arc<SpechtModule>>>> = OnceLock::new();

/// Shared, lazily built Specht module for `shape`.
pub fn specht_module(shape: &Partition) -> Arc<SpechtModule> {
    let key = (shape.n(), shape.parts().to_vec());
    let registry = MODULES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = registry.lock().unwrap().get(&key) {
        return m.clone();
    }
    let built = Arc::new(SpechtModule::build(shape));
    registry
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(built)
        .clone()
}

/// `D_λ(p)` in Young's natural representation.
pub fn natural_rep(shape: &Partition, p: &Permutation) -> CMatrix {
    specht_module(shape).rep(p)
}

/// The block-diagonal DFT image: one `d_λ×d_λ` matrix per partition.
/// Absent blocks are zero.
#[derive(Clone)]
pub struct BlockSpectrum {
    degree: usize,
    blocks: BTreeMap<Partition, CMatrix>,
}

impl BlockSpectrum {
    pub fn zero(degree: usize) -> Self {
        BlockSpectrum {
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set_block(&mut self, shape: Partition, block: CMatrix) -> Result<()> {
        if shape.n() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, shape.n()));
        }
        let d = shape.dimension() as usize;
        if block.nrows() != d || block.ncols() != d {
            return Err(Error::SizeMismatch(format!(
                "block {shape} must be {d}x{d}"
            )));
        }
        if block.is_zero() {
            self.blocks.remove(&shape);
        } else {
            self.blocks.insert(shape, block);
        }
        Ok(())
    }

    pub fn block(&self, shape: &Partition) -> Option<&CMatrix> {
        self.blocks.get(shape)
    }

    pub fn block_or_zero(&self, shape: &Partition) -> CMatrix {
        let d = shape.dimension() as usize;
        self.blocks
            .get(shape)
            .cloned()
            .unwrap_or_else(|| CMatrix::zero(d, d))
    }

    pub fn nonzero_blocks(&self) -> impl Iterator<Item = (&Partition, &CMatrix)> {
        self.blocks.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }

    pub fn equals(&self, other: &BlockSpectrum) -> bool {
        if self.degree != other.degree {
            return false;
        }
        for shape in self.blocks.keys().chain(other.blocks.keys()) {
            if !self.block_or_zero(shape).equals(&other.block_or_zero(shape)) {
                return false;
            }
        }
        true
    }

    /// Blockwise product; blocks missing on either side vanish.
    pub fn mul(&self, other: &BlockSpectrum) -> Result<BlockSpectrum> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = BlockSpectrum::zero(self.degree);
        for (shape, a) in &self.blocks {
            if let Some(b) = other.blocks.get(shape) {
                out.set_block(shape.clone(), a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BlockSpectrum) -> Result<BlockSpectrum> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (shape, b) in &other.blocks {
            let sum = out.block_or_zero(shape).add(b)?;
            out.set_block(shape.clone(), sum)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BlockSpectrum) -> Result<BlockSpectrum> {
        self.add(&other.scale(&-Coefficient::one()))
    }

    pub fn scale(&self, k: &Coefficient) -> BlockSpectrum {
        if k.is_zero() {
            return BlockSpectrum::zero(self.degree);
        }
        BlockSpectrum {
            degree: self.degree,
            blocks: self
                .blocks
                .iter()
                .map(|(s, m)| (s.clone(), m.scale(k)))
                .collect(),
        }
    }

    pub fn conj(&self) -> BlockSpectrum {
        BlockSpectrum {
            degree: self.degree,
            blocks: self
                .blocks
                .iter()
                .map(|(s, m)| (s.clone(), m.conj()))
                .collect(),
        }
    }
}

/// Forward transform: `A_λ = Σ_p a_p D_λ(p)` for every `λ ⊢ N`.
pub fn dft(a: &GroupRingElement) -> BlockSpectrum {
    let n = a.degree();
    let mut out = BlockSpectrum::zero(n);
    for shape in Partition::all(n) {
        let module = specht_module(&shape);
        let d = module.dim();
        let mut block = CMatrix::zero(d, d);
        for (p, c) in a.terms() {
            let rep = module.rep_int(p);
            for i in 0..d {
                for j in 0..d {
                    let v = rep.get(i, j);
                    if v == 0 {
                        continue;
                    }
                    let cur = std::mem::replace(&mut block[(i, j)], Coefficient::zero());
                    block[(i, j)] = cur + c.mul_int(v);
                }
            }
        }
        out.set_block(shape, block).expect("sizes consistent");
    }
    out
}

/// Exact inverse transform via the trace formula
/// `a_p = (1/N!) Σ_λ d_λ tr(D_λ(p^{-1}) A_λ)`.
pub fn idft(spectrum: &BlockSpectrum) -> GroupRingElement {
    let n = spectrum.degree();
    let fact: i64 = (1..=n as i64).product();
    let inv_fact = Coefficient::from_ratio(1, fact);
    let shapes: Vec<(Partition, Arc<SpechtModule>)> = spectrum
        .nonzero_blocks()
        .map(|(s, _)| (s.clone(), specht_module(s)))
        .collect();
    let mut terms = Vec::new();
    for p in Permutation::all(n) {
        let pinv = p.inverse();
        let mut acc = Coefficient::zero();
        for (shape, module) in &shapes {
            let block = spectrum.block(shape).expect("nonzero block present");
            let rep = module.rep_int(&pinv);
            let d = module.dim();
            let mut tr = Coefficient::zero();
            for i in 0..d {
                for j in 0..d {
                    let v = rep.get(i, j);
                    if v == 0 {
                        continue;
                    }
                    let entry = &block[(j, i)];
                    if entry.is_zero() {
                        continue;
                    }
                    tr = tr + entry.mul_int(v);
                }
            }
            acc = acc + tr.mul_int(d as i64);
        }
        let coeff = acc * inv_fact.clone();
        if !coeff.is_zero() {
            terms.push((p, coeff));
        }
    }
    GroupRingElement::from_terms(n, terms).expect("degrees match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{central_idempotent, character_snn};

    fn lam(parts: &[u8]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn identity_maps_to_identity() {
        for shape in Partition::all(5) {
            let d = shape.dimension() as usize;
            let m = natural_rep(&shape, &Permutation::identity(5));
            assert!(m.equals(&CMatrix::identity(d)));
        }
    }

    #[test]
    fn multiplicative_on_generators() {
        for n in 3..=5 {
            for shape in Partition::all(n) {
                let module = specht_module(&shape);
                let perms = Permutation::all(n);
                for p in perms.iter().step_by(3) {
                    for q in perms.iter().step_by(5) {
                        let pq = p.compose(q).unwrap();
                        let lhs = module.rep(&pq);
                        let rhs = module.rep(p).mul(&module.rep(q)).unwrap();
                        assert!(lhs.equals(&rhs), "shape {shape}, p=[{p}], q=[{q}]");
                    }
                }
            }
        }
    }

    #[test]
    fn trace_matches_character() {
        for n in 2..=5 {
            for shape in Partition::all(n) {
                let module = specht_module(&shape);
                for p in Permutation::all(n) {
                    let tr = module.rep(&p).trace();
                    assert_eq!(
                        tr,
                        Coefficient::from_integer(character_snn(&shape, &p)),
                        "shape {shape}, p=[{p}]"
                    );
                }
            }
        }
    }

    #[test]
    fn central_idempotent_block_structure() {
        for shape in Partition::all(4) {
            let z = central_idempotent(&shape);
            let spectrum = dft(&z);
            for other in Partition::all(4) {
                let block = spectrum.block_or_zero(&other);
                if other == shape {
                    assert!(block.equals(&CMatrix::identity(other.dimension() as usize)));
                } else {
                    assert!(block.is_zero(), "z_{shape} leaks into block {other}");
                }
            }
        }
    }

    #[test]
    fn idft_of_all_identity_spectrum() {
        let n = 4;
        let mut s = BlockSpectrum::zero(n);
        for shape in Partition::all(n) {
            let d = shape.dimension() as usize;
            s.set_block(shape, CMatrix::identity(d)).unwrap();
        }
        let a = idft(&s);
        assert!(a.equals(&GroupRingElement::identity(n)));
    }

    #[test]
    fn roundtrip_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let a = crate::verify::random_element(&mut rng, n, 6);
            let back = idft(&dft(&a));
            assert!(back.equals(&a));
        }
    }

    #[test]
    fn integer_entries() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let perms = Permutation::all(5);
        for shape in Partition::all(5) {
            let module = specht_module(&shape);
            for _ in 0..20 {
                let p = &perms[rng.gen_range(0..perms.len())];
                let m = module.rep(p);
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        let (re, im) = m[(i, j)].exact_parts().unwrap();
                        assert!(im.is_zero() && re.is_integer());
                    }
                }
            }
        }
    }

    #[test]
    fn published_four_one_block_of_young_symmetrizer() {
        // Tableau with rows (5 4 2 1) and (3): the natural-representation
        // image must be the known matrix with a single nonzero row.
        let t = crate::tableau::Tableau::new(vec![vec![5, 4, 2, 1], vec![3]]).unwrap();
        let y = crate::idempotent::young_symmetrizer(&t);
        assert_eq!(y.support_len(), 48);
        let shape = lam(&[4, 1]);
        let block = dft(&y).block_or_zero(&shape);
        let expected = CMatrix::from_int_rows(&[
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![-30, 0, 30, 0],
            vec![0, 0, 0, 0],
        ]);
        assert!(block.equals(&expected), "got:\n{block:?}");
    }
}
