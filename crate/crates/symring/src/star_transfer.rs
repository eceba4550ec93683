//! The star-transfer machinery: permutation basis sets `P_λ` for the
//! minimal two-sided ideals, and the linear map sending `D_λ(a)` to
//! `D_λ(a*)` inside one block, built either from the basis matrices
//! (`Φ`, `Ψ`) or columnwise through the inverse transform.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::dft::{dft, idft, specht_module, BlockSpectrum};
use crate::matrix::CMatrix;
use crate::partition::Partition;
use crate::perm::Permutation;

/// `d_λ²` permutations whose images `p·z_λ` form a basis of `Z_λ`,
/// in lexicographic discovery order starting from the identity.
#[derive(Clone)]
pub struct PermBasisSet {
    shape: Partition,
    perms: Vec<Permutation>,
}

impl PermBasisSet {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn from_parts(shape: Partition, perms: Vec<Permutation>) -> Result<Self> {
        let d2 = (shape.dimension() * shape.dimension()) as usize;
        if perms.len() != d2 {
            return Err(Error::InvalidInput(format!(
                "P_λ for {shape} needs {d2} permutations, got {}",
                perms.len()
            )));
        }
        if perms[0] != Permutation::identity(shape.n()) {
            return Err(Error::InvalidInput("P_λ must start with the identity".into()));
        }
        Ok(PermBasisSet { shape, perms })
    }
}

/// Incremental exact elimination state over integer vectors of fixed
/// length. Rows stay in integers (fraction-free), divided by their
/// content after each reduction to bound growth.
struct EliminationState {
    len: usize,
    // Reduced rows with their pivot columns; content-normalized.
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EliminationState {
    fn new(len: usize) -> Self {
        EliminationState {
            len,
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the accepted rows; if a nonzero residual remains
    /// the vector is accepted into the state and `true` is returned.
    fn try_insert(&mut self, v: Vec<i64>) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            // v <- pivot_value * v - v[pivot] * row, which zeroes v[pivot]
            let piv = row[*pivot].clone();
            let factor = v[*pivot].clone();
            for j in 0..self.len {
                let keep = std::mem::replace(&mut v[j], BigInt::from(0));
                v[j] = keep * &piv - &factor * &row[j];
            }
            normalize_content(&mut v);
        }
        match v.iter().position(|c| !c.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

/// Divides an integer vector by the gcd of its entries (when nonzero).
fn normalize_content(v: &mut [BigInt]) {
    let mut g = BigInt::from(0);
    for x in v.iter() {
        g = num_integer::Integer::gcd(&g, x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for x in v.iter_mut() {
        let val = std::mem::replace(x, BigInt::from(0));
        *x = val / &g;
    }
}

/// Scans `S_N` in lexicographic order, keeping each permutation whose
/// matrix `D_λ(p)` is independent of the ones already kept, until the
/// block dimension `d_λ²` is reached.
pub fn compute_plam(shape: &Partition) -> Result<PermBasisSet> {
    let module = specht_module(shape);
    let d = module.dim();
    let target = d * d;
    let mut state = EliminationState::new(target);
    let mut perms = Vec::with_capacity(target);
    let mut p = Some(Permutation::identity(shape.n()));
    while let Some(cur) = p {
        if state.rank() == target {
            break;
        }
        let v = module.rep_int(&cur).row_major();
        if state.try_insert(v) {
            perms.push(cur.clone());
        }
        p = cur.next_permutation();
    }
    if state.rank() != target {
        return Err(Error::Internal(format!(
            "exhausted S_{} with rank {} < {target} for {shape}",
            shape.n(),
            state.rank()
        )));
    }
    PermBasisSet::from_parts(shape.clone(), perms)
}

/// Reuses `P_λ` for the conjugate shape; validity is guaranteed by the
/// sign-twist relation between the conjugate characters.
pub fn transpose_reuse(basis: &PermBasisSet) -> PermBasisSet {
    PermBasisSet {
        shape: basis.shape.conjugate(),
        perms: basis.perms.clone(),
    }
}

/// Rank check: do the matrices `{D_λ(p)}` over `basis.perms` span the block?
pub fn basis_rank(shape: &Partition, perms: &[Permutation]) -> usize {
    let module = specht_module(shape);
    let d = module.dim();
    let mut state = EliminationState::new(d * d);
    for p in perms {
        state.try_insert(module.rep_int(p).row_major());
    }
    state.rank()
}

/// The linear map with `vec(D_λ(a*)) = M · vec(D_λ(a))` on `Z_λ`.
#[derive(Clone)]
pub struct StarTransferMap {
    shape: Partition,
    matrix: CMatrix,
}

impl StarTransferMap {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn from_parts(shape: Partition, matrix: CMatrix) -> Result<Self> {
        let d2 = (shape.dimension() * shape.dimension()) as usize;
        if matrix.nrows() != d2 || matrix.ncols() != d2 {
            return Err(Error::SizeMismatch(format!(
                "star map for {shape} must be {d2}x{d2}"
            )));
        }
        Ok(StarTransferMap { shape, matrix })
    }
}

/// Builds the map as `Ψ·Φ^{-1}` where column `p` of `Φ` is `vec(D_λ(p))`
/// and column `p` of `Ψ` is `vec(D_λ(p^{-1}))`.
pub fn build_star_map_basis(basis: &PermBasisSet) -> Result<StarTransferMap> {
    let shape = basis.shape();
    let module = specht_module(shape);
    let d = module.dim();
    let d2 = d * d;
    let mut phi = CMatrix::zero(d2, d2);
    let mut psi = CMatrix::zero(d2, d2);
    for (col, p) in basis.perms().iter().enumerate() {
        let vp = module.rep(p).vec_row_major();
        let vpinv = module.rep(&p.inverse()).vec_row_major();
        for row in 0..d2 {
            phi[(row, col)] = vp[row].clone();
            psi[(row, col)] = vpinv[row].clone();
        }
    }
    let phi_inv = phi.inverse()?;
    let matrix = psi.mul(&phi_inv)?;
    StarTransferMap::from_parts(shape.clone(), matrix)
}

/// Builds the same map columnwise: the column of the matrix unit `E_ij`
/// is `vec(D_λ(a*))` where `a` is the inverse transform of the spectrum
/// carrying `E_ij` in block `λ`. The inner sums collapse to
/// `M[(k,l),(i,j)] = (d_λ/N!) Σ_p D_λ(p)_{ji} D_λ(p)_{kl}`.
pub fn build_star_map_direct(shape: &Partition) -> Result<StarTransferMap> {
    let module = specht_module(shape);
    let n = shape.n();
    let d = module.dim();
    let d2 = d * d;
    let fact: i64 = (1..=n as i64).product();
    let mut sums = vec![0i128; d2 * d2];
    let mut p = Some(Permutation::identity(n));
    while let Some(cur) = p {
        let rep = module.rep_int(&cur);
        for j in 0..d {
            for i in 0..d {
                let a = rep.get(j, i);
                if a == 0 {
                    continue;
                }
                let col = i * d + j;
                for k in 0..d {
                    for l in 0..d {
                        let b = rep.get(k, l);
                        if b == 0 {
                            continue;
                        }
                        sums[(k * d + l) * d2 + col] += a as i128 * b as i128;
                    }
                }
            }
        }
        p = cur.next_permutation();
    }
    let scale = Coefficient::from_ratio(d as i64, fact);
    let mut matrix = CMatrix::zero(d2, d2);
    for row in 0..d2 {
        for col in 0..d2 {
            let s = sums[row * d2 + col];
            if s != 0 {
                let s64: i64 = s.try_into().map_err(|_| {
                    Error::Internal("star-map accumulator exceeds i64".into())
                })?;
                matrix[(row, col)] = scale.mul_int(s64);
            }
        }
    }
    StarTransferMap::from_parts(shape.clone(), matrix)
}

/// `B` with `vec(B) = M·vec(A)`.
pub fn apply_star_map(map: &StarTransferMap, block: &CMatrix) -> Result<CMatrix> {
    let d = map.shape.dimension() as usize;
    if block.nrows() != d || block.ncols() != d {
        return Err(Error::SizeMismatch(format!(
            "block must be {d}x{d}, got {}x{}",
            block.nrows(),
            block.ncols()
        )));
    }
    let out = map.matrix.mul_vec(&block.vec_row_major())?;
    CMatrix::from_vec_row_major(d, d, out)
}

/// Checks `M·M = I` exactly. The map entries are integer multiples of
/// `d_λ/N!`, so the product is evaluated in machine integers when the
/// scaled entries fit; otherwise it falls back to rational arithmetic.
pub fn is_involution(map: &StarTransferMap) -> bool {
    let d2 = map.matrix.nrows();
    let n = map.shape.n();
    let fact: i64 = (1..=n as i64).product();
    let scale = fact / map.shape.dimension() as i64;
    if let Some(scaled) = scaled_integer_map(map) {
        let target = scale as i128 * scale as i128;
        for i in 0..d2 {
            for j in 0..d2 {
                let mut acc: i128 = 0;
                for k in 0..d2 {
                    let a = scaled[i * d2 + k];
                    if a == 0 {
                        continue;
                    }
                    acc += a as i128 * scaled[k * d2 + j] as i128;
                }
                let want = if i == j { target } else { 0 };
                if acc != want {
                    return false;
                }
            }
        }
        return true;
    }
    match map.matrix.mul(&map.matrix) {
        Ok(sq) => sq.equals(&CMatrix::identity(d2)),
        Err(_) => false,
    }
}

/// The map matrix scaled by `N!/d` as machine integers (row-major), when
/// every entry is such an integer multiple and fits.
pub(crate) fn scaled_integer_map(map: &StarTransferMap) -> Option<Vec<i64>> {
    let d2 = map.matrix.nrows();
    let n = map.shape.n();
    let fact: i64 = (1..=n as i64).product();
    let scale = fact / map.shape.dimension() as i64;
    let mut out = Vec::with_capacity(d2 * d2);
    for i in 0..d2 {
        for j in 0..d2 {
            out.push(scaled_integer_entry(&map.matrix[(i, j)], scale)?);
        }
    }
    Some(out)
}

fn scaled_integer_entry(c: &Coefficient, scale: i64) -> Option<i64> {
    use num_traits::{Signed, ToPrimitive, Zero};
    let (re, im) = c.exact_parts().ok()?;
    if !im.is_zero() {
        return None;
    }
    let scaled = re * num_rational::BigRational::from_integer(scale.into());
    if !scaled.is_integer() {
        return None;
    }
    let v = scaled.to_integer();
    if v.abs().to_i64().is_none() {
        return None;
    }
    v.to_i64()
}

/// Spectral star on a whole spectrum: needs one map per nonzero block.
pub fn apply_star_spectrum(
    maps: &dyn Fn(&Partition) -> Result<StarTransferMap>,
    spectrum: &BlockSpectrum,
) -> Result<BlockSpectrum> {
    let mut out = BlockSpectrum::zero(spectrum.degree());
    for (shape, block) in spectrum.nonzero_blocks() {
        let map = maps(shape)?;
        out.set_block(shape.clone(), apply_star_map(&map, block)?)?;
    }
    Ok(out)
}

/// Oracle route for tests and cross-checks: star through the group ring.
pub fn star_via_group_ring(spectrum: &BlockSpectrum) -> BlockSpectrum {
    dft(&idft(spectrum).star())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::central_idempotent;
    use crate::group_ring::GroupRingElement;

    fn lam(parts: &[u8]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn single_row_and_column_are_trivial() {
        for shape in [lam(&[4]), lam(&[1, 1, 1, 1])] {
            let basis = compute_plam(&shape).unwrap();
            assert_eq!(basis.perms().len(), 1);
            assert!(basis.perms()[0].is_identity());
            let map = build_star_map_basis(&basis).unwrap();
            assert!(map.matrix().equals(&CMatrix::identity(1)));
        }
    }

    #[test]
    fn two_one_has_four() {
        let basis = compute_plam(&lam(&[2, 1])).unwrap();
        assert_eq!(basis.perms().len(), 4);
        assert!(basis.perms()[0].is_identity());
        assert_eq!(basis_rank(&lam(&[2, 1]), basis.perms()), 4);
    }

    #[test]
    fn sizes_and_reuse_for_n_up_to_5() {
        for n in 2..=5 {
            for shape in Partition::all(n) {
                let basis = compute_plam(&shape).unwrap();
                let d2 = (shape.dimension() * shape.dimension()) as usize;
                assert_eq!(basis.perms().len(), d2);
                let reused = transpose_reuse(&basis);
                assert_eq!(basis_rank(reused.shape(), reused.perms()), d2);
            }
        }
    }

    #[test]
    fn construction_paths_agree_and_are_involutions() {
        for shape in Partition::all(5) {
            let basis = compute_plam(&shape).unwrap();
            let m1 = build_star_map_basis(&basis).unwrap();
            let m2 = build_star_map_direct(&shape).unwrap();
            assert!(m1.matrix().equals(m2.matrix()), "{shape}");
            let sq = m1.matrix().mul(m1.matrix()).unwrap();
            assert!(sq.equals(&CMatrix::identity(m1.matrix().nrows())), "{shape}");
        }
    }

    #[test]
    fn map_matches_group_ring_star() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for shape in Partition::all(4) {
            let z = central_idempotent(&shape);
            let basis = compute_plam(&shape).unwrap();
            let map = build_star_map_basis(&basis).unwrap();
            for _ in 0..10 {
                // random element of Z_λ as a combination of p·z_λ
                let mut a = GroupRingElement::zero(4);
                for p in basis.perms() {
                    let c = Coefficient::from_integer(rng.gen_range(-3i64..=3));
                    a = a
                        .add(&GroupRingElement::basis(p.clone()).scale(&c).multiply(&z).unwrap())
                        .unwrap();
                }
                let block = dft(&a).block_or_zero(&shape);
                let star_block = dft(&a.star()).block_or_zero(&shape);
                let mapped = apply_star_map(&map, &block).unwrap();
                assert!(mapped.equals(&star_block), "{shape}");
            }
        }
    }
}
