//! Young symmetrizers, the self-adjoint (Weyl) idempotent of a minimal
//! right ideal, and the decomposition of a self-adjoint idempotent into
//! pairwise orthogonal primitive self-adjoint idempotents.
//!
//! The decomposition runs either directly in the group ring or blockwise
//! in the DFT image; the spectral route uses the star-transfer maps for
//! every adjoint and is the default in the CLI.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coeff::Coefficient;
use crate::dft::{dft, specht_module, BlockSpectrum};
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElement;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::star_transfer::{
    apply_star_map, build_star_map_basis, compute_plam, StarTransferMap,
};
use crate::tableau::{standard_tableaux, Tableau};

/// All permutations preserving each of the given disjoint value sets, with
/// the product of the per-set signs.
fn set_group(n: usize, sets: &[Vec<u8>]) -> Vec<(Permutation, i64)> {
    let mut out = vec![(Permutation::identity(n), 1i64)];
    for set in sets {
        if set.len() < 2 {
            continue;
        }
        let k = set.len();
        let mut variants: Vec<(Vec<u8>, i64)> = Vec::new();
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
            let sign = if inv % 2 == 0 { 1 } else { -1 };
            let images: Vec<u8> = order.iter().map(|&i| set[i]).collect();
            variants.push((images, sign));
            // next lexicographic arrangement of `order`
            let m = order.len();
            let mut i = m - 1;
            while i > 0 && order[i - 1] >= order[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = m - 1;
            while order[j] <= order[i - 1] {
                j -= 1;
            }
            order.swap(i - 1, j);
            order[i..].reverse();
        }
        let mut next = Vec::with_capacity(out.len() * variants.len());
        for (p, s) in &out {
            for (images, vs) in &variants {
                let mut imgs = p.images().to_vec();
                for (pos, &v) in set.iter().enumerate() {
                    imgs[v as usize - 1] = images[pos];
                }
                next.push((Permutation::from_images(imgs).unwrap(), s * vs));
            }
        }
        out = next;
    }
    out
}

/// The Young symmetrizer `y_t`: row symmetrizer times column
/// antisymmetrizer of the (not necessarily standard) tableau `t`.
pub fn young_symmetrizer(t: &Tableau) -> GroupRingElement {
    let n = t.n();
    let rows: Vec<Vec<u8>> = t.rows().to_vec();
    let cols: Vec<Vec<u8>> = (0..t.num_columns()).map(|c| t.column(c)).collect();
    let row_sym = GroupRingElement::from_terms(
        n,
        set_group(n, &rows)
            .into_iter()
            .map(|(p, _)| (p, Coefficient::one())),
    )
    .expect("degrees match");
    let col_antisym = GroupRingElement::from_terms(
        n,
        set_group(n, &cols)
            .into_iter()
            .map(|(p, s)| (p, Coefficient::from_integer(s))),
    )
    .expect("degrees match");
    row_sym.multiply(&col_antisym).expect("degrees match")
}

/// The canonical seed set for the decomposition: normalized Young
/// symmetrizers `(d_λ/N!)·y_t` over all standard tableaux of all shapes,
/// in canonical (partition, tableau) order. Each is a primitive idempotent
/// and together they decompose the group ring into minimal right ideals.
pub fn primitive_seed_set(n: usize) -> Vec<GroupRingElement> {
    let fact: i64 = (1..=n as i64).product();
    let mut out = Vec::new();
    for shape in Partition::all(n) {
        let d = shape.dimension() as i64;
        let scale = Coefficient::from_ratio(d, fact);
        for t in standard_tableaux(&shape) {
            out.push(young_symmetrizer(t.tableau()).scale(&scale));
        }
    }
    out
}

/// Common algebra surface for the two decomposition routes.
trait Algebra: Clone {
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, k: &Coefficient) -> Self;
    fn bar_star(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    /// `Some(κ)` when `self = κ·base` exactly.
    fn proportionality(&self, base: &Self) -> Option<Coefficient>;
}

impl Algebra for GroupRingElement {
    fn mul(&self, other: &Self) -> Self {
        self.multiply(other).expect("degrees match")
    }

    fn sub(&self, other: &Self) -> Self {
        GroupRingElement::sub(self, other).expect("degrees match")
    }

    fn scale(&self, k: &Coefficient) -> Self {
        GroupRingElement::scale(self, k)
    }

    fn bar_star(&self) -> Result<Self> {
        Ok(GroupRingElement::bar_star(self))
    }

    fn is_zero(&self) -> bool {
        GroupRingElement::is_zero(self)
    }

    fn proportionality(&self, base: &Self) -> Option<Coefficient> {
        let (p0, c0) = base.leading_term()?;
        let kappa = self.coeff(p0) / c0.clone();
        if self.equals(&GroupRingElement::scale(base, &kappa)) {
            Some(kappa)
        } else {
            None
        }
    }
}

/// Shared star-transfer maps for one degree, built lazily per partition.
pub struct SpectralContext {
    degree: usize,
    maps: Mutex<HashMap<Partition, Arc<StarTransferMap>>>,
}

impl SpectralContext {
    pub fn new(degree: usize) -> Arc<Self> {
        Arc::new(SpectralContext {
            degree,
            maps: Mutex::new(HashMap::new()),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn star_map(&self, shape: &Partition) -> Result<Arc<StarTransferMap>> {
        if let Some(m) = self.maps.lock().unwrap().get(shape) {
            return Ok(m.clone());
        }
        let basis = compute_plam(shape)?;
        let map = Arc::new(build_star_map_basis(&basis)?);
        Ok(self
            .maps
            .lock()
            .unwrap()
            .entry(shape.clone())
            .or_insert(map)
            .clone())
    }

    /// `D(ā*)` blockwise: conjugate entries, then the star-transfer map.
    pub fn bar_star_spectrum(&self, spectrum: &BlockSpectrum) -> Result<BlockSpectrum> {
        let mut out = BlockSpectrum::zero(spectrum.degree());
        for (shape, block) in spectrum.nonzero_blocks() {
            let map = self.star_map(shape)?;
            out.set_block(shape.clone(), apply_star_map(&map, &block.conj())?)?;
        }
        Ok(out)
    }
}

#[derive(Clone)]
struct SpectralElement {
    ctx: Arc<SpectralContext>,
    spectrum: BlockSpectrum,
}

impl Algebra for SpectralElement {
    fn mul(&self, other: &Self) -> Self {
        SpectralElement {
            ctx: self.ctx.clone(),
            spectrum: self.spectrum.mul(&other.spectrum).expect("degrees match"),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        SpectralElement {
            ctx: self.ctx.clone(),
            spectrum: self.spectrum.sub(&other.spectrum).expect("degrees match"),
        }
    }

    fn scale(&self, k: &Coefficient) -> Self {
        SpectralElement {
            ctx: self.ctx.clone(),
            spectrum: self.spectrum.scale(k),
        }
    }

    fn bar_star(&self) -> Result<Self> {
        Ok(SpectralElement {
            ctx: self.ctx.clone(),
            spectrum: self.ctx.bar_star_spectrum(&self.spectrum)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.spectrum.is_zero()
    }

    fn proportionality(&self, base: &Self) -> Option<Coefficient> {
        let (shape, block) = base.spectrum.nonzero_blocks().next()?;
        let mut kappa = None;
        'outer: for i in 0..block.nrows() {
            for j in 0..block.ncols() {
                if !block[(i, j)].is_zero() {
                    let num = self.spectrum.block_or_zero(shape)[(i, j)].clone();
                    kappa = Some(num / block[(i, j)].clone());
                    break 'outer;
                }
            }
        }
        let kappa = kappa?;
        if self
            .spectrum
            .equals(&base.spectrum.scale(&kappa))
        {
            Some(kappa)
        } else {
            None
        }
    }
}

/// Audit record for one produced part.
#[derive(Clone, Debug)]
pub struct PartAudit {
    /// Index of the seed `y_k` that hit the running rest.
    pub seed_index: usize,
    /// Essential-idempotency factor of the minimal-ideal generator.
    pub kappa: Coefficient,
    /// The real factor with `h·h̄*·h = α·h`.
    pub alpha: Coefficient,
}

/// Result of decomposing a self-adjoint idempotent: parts summing to the
/// input, pairwise orthogonal, each primitive, idempotent and self-adjoint.
pub struct SelfAdjointDecomposition<T> {
    pub parts: Vec<T>,
    pub audit: Vec<PartAudit>,
}

fn primitive_from_generator_generic<A: Algebra>(
    w: &A,
    perms: &[Permutation],
    embed: &dyn Fn(&Permutation) -> A,
) -> Result<(A, Coefficient)> {
    if w.is_zero() {
        return Err(Error::NotMinimalGenerator);
    }
    let sq = w.mul(w);
    if !sq.is_zero() {
        match sq.proportionality(w) {
            Some(kappa) if !kappa.is_zero() => {
                return Ok((w.scale(&kappa.recip()), kappa));
            }
            _ => return Err(Error::NotMinimalGenerator),
        }
    }
    // w·w = 0: scan permutations in lexicographic order for w·p·w = κ·w.
    for p in perms {
        let wp = w.mul(&embed(p));
        let wpw = wp.mul(w);
        if wpw.is_zero() {
            continue;
        }
        match wpw.proportionality(w) {
            Some(kappa) if !kappa.is_zero() => {
                return Ok((wp.scale(&kappa.recip()), kappa));
            }
            _ => return Err(Error::NotMinimalGenerator),
        }
    }
    Err(Error::NotMinimalGenerator)
}

/// Idempotent with property (S) generating the same minimal right ideal as
/// the primitive idempotent `e`, via `f = (1/α)·e·ē*`.
fn weyl_generic<A: Algebra>(e: &A) -> Result<(A, Coefficient)> {
    let h = e.mul(&e.bar_star()?);
    if h.is_zero() {
        return Err(Error::AnnihilatorIdeal);
    }
    let he = h.mul(e);
    let alpha = he.proportionality(e).ok_or(Error::AnnihilatorIdeal)?;
    if alpha.is_zero() {
        return Err(Error::AnnihilatorIdeal);
    }
    debug_assert!(alpha.conj().equals(&alpha), "α must be real");
    Ok((h.scale(&alpha.recip()), alpha))
}

fn decompose_generic<A: Algebra>(
    e: &A,
    seeds: &[A],
    perms: &[Permutation],
    embed: &dyn Fn(&Permutation) -> A,
    max_parts: usize,
) -> Result<SelfAdjointDecomposition<A>> {
    if !e.sub(&e.mul(e)).is_zero() {
        return Err(Error::NotIdempotent);
    }
    if !e.sub(&e.bar_star()?).is_zero() {
        return Err(Error::NotSelfAdjoint);
    }
    let mut rest = e.clone();
    let mut parts = Vec::new();
    let mut audit = Vec::new();
    for _ in 0..=max_parts {
        if rest.is_zero() {
            return Ok(SelfAdjointDecomposition { parts, audit });
        }
        let mut hit = None;
        for (idx, y) in seeds.iter().enumerate() {
            let w = rest.mul(y);
            if !w.is_zero() {
                hit = Some((idx, w));
                break;
            }
        }
        let (seed_index, w) =
            hit.ok_or_else(|| Error::Internal("nonzero rest annihilates every seed".into()))?;
        let (h, kappa) = primitive_from_generator_generic(&w, perms, embed)?;
        let (f, alpha) = weyl_generic(&h)?;
        audit.push(PartAudit {
            seed_index,
            kappa,
            alpha,
        });
        rest = rest.sub(&f);
        parts.push(f);
    }
    Err(Error::Internal(
        "decomposition exceeded the dimension bound".into(),
    ))
}

fn max_parts(n: usize) -> usize {
    Partition::all(n)
        .iter()
        .map(|s| s.dimension() as usize)
        .sum()
}

/// Checks that a spectrum vanishes on every block with more rows than the
/// spin alphabet allows; such blocks act as zero on the Hilbert space.
fn check_in_ideal(spectrum: &BlockSpectrum, letters: usize) -> Result<()> {
    for (shape, block) in spectrum.nonzero_blocks() {
        if shape.num_rows() > letters && !block.is_zero() {
            return Err(Error::AnnihilatorIdeal);
        }
    }
    Ok(())
}

/// Primitive generating idempotent of the minimal right ideal generated
/// by `w`, in the group ring.
pub fn primitive_from_generator(w: &GroupRingElement) -> Result<GroupRingElement> {
    let n = w.degree();
    let perms = Permutation::all(n);
    let embed = |p: &Permutation| GroupRingElement::basis(p.clone());
    primitive_from_generator_generic(w, &perms, &embed).map(|(h, _)| h)
}

/// The unique self-adjoint generating idempotent of the minimal right
/// ideal of the primitive idempotent `e`.
pub fn weyl_idempotent(e: &GroupRingElement) -> Result<GroupRingElement> {
    weyl_generic(e).map(|(f, _)| f)
}

/// Decomposes a self-adjoint idempotent in the group ring.
///
/// With `hilbert_letters = Some(K)` the input must represent an operator
/// that is faithful on the `K`-letter Hilbert space (no block with more
/// than `K` rows).
pub fn decompose_self_adjoint(
    e: &GroupRingElement,
    hilbert_letters: Option<usize>,
) -> Result<SelfAdjointDecomposition<GroupRingElement>> {
    let n = e.degree();
    if let Some(k) = hilbert_letters {
        check_in_ideal(&dft(e), k)?;
    }
    let seeds = primitive_seed_set(n);
    let perms = Permutation::all(n);
    let embed = |p: &Permutation| GroupRingElement::basis(p.clone());
    decompose_generic(e, &seeds, &perms, &embed, max_parts(n))
}

/// Decomposes a self-adjoint idempotent blockwise in the DFT image; all
/// adjoints go through the star-transfer maps of `ctx`.
pub fn decompose_self_adjoint_spectral(
    e: &BlockSpectrum,
    ctx: &Arc<SpectralContext>,
    hilbert_letters: Option<usize>,
) -> Result<SelfAdjointDecomposition<BlockSpectrum>> {
    let n = e.degree();
    if ctx.degree() != n {
        return Err(Error::DegreeMismatch(ctx.degree(), n));
    }
    if let Some(k) = hilbert_letters {
        check_in_ideal(e, k)?;
    }
    let seeds: Vec<SpectralElement> = primitive_seed_set(n)
        .iter()
        .map(|y| SpectralElement {
            ctx: ctx.clone(),
            spectrum: dft(y),
        })
        .collect();
    let perms = Permutation::all(n);
    let ctx2 = ctx.clone();
    let embed = move |p: &Permutation| {
        let mut s = BlockSpectrum::zero(n);
        for shape in Partition::all(n) {
            s.set_block(shape.clone(), specht_module(&shape).rep(p))
                .expect("sizes consistent");
        }
        SpectralElement {
            ctx: ctx2.clone(),
            spectrum: s,
        }
    };
    let e_elem = SpectralElement {
        ctx: ctx.clone(),
        spectrum: e.clone(),
    };
    let result = decompose_generic(&e_elem, &seeds, &perms, &embed, max_parts(n))?;
    Ok(SelfAdjointDecomposition {
        parts: result.parts.into_iter().map(|p| p.spectrum).collect(),
        audit: result.audit,
    })
}
