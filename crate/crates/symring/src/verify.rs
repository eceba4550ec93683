//! Seeded verification suites shared by the CLI `verify` command and the
//! integration tests. Every suite is deterministic for a fixed seed and
//! reports one pass/fail line per property.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::Coefficient;
use crate::dft::{dft, idft, specht_module};
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElement;
use crate::heisenberg::{
    all_configurations, apply_operator, hamiltonian_matrix, in_annihilator,
    in_annihilator_bruteforce, CouplingSign, HilbertVector,
};
use crate::idempotent::{decompose_self_adjoint, primitive_seed_set, weyl_idempotent};
use crate::matrix::CMatrix;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::star_transfer::{
    apply_star_map, basis_rank, build_star_map_basis, build_star_map_direct, compute_plam,
    transpose_reuse,
};

pub const DEFAULT_SEED: u64 = 20240117;

/// Random sparse group-ring element with small Gaussian-integer
/// coefficients and at most `max_terms` terms (at least one).
pub fn random_element<R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> GroupRingElement {
    let perms = Permutation::all(n);
    let count = rng.gen_range(1..=max_terms.max(1));
    let mut acc = GroupRingElement::zero(n);
    for _ in 0..count {
        let p = perms[rng.gen_range(0..perms.len())].clone();
        let re = rng.gen_range(-3i64..=3);
        let im = rng.gen_range(-3i64..=3);
        let c = Coefficient::from_integer(re) + Coefficient::i() * Coefficient::from_integer(im);
        acc = acc
            .add(&GroupRingElement::basis(p).scale(&c))
            .expect("degrees match");
    }
    acc
}

/// Random sparse Hilbert vector with Gaussian-integer coefficients.
pub fn random_vector<R: Rng>(rng: &mut R, sites: usize, letters: u8) -> HilbertVector {
    let basis = all_configurations(sites, letters);
    let mut terms = Vec::new();
    for sigma in basis {
        if rng.gen_bool(0.5) {
            let re = rng.gen_range(-3i64..=3);
            let im = rng.gen_range(-3i64..=3);
            let c =
                Coefficient::from_integer(re) + Coefficient::i() * Coefficient::from_integer(im);
            terms.push((sigma, c));
        }
    }
    HilbertVector::from_terms(sites, letters, terms).expect("consistent space")
}

/// Random self-adjoint idempotent: a sum of up to `max_parts` pairwise
/// orthogonal Weyl idempotents of randomly conjugated minimal ideals.
pub fn random_self_adjoint_idempotent<R: Rng>(
    rng: &mut R,
    n: usize,
    max_parts: usize,
) -> GroupRingElement {
    let seeds = primitive_seed_set(n);
    let perms = Permutation::all(n);
    let want = rng.gen_range(1..=max_parts);
    let mut acc = GroupRingElement::zero(n);
    let mut parts: Vec<GroupRingElement> = Vec::new();
    let mut attempts = 0;
    while parts.len() < want && attempts < 50 {
        attempts += 1;
        let y = &seeds[rng.gen_range(0..seeds.len())];
        let g = GroupRingElement::basis(perms[rng.gen_range(0..perms.len())].clone());
        let ginv = g.star();
        let e = g
            .multiply(y)
            .and_then(|m| m.multiply(&ginv))
            .expect("degrees match");
        let f = match weyl_idempotent(&e) {
            Ok(f) => f,
            Err(_) => continue,
        };
        let orthogonal = parts.iter().all(|p| {
            p.multiply(&f).expect("degrees match").is_zero()
                && f.multiply(p).expect("degrees match").is_zero()
        });
        if orthogonal {
            acc = acc.add(&f).expect("degrees match");
            parts.push(f);
        }
    }
    acc
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn ok(&mut self, name: &str, passed: bool) {
        self.record(name, passed, "");
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.passed {
                out.push_str(&format!("PASS {}\n", c.name));
            } else if c.detail.is_empty() {
                out.push_str(&format!("FAIL {}\n", c.name));
            } else {
                out.push_str(&format!("FAIL {} ({})\n", c.name, c.detail));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "summary: {} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        out
    }
}

/// Isomorphism and roundtrip properties of the transform.
pub fn suite_dft(n: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::default();

    let fact: u64 = (1..=n as u64).product();
    let dim_sum: u64 = Partition::all(n).iter().map(|s| s.dimension().pow(2)).sum();
    report.record(
        &format!("dft/n={n}/dimension-sum"),
        dim_sum == fact,
        format!("sum of squares {dim_sum} vs {fact}"),
    );

    let mut homomorphism = true;
    let mut roundtrip = true;
    for _ in 0..100 {
        let a = random_element(&mut rng, n, 4);
        let b = random_element(&mut rng, n, 4);
        let prod = a.multiply(&b).expect("degrees match");
        if !dft(&prod).equals(&dft(&a).mul(&dft(&b)).expect("degrees match")) {
            homomorphism = false;
        }
        if !idft(&dft(&a)).equals(&a) {
            roundtrip = false;
        }
    }
    report.ok(&format!("dft/n={n}/multiplicativity"), homomorphism);
    report.ok(&format!("dft/n={n}/roundtrip"), roundtrip);
    report
}

/// Permutation-basis and star-transfer properties for every shape of `n`.
pub fn suite_star(n: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::default();
    for shape in Partition::all(n) {
        let d = shape.dimension() as usize;
        let label = format!("star/n={n}/{shape}");
        let basis = match compute_plam(&shape) {
            Ok(b) => b,
            Err(e) => {
                report.record(&label, false, format!("basis construction failed: {e}"));
                continue;
            }
        };
        report.record(
            &format!("{label}/basis-size"),
            basis.perms().len() == d * d,
            format!("{} vs {}", basis.perms().len(), d * d),
        );
        report.ok(
            &format!("{label}/basis-rank"),
            basis_rank(&shape, basis.perms()) == d * d,
        );
        let conj = shape.conjugate();
        let reused = transpose_reuse(&basis);
        report.ok(
            &format!("{label}/conjugate-reuse"),
            basis_rank(&conj, reused.perms()) == d * d,
        );
        let via_basis = match build_star_map_basis(&basis) {
            Ok(m) => m,
            Err(e) => {
                report.record(&label, false, format!("basis-path map failed: {e}"));
                continue;
            }
        };
        let direct = match build_star_map_direct(&shape) {
            Ok(m) => m,
            Err(e) => {
                report.record(&label, false, format!("direct-path map failed: {e}"));
                continue;
            }
        };
        report.ok(
            &format!("{label}/paths-agree"),
            via_basis.matrix().equals(direct.matrix()),
        );
        report.ok(
            &format!("{label}/involution"),
            crate::star_transfer::is_involution(&via_basis),
        );

        let star_ok = match crate::star_transfer::scaled_integer_map(&via_basis) {
            Some(scaled) => star_property_int(&mut rng, n, &shape, &scaled, 100),
            None => star_property_rational(&mut rng, n, &shape, &via_basis, 100),
        };
        report.ok(&format!("{label}/star-property"), star_ok);
    }
    report
}

/// Checks `M·vec(D(a)) = vec(D(a*))` for random sparse `a`, entirely in
/// machine integers: the map entries are integer multiples of `d/N!` and
/// the random coefficients are Gaussian integers.
fn star_property_int<R: Rng>(
    rng: &mut R,
    n: usize,
    shape: &Partition,
    scaled_map: &[i64],
    trials: usize,
) -> bool {
    let module = specht_module(shape);
    let d = module.dim();
    let d2 = d * d;
    let fact: i64 = (1..=n as i64).product();
    let scale = (fact / d as i64) as i128;
    let perms = Permutation::all(n);
    for _ in 0..trials {
        let count = rng.gen_range(1..=4usize);
        let mut block_re = vec![0i128; d2];
        let mut block_im = vec![0i128; d2];
        let mut star_re = vec![0i128; d2];
        let mut star_im = vec![0i128; d2];
        for _ in 0..count {
            let p = &perms[rng.gen_range(0..perms.len())];
            let re = rng.gen_range(-3i64..=3) as i128;
            let im = rng.gen_range(-3i64..=3) as i128;
            let rep = module.rep_int(p);
            let rep_inv = module.rep_int(&p.inverse());
            for i in 0..d {
                for j in 0..d {
                    let v = rep.get(i, j) as i128;
                    block_re[i * d + j] += re * v;
                    block_im[i * d + j] += im * v;
                    let w = rep_inv.get(i, j) as i128;
                    star_re[i * d + j] += re * w;
                    star_im[i * d + j] += im * w;
                }
            }
        }
        for row in 0..d2 {
            let mut acc_re = 0i128;
            let mut acc_im = 0i128;
            for col in 0..d2 {
                let m = scaled_map[row * d2 + col] as i128;
                if m == 0 {
                    continue;
                }
                acc_re += m * block_re[col];
                acc_im += m * block_im[col];
            }
            if acc_re != scale * star_re[row] || acc_im != scale * star_im[row] {
                return false;
            }
        }
    }
    true
}

/// Rational fallback for maps whose scaled entries do not fit in machine
/// integers.
fn star_property_rational<R: Rng>(
    rng: &mut R,
    n: usize,
    shape: &Partition,
    map: &crate::star_transfer::StarTransferMap,
    trials: usize,
) -> bool {
    let module = specht_module(shape);
    let d = module.dim();
    for _ in 0..trials {
        let a = random_element(rng, n, 4);
        let mut block = CMatrix::zero(d, d);
        let mut star_block = CMatrix::zero(d, d);
        for (p, c) in a.terms() {
            let rep = module.rep(p);
            let rep_inv = module.rep(&p.inverse());
            for i in 0..d {
                for j in 0..d {
                    let cur = std::mem::replace(&mut block[(i, j)], Coefficient::zero());
                    block[(i, j)] = cur + c.clone() * rep[(i, j)].clone();
                    let cur = std::mem::replace(&mut star_block[(i, j)], Coefficient::zero());
                    star_block[(i, j)] = cur + c.clone() * rep_inv[(i, j)].clone();
                }
            }
        }
        let mapped = apply_star_map(map, &block).expect("sizes match");
        if !mapped.equals(&star_block) {
            return false;
        }
    }
    true
}

/// Decomposition of central and random self-adjoint idempotents.
pub fn suite_decomp(n: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::default();
    for shape in Partition::all(n) {
        let z = crate::characters::central_idempotent(&shape);
        let label = format!("decomp/n={n}/z{shape}");
        match decompose_self_adjoint(&z, None) {
            Ok(result) => {
                let d = shape.dimension() as usize;
                report.record(
                    &format!("{label}/part-count"),
                    result.parts.len() == d,
                    format!("{} parts vs d={d}", result.parts.len()),
                );
                report.ok(
                    &format!("{label}/invariants"),
                    decomposition_invariants(&z, &result.parts),
                );
            }
            Err(e) => report.record(&label, false, format!("decomposition failed: {e}")),
        }
    }
    let mut random_ok = true;
    for _ in 0..5 {
        let e = random_self_adjoint_idempotent(&mut rng, n.min(4), 2);
        if e.is_zero() {
            continue;
        }
        match decompose_self_adjoint(&e, None) {
            Ok(result) => {
                if !decomposition_invariants(&e, &result.parts) {
                    random_ok = false;
                }
            }
            Err(_) => random_ok = false,
        }
    }
    report.ok(&format!("decomp/n={n}/random-idempotents"), random_ok);
    report
}

/// Exactness checks on all decomposition invariants at once.
pub fn decomposition_invariants(e: &GroupRingElement, parts: &[GroupRingElement]) -> bool {
    let mut sum = GroupRingElement::zero(e.degree());
    for f in parts {
        if !f.is_idempotent() || !f.has_property_s() {
            return false;
        }
        sum = sum.add(f).expect("degrees match");
    }
    if !sum.equals(e) {
        return false;
    }
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate() {
            if i != j && !a.multiply(b).expect("degrees match").is_zero() {
                return false;
            }
        }
    }
    // each part must be primitive: its transform is one trace-1 projector
    for f in parts {
        let spectrum = dft(f);
        let mut nonzero = 0;
        for (_, block) in spectrum.nonzero_blocks() {
            nonzero += 1;
            if !block.trace().is_one() {
                return false;
            }
        }
        if nonzero != 1 {
            return false;
        }
    }
    true
}

/// Hilbert-space action, adjointness, annihilator, Hamiltonian checks.
pub fn suite_heisenberg(n: usize, letters: u8, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::default();

    let mut adjoint_ok = true;
    for _ in 0..100 {
        let a = random_element(&mut rng, n, 4);
        let u = random_vector(&mut rng, n, letters);
        let v = random_vector(&mut rng, n, letters);
        let lhs = apply_operator(&a, &u)
            .and_then(|au| au.inner(&v))
            .expect("spaces match");
        let rhs = apply_operator(&a.bar_star(), &v)
            .and_then(|bv| u.inner(&bv))
            .expect("spaces match");
        if !lhs.equals(&rhs) {
            adjoint_ok = false;
            break;
        }
    }
    report.ok(&format!("heis/n={n}/k={letters}/adjointness"), adjoint_ok);

    let anti = GroupRingElement::from_terms(
        3,
        Permutation::all(3)
            .into_iter()
            .map(|p| (p.clone(), Coefficient::from_ratio(p.sign(), 6))),
    )
    .expect("degrees match");
    let all_killed = all_configurations(3, 2).into_iter().all(|sigma| {
        apply_operator(&anti, &HilbertVector::ket(sigma))
            .expect("degrees match")
            .is_zero()
    });
    report.ok("heis/antisymmetrizer-n3-k2", all_killed);

    let mut spectral_ok = true;
    for _ in 0..50 {
        let a = if rng.gen_bool(0.5) {
            random_element(&mut rng, n, 4)
        } else {
            random_element(&mut rng, n, 3)
                .multiply(&crate::heisenberg::f0(n, letters))
                .expect("degrees match")
        };
        if in_annihilator(&a, letters) != in_annihilator_bruteforce(&a, letters) {
            spectral_ok = false;
            break;
        }
    }
    report.ok(
        &format!("heis/n={n}/k={letters}/annihilator-spectral-vs-bruteforce"),
        spectral_ok,
    );

    let j = Coefficient::one();
    let mut ham_ok = true;
    for sites in 2..=n.max(2) {
        let hf = hamiltonian_matrix(sites, &j, CouplingSign::Ferro).expect("two letters");
        let ha = hamiltonian_matrix(sites, &j, CouplingSign::Antiferro).expect("two letters");
        if !hf.equals(&hf.transpose()) || !ha.add(&hf).expect("sizes match").is_zero() {
            ham_ok = false;
        }
    }
    report.ok(&format!("heis/n<={n}/hamiltonian"), ham_ok);
    report
}

/// Aggregate of all suites at one degree.
pub fn suite_all(n: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::default();
    report.merge(suite_dft(n, seed));
    report.merge(suite_star(n, seed));
    report.merge(suite_decomp(n, seed));
    report.merge(suite_heisenberg(n.min(5), 2, seed));
    report
}

/// Dispatch by suite name; `letters` only affects the Hilbert-space suite.
pub fn run_suite(name: &str, n: usize, letters: u8, seed: u64) -> Result<SuiteReport> {
    match name {
        "dft" => Ok(suite_dft(n, seed)),
        "star" => Ok(suite_star(n, seed)),
        "decomp" => Ok(suite_decomp(n, seed)),
        "heisenberg" => Ok(suite_heisenberg(n, letters, seed)),
        "all" => Ok(suite_all(n, seed)),
        other => Err(Error::InvalidInput(format!(
            "unknown suite `{other}` (want dft|star|decomp|heisenberg|all)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_degree() {
        let report = suite_all(3, DEFAULT_SEED);
        assert!(report.all_passed(), "{}", report.render());
    }

    #[test]
    fn dft_suite_n4() {
        let report = suite_dft(4, DEFAULT_SEED);
        assert!(report.all_passed(), "{}", report.render());
    }

    #[test]
    fn star_suite_n4() {
        let report = suite_star(4, DEFAULT_SEED);
        assert!(report.all_passed(), "{}", report.render());
    }

    #[test]
    fn decomp_suite_n4() {
        let report = suite_decomp(4, DEFAULT_SEED);
        assert!(report.all_passed(), "{}", report.render());
    }

    #[test]
    fn heisenberg_suite_n4() {
        let report = suite_heisenberg(4, 2, DEFAULT_SEED);
        assert!(report.all_passed(), "{}", report.render());
    }

    #[test]
    fn random_idempotents_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let e = random_self_adjoint_idempotent(&mut rng, 4, 2);
            assert!(e.is_idempotent());
            assert!(e.has_property_s());
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("nope", 3, 2, 0).is_err());
    }
}
