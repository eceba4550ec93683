//! Text file formats: group-ring elements (`.gre`), block spectra
//! (`.spec`), permutation bases (`.plam`), star-transfer maps (`.smap`),
//! Hilbert vectors (`.ket`), and commutation-symmetry generator lists.
//!
//! All formats are exact; floating coefficients are rejected on write.

use std::path::Path;

use crate::coeff::Coefficient;
use crate::dft::BlockSpectrum;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElement;
use crate::heisenberg::{HilbertVector, SpinConfiguration};
use crate::matrix::CMatrix;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::star_transfer::{PermBasisSet, StarTransferMap};

fn rational_pair(c: &Coefficient) -> Result<(String, String)> {
    let (re, im) = c.exact_parts()?;
    Ok((
        format!("{}/{}", re.numer(), re.denom()),
        format!("{}/{}", im.numer(), im.denom()),
    ))
}

fn parse_pair(re: &str, im: &str) -> Result<Coefficient> {
    format!("{re},{im}").parse()
}

fn header_fields<'a>(line: &'a str, tag: &str) -> Result<Vec<(&'a str, &'a str)>> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(tag) {
        return Err(Error::Parse(format!("expected `{tag}` header, got `{line}`")));
    }
    tokens
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field `{tok}`")))
        })
        .collect()
}

fn header_usize(fields: &[(&str, &str)], key: &str) -> Result<usize> {
    for (k, v) in fields {
        if *k == key {
            return v
                .parse()
                .map_err(|e| Error::Parse(format!("bad {key} value `{v}`: {e}")));
        }
    }
    Err(Error::Parse(format!("missing header field {key}")))
}

fn parse_partition_tokens(tokens: &[&str]) -> Result<Partition> {
    let parts: Vec<u8> = tokens
        .iter()
        .map(|t| {
            t.parse()
                .map_err(|e| Error::Parse(format!("bad partition part `{t}`: {e}")))
        })
        .collect::<Result<_>>()?;
    Partition::new(parts)
}

fn partition_tokens(shape: &Partition) -> String {
    shape
        .parts()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------- .gre

pub fn gre_to_string(a: &GroupRingElement) -> Result<String> {
    let mut out = format!("GRE N={} terms={}\n", a.degree(), a.support_len());
    for (p, c) in a.terms() {
        let (re, im) = rational_pair(c)?;
        out.push_str(&format!("{re} {im} : {p}\n"));
    }
    Ok(out)
}

pub fn gre_from_str(s: &str) -> Result<GroupRingElement> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty element file".into()))?;
    let fields = header_fields(header, "GRE")?;
    let n = header_usize(&fields, "N")?;
    let terms = header_usize(&fields, "terms")?;
    let mut parsed = Vec::new();
    for line in lines {
        let (coeffs, images) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad term line `{line}`")))?;
        let mut it = coeffs.split_whitespace();
        let re = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad term line `{line}`")))?;
        let im = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad term line `{line}`")))?;
        let p: Permutation = images.trim().parse()?;
        if p.degree() != n {
            return Err(Error::DegreeMismatch(p.degree(), n));
        }
        parsed.push((p, parse_pair(re, im)?));
    }
    if parsed.len() != terms {
        return Err(Error::Parse(format!(
            "header says {terms} terms, found {}",
            parsed.len()
        )));
    }
    GroupRingElement::from_terms(n, parsed)
}

pub fn write_gre(path: &Path, a: &GroupRingElement) -> Result<()> {
    Ok(std::fs::write(path, gre_to_string(a)?)?)
}

pub fn read_gre(path: &Path) -> Result<GroupRingElement> {
    gre_from_str(&std::fs::read_to_string(path)?)
}

// --------------------------------------------------------------- .spec

pub fn spec_to_string(s: &BlockSpectrum) -> Result<String> {
    let mut out = format!("SPEC N={}\n", s.degree());
    for (shape, block) in s.nonzero_blocks() {
        let d = block.nrows();
        out.push_str(&format!("LAMBDA {} DIM {d}\n", partition_tokens(shape)));
        for i in 0..d {
            let row: Vec<String> = (0..d).map(|j| block[(i, j)].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    Ok(out)
}

pub fn spec_from_str(s: &str) -> Result<BlockSpectrum> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty()).peekable();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty spectrum file".into()))?;
    let fields = header_fields(header, "SPEC")?;
    let n = header_usize(&fields, "N")?;
    let mut out = BlockSpectrum::zero(n);
    while let Some(line) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.first() != Some(&"LAMBDA") {
            return Err(Error::Parse(format!("expected LAMBDA line, got `{line}`")));
        }
        let dim_pos = tokens
            .iter()
            .position(|t| *t == "DIM")
            .ok_or_else(|| Error::Parse(format!("missing DIM in `{line}`")))?;
        let shape = parse_partition_tokens(&tokens[1..dim_pos])?;
        let d: usize = tokens
            .get(dim_pos + 1)
            .ok_or_else(|| Error::Parse(format!("missing DIM value in `{line}`")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad DIM: {e}")))?;
        let mut rows = Vec::with_capacity(d);
        for _ in 0..d {
            let row_line = lines
                .next()
                .ok_or_else(|| Error::Parse("truncated block".into()))?;
            let row: Vec<Coefficient> = row_line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<Result<_>>()?;
            if row.len() != d {
                return Err(Error::Parse(format!(
                    "block row has {} entries, expected {d}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        out.set_block(shape, CMatrix::from_rows(rows)?)?;
    }
    Ok(out)
}

pub fn write_spec(path: &Path, s: &BlockSpectrum) -> Result<()> {
    Ok(std::fs::write(path, spec_to_string(s)?)?)
}

pub fn read_spec(path: &Path) -> Result<BlockSpectrum> {
    spec_from_str(&std::fs::read_to_string(path)?)
}

// --------------------------------------------------------------- .plam

pub fn plam_to_string(basis: &PermBasisSet) -> String {
    let mut out = format!(
        "PLAM N={} LAMBDA {} COUNT {}\n",
        basis.shape().n(),
        partition_tokens(basis.shape()),
        basis.perms().len()
    );
    for p in basis.perms() {
        out.push_str(&format!("{p}\n"));
    }
    out
}

pub fn plam_from_str(s: &str) -> Result<PermBasisSet> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty basis file".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&"PLAM") {
        return Err(Error::Parse(format!("expected PLAM header, got `{header}`")));
    }
    let lambda_pos = tokens
        .iter()
        .position(|t| *t == "LAMBDA")
        .ok_or_else(|| Error::Parse("missing LAMBDA in header".into()))?;
    let count_pos = tokens
        .iter()
        .position(|t| *t == "COUNT")
        .ok_or_else(|| Error::Parse("missing COUNT in header".into()))?;
    let shape = parse_partition_tokens(&tokens[lambda_pos + 1..count_pos])?;
    let count: usize = tokens
        .get(count_pos + 1)
        .ok_or_else(|| Error::Parse("missing COUNT value".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad COUNT: {e}")))?;
    let perms: Vec<Permutation> = lines.map(|l| l.parse()).collect::<Result<_>>()?;
    if perms.len() != count {
        return Err(Error::Parse(format!(
            "header says {count} permutations, found {}",
            perms.len()
        )));
    }
    PermBasisSet::from_parts(shape, perms)
}

pub fn write_plam(path: &Path, basis: &PermBasisSet) -> Result<()> {
    Ok(std::fs::write(path, plam_to_string(basis))?)
}

pub fn read_plam(path: &Path) -> Result<PermBasisSet> {
    plam_from_str(&std::fs::read_to_string(path)?)
}

// --------------------------------------------------------------- .smap

pub fn smap_to_string(map: &StarTransferMap) -> Result<String> {
    let shape = map.shape();
    let d = shape.dimension() as usize;
    let mut out = format!(
        "SMAP N={} LAMBDA {} DIM {d}\n",
        shape.n(),
        partition_tokens(shape)
    );
    let m = map.matrix();
    for i in 0..d * d {
        let row: Vec<String> = (0..d * d).map(|j| m[(i, j)].to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn smap_from_str(s: &str) -> Result<StarTransferMap> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty map file".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&"SMAP") {
        return Err(Error::Parse(format!("expected SMAP header, got `{header}`")));
    }
    let lambda_pos = tokens
        .iter()
        .position(|t| *t == "LAMBDA")
        .ok_or_else(|| Error::Parse("missing LAMBDA in header".into()))?;
    let dim_pos = tokens
        .iter()
        .position(|t| *t == "DIM")
        .ok_or_else(|| Error::Parse("missing DIM in header".into()))?;
    let shape = parse_partition_tokens(&tokens[lambda_pos + 1..dim_pos])?;
    let d: usize = tokens
        .get(dim_pos + 1)
        .ok_or_else(|| Error::Parse("missing DIM value".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad DIM: {e}")))?;
    let mut rows = Vec::with_capacity(d * d);
    for _ in 0..d * d {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("truncated map".into()))?;
        let row: Vec<Coefficient> = line
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<Result<_>>()?;
        if row.len() != d * d {
            return Err(Error::Parse(format!(
                "map row has {} entries, expected {}",
                row.len(),
                d * d
            )));
        }
        rows.push(row);
    }
    StarTransferMap::from_parts(shape, CMatrix::from_rows(rows)?)
}

pub fn write_smap(path: &Path, map: &StarTransferMap) -> Result<()> {
    Ok(std::fs::write(path, smap_to_string(map)?)?)
}

pub fn read_smap(path: &Path) -> Result<StarTransferMap> {
    smap_from_str(&std::fs::read_to_string(path)?)
}

// ---------------------------------------------------------------- .ket

pub fn ket_to_string(v: &HilbertVector) -> Result<String> {
    let mut out = format!("KET N={} K={}\n", v.sites(), v.letters());
    for (sigma, c) in v.terms() {
        let (re, im) = rational_pair(c)?;
        out.push_str(&format!("{re} {im} : {sigma}\n"));
    }
    Ok(out)
}

pub fn ket_from_str(s: &str) -> Result<HilbertVector> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty ket file".into()))?;
    let fields = header_fields(header, "KET")?;
    let n = header_usize(&fields, "N")?;
    let k = header_usize(&fields, "K")?;
    if k == 0 || k > u8::MAX as usize {
        return Err(Error::Parse(format!("bad letter count {k}")));
    }
    let mut terms = Vec::new();
    for line in lines {
        let (coeffs, values) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad ket line `{line}`")))?;
        let mut it = coeffs.split_whitespace();
        let re = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad ket line `{line}`")))?;
        let im = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad ket line `{line}`")))?;
        let vals: Vec<u8> = values
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|e| Error::Parse(format!("bad spin value `{t}`: {e}")))
            })
            .collect::<Result<_>>()?;
        if vals.len() != n {
            return Err(Error::Parse(format!(
                "ket line has {} sites, expected {n}",
                vals.len()
            )));
        }
        terms.push((SpinConfiguration::new(k as u8, vals)?, parse_pair(re, im)?));
    }
    HilbertVector::from_terms(n, k as u8, terms)
}

pub fn write_ket(path: &Path, v: &HilbertVector) -> Result<()> {
    Ok(std::fs::write(path, ket_to_string(v)?)?)
}

pub fn read_ket(path: &Path) -> Result<HilbertVector> {
    ket_from_str(&std::fs::read_to_string(path)?)
}

// ----------------------------------------------------------- matrices

pub fn matrix_to_string(m: &CMatrix) -> String {
    let mut out = format!("MAT ROWS={} COLS={}\n", m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    Ok(std::fs::write(path, matrix_to_string(m))?)
}

// ------------------------------------------- commutation symmetries

/// One generator per line: `<images> ; <ε re>/<den> <ε im>/<den>`.
pub fn commutation_generators_from_str(s: &str) -> Result<Vec<(Permutation, Coefficient)>> {
    let mut out = Vec::new();
    for line in s.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (images, eps) = line
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("bad generator line `{line}`")))?;
        let p: Permutation = images.trim().parse()?;
        let mut it = eps.split_whitespace();
        let re = it
            .next()
            .ok_or_else(|| Error::Parse(format!("missing ε in `{line}`")))?;
        let im = it
            .next()
            .ok_or_else(|| Error::Parse(format!("missing ε imaginary part in `{line}`")))?;
        out.push((p, parse_pair(re, im)?));
    }
    if out.is_empty() {
        return Err(Error::Parse("no generators found".into()));
    }
    Ok(out)
}

pub fn read_commutation_generators(path: &Path) -> Result<Vec<(Permutation, Coefficient)>> {
    commutation_generators_from_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::central_idempotent;
    use crate::coeff::Coefficient as C;
    use crate::dft::dft;
    use crate::star_transfer::{build_star_map_basis, compute_plam};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gre_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let a = crate::verify::random_element(&mut rng, 4, 6);
            let text = gre_to_string(&a).unwrap();
            let back = gre_from_str(&text).unwrap();
            assert!(back.equals(&a), "{text}");
        }
    }

    #[test]
    fn gre_example_format() {
        let a = GroupRingElement::basis(Permutation::from_images(vec![2, 1, 3]).unwrap())
            .scale(&C::from_ratio(1, 2));
        let text = gre_to_string(&a).unwrap();
        assert_eq!(text, "GRE N=3 terms=1\n1/2 0/1 : 2 1 3\n");
    }

    #[test]
    fn gre_bad_inputs() {
        assert!(gre_from_str("").is_err());
        assert!(gre_from_str("GRE N=3 terms=2\n1/2 0/1 : 2 1 3\n").is_err());
        assert!(gre_from_str("GRE N=3 terms=1\n1/2 0/1 : 2 1\n").is_err());
    }

    #[test]
    fn spec_roundtrip() {
        let z = central_idempotent(&Partition::new(vec![3, 1]).unwrap());
        let s = dft(&z);
        let text = spec_to_string(&s).unwrap();
        let back = spec_from_str(&text).unwrap();
        assert!(back.equals(&s), "{text}");
    }

    #[test]
    fn plam_and_smap_roundtrip() {
        let shape = Partition::new(vec![3, 1]).unwrap();
        let basis = compute_plam(&shape).unwrap();
        let text = plam_to_string(&basis);
        let back = plam_from_str(&text).unwrap();
        assert_eq!(back.perms(), basis.perms());
        assert_eq!(back.shape(), basis.shape());

        let map = build_star_map_basis(&basis).unwrap();
        let mtext = smap_to_string(&map).unwrap();
        let mback = smap_from_str(&mtext).unwrap();
        assert!(mback.matrix().equals(map.matrix()));
    }

    #[test]
    fn ket_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..10 {
            let v = crate::verify::random_vector(&mut rng, 3, 2);
            let text = ket_to_string(&v).unwrap();
            let back = ket_from_str(&text).unwrap();
            assert!(back.equals(&v), "{text}");
        }
    }

    #[test]
    fn commutation_generator_parsing() {
        let text = "# cyclic shift with ε = i\n2 3 4 1 ; 0/1 1/1\n";
        let gens = commutation_generators_from_str(text).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].0, Permutation::from_images(vec![2, 3, 4, 1]).unwrap());
        assert!(gens[0].1.equals(&C::i()));
        assert!(commutation_generators_from_str("").is_err());
        assert!(commutation_generators_from_str("2 1 ; 1/1\n").is_err());
    }
}
