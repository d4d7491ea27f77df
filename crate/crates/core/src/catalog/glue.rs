//! Digit codes for glue vectors.
//!
//! A code such as `"026"` lists one digit per block of `Z lambda + L(G)`:
//! the first digit multiplies `lambda/2`, the others multiply the canonical
//! generator of each root component in configuration order. `"-"` is the
//! trivial overlattice and `"{c1,c2}"` lists several generators of one
//! overlattice.

use num_bigint::BigInt;
use num_traits::Zero;

use super::CatalogError;
use crate::exact::Rational;
use crate::lattice::{ambient, fractional_part, overlattice, residue_code, DynkinConfig, GlueVector, Lattice, RootType};

/// The digit strings inside a code: `[]` for `"-"`, one string for a plain
/// code, several for a brace set.
pub fn split_code(code: &str) -> Result<Vec<String>, CatalogError> {
    let c = code.trim();
    if c == "-" {
        return Ok(vec![]);
    }
    let inner = match c.strip_prefix('{') {
        Some(rest) => rest
            .strip_suffix('}')
            .ok_or_else(|| CatalogError::Code(format!("unbalanced braces in {code:?}")))?,
        None => c,
    };
    let parts: Vec<String> = inner.split(',').map(|p| p.trim().to_string()).collect();
    if parts.iter().any(|p| p.is_empty() || !p.chars().all(|ch| ch.is_ascii_digit())) {
        return Err(CatalogError::Code(format!("{code:?} is not a digit code")));
    }
    Ok(parts)
}

/// Which generator was used for each odd `D` component (by component index).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decoding {
    pub vectors: Vec<GlueVector>,
    pub alternates: Vec<usize>,
}

fn digits_vector(n: &Lattice, digits: &str, alternates: &[usize]) -> Result<GlueVector, CatalogError> {
    let ds: Vec<u32> = digits.chars().map(|c| c.to_digit(10).expect("checked digits")).collect();
    if ds.len() != n.blocks.len() {
        return Err(CatalogError::Code(format!(
            "code {digits:?} has {} digits, expected {} (lambda plus one per component)",
            ds.len(),
            n.blocks.len()
        )));
    }
    let mut v = vec![Rational::zero(); n.rank()];
    for (bi, (b, &d)) in n.blocks.iter().zip(&ds).enumerate() {
        if d == 0 {
            continue;
        }
        let component = bi.checked_sub(1);
        let gen = if component.is_some_and(|c| alternates.contains(&c)) {
            b.alternate_generator()
        } else {
            b.canonical_generator()
        };
        let (g, _) = gen.ok_or_else(|| CatalogError::Code(format!("unsupported non-cyclic component {}", b.label())))?;
        let k = Rational::from_integer(BigInt::from(d));
        for (slot, gi) in v[b.range()].iter_mut().zip(&g) {
            *slot = gi * &k;
        }
    }
    Ok(fractional_part(&v))
}

fn odd_d_components(cfg: &DynkinConfig) -> Vec<usize> {
    cfg.components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kind == RootType::D && c.rank % 2 == 1)
        .map(|(i, _)| i)
        .collect()
}

/// Decodes a code against `cfg`.
///
/// The canonical generators are tried first. If the result is not an even
/// overlattice and `cfg` has odd `D` components, every choice of the other
/// order-4 generator on those components is tried in turn; the choice that
/// worked is recorded in [`Decoding::alternates`].
pub fn decode_glue(code: &str, cfg: &DynkinConfig) -> Result<Decoding, CatalogError> {
    if cfg.has_even_d() {
        let c = cfg.components.iter().find(|c| !c.has_cyclic_discriminant()).expect("has even D");
        return Err(CatalogError::Code(format!("unsupported non-cyclic component {c}")));
    }
    let parts = split_code(code)?;
    let n = ambient(cfg)?;
    let odd_d = odd_d_components(cfg);
    let mut diagnostics = Vec::new();
    for mask in 0u32..(1 << odd_d.len()) {
        let alternates: Vec<usize> = odd_d
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &c)| c)
            .collect();
        let vectors = parts
            .iter()
            .map(|p| digits_vector(&n, p, &alternates))
            .collect::<Result<Vec<_>, _>>()?;
        match overlattice(&n, &vectors) {
            Ok(_) => return Ok(Decoding { vectors, alternates }),
            Err(e) => diagnostics.push(format!("alternates {alternates:?}: {e}")),
        }
    }
    Err(CatalogError::Code(format!(
        "no valid decoding of {code:?} on {cfg}: {}",
        diagnostics.join("; ")
    )))
}

/// Digits of `x` over the canonical generators, or `None` when some block
/// class is not a multiple below 10 of its generator.
pub fn encode_glue(x: &[Rational], cfg: &DynkinConfig) -> Result<Option<String>, CatalogError> {
    let n = ambient(cfg)?;
    if x.len() != n.rank() {
        return Err(CatalogError::Code(format!("vector has {} coordinates, expected {}", x.len(), n.rank())));
    }
    let mut out = String::new();
    for r in residue_code(&n, x) {
        match r {
            Some(d) if d < 10 => out.push(char::from_digit(d as u32, 10).expect("digit")),
            _ => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Human-readable statement of the generators behind digit codes.
pub fn generator_conventions() -> Vec<String> {
    vec![
        "digit 0 multiplies lambda/2".into(),
        "A_n: w = sum_i i e_i/(n+1) along the chain e_1..e_n".into(),
        "D_n (n odd): spinor class -G^{-1} e_n, e_n attached to e_{n-2}; the other spinor class is tried if decoding fails".into(),
        "E6, E7: -G^{-1} e_n at the end of the long chain e_2..e_n, e_1 attached to e_4".into(),
        "D_n (n even): not decodable (non-cyclic discriminant)".into(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn trivial_code() {
        let cfg: DynkinConfig = "A17+A1".parse().unwrap();
        assert!(decode_glue("-", &cfg).unwrap().vectors.is_empty());
    }

    #[test]
    fn a17_sixfold_generator() {
        let cfg: DynkinConfig = "A17+A1".parse().unwrap();
        let d = decode_glue("060", &cfg).unwrap();
        let v = &d.vectors[0];
        assert!(v[0].is_zero());
        for i in 1..=17 {
            let expect = rat(i, 3);
            assert_eq!(v[i as usize], &expect - expect.floor());
        }
        assert!(v[18].is_zero());
        assert_eq!(encode_glue(v, &cfg).unwrap().as_deref(), Some("060"));
    }

    #[test]
    fn d7_code_and_brace_sets() {
        let cfg: DynkinConfig = "D7+A11".parse().unwrap();
        let d = decode_glue("026", &cfg).unwrap();
        assert_eq!(encode_glue(&d.vectors[0], &cfg).unwrap().as_deref(), Some("026"));
        let cfg: DynkinConfig = "D7+A7+A3+A1".parse().unwrap();
        assert_eq!(decode_glue("{02420,10401}", &cfg).unwrap().vectors.len(), 2);
    }

    #[test]
    fn bad_codes() {
        let cfg: DynkinConfig = "A17+A1".parse().unwrap();
        assert!(decode_glue("06", &cfg).is_err());
        assert!(decode_glue("0a0", &cfg).is_err());
        assert!(decode_glue("{060", &cfg).is_err());
        // lambda/2 alone is not even
        assert!(decode_glue("100", &cfg).is_err());
        let d4: DynkinConfig = "D4+A1".parse().unwrap();
        assert!(decode_glue("010", &d4).unwrap_err().to_string().contains("non-cyclic"));
    }
}
