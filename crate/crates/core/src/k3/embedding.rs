//! Existence of a primitive embedding `M -> Lambda` into the K3 lattice of
//! signature `(3, 19)`, via an even complement `T` of signature
//! `(2, 20 - rank M)` with discriminant form `-q_M`.

use std::time::Instant;

use num_integer::Roots;

use super::checks::{CheckReport, Verdict};
use super::K3Error;
use crate::exact::{rat_int, IntMatrix};
use crate::lattice::{
    discriminant_form, forms_isomorphic, lattice_discriminant_form, milgram_signature, DiscriminantForm, Lattice,
    Overlattice,
};

/// Facts about `M` shared by every method.
pub struct EmbeddingContext {
    pub rank: usize,
    pub length: usize,
    pub order: u64,
    pub disc: DiscriminantForm,
}

impl EmbeddingContext {
    pub fn new(m: &Overlattice) -> Result<Self, K3Error> {
        let disc = discriminant_form(m)?;
        Ok(Self {
            rank: m.rank(),
            length: disc.length(),
            order: disc.order(),
            disc,
        })
    }

    /// Rank of the orthogonal complement inside `Lambda`.
    pub fn complement_rank(&self) -> usize {
        22 - self.rank
    }
}

/// One way of deciding the embedding question after the necessary
/// conditions passed. `None` means "not applicable here".
pub trait EmbeddingMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn attempt(&self, ctx: &EmbeddingContext) -> Result<Option<CheckReport>, K3Error>;
}

/// `length(A_M) <= 20 - rank M` is enough.
pub struct Corollary;

impl EmbeddingMethod for Corollary {
    fn name(&self) -> &'static str {
        "corollary"
    }

    fn attempt(&self, ctx: &EmbeddingContext) -> Result<Option<CheckReport>, K3Error> {
        Ok((ctx.rank <= 20 && ctx.length <= 20 - ctx.rank)
            .then(|| CheckReport::new(Verdict::Verified, self.name(), vec![])))
    }
}

/// For `rank M = 20` the complement is positive definite of rank 2: list
/// every reduced even binary form of determinant `|A_M|` and compare
/// discriminant forms.
pub struct BinarySearch;

/// Reduced even Grams `[[2a, b], [b, 2c]]` with `4ac - b^2 = n`,
/// `0 <= b <= a <= c`.
pub fn reduced_even_binary_forms(n: u64) -> Vec<IntMatrix> {
    let n = n as i64;
    let mut out = Vec::new();
    let amax = (n / 3).sqrt() + 1;
    for a in 1..=amax {
        for b in 0..=a {
            let num = n + b * b;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c >= a && 3 * a * a <= n {
                out.push(IntMatrix::from_i64(&[&[2 * a, b], &[b, 2 * c]]));
            }
        }
    }
    out
}

impl EmbeddingMethod for BinarySearch {
    fn name(&self) -> &'static str {
        "binary-search"
    }

    fn attempt(&self, ctx: &EmbeddingContext) -> Result<Option<CheckReport>, K3Error> {
        if ctx.complement_rank() != 2 {
            return Ok(None);
        }
        let target = ctx.disc.negated();
        let candidates = reduced_even_binary_forms(ctx.order);
        for g in &candidates {
            let t = Lattice::new(g.clone())?;
            if forms_isomorphic(&lattice_discriminant_form(&t)?, &target)? {
                let witness = g.to_rows().into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect();
                return Ok(Some(CheckReport::new(Verdict::Verified, self.name(), witness)));
            }
        }
        let witness = if candidates.is_empty() {
            vec![vec![rat_int(ctx.order as i64)]]
        } else {
            candidates
                .iter()
                .map(|g| g.to_rows().into_iter().flatten().map(Into::into).collect())
                .collect()
        };
        Ok(Some(CheckReport::new(Verdict::Fails, self.name(), witness)))
    }
}

/// Methods in the order they are tried by [`embedding_exists`].
pub fn default_methods() -> Vec<Box<dyn EmbeddingMethod>> {
    vec![Box::new(Corollary), Box::new(BinarySearch)]
}

pub fn embedding_method(name: &str) -> Option<Box<dyn EmbeddingMethod>> {
    default_methods().into_iter().find(|m| m.name() == name)
}

/// Length bound and Milgram congruence for the complement.
fn necessary(ctx: &EmbeddingContext) -> Result<Option<CheckReport>, K3Error> {
    if ctx.rank > 20 {
        return Ok(Some(CheckReport::new(
            Verdict::Fails,
            "necessary-only",
            vec![vec![rat_int(ctx.rank as i64), rat_int(20)]],
        )));
    }
    let bound = ctx.complement_rank();
    if ctx.length > bound {
        return Ok(Some(CheckReport::new(
            Verdict::Fails,
            "necessary-only",
            vec![vec![rat_int(ctx.length as i64), rat_int(bound as i64)]],
        )));
    }
    // signature(T) = 2 - (20 - r) and q_T = -q_M
    let sigma = milgram_signature(&ctx.disc)? as i64;
    let expect = (2 - ctx.rank as i64).rem_euclid(8);
    if sigma != expect {
        return Ok(Some(CheckReport::new(
            Verdict::Fails,
            "necessary-only",
            vec![vec![rat_int(sigma), rat_int(expect)]],
        )));
    }
    Ok(None)
}

pub fn embedding_exists(m: &Overlattice) -> Result<CheckReport, K3Error> {
    embedding_exists_with(m, &default_methods())
}

pub fn embedding_exists_with(m: &Overlattice, methods: &[Box<dyn EmbeddingMethod>]) -> Result<CheckReport, K3Error> {
    let start = Instant::now();
    let ctx = EmbeddingContext::new(m)?;
    let mut report = match necessary(&ctx)? {
        Some(r) => r,
        None => {
            let mut decided = None;
            for method in methods {
                if let Some(r) = method.attempt(&ctx)? {
                    decided = Some(r);
                    break;
                }
            }
            decided.unwrap_or_else(|| CheckReport::new(Verdict::PassedNecessaryOnly, "necessary-only", vec![]))
        }
    };
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational};
    use crate::lattice::{ambient, overlattice};
    use num_traits::Zero;

    #[test]
    fn binary_forms_are_reduced_and_complete() {
        for n in 1..80u64 {
            let forms = reduced_even_binary_forms(n);
            for g in &forms {
                assert_eq!(g.det(), n.into());
            }
            // brute force over a box
            let mut count = 0;
            for a in 1..=n as i64 {
                for b in 0..=a {
                    for c in a..=n as i64 {
                        if 4 * a * c - b * b == n as i64 {
                            count += 1;
                        }
                    }
                }
            }
            assert_eq!(forms.len(), count, "n = {n}");
        }
    }

    #[test]
    fn polarization_alone() {
        let n = ambient(&"A1".parse().unwrap()).unwrap();
        let lam = Lattice::new(IntMatrix::from_i64(&[&[2]])).unwrap();
        let m = Overlattice::trivial(&lam);
        let r = embedding_exists(&m).unwrap();
        assert_eq!((r.verdict, r.method.as_str()), (Verdict::Verified, "corollary"));
        assert_eq!(embedding_exists(&Overlattice::trivial(&n)).unwrap().verdict, Verdict::Verified);
    }

    #[test]
    fn example_one_first_member() {
        let n = ambient(&"E6+A11+2A1".parse().unwrap()).unwrap();
        let mut u = vec![Rational::zero(); 20];
        for i in 1..=11 {
            u[6 + i] = rat(i as i64, 2);
        }
        u[18] = rat(1, 2);
        u[19] = rat(1, 2);
        let m = overlattice(&n, &[u]).unwrap();
        let r = embedding_exists(&m).unwrap();
        assert_eq!((r.verdict, r.method.as_str()), (Verdict::Verified, "binary-search"));
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(embedding_method("corollary").unwrap().name(), "corollary");
        assert!(embedding_method("ternary-search").is_none());
    }
}
