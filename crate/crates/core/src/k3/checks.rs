use std::time::Instant;

use num_traits::{One, Zero};
use serde::Serialize;

use super::enumerate::enumerate_coset_norm;
use super::K3Error;
use crate::exact::{rat, rat_int, rat_serde, IntMatrix, Rational};
use crate::lattice::{BlockKind, Lattice, Overlattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Verified,
    PassedNecessaryOnly,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        self == Verdict::Fails
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    #[serde(serialize_with = "rat_serde::vecs")]
    pub witnesses: Vec<Vec<Rational>>,
    pub method: String,
    /// Wall time; kept out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn new(verdict: Verdict, method: &str, witnesses: Vec<Vec<Rational>>) -> Self {
        debug_assert!(verdict != Verdict::Fails || !witnesses.is_empty());
        Self {
            verdict,
            witnesses,
            method: method.to_string(),
            elapsed_ms: 0,
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis();
        self
    }
}

/// The lattice `L(G)` (ambient minus the lambda coordinate) and the lambda
/// position.
fn split_lambda(m: &Overlattice) -> Result<(Lattice, usize), K3Error> {
    let n = &m.ambient;
    let li = n.lambda_index().ok_or(K3Error::NoLambda)?;
    let keep: Vec<usize> = (0..n.rank()).filter(|&i| i != li).collect();
    let rows = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| n.gram[(i, j)].clone()).collect())
        .collect();
    Ok((Lattice::new(IntMatrix::from_rows(rows))?, li))
}

fn drop_index(x: &[Rational], li: usize) -> Vec<Rational> {
    x.iter()
        .enumerate()
        .filter(|&(i, _)| i != li)
        .map(|(_, c)| c.clone())
        .collect()
}

fn insert_index(x: Vec<Rational>, li: usize, value: Rational) -> Vec<Rational> {
    let mut v = x;
    v.insert(li, value);
    v
}

/// Norm `-2` vectors of `lambda^perp` in `M` lying outside `L(G)`.
pub fn urabe_condition_i(m: &Overlattice) -> Result<CheckReport, K3Error> {
    let start = Instant::now();
    let (l, li) = split_lambda(m)?;
    let mut witnesses = Vec::new();
    for class in m.glue_group() {
        if !class[li].is_zero() {
            continue;
        }
        let shift = drop_index(&class, li);
        if shift.iter().all(Zero::is_zero) {
            continue;
        }
        for v in enumerate_coset_norm(&l, &shift, &rat_int(-2))? {
            witnesses.push(insert_index(v, li, Rational::zero()));
        }
    }
    witnesses.sort();
    let verdict = if witnesses.is_empty() { Verdict::Holds } else { Verdict::Fails };
    Ok(CheckReport::new(verdict, "coset-enumeration", witnesses).timed(start))
}

/// Vectors `u = lambda/2 + v` of `M` with `u^2 = 0`, i.e. `v^2 = -1/2`.
pub fn urabe_condition_ii(m: &Overlattice) -> Result<CheckReport, K3Error> {
    let start = Instant::now();
    let (l, li) = split_lambda(m)?;
    let block = m
        .ambient
        .blocks
        .iter()
        .position(|b| b.kind == BlockKind::Lambda)
        .ok_or(K3Error::NoLambda)?;
    if !m.projection_reachable(block, 1)? {
        return Ok(CheckReport::new(Verdict::Holds, "no-odd-lambda-class", vec![]).timed(start));
    }
    let half = rat(1, 2);
    let mut witnesses = Vec::new();
    for class in m.glue_group() {
        if class[li] != half {
            continue;
        }
        let shift = drop_index(&class, li);
        for v in enumerate_coset_norm(&l, &shift, &rat(-1, 2))? {
            witnesses.push(insert_index(v, li, half.clone()));
        }
    }
    witnesses.sort();
    let verdict = if witnesses.is_empty() { Verdict::Holds } else { Verdict::Fails };
    Ok(CheckReport::new(verdict, "coset-enumeration", witnesses).timed(start))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassExpectation {
    pub norm: i64,
    pub lambda_pairing: i64,
}

/// `x` lies in `M` with the expected norm and pairing with `lambda`.
pub fn class_check(m: &Overlattice, x: &[Rational], expect: ClassExpectation) -> Result<bool, K3Error> {
    let li = m.ambient.lambda_index().ok_or(K3Error::NoLambda)?;
    let lambda: Vec<Rational> = (0..m.rank())
        .map(|i| if i == li { Rational::one() } else { Rational::zero() })
        .collect();
    Ok(m.member(x)
        && m.ambient.norm(x) == rat_int(expect.norm)
        && m.ambient.pair(x, &lambda) == rat_int(expect.lambda_pairing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ambient, overlattice};

    fn glue(dim: usize, entries: &[(usize, i64, i64)]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for &(i, p, q) in entries {
            v[i] = rat(p, q);
        }
        v
    }

    #[test]
    fn trivial_overlattice_holds() {
        let n = ambient(&"E6+A11+2A1".parse().unwrap()).unwrap();
        let m = Overlattice::trivial(&n);
        assert_eq!(urabe_condition_i(&m).unwrap().verdict, Verdict::Holds);
        assert_eq!(urabe_condition_ii(&m).unwrap().verdict, Verdict::Holds);
        let lam = ambient(&"A1".parse().unwrap()).unwrap();
        assert_eq!(urabe_condition_ii(&Overlattice::trivial(&lam)).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn half_root_sum_violates_first_condition() {
        // the all-halves vector of 4A1 has norm -2: new roots outside L(G)
        let n = ambient(&"4A1".parse().unwrap()).unwrap();
        let g = glue(5, &[(1, 1, 2), (2, 1, 2), (3, 1, 2), (4, 1, 2)]);
        let m = overlattice(&n, &[g]).unwrap();
        let r = urabe_condition_i(&m).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.witnesses.len(), 16);
    }

    #[test]
    fn odd_lambda_class_violates_second_condition() {
        // lambda/2 + e/2 in Z lambda + A1 has norm 0
        let n = ambient(&"A1".parse().unwrap()).unwrap();
        let m = overlattice(&n, &[glue(2, &[(0, 1, 2), (1, 1, 2)])]).unwrap();
        let r = urabe_condition_ii(&m).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn lambda_class() {
        let n = ambient(&"A2".parse().unwrap()).unwrap();
        let m = Overlattice::trivial(&n);
        let lam = glue(3, &[(0, 1, 1)]);
        let e = ClassExpectation { norm: 2, lambda_pairing: 2 };
        assert!(class_check(&m, &lam, e).unwrap());
        let e = ClassExpectation { norm: 2, lambda_pairing: 1 };
        assert!(!class_check(&m, &lam, e).unwrap());
    }
}
