use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::base::{BlockKind, Lattice};
use super::LatticeError;
use crate::exact::{common_denominator, hnf, is_even_integer, is_integer, IntMatrix, RatMatrix, Rational};

/// Rational coordinates over the basis of an ambient lattice.
pub type GlueVector = Vec<Rational>;

/// Overlattice `M` of `N` generated by `N` and a list of glue vectors.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub ambient: Lattice,
    pub glue: Vec<GlueVector>,
    /// Rows form a basis of `M` in ambient coordinates.
    pub basis: RatMatrix,
    pub gram: IntMatrix,
    pub index: BigInt,
    basis_inv: RatMatrix,
}

/// Coordinates reduced into `[0, 1)`, i.e. the class in `N^v / N` when the
/// ambient basis is used.
pub fn fractional_part(x: &[Rational]) -> Vec<Rational> {
    x.iter().map(|c| c - c.floor()).collect()
}

impl Overlattice {
    /// `M = N`.
    pub fn trivial(n: &Lattice) -> Self {
        overlattice(n, &[]).expect("the trivial overlattice always exists")
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    /// `x` (ambient coordinates) lies in `M`.
    pub fn member(&self, x: &[Rational]) -> bool {
        self.basis_inv.vec_mul(x).iter().all(is_integer)
    }

    /// Coordinates of `x` over the basis of `M`, when `x` lies in `M`.
    pub fn coordinates(&self, x: &[Rational]) -> Option<Vec<BigInt>> {
        let c = self.basis_inv.vec_mul(x);
        c.iter()
            .all(is_integer)
            .then(|| c.into_iter().map(|r| r.to_integer()).collect())
    }

    /// Every basis vector of `self` lies in `other`.
    pub fn is_contained_in(&self, other: &Overlattice) -> bool {
        (0..self.basis.rows()).all(|i| other.member(self.basis.row(i)))
    }

    /// The glue subgroup `M/N` as fractional coordinate vectors, sorted.
    pub fn glue_group(&self) -> Vec<Vec<Rational>> {
        let gens: Vec<Vec<Rational>> = self
            .glue
            .iter()
            .map(|g| fractional_part(g))
            .filter(|g| g.iter().any(|c| !c.is_zero()))
            .collect();
        let zero = vec![Rational::zero(); self.rank()];
        let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
        seen.insert(zero.clone());
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y: Vec<Rational> = x.iter().zip(g).map(|(a, b)| a + b).collect();
                let y = fractional_part(&y);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Some element of `M` projects onto `target` times the canonical
    /// generator of block `component` in that block's discriminant group.
    pub fn projection_reachable(&self, component: usize, target: u64) -> Result<bool, LatticeError> {
        let block = self
            .ambient
            .blocks
            .get(component)
            .ok_or(LatticeError::ComponentOutOfRange(component))?;
        let (gen, order) = block
            .canonical_generator()
            .ok_or_else(|| LatticeError::NonCyclic(block.label()))?;
        let k = Rational::from_integer(BigInt::from(target % order));
        let want = fractional_part(&gen.iter().map(|g| g * &k).collect::<Vec<_>>());
        Ok(self
            .glue_group()
            .iter()
            .any(|x| x[block.range()] == want[..]))
    }

    /// Residue of `x` in each block as a multiple of that block's canonical
    /// generator (`None` where the block class is not such a multiple).
    pub fn residue_code(&self, x: &[Rational]) -> Vec<Option<u64>> {
        residue_code(&self.ambient, x)
    }
}

/// Residue of `x` in each block of `n` as a multiple of the block's
/// canonical generator; `None` for non-cyclic blocks or classes off the
/// generated subgroup.
pub fn residue_code(n: &Lattice, x: &[Rational]) -> Vec<Option<u64>> {
    n.blocks
        .iter()
        .map(|b| {
            let (gen, order) = b.canonical_generator()?;
            let local = fractional_part(&x[b.range()]);
            (0..order).find(|&k| {
                let kk = Rational::from_integer(BigInt::from(k));
                let cand: Vec<Rational> = gen.iter().map(|g| g * &kk).collect();
                fractional_part(&cand) == local
            })
        })
        .collect()
}

/// Builds the overlattice of `n` generated by `glue`.
///
/// The basis is the row Hermite form of the stack `[D*I; D*glue]` divided
/// by the common denominator `D`.
pub fn overlattice(n: &Lattice, glue: &[GlueVector]) -> Result<Overlattice, LatticeError> {
    let dim = n.rank();
    for g in glue {
        if g.len() != dim {
            return Err(LatticeError::Dimension(format!(
                "glue vector has {} coordinates, lattice rank is {dim}",
                g.len()
            )));
        }
        if !n.gram.apply(g).iter().all(is_integer) {
            return Err(LatticeError::NotInDual);
        }
    }
    for (i, g) in glue.iter().enumerate() {
        if !is_even_integer(&n.norm(g)) {
            return Err(LatticeError::NotEvenOverlattice);
        }
        for h in &glue[..i] {
            if !is_integer(&n.pair(g, h)) {
                return Err(LatticeError::NotEvenOverlattice);
            }
        }
    }

    let denom = common_denominator(glue.iter().flatten());
    let mut rows: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { denom.clone() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let dr = Rational::from_integer(denom.clone());
    for g in glue {
        rows.push(g.iter().map(|c| (c * &dr).to_integer()).collect());
    }
    let h = hnf(&IntMatrix::from_rows(rows));
    let top = IntMatrix::from_rows((0..dim).map(|i| h.row(i).to_vec()).collect());
    let det_h = top.det().abs();
    let index = num_traits::pow(denom.clone(), dim) / &det_h;

    let basis = RatMatrix::from_rows(
        (0..dim)
            .map(|i| top.row(i).iter().map(|c| Rational::new(c.clone(), denom.clone())).collect())
            .collect(),
    );
    let gram_rat = basis.mul_int(&n.gram).mul(&basis.transpose());
    let gram = gram_rat.to_integer().ok_or(LatticeError::NotEvenOverlattice)?;
    let basis_inv = basis.inverse()?;
    Ok(Overlattice {
        ambient: n.clone(),
        glue: glue.to_vec(),
        basis,
        gram,
        index,
        basis_inv,
    })
}

/// `1` at coordinate `i`, zero elsewhere.
pub fn unit_vector(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim)
        .map(|j| if i == j { Rational::one() } else { Rational::zero() })
        .collect()
}

/// Whether `x` has a nonzero coordinate on the lambda block of `n`.
pub fn lambda_coordinate(n: &Lattice, x: &[Rational]) -> Option<Rational> {
    n.blocks
        .iter()
        .find(|b| b.kind == BlockKind::Lambda)
        .map(|b| x[b.start].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::lattice::base::ambient;

    fn example1() -> (Lattice, GlueVector, GlueVector) {
        let n = ambient(&"E6+A11+2A1".parse().unwrap()).unwrap();
        let mut u = vec![Rational::zero(); 20];
        for i in 1..=11 {
            u[6 + i] = rat(i as i64, 2);
        }
        u[18] = rat(1, 2);
        u[19] = rat(1, 2);
        let mut v = vec![Rational::zero(); 20];
        for (k, c) in [3, 2, 4, 6, 5, 4].iter().enumerate() {
            v[1 + k] = rat(*c, 3);
        }
        for i in 1..=11 {
            v[6 + i] = rat(i as i64, 6);
        }
        v[18] = rat(1, 2);
        v[19] = rat(1, 2);
        (n, u, v)
    }

    #[test]
    fn empty_glue_is_identity() {
        let n = ambient(&"A2".parse().unwrap()).unwrap();
        let m = Overlattice::trivial(&n);
        assert_eq!(m.index, BigInt::one());
        assert_eq!(m.gram, n.gram);
    }

    #[test]
    fn example_one_indices() {
        let (n, u, v) = example1();
        let m1 = overlattice(&n, &[u.clone()]).unwrap();
        let m2 = overlattice(&n, &[v.clone()]).unwrap();
        assert_eq!(m1.index, BigInt::from(2));
        assert_eq!(m1.det().abs(), BigInt::from(72));
        assert_eq!(m2.index, BigInt::from(6));
        assert_eq!(m2.det().abs(), BigInt::from(8));
        assert!(m1.member(&u));
        assert!(m1.is_contained_in(&m2));
        assert!(!m2.is_contained_in(&m1));
        let mut half_lambda = vec![Rational::zero(); 20];
        half_lambda[0] = rat(1, 2);
        assert!(!m2.member(&half_lambda));
        for i in 0..20 {
            assert!(m2.member(&unit_vector(20, i)));
        }
    }

    #[test]
    fn projections() {
        let (n, u, v) = example1();
        let m1 = overlattice(&n, &[u]).unwrap();
        let m2 = overlattice(&n, &[v]).unwrap();
        assert!(!m1.projection_reachable(0, 1).unwrap());
        assert!(m2.projection_reachable(2, 2).unwrap());
        assert!(m1.projection_reachable(3, 0).unwrap());
        assert!(m1.projection_reachable(9, 0).is_err());
    }

    #[test]
    fn residue_codes_of_example_vector() {
        let (n, _, v) = example1();
        let code = residue_code(&n, &v);
        assert_eq!(code, vec![Some(0), Some(1), Some(2), Some(1), Some(1)]);
    }

    #[test]
    fn rejects_bad_glue() {
        let n = ambient(&"A1".parse().unwrap()).unwrap();
        assert_eq!(
            overlattice(&n, &[vec![Rational::zero(), rat(1, 3)]]).unwrap_err(),
            LatticeError::NotInDual
        );
        // e/2 has norm -1/2
        assert_eq!(
            overlattice(&n, &[vec![Rational::zero(), rat(1, 2)]]).unwrap_err(),
            LatticeError::NotEvenOverlattice
        );
        // lambda/2 + e/2 has norm 0
        let m = overlattice(&n, &[vec![rat(1, 2), rat(1, 2)]]).unwrap();
        assert_eq!(m.index, BigInt::from(2));
        assert_eq!(m.det().abs(), BigInt::one());
        assert!(!m.member(&[rat(1, 2), rat_int(0)]));
    }
}
