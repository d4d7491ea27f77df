use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::dynkin::{Component, DynkinConfig, RootType};
use super::LatticeError;
use crate::exact::{common_denominator, invert_symmetric, IntMatrix, RatMatrix, Rational};

/// What a contiguous block of basis vectors stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    /// The polarization `lambda` with `lambda^2 = 2`.
    Lambda,
    Root(Component),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub start: usize,
    pub len: usize,
}

impl Block {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }

    pub fn label(&self) -> String {
        match self.kind {
            BlockKind::Lambda => "lambda".into(),
            BlockKind::Root(c) => c.to_string(),
        }
    }

    fn local_gram(&self) -> IntMatrix {
        match self.kind {
            BlockKind::Lambda => IntMatrix::from_i64(&[&[2]]),
            BlockKind::Root(c) => root_gram(c),
        }
    }

    /// The generator used for digit codes, in local coordinates, with its
    /// order. `None` for non-cyclic blocks (`D_{2k}`).
    ///
    /// `lambda/2` for the polarization; otherwise `-G^{-1} e_k` where `e_k`
    /// is the last node for `A_n`, `E6`, `E7` and the spinor node `e_n` for
    /// odd `D_n`.
    pub fn canonical_generator(&self) -> Option<(Vec<Rational>, u64)> {
        match self.kind {
            BlockKind::Lambda => Some((vec![Rational::new(1.into(), 2.into())], 2)),
            BlockKind::Root(c) if !c.has_cyclic_discriminant() => None,
            BlockKind::Root(c) => Some(fundamental_weight(c, c.rank - 1)),
        }
    }

    /// The other order-4 class for odd `D_n` (the node `e_{n-1}`).
    pub fn alternate_generator(&self) -> Option<(Vec<Rational>, u64)> {
        match self.kind {
            BlockKind::Root(c) if c.kind == RootType::D && c.rank % 2 == 1 => {
                Some(fundamental_weight(c, c.rank - 2))
            }
            _ => None,
        }
    }
}

/// `-G^{-1} e_k` for the root lattice of `c` and the order of its class.
fn fundamental_weight(c: Component, k: usize) -> (Vec<Rational>, u64) {
    let inv = invert_symmetric(&root_gram(c)).expect("root lattices are nondegenerate");
    let w: Vec<Rational> = (0..c.rank).map(|i| -inv[(i, k)].clone()).collect();
    let order = common_denominator(&w);
    (w, u64::try_from(order).expect("small order"))
}

fn root_gram(c: Component) -> IntMatrix {
    let mut g = IntMatrix::zeros(c.rank, c.rank);
    for i in 0..c.rank {
        g[(i, i)] = BigInt::from(-2);
    }
    for (i, j) in c.edges() {
        g[(i, j)] = BigInt::one();
        g[(j, i)] = BigInt::one();
    }
    g
}

/// Integral lattice given by a labeled basis and its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub labels: Vec<String>,
    pub gram: IntMatrix,
    /// Block structure when the lattice is an orthogonal sum of known pieces.
    pub blocks: Vec<Block>,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        let labels = (1..=gram.rows()).map(|i| format!("b{i}")).collect();
        Ok(Self {
            labels,
            gram,
            blocks: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// `(positive, negative)` inertia; zero directions are not counted.
    pub fn signature(&self) -> (usize, usize) {
        signature(&self.gram)
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature() == (0, self.rank())
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.gram.pair(x, y)
    }

    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.gram.pair(x, x)
    }

    pub fn inverse_gram(&self) -> Result<RatMatrix, LatticeError> {
        Ok(invert_symmetric(&self.gram)?)
    }

    /// Index of the `lambda` block, if present.
    pub fn lambda_index(&self) -> Option<usize> {
        self.blocks
            .iter()
            .find(|b| b.kind == BlockKind::Lambda)
            .map(|b| b.start)
    }

    /// The block structure as Dynkin components (lambda omitted).
    pub fn root_components(&self) -> Vec<Component> {
        self.blocks
            .iter()
            .filter_map(|b| match b.kind {
                BlockKind::Root(c) => Some(c),
                BlockKind::Lambda => None,
            })
            .collect()
    }

    /// Orthogonal sum; labels and blocks of `other` are shifted.
    pub fn orthogonal_sum(&self, other: &Lattice) -> Lattice {
        let shift = self.rank();
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| Block {
            start: b.start + shift,
            ..b.clone()
        }));
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Lattice {
            labels,
            gram: self.gram.direct_sum(&other.gram),
            blocks,
        }
    }
}

/// Inertia of a symmetric integer matrix by congruence diagonalisation.
pub fn signature(g: &IntMatrix) -> (usize, usize) {
    let mut a = g.to_rational();
    let n = a.rows();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all diagonal entries zero: mix two coordinates
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[(i, j)].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                // row/col i += row/col j
                for k in 0..n {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for k in 0..n {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[(i, p)].is_zero() {
                continue;
            }
            let f = &a[(i, p)] / &d;
            for &j in &active {
                let v = &f * &a[(p, j)];
                a[(i, j)] -= v;
            }
        }
    }
    (pos, neg)
}

/// Negative definite root lattice of one component, `-2` on the diagonal
/// and `1` for adjacent nodes.
pub fn root_lattice(c: Component) -> Result<Lattice, LatticeError> {
    let c = Component::new(c.kind, c.rank)?;
    Ok(Lattice {
        labels: (1..=c.rank).map(|i| format!("e{i}")).collect(),
        gram: root_gram(c),
        blocks: vec![Block {
            kind: BlockKind::Root(c),
            start: 0,
            len: c.rank,
        }],
    })
}

/// Root lattice `L(G)` of a configuration, components in the given order,
/// basis `e1..ek` numbered consecutively.
pub fn config_lattice(cfg: &DynkinConfig) -> Result<Lattice, LatticeError> {
    let mut out = Lattice {
        labels: Vec::new(),
        gram: IntMatrix::zeros(0, 0),
        blocks: Vec::new(),
    };
    for &c in &cfg.components {
        out = out.orthogonal_sum(&root_lattice(c)?);
    }
    out.labels = (1..=out.rank()).map(|i| format!("e{i}")).collect();
    Ok(out)
}

/// `Z lambda + L(G)` with `lambda^2 = 2`; basis `lambda, e1, .., ek`.
pub fn ambient(cfg: &DynkinConfig) -> Result<Lattice, LatticeError> {
    if cfg.rank() > 19 {
        return Err(LatticeError::RankOverflow(cfg.rank()));
    }
    let lam = Lattice {
        labels: vec!["lambda".into()],
        gram: IntMatrix::from_i64(&[&[2]]),
        blocks: vec![Block {
            kind: BlockKind::Lambda,
            start: 0,
            len: 1,
        }],
    };
    Ok(lam.orthogonal_sum(&config_lattice(cfg)?))
}

/// Gram of a single block, exposed for callers that work per component.
pub fn block_gram(b: &Block) -> IntMatrix {
    b.local_gram()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn small_root_lattices() {
        let a1 = root_lattice(Component::a(1)).unwrap();
        assert_eq!(a1.gram, IntMatrix::from_i64(&[&[-2]]));
        let a2 = root_lattice(Component::a(2)).unwrap();
        assert_eq!(a2.gram, IntMatrix::from_i64(&[&[-2, 1], &[1, -2]]));
        assert_eq!(a2.det().abs(), BigInt::from(3));
        let e6 = root_lattice(Component::e(6)).unwrap();
        assert_eq!(e6.rank(), 6);
        assert_eq!(e6.det().abs(), BigInt::from(3));
    }

    #[test]
    fn determinants_match_component_orders() {
        for c in ["A1", "A5", "A17", "D4", "D5", "D7", "E6", "E7", "E8"] {
            let c: Component = c.parse().unwrap();
            let l = root_lattice(c).unwrap();
            assert_eq!(l.det().abs(), BigInt::from(c.discriminant_order()), "{c}");
            assert!(l.is_negative_definite());
        }
    }

    #[test]
    fn ambient_determinants() {
        let cfg: DynkinConfig = "E6+A11+2A1".parse().unwrap();
        let n = ambient(&cfg).unwrap();
        assert_eq!(n.rank(), 20);
        assert_eq!(n.det().abs(), BigInt::from(288));
        assert_eq!(n.signature(), (1, 19));
        let n = ambient(&"6A2".parse().unwrap()).unwrap();
        assert_eq!((n.rank(), n.det().abs()), (13, BigInt::from(1458)));
        let n = ambient(&"A1".parse().unwrap()).unwrap();
        assert_eq!((n.rank(), n.det().abs()), (2, BigInt::from(4)));
        assert!(ambient(&"A20".parse().unwrap()).is_err());
    }

    #[test]
    fn e6_generator_matches_example_vector() {
        let e6 = root_lattice(Component::e(6)).unwrap();
        let (w, order) = e6.blocks[0].canonical_generator().unwrap();
        assert_eq!(order, 3);
        let expect: Vec<_> = [3, 2, 4, 6, 5, 4].iter().map(|&k| rat(k, 3)).collect();
        assert_eq!(w, expect);
        assert_eq!(e6.norm(&w), rat(-4, 3));
    }

    #[test]
    fn generator_norms() {
        let cases = [("A11", 12, rat(-11, 12)), ("E7", 2, rat(-3, 2)), ("D7", 4, rat(-7, 4))];
        for (c, ord, q) in cases {
            let l = root_lattice(c.parse().unwrap()).unwrap();
            let (w, o) = l.blocks[0].canonical_generator().unwrap();
            assert_eq!(o, ord, "{c}");
            assert_eq!(l.norm(&w), q, "{c}");
        }
        let d6 = root_lattice(Component::d(6)).unwrap();
        assert!(d6.blocks[0].canonical_generator().is_none());
        let d5 = root_lattice(Component::d(5)).unwrap();
        let (alt, o) = d5.blocks[0].alternate_generator().unwrap();
        assert_eq!(o, 4);
        assert_eq!(d5.norm(&alt), rat(-5, 4));
    }

    #[test]
    fn indefinite_signature() {
        let h = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&h), (1, 1));
    }
}
