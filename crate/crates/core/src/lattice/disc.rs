use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::base::Lattice;
use super::overlattice::Overlattice;
use super::LatticeError;
use crate::exact::{common_denominator, rat_int, rat_mod, snf, IntMatrix, RatMatrix, Rational};

/// Default ceiling on group order for the brute-force isomorphism search.
pub const DEFAULT_FORM_SEARCH_BOUND: u64 = 10_000;

/// Finite quadratic form `A = M^v / M` with `q` in `Q/2Z`, `b` in `Q/Z`.
#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantForm {
    /// Order of each generator.
    pub orders: Vec<u64>,
    /// Generators as rational vectors in ambient coordinates.
    pub generators: Vec<Vec<Rational>>,
    /// Exact pairings of the generator lifts; `q` and `b` are read mod 2 and 1.
    pub pairing: Vec<Vec<Rational>>,
}

impl DiscriminantForm {
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Invariant factors `d1 | d2 | ...`, each `> 1`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let n = self.orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &o) in self.orders.iter().enumerate() {
            m[(i, i)] = BigInt::from(o);
        }
        snf(&m)
            .invariant_factors()
            .into_iter()
            .map(|d| d.to_u64().expect("small group"))
            .filter(|&d| d > 1)
            .collect()
    }

    /// Minimal number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors().len()
    }

    /// `q(sum a_i g_i)` reduced into `[0, 2)`.
    pub fn q(&self, a: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..a.len() {
            for j in 0..a.len() {
                acc += &self.pairing[i][j] * rat_int(a[i] * a[j]);
            }
        }
        rat_mod(&acc, &rat_int(2))
    }

    /// `b(sum a_i g_i, sum c_j g_j)` reduced into `[0, 1)`.
    pub fn b(&self, a: &[i64], c: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..a.len() {
            for j in 0..c.len() {
                acc += &self.pairing[i][j] * rat_int(a[i] * c[j]);
            }
        }
        rat_mod(&acc, &rat_int(1))
    }

    /// The same group with `q` replaced by `-q`.
    pub fn negated(&self) -> Self {
        Self {
            orders: self.orders.clone(),
            generators: self.generators.clone(),
            pairing: self
                .pairing
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// Orthogonal sum; generator vectors are padded into the concatenated
    /// coordinate space.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let d1 = self.generators.first().map_or(0, Vec::len);
        let d2 = other.generators.first().map_or(0, Vec::len);
        let mut generators = Vec::new();
        for g in &self.generators {
            let mut v = g.clone();
            v.resize(d1 + d2, Rational::zero());
            generators.push(v);
        }
        for g in &other.generators {
            let mut v = vec![Rational::zero(); d1];
            v.extend(g.iter().cloned());
            generators.push(v);
        }
        let n1 = self.len();
        let n = n1 + other.len();
        let mut pairing = vec![vec![Rational::zero(); n]; n];
        for i in 0..n1 {
            for j in 0..n1 {
                pairing[i][j] = self.pairing[i][j].clone();
            }
        }
        for i in 0..other.len() {
            for j in 0..other.len() {
                pairing[n1 + i][n1 + j] = other.pairing[i][j].clone();
            }
        }
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        Self {
            orders,
            generators,
            pairing,
        }
    }

    /// Smallest `N` with `N q` in `Z` mod `2N` and `N b` in `Z` mod `N`.
    pub fn scale(&self) -> u64 {
        common_denominator(self.pairing.iter().flatten())
            .to_u64()
            .expect("small denominators")
    }

    /// Integer tables for fast evaluation at scale `n` (a multiple of
    /// [`Self::scale`]).
    pub fn finite(&self, n: u64) -> FiniteQuadraticForm {
        assert_eq!(n % self.scale(), 0, "scale must be a multiple of the form's scale");
        let nn = rat_int(n as i64);
        let to_i = |x: &Rational, m: i64| -> i64 {
            let v = (x * &nn).to_integer().to_i64().expect("small value");
            v.rem_euclid(m)
        };
        let s = self.len();
        let qn = (0..s).map(|i| to_i(&self.pairing[i][i], 2 * n as i64)).collect();
        let bn = (0..s)
            .map(|i| (0..s).map(|j| to_i(&self.pairing[i][j], n as i64)).collect())
            .collect();
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            n: n as i64,
            qn,
            bn,
        }
    }
}

/// A discriminant form tabulated at integer scale `n`: `q` values live in
/// `Z/2n`, `b` values in `Z/n`. Elements are exponent tuples.
#[derive(Clone, Debug)]
pub struct FiniteQuadraticForm {
    pub orders: Vec<u64>,
    pub n: i64,
    qn: Vec<i64>,
    bn: Vec<Vec<i64>>,
}

impl FiniteQuadraticForm {
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent tuple of the element with mixed-radix index `idx`.
    pub fn element(&self, mut idx: u64) -> Vec<i64> {
        self.orders
            .iter()
            .map(|&o| {
                let a = idx % o;
                idx /= o;
                a as i64
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn q(&self, a: &[i64]) -> i64 {
        let m = 2 * self.n;
        let mut acc: i64 = 0;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            acc = (acc + a[i] * a[i] % m * self.qn[i]) % m;
            for j in i + 1..a.len() {
                if a[j] != 0 {
                    acc = (acc + 2 * (a[i] * a[j] % m) * self.bn[i][j]) % m;
                }
            }
        }
        acc.rem_euclid(m)
    }

    pub fn b(&self, a: &[i64], c: &[i64]) -> i64 {
        let m = self.n;
        let mut acc: i64 = 0;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..c.len() {
                if c[j] != 0 {
                    acc = (acc + (a[i] * c[j] % m) * self.bn[i][j]) % m;
                }
            }
        }
        acc.rem_euclid(m)
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &[i64]) -> u64 {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &o)| o / (x as u64).gcd(&o))
            .fold(1, |acc, k| acc.lcm(&k))
    }

    pub fn add(&self, a: &[i64], c: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(c)
            .zip(&self.orders)
            .map(|((x, y), &o)| (x + y).rem_euclid(o as i64))
            .collect()
    }

    pub fn scale_elem(&self, k: i64, a: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(&self.orders)
            .map(|(x, &o)| (k * x).rem_euclid(o as i64))
            .collect()
    }

    pub fn index_of(&self, a: &[i64]) -> u64 {
        let mut idx = 0;
        for (x, &o) in a.iter().zip(&self.orders).rev() {
            idx = idx * o + *x as u64;
        }
        idx
    }
}

/// Discriminant form of a lattice with Gram `gram` whose basis, in ambient
/// coordinates, is given by the rows of `basis`.
pub fn disc_from_gram(gram: &IntMatrix, basis: &RatMatrix) -> Result<DiscriminantForm, LatticeError> {
    let n = gram.rows();
    if gram.det().is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let s = snf(gram);
    let mut orders = Vec::new();
    let mut local: Vec<Vec<Rational>> = Vec::new();
    for (i, d) in s.invariant_factors().into_iter().enumerate() {
        if d.is_one() {
            continue;
        }
        // y = V e_i / d_i lies in the dual lattice
        let y: Vec<Rational> = (0..n)
            .map(|r| Rational::new(s.v[(r, i)].clone(), d.clone()))
            .collect();
        orders.push(d.to_u64().expect("small invariant factor"));
        local.push(y);
    }
    let pairing = local
        .iter()
        .map(|x| local.iter().map(|y| gram.pair(x, y)).collect())
        .collect();
    let generators = local.iter().map(|y| basis.vec_mul(y)).collect();
    Ok(DiscriminantForm {
        orders,
        generators,
        pairing,
    })
}

pub fn lattice_discriminant_form(l: &Lattice) -> Result<DiscriminantForm, LatticeError> {
    disc_from_gram(&l.gram, &RatMatrix::identity(l.rank()))
}

pub fn discriminant_form(m: &Overlattice) -> Result<DiscriminantForm, LatticeError> {
    disc_from_gram(&m.gram, &m.basis)
}

/// Same invariant factors.
pub fn groups_isomorphic(a: &DiscriminantForm, b: &DiscriminantForm) -> bool {
    a.invariant_factors() == b.invariant_factors()
}

pub fn forms_isomorphic(a: &DiscriminantForm, b: &DiscriminantForm) -> Result<bool, LatticeError> {
    forms_isomorphic_bounded(a, b, DEFAULT_FORM_SEARCH_BOUND)
}

/// Searches for a group isomorphism carrying `q_a` to `q_b`, assigning
/// images to the generators of `a` one at a time.
pub fn forms_isomorphic_bounded(
    a: &DiscriminantForm,
    b: &DiscriminantForm,
    bound: u64,
) -> Result<bool, LatticeError> {
    if a.order() > bound || b.order() > bound {
        return Err(LatticeError::TooLarge(a.order().max(b.order())));
    }
    if !groups_isomorphic(a, b) {
        return Ok(false);
    }
    let n = a.scale().lcm(&b.scale());
    let fa = a.finite(n);
    let fb = b.finite(n);
    let s = fa.orders.len();
    let unit = |i: usize| -> Vec<i64> { (0..s).map(|j| (i == j) as i64).collect() };
    let gens: Vec<Vec<i64>> = (0..s).map(unit).collect();

    let elems: Vec<Vec<i64>> = fb.elements().collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| {
            let (o, q) = (fa.element_order(g), fa.q(g));
            (0..elems.len())
                .filter(|&k| fb.element_order(&elems[k]) == o && fb.q(&elems[k]) == q)
                .collect()
        })
        .collect();

    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    Ok(search(&fa, &fb, &gens, &elems, &candidates, &mut chosen))
}

fn search(
    fa: &FiniteQuadraticForm,
    fb: &FiniteQuadraticForm,
    gens: &[Vec<i64>],
    elems: &[Vec<i64>],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
) -> bool {
    let depth = chosen.len();
    if depth == gens.len() {
        return is_bijective(fa, fb, elems, chosen);
    }
    for &k in &candidates[depth] {
        let ok = (0..depth).all(|j| {
            fa.b(&gens[depth], &gens[j]) == fb.b(&elems[k], &elems[chosen[j]])
        });
        if !ok {
            continue;
        }
        chosen.push(k);
        if search(fa, fb, gens, elems, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn is_bijective(
    fa: &FiniteQuadraticForm,
    fb: &FiniteQuadraticForm,
    elems: &[Vec<i64>],
    chosen: &[usize],
) -> bool {
    let mut hit = vec![false; fb.order() as usize];
    for x in fa.elements() {
        let mut img = vec![0i64; fb.orders.len()];
        for (i, &xi) in x.iter().enumerate() {
            img = fb.add(&img, &fb.scale_elem(xi, &elems[chosen[i]]));
        }
        let idx = fb.index_of(&img) as usize;
        if hit[idx] {
            return false;
        }
        hit[idx] = true;
    }
    true
}
