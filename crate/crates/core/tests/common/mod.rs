//! Independent oracles and seeded property checks shared by the test files.
//!
//! Nothing here calls into the library routine being checked: determinants
//! use Bareiss elimination, intersection numbers come from resultants,
//! discriminant data of `A_n` sums from closed formulas.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zcert_core::curve::{classify_local, local_intersection, milnor, Intersection, LocalPoly, ProjPoint, TernaryForm};
use zcert_core::exact::{QuadExt, Rational};
use zcert_core::k3::enumerate_norm;
use zcert_core::lattice::{
    ambient, config_lattice, discriminant_form, gauss_sum_magnitude_ok, milgram_signature, overlattice, Component,
    DynkinConfig, Overlattice, RootType,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Integer determinant by fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rational determinant by Gaussian elimination.
pub fn rat_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = r(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return r(0) };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// univariate and bivariate polynomials over Q (coefficients low to high)

pub type UPol = Vec<Rational>;

fn trim(mut p: UPol) -> UPol {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn upol_rem(a: &UPol, b: &UPol) -> UPol {
    let mut a = trim(a.clone());
    let b = trim(b.clone());
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() {
        let f = a.last().unwrap() / &lb;
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            let v = c * &f;
            a[i + shift] -= v;
        }
        a = trim(a);
    }
    a
}

pub fn upol_gcd(a: &UPol, b: &UPol) -> UPol {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let rem = upol_rem(&a, &b);
        a = b;
        b = rem;
    }
    a
}

/// Bivariate polynomial: `c[j][i]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug)]
pub struct Biv(pub Vec<Vec<Rational>>);

impl Biv {
    pub fn from_terms(terms: &[((u32, u32), i64)]) -> Self {
        let dy = terms.iter().map(|t| t.0 .1).max().unwrap_or(0) as usize;
        let dx = terms.iter().map(|t| t.0 .0).max().unwrap_or(0) as usize;
        let mut c = vec![vec![r(0); dx + 1]; dy + 1];
        for &((i, j), v) in terms {
            c[j as usize][i as usize] += r(v);
        }
        Biv(c)
    }

    pub fn to_local(&self) -> LocalPoly {
        LocalPoly::from_terms(self.0.iter().enumerate().flat_map(|(j, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| ((i as u32, j as u32), QuadExt::rational(c.clone())))
        }))
    }

    fn y_degree(&self) -> usize {
        self.0.len() - 1
    }

    fn x_degree(&self) -> usize {
        self.0.iter().map(|row| row.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Coefficients in `y` after substituting `x = x0`.
    fn at_x(&self, x0: &Rational) -> UPol {
        self.0
            .iter()
            .map(|row| row.iter().rev().fold(r(0), |acc, c| acc * x0 + c))
            .collect()
    }
}

fn sylvester_det(f: &UPol, g: &UPol) -> Rational {
    let (a, b) = (f.len() - 1, g.len() - 1);
    let n = a + b;
    let mut m = vec![vec![r(0); n]; n];
    for row in 0..b {
        for (k, c) in f.iter().rev().enumerate() {
            m[row][row + k] = c.clone();
        }
    }
    for row in 0..a {
        for (k, c) in g.iter().rev().enumerate() {
            m[b + row][row + k] = c.clone();
        }
    }
    rat_det(m)
}

/// `Res_y(f, g)` as a polynomial in `x`, by interpolation. Both `f` and `g`
/// must have a constant leading coefficient in `y`.
pub fn resultant_y(f: &Biv, g: &Biv) -> UPol {
    let bound = f.y_degree() * g.x_degree() + g.y_degree() * f.x_degree();
    let xs: Vec<Rational> = (0..=bound as i64).map(r).collect();
    let ys: Vec<Rational> = xs.iter().map(|x| sylvester_det(&f.at_x(x), &g.at_x(x))).collect();
    // Newton divided differences, then expand.
    let n = xs.len();
    let mut dd = ys.clone();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    let mut poly: UPol = vec![r(0)];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![r(0); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xs[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    trim(poly)
}

/// `I_0(f, g)` from the order of `Res_y` at `x = 0`, or `None` when the
/// precondition fails (a second common zero on `x = 0`).
pub fn resultant_intersection(f: &Biv, g: &Biv) -> Option<Intersection> {
    let (f0, g0) = (f.at_x(&r(0)), g.at_x(&r(0)));
    let common = upol_gcd(&f0, &g0);
    // the only common zero on x = 0 may be y = 0
    if common.is_empty() || common[..common.len() - 1].iter().any(|c| !c.is_zero()) {
        return None;
    }
    let res = resultant_y(f, g);
    if res.is_empty() {
        return Some(Intersection::Infinite);
    }
    let ord = res.iter().position(|c| !c.is_zero()).expect("nonzero");
    Some(Intersection::Finite(ord as u32))
}

/// A random pair through the origin, monic in `y`, often highly tangent.
pub fn random_curve_pair(rng: &mut ChaCha8Rng) -> (Biv, Biv) {
    let poly = |rng: &mut ChaCha8Rng, ydeg: u32| {
        let mut terms = vec![((0, ydeg), 1)];
        for i in 0..=3u32 {
            for j in 0..ydeg {
                if i + j > 0 && i + j <= 3 && rng.gen_bool(0.5) {
                    terms.push(((i, j), rng.gen_range(-3..=3)));
                }
            }
        }
        terms
    };
    let a = rng.gen_range(1..=3);
    let f = poly(rng, a);
    let g = if rng.gen_bool(0.5) {
        let b = rng.gen_range(1..=3);
        poly(rng, b)
    } else {
        // g = f + x^k h: contact of order about k along f
        let k = rng.gen_range(1..=4u32);
        let mut g = f.clone();
        for j in 0..a {
            if rng.gen_bool(0.5) {
                g.push(((k, j), rng.gen_range(-2..=2)));
            }
        }
        g.push(((k + 1, 0), rng.gen_range(1..=2)));
        g
    };
    (Biv::from_terms(&f), Biv::from_terms(&g))
}

/// Fulton's algorithm against the resultant order, one random pair.
/// `Ok(None)` when the pair does not meet the oracle's precondition.
pub fn check_fulton_pair(rng: &mut ChaCha8Rng) -> Result<Option<Intersection>, String> {
    let (f, g) = random_curve_pair(rng);
    let Some(expect) = resultant_intersection(&f, &g) else { return Ok(None) };
    let got = local_intersection(&f.to_local(), &g.to_local());
    if got != expect {
        return Err(format!("{f:?} / {g:?}: Fulton {got:?}, resultant {expect:?}"));
    }
    Ok(Some(got))
}

// ---------------------------------------------------------------------------
// lattices

pub fn int_rows(l: &zcert_core::lattice::Lattice) -> Vec<Vec<BigInt>> {
    l.gram.to_rows()
}

/// `|det (Z lambda + L)|` for a sum of `A_n`: `2 prod (n+1)`.
pub fn a_sum_det(ranks: &[usize]) -> BigInt {
    ranks.iter().fold(BigInt::from(2), |acc, &n| acc * BigInt::from(n + 1))
}

/// Glue of a random even overlattice of `Z lambda + sum A_n`, as multipliers
/// `(k_0 for lambda/2, k_i for w_i)`, with the oracle's index.
#[derive(Clone, Debug)]
pub struct GlueDraw {
    pub ranks: Vec<usize>,
    pub gens: Vec<Vec<i64>>,
    pub index: u64,
}

fn q_a(k: i64, n: i64) -> Rational {
    // q(k w) = -k (n+1-k)/(n+1) for w the generator of A_n^v/A_n
    let k = k.mod_floor(&(n + 1));
    Rational::new((-k * (n + 1 - k)).into(), (n + 1).into())
}

fn b_a(k: i64, l: i64, n: i64) -> Rational {
    Rational::new((-k * l * n).into(), (n + 1).into())
}

fn group_of(ranks: &[usize], gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let moduli: Vec<i64> = std::iter::once(2).chain(ranks.iter().map(|&n| n as i64 + 1)).collect();
    let zero = vec![0; moduli.len()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).zip(&moduli).map(|((a, b), m)| (a + b).mod_floor(m)).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

/// Oracle: the subgroup generated by `gens` is isotropic (even norms,
/// integral pairings).
pub fn isotropic(ranks: &[usize], gens: &[Vec<i64>]) -> Option<u64> {
    let group = group_of(ranks, gens);
    let q = |x: &Vec<i64>| {
        let mut s = Rational::new(BigInt::from(x[0] * x[0]), BigInt::from(2));
        for (k, &n) in x[1..].iter().zip(ranks) {
            s += q_a(*k, n as i64);
        }
        s
    };
    let b = |x: &Vec<i64>, y: &Vec<i64>| {
        let mut s = Rational::new(BigInt::from(x[0] * y[0]), BigInt::from(2));
        for ((k, l), &n) in x[1..].iter().zip(&y[1..]).zip(ranks) {
            s += b_a(*k, *l, n as i64);
        }
        s
    };
    for x in &group {
        let qx = q(x);
        if !qx.is_integer() || qx.to_integer().is_odd() {
            return None;
        }
        for y in gens {
            if !b(x, y).is_integer() {
                return None;
            }
        }
    }
    Some(group.len() as u64)
}

pub fn draw_even_glue(rng: &mut ChaCha8Rng) -> GlueDraw {
    loop {
        let mut ranks = Vec::new();
        let mut total = 0;
        let parts = rng.gen_range(1..=5);
        for _ in 0..parts {
            let n = rng.gen_range(1..=11usize);
            if total + n <= 19 {
                ranks.push(n);
                total += n;
            }
        }
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<Vec<i64>> = (0..ngens)
            .map(|_| {
                std::iter::once(rng.gen_range(0..2))
                    .chain(ranks.iter().map(|&n| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..=n as i64) }))
                    .collect()
            })
            .collect();
        if let Some(index) = isotropic(&ranks, &gens) {
            if index > 1 {
                return GlueDraw { ranks, gens, index };
            }
        }
    }
}

pub fn a_config(ranks: &[usize]) -> DynkinConfig {
    DynkinConfig::new(ranks.iter().map(|&n| Component::a(n)).collect())
}

/// Glue multipliers as ambient vectors: `k_0 lambda/2 + sum k_i w_i`.
pub fn glue_vectors(ranks: &[usize], gens: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let dim = 1 + ranks.iter().sum::<usize>();
    gens.iter()
        .map(|g| {
            let mut v = vec![r(0); dim];
            v[0] = Rational::new(g[0].into(), 2.into());
            let mut start = 1;
            for (k, &n) in g[1..].iter().zip(ranks) {
                for i in 1..=n {
                    v[start + i - 1] = Rational::new((k * i as i64).into(), (n as i64 + 1).into());
                }
                start += n;
            }
            v
        })
        .collect()
}

/// Index-squared law and index against the oracle for one random construction.
pub fn check_index_law(rng: &mut ChaCha8Rng) -> Result<Overlattice, String> {
    let d = draw_even_glue(rng);
    let cfg = a_config(&d.ranks);
    let n = ambient(&cfg).map_err(|e| e.to_string())?;
    let det_n = bareiss_det(int_rows(&n)).abs();
    if det_n != a_sum_det(&d.ranks) {
        return Err(format!("{cfg}: |det N| = {det_n}, closed form {}", a_sum_det(&d.ranks)));
    }
    let m = overlattice(&n, &glue_vectors(&d.ranks, &d.gens)).map_err(|e| format!("{cfg} {:?}: {e}", d.gens))?;
    if m.index != BigInt::from(d.index) {
        return Err(format!("{cfg} {:?}: index {} vs oracle {}", d.gens, m.index, d.index));
    }
    let det_m = bareiss_det(m.gram.to_rows()).abs();
    if &det_m * &m.index * &m.index != det_n {
        return Err(format!("{cfg} {:?}: |det M| {det_m} index {}", d.gens, m.index));
    }
    let order = discriminant_form(&m).map_err(|e| e.to_string())?.order();
    if BigInt::from(order) != det_m {
        return Err(format!("{cfg}: disc order {order} vs |det M| {det_m}"));
    }
    Ok(m)
}

/// Random glue that is not isotropic must be rejected.
pub fn check_rejects_odd_glue(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let ranks: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=6)).collect();
    let gens = vec![std::iter::once(rng.gen_range(0..2))
        .chain(ranks.iter().map(|&n| rng.gen_range(0..=n as i64)))
        .collect::<Vec<i64>>()];
    let cfg = a_config(&ranks);
    let n = ambient(&cfg).map_err(|e| e.to_string())?;
    let built = overlattice(&n, &glue_vectors(&ranks, &gens)).is_ok();
    let even = isotropic(&ranks, &gens).is_some();
    if built != even {
        return Err(format!("{cfg} {gens:?}: library {built}, oracle {even}"));
    }
    Ok(even)
}

/// Gauss-sum magnitude and Milgram's formula for an overlattice of
/// signature `(1, rank - 1)`.
pub fn check_milgram(m: &Overlattice) -> Result<(), String> {
    let d = discriminant_form(m).map_err(|e| e.to_string())?;
    if !gauss_sum_magnitude_ok(&d) {
        return Err(format!("|Gauss sum|^2 != {}", d.order()));
    }
    let rank = m.ambient.rank() as i64;
    let expect = (1 - (rank - 1)).rem_euclid(8) as u8;
    let got = milgram_signature(&d).map_err(|e| e.to_string())?;
    if got != expect {
        return Err(format!("Milgram gives {got}, signature is {expect} mod 8"));
    }
    Ok(())
}

/// Every root configuration of total rank at most 4.
pub fn small_configs() -> Vec<DynkinConfig> {
    [
        "A1", "A2", "A3", "A4", "D4", "2A1", "A2+A1", "3A1", "A3+A1", "2A2", "A2+2A1", "4A1",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

/// All `x` in the box `|x_i| <= bound` with `x^T G x = t`, sorted.
pub fn box_norm(g: &[Vec<BigInt>], t: i64, bound: i64) -> Vec<Vec<BigInt>> {
    let n = g.len();
    let mut out = Vec::new();
    let mut x = vec![-bound; n];
    loop {
        let mut s = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                s += &g[i][j] * x[i] * x[j];
            }
        }
        if s == BigInt::from(t) {
            out.push(x.iter().map(|&c| BigInt::from(c)).collect());
        }
        let mut i = 0;
        while i < n && x[i] == bound {
            x[i] = -bound;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    out.sort();
    out
}

/// Short-vector enumeration against the box. For rank at most 4 the
/// diagonal of `-G^{-1}` is at most 2, so `|x_i| <= sqrt(2|t|) <= |t|`.
pub fn check_enumeration(cfg: &DynkinConfig, t: i64) -> Result<usize, String> {
    let l = config_lattice(cfg).map_err(|e| e.to_string())?;
    let expect = box_norm(&int_rows(&l), t, t.abs());
    let got = enumerate_norm(&l, &r(t)).map_err(|e| e.to_string())?;
    if got != expect {
        return Err(format!("{cfg} norm {t}: enumerated {}, box {}", got.len(), expect.len()));
    }
    Ok(got.len())
}

// ---------------------------------------------------------------------------
// singularities

/// `y^2 - x^{n+1}` has Milnor number `n` at the origin.
pub fn check_milnor_an(n: u32) -> Result<(), String> {
    // homogenized: x1^2 x2^(n-1) - x0^(n+1), origin at (0:0:1)
    let f = TernaryForm::parse(&format!("x1^2*x2^{} - x0^{}", n - 1, n + 1)).map_err(|e| e.to_string())?;
    let mu = milnor(&f, &ProjPoint::from_ints(0, 0, 1)).map_err(|e| e.to_string())?;
    if mu != n {
        return Err(format!("milnor(y^2 - x^{}) = {mu}", n + 1));
    }
    Ok(())
}

/// Normal forms of the simple singularities used in the invariance check.
pub fn normal_forms() -> Vec<(Component, LocalPoly)> {
    let mono = |i: u32, j: u32| LocalPoly::from_terms([((i, j), QuadExt::from_int(1))]);
    let mut out = Vec::new();
    for n in 1..=17 {
        out.push((Component::a(n), mono(0, 2).add(&mono(n as u32 + 1, 0))));
    }
    for n in 4..=12 {
        out.push((Component::d(n), mono(2, 1).add(&mono(0, n as u32 - 1))));
    }
    out.push((Component::e(6), mono(3, 0).add(&mono(0, 4))));
    out.push((Component::e(7), mono(3, 0).add(&mono(1, 3))));
    out.push((Component::e(8), mono(3, 0).add(&mono(0, 5))));
    out
}

pub fn random_invertible(rng: &mut ChaCha8Rng) -> [i64; 4] {
    loop {
        let m = [(); 4].map(|_| rng.gen_range(-3..=3));
        if m[0] * m[3] - m[1] * m[2] != 0 {
            return m;
        }
    }
}

/// `classify_local` is unchanged by `count` random linear coordinate changes.
pub fn check_ade_invariance(kind: Component, f: &LocalPoly, rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    for _ in 0..count {
        let m = random_invertible(rng).map(QuadExt::from_int);
        let g = f.linear_change([&m[0], &m[1], &m[2], &m[3]]);
        let got = classify_local(&g).map_err(|e| format!("{kind} under {m:?}: {e}"))?;
        if got != kind {
            return Err(format!("{kind} under {m:?} classified as {got}"));
        }
    }
    Ok(())
}

pub fn is_a(c: &Component) -> bool {
    c.kind == RootType::A
}
