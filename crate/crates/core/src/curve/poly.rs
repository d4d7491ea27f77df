use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::CurveError;
use crate::exact::{ExactError, QuadExt};

/// Univariate polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly(pub Vec<QuadExt>);

impl UPoly {
    pub fn new(mut c: Vec<QuadExt>) -> Self {
        while c.last().is_some_and(QuadExt::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: QuadExt) -> Self {
        UPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&QuadExt> {
        self.0.last()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = QuadExt::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&QuadExt::from_int(-1)))
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![QuadExt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), ExactError> {
        let dd = d.degree().ok_or(ExactError::DivisionByZero)?;
        let inv = d.lead().unwrap().inverse()?;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut q = vec![QuadExt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UPoly::new(q), UPoly::new(r)))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.inverse().expect("nonzero lead")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &QuadExt) -> QuadExt {
        let mut acc = QuadExt::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &QuadExt::from_int(i as i64))
                .collect(),
        )
    }
}

/// Polynomial in two affine variables `x, y`; keys are `(deg_x, deg_y)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LocalPoly {
    terms: BTreeMap<(u32, u32), QuadExt>,
}

impl LocalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: QuadExt) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        Self::from_terms([((1, 0), QuadExt::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([((0, 1), QuadExt::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), QuadExt)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    fn add_term(&mut self, k: (u32, u32), c: &QuadExt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(QuadExt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &QuadExt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> QuadExt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn at_origin(&self) -> QuadExt {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Lowest total degree of a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, c);
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, &-c);
        }
        p
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in &self.terms {
            for ((d, e), f) in &o.terms {
                p.add_term((a + d, b + e), &(c * f));
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(QuadExt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `x^dx y^dy * self`.
    pub fn shift(&self, dx: u32, dy: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|((i, j), c)| ((i + dx, j + dy), c.clone())).collect(),
        }
    }

    /// `self(x, 0)`.
    pub fn on_x_axis(&self) -> UPoly {
        let deg = self.terms.keys().filter(|k| k.1 == 0).map(|k| k.0).max();
        let Some(deg) = deg else { return UPoly::zero() };
        let mut c = vec![QuadExt::zero(); deg as usize + 1];
        for ((i, j), v) in &self.terms {
            if *j == 0 {
                c[*i as usize] = v.clone();
            }
        }
        UPoly::new(c)
    }

    /// `self / y`; every term must contain `y`.
    pub fn div_y(&self) -> Self {
        assert!(self.terms.keys().all(|k| k.1 >= 1), "polynomial not divisible by y");
        Self {
            terms: self.terms.iter().map(|((i, j), c)| ((*i, j - 1), c.clone())).collect(),
        }
    }

    pub fn swap_xy(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect(),
        }
    }

    pub fn deriv_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c * &QuadExt::from_int(*i as i64))),
        )
    }

    pub fn deriv_y(&self) -> Self {
        self.swap_xy().deriv_x().swap_xy()
    }

    /// Coefficients of the degree-`d` part: `x^d, x^{d-1} y, ..., y^d`.
    pub fn homogeneous_part(&self, d: u32) -> Vec<QuadExt> {
        (0..=d).map(|k| self.coeff(d - k, k)).collect()
    }

    pub fn eval(&self, x: &QuadExt, y: &QuadExt) -> QuadExt {
        let mut acc = QuadExt::zero();
        for ((i, j), c) in &self.terms {
            acc += &(&(c * &x.pow(*i)) * &y.pow(*j));
        }
        acc
    }

    /// `self(a x + b y, c x + d y)`.
    pub fn linear_change(&self, m: [&QuadExt; 4]) -> Self {
        let nx = LocalPoly::x().scale(m[0]).add(&LocalPoly::y().scale(m[1]));
        let ny = LocalPoly::x().scale(m[2]).add(&LocalPoly::y().scale(m[3]));
        self.compose(&nx, &ny)
    }

    /// `self(px, py)`.
    pub fn compose(&self, px: &Self, py: &Self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            out = out.add(&px.pow(*i).mul(&py.pow(*j)).scale(c));
        }
        out
    }

    /// Bivariate view: coefficient of `y^j` as a polynomial in `x`.
    pub fn by_y_powers(&self) -> Vec<UPoly> {
        let dy = self.terms.keys().map(|k| k.1).max().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<QuadExt>> = vec![Vec::new(); dy];
        for ((i, j), c) in &self.terms {
            let row = &mut rows[*j as usize];
            if row.len() <= *i as usize {
                row.resize(*i as usize + 1, QuadExt::zero());
            }
            row[*i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    pub fn from_y_powers(rows: &[UPoly]) -> Self {
        Self::from_terms(
            rows.iter()
                .enumerate()
                .flat_map(|(j, r)| r.0.iter().enumerate().map(move |(i, c)| ((i as u32, j as u32), c.clone()))),
        )
    }
}

/// Point of the projective plane, first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjPoint {
    #[serde(serialize_with = "ser_coords")]
    coords: [QuadExt; 3],
}

fn ser_coords<S: serde::Serializer>(c: &[QuadExt; 3], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    serde::Serialize::serialize(&v, s)
}

impl ProjPoint {
    pub fn new(c: [QuadExt; 3]) -> Result<Self, CurveError> {
        let first = c.iter().position(|x| !x.is_zero()).ok_or(CurveError::ZeroPoint)?;
        let inv = c[first].inverse()?;
        let coords = [0, 1, 2].map(|i| c[i].try_mul(&inv));
        let [a, b, d] = coords;
        Ok(Self { coords: [a?, b?, d?] })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new([a, b, c].map(QuadExt::from_int)).expect("nonzero point")
    }

    pub fn coords(&self) -> &[QuadExt; 3] {
        &self.coords
    }

    /// Index of the largest-index nonzero coordinate, where the affine chart
    /// is taken.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_zero()).expect("nonzero point")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// Polynomial in `x0, x1, x2`; curves use homogeneous ones.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TernaryForm {
    terms: BTreeMap<[u32; 3], QuadExt>,
}

impl TernaryForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: QuadExt) -> Self {
        Self::from_terms([([0, 0, 0], c)])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0, 0, 0];
        e[i] = 1;
        Self::from_terms([(e, QuadExt::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = ([u32; 3], QuadExt)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    fn add_term(&mut self, k: [u32; 3], c: &QuadExt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(QuadExt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &QuadExt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: [u32; 3]) -> QuadExt {
        self.terms.get(&e).cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree when homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// The quadratic field of the coefficients (`0` when all rational).
    pub fn field(&self) -> Result<i64, CurveError> {
        let mut d = 0;
        for c in self.terms.values() {
            let e = c.field();
            if e != 0 {
                if d != 0 && d != e {
                    return Err(ExactError::MixedFields(d, e).into());
                }
                d = e;
            }
        }
        Ok(d)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, c);
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, &-c);
        }
        p
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                p.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], &(c * d));
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(QuadExt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut k = *e;
            k[i] -= 1;
            (k, c * &QuadExt::from_int(e[i] as i64))
        }))
    }

    pub fn eval(&self, p: &[QuadExt; 3]) -> QuadExt {
        let mut acc = QuadExt::zero();
        for (e, c) in &self.terms {
            acc += &(&(&(c * &p[0].pow(e[0])) * &p[1].pow(e[1])) * &p[2].pow(e[2]));
        }
        acc
    }

    /// Constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<QuadExt> {
        match self.terms.len() {
            0 => Some(QuadExt::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    /// Dehomogenize at `p.chart()` and move `p` to the origin. The two
    /// remaining coordinates, in increasing index order, become `x, y`.
    pub fn local_at(&self, p: &ProjPoint) -> LocalPoly {
        let k = p.chart();
        let pk = p.coords[k].inverse().expect("chart coordinate is nonzero");
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let mut lin: [LocalPoly; 3] = Default::default();
        lin[k] = LocalPoly::constant(QuadExt::one());
        for (slot, &i) in others.iter().enumerate() {
            let var = if slot == 0 { LocalPoly::x() } else { LocalPoly::y() };
            lin[i] = var.add(&LocalPoly::constant(&p.coords[i] * &pk));
        }
        let maxdeg = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<LocalPoly>> = lin
            .iter()
            .map(|l| {
                let mut v = vec![LocalPoly::constant(QuadExt::one())];
                for _ in 0..maxdeg {
                    let next = v.last().unwrap().mul(l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = LocalPoly::zero();
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            out = out.add(&t.scale(c));
        }
        out
    }

    /// `self` with `x_k = 1`, the other two coordinates as `x, y` in index
    /// order (no translation).
    pub fn dehomogenize(&self, k: usize) -> LocalPoly {
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        LocalPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| ((e[others[0]], e[others[1]]), c.clone())),
        )
    }

    pub fn parse(s: &str) -> Result<Self, CurveError> {
        super::parse::parse_polynomial(s)
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            let coeff = if c.is_rational() { c.to_string() } else { format!("({c})") };
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
