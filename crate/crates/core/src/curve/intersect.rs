//! Local intersection multiplicities (Fulton's algorithm), Milnor numbers and
//! recognition of simple singularities.

use std::fmt;

use serde::{Serialize, Serializer};

use super::gcd::gcd;
use super::poly::{LocalPoly, ProjPoint, TernaryForm};
use super::CurveError;
use crate::exact::QuadExt;
use crate::lattice::{Component, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Intersection {
    Finite(u32),
    Infinite,
}

impl Intersection {
    pub fn finite(self) -> Option<u32> {
        match self {
            Intersection::Finite(n) => Some(n),
            Intersection::Infinite => None,
        }
    }
}

impl fmt::Display for Intersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intersection::Finite(n) => write!(f, "{n}"),
            Intersection::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Intersection {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Intersection::Finite(n) => s.serialize_u32(*n),
            Intersection::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// `I_0(f, g)` at the origin of the affine plane.
pub fn local_intersection(f: &LocalPoly, g: &LocalPoly) -> Intersection {
    if f.is_zero() || g.is_zero() {
        return Intersection::Infinite;
    }
    if !f.at_origin().is_zero() || !g.at_origin().is_zero() {
        return Intersection::Finite(0);
    }
    let h = gcd(f, g);
    if h.total_degree().is_some_and(|d| d > 0) && h.at_origin().is_zero() {
        return Intersection::Infinite;
    }
    Intersection::Finite(fulton(f.clone(), g.clone()))
}

/// Fulton's reduction; assumes no common component through the origin.
fn fulton(mut f: LocalPoly, mut g: LocalPoly) -> u32 {
    let mut acc = 0;
    loop {
        if !f.at_origin().is_zero() || !g.at_origin().is_zero() {
            return acc;
        }
        let (mut fx, mut gx) = (f.on_x_axis(), g.on_x_axis());
        if gx.is_zero() {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut fx, &mut gx);
        }
        if fx.is_zero() {
            // f = y h: I(y, g) + I(h, g)
            acc += gx.order().expect("g(x, 0) is nonzero") as u32;
            f = f.div_y();
            continue;
        }
        let (r, s) = (fx.degree().unwrap(), gx.degree().unwrap());
        if r > s {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut fx, &mut gx);
        }
        let (r, s) = (fx.degree().unwrap(), gx.degree().unwrap());
        let c = gx.lead().unwrap() * &fx.lead().unwrap().inverse().expect("nonzero lead");
        g = g.sub(&f.shift((s - r) as u32, 0).scale(&c));
    }
}

/// `I_p(f, g)` for two plane curves, computed in the chart of `p`.
pub fn intersection_at(f: &TernaryForm, g: &TernaryForm, p: &ProjPoint) -> Intersection {
    local_intersection(&f.local_at(p), &g.local_at(p))
}

/// All three partials vanish at `p`.
pub fn singular_at(f: &TernaryForm, p: &ProjPoint) -> bool {
    (0..3).all(|i| f.partial(i).eval(p.coords()).is_zero())
}

/// Milnor number of a local germ at the origin.
pub fn milnor_local(f: &LocalPoly) -> Result<u32, CurveError> {
    if !f.at_origin().is_zero() {
        return Ok(0);
    }
    local_intersection(&f.deriv_x(), &f.deriv_y())
        .finite()
        .ok_or(CurveError::NotIsolated)
}

pub fn milnor(f: &TernaryForm, p: &ProjPoint) -> Result<u32, CurveError> {
    if !f.eval(p.coords()).is_zero() {
        return Ok(0);
    }
    milnor_local(&f.local_at(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityRecord {
    pub point: ProjPoint,
    #[serde(serialize_with = "ser_component")]
    pub ade: Component,
    pub milnor: u32,
}

pub(crate) fn ser_component<S: Serializer>(c: &Component, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}{}", c.kind, c.rank))
}

fn quadratic_disc(q: &[QuadExt]) -> QuadExt {
    &(&q[1] * &q[1]) - &(&QuadExt::from_int(4) * &(&q[0] * &q[2]))
}

/// Discriminant of the binary cubic `a x^3 + b x^2 y + c x y^2 + d y^3`.
fn cubic_disc(k: &[QuadExt]) -> QuadExt {
    let (a, b, c, d) = (&k[0], &k[1], &k[2], &k[3]);
    let n = |v: i64| QuadExt::from_int(v);
    let t1 = &(b * b) * &(c * c);
    let t2 = &n(-4) * &(a * &c.pow(3));
    let t3 = &n(-4) * &(&b.pow(3) * d);
    let t4 = &n(-27) * &(&(a * a) * &(d * d));
    let t5 = &n(18) * &(&(a * b) * &(c * d));
    &(&(&(&t1 + &t2) + &t3) + &t4) + &t5
}

/// The Hessian covariant of the cubic vanishes: it is a perfect cube.
fn is_perfect_cube(k: &[QuadExt]) -> bool {
    let (a, b, c, d) = (&k[0], &k[1], &k[2], &k[3]);
    let n = |v: i64| QuadExt::from_int(v);
    (b * b) == &n(3) * &(a * c) && (c * c) == &n(3) * &(b * d) && (b * c) == &n(9) * &(a * d)
}

/// ADE type of the germ `f` at the origin.
pub fn classify_local(f: &LocalPoly) -> Result<Component, CurveError> {
    if !f.at_origin().is_zero() || !f.coeff(1, 0).is_zero() || !f.coeff(0, 1).is_zero() {
        return Err(CurveError::Smooth);
    }
    let mu = milnor_local(f)?;
    let q = f.homogeneous_part(2);
    let rank = |kind, n: u32| Component::new(kind, n as usize).map_err(|_| CurveError::NotSimple(mu));
    if q.iter().any(|c| !c.is_zero()) {
        return if !quadratic_disc(&q).is_zero() { rank(RootType::A, 1) } else { rank(RootType::A, mu) };
    }
    let k = f.homogeneous_part(3);
    if k.iter().all(QuadExt::is_zero) {
        return Err(CurveError::NotSimple(mu));
    }
    if !cubic_disc(&k).is_zero() {
        return rank(RootType::D, 4);
    }
    if is_perfect_cube(&k) {
        if (6..=8).contains(&mu) {
            return rank(RootType::E, mu);
        }
        return Err(CurveError::NotSimple(mu));
    }
    rank(RootType::D, mu)
}

pub fn classify_ade(f: &TernaryForm, p: &ProjPoint) -> Result<SingularityRecord, CurveError> {
    if !f.eval(p.coords()).is_zero() {
        return Err(CurveError::Smooth);
    }
    let local = f.local_at(p);
    let ade = classify_local(&local)?;
    let milnor = milnor_local(&local)?;
    debug_assert_eq!(milnor as usize, ade.rank);
    Ok(SingularityRecord {
        point: p.clone(),
        ade,
        milnor,
    })
}
