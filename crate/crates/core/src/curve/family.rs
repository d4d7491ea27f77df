//! The two one-parameter families of three-conic sextics with `3A5 + 3A1`
//! and their sorting into the three geometric types.
//!
//! Type 2: some conic through the three `A5` points meets the sextic with
//! multiplicity 4 at each. Type 3: some nodal cubic with its node at one
//! `A5` point meets the sextic with multiplicity 6 at all three. Type 1:
//! neither.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::config::{shares_component, verify_configuration, CurveWithFactors, ExpectedPoint};
use super::intersect::{classify_ade, intersection_at, Intersection};
use super::poly::{LocalPoly, ProjPoint, TernaryForm};
use super::CurveError;
use crate::exact::QuadExt;
use crate::lattice::Component;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    X,
    Y,
}

impl FromStr for FamilyKind {
    type Err = CurveError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "X" | "x" => Ok(FamilyKind::X),
            "Y" | "y" => Ok(FamilyKind::Y),
            _ => Err(CurveError::Parse(format!("unknown family `{s}`"))),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::X => "X",
            FamilyKind::Y => "Y",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyType {
    Type1,
    Type2,
    Type3,
    Degenerate,
}

impl fmt::Display for FamilyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyType::Type1 => "type1",
            FamilyType::Type2 => "type2",
            FamilyType::Type3 => "type3",
            FamilyType::Degenerate => "degenerate",
        })
    }
}

fn q(n: i64) -> QuadExt {
    QuadExt::from_int(n)
}

fn form(s: &str) -> TernaryForm {
    TernaryForm::parse(s).expect("built-in form")
}

fn check_field(lambda: &QuadExt) -> Result<(), CurveError> {
    match lambda.field() {
        0 | -3 => Ok(()),
        d => Err(CurveError::Invalid(format!("parameter must lie in Q(sqrt(-3)), got sqrt({d})"))),
    }
}

/// The sextic `X_lambda` or `Y_lambda`, factored into its three conics.
pub fn family_member(kind: FamilyKind, lambda: &QuadExt) -> Result<CurveWithFactors, CurveError> {
    check_field(lambda)?;
    let base = form("x1*x2 - x0*x1 - x0*x2");
    let sq = |i: usize| TernaryForm::var(i).pow(2);
    let factors = match kind {
        FamilyKind::X => (0..3).map(|i| base.add(&sq(i).scale(lambda))).collect(),
        FamilyKind::Y => {
            let z = QuadExt::zeta3();
            let z2 = &z * &z;
            let one = q(1);
            vec![
                base.add(&sq(0).scale(lambda)),
                form("x1*x2 - x0*x2")
                    .sub(&form("x0*x1").scale(&z))
                    .add(&sq(1).scale(&(&(lambda + &z) - &one))),
                form("x1*x2 - x0*x1")
                    .sub(&form("x0*x2").scale(&z2))
                    .add(&sq(2).scale(&(&(lambda + &z2) - &one))),
            ]
        }
    };
    CurveWithFactors::new(factors)
}

/// The coordinate points carrying the `A5` singularities.
pub fn a5_points() -> [ProjPoint; 3] {
    [ProjPoint::from_ints(1, 0, 0), ProjPoint::from_ints(0, 1, 0), ProjPoint::from_ints(0, 0, 1)]
}

fn div(a: &QuadExt, b: &QuadExt) -> Option<QuadExt> {
    a.try_div(b).ok()
}

/// The three `A1` points in closed form; `None` where the formula has a
/// vanishing denominator.
pub fn a1_points(kind: FamilyKind, lambda: &QuadExt) -> Result<Option<[ProjPoint; 3]>, CurveError> {
    check_field(lambda)?;
    let l = lambda;
    let one = q(1);
    let pts = match kind {
        FamilyKind::X => {
            let lp = l + &one;
            Some([
                ProjPoint::new([lp.clone(), q(2), q(2)])?,
                ProjPoint::new([q(2), q(-2), lp.clone()])?,
                ProjPoint::new([q(2), lp, q(-2)])?,
            ])
        }
        FamilyKind::Y => {
            let s = QuadExt::sqrt(-3)?;
            let ms = -&s;
            let two_l = l * &q(2);
            let four_l = l * &q(4);
            let computed = (|| {
                let p1 = [
                    one.clone(),
                    div(&-&two_l, &(&(&two_l - &q(3)) + &s))?,
                    div(&(l * &(&(&two_l - &one) + &s)), &(&(&four_l - &q(3)) + &s))?,
                ];
                let p2 = [
                    one.clone(),
                    div(&(l * &(&(&two_l - &one) + &ms)), &(&(&four_l - &q(3)) + &ms))?,
                    div(&-&two_l, &(&(&two_l - &q(3)) + &ms))?,
                ];
                let lm2 = l - &q(2);
                let t = &two_l - &q(3);
                let p3 = [
                    one.clone(),
                    div(&(&(&s - &one) * &t), &(&lm2 * &(&t + &s)))?,
                    div(&(&(&ms - &one) * &t), &(&lm2 * &(&t + &ms)))?,
                ];
                Some([p1, p2, p3])
            })();
            match computed {
                None => None,
                Some([a, b, c]) => Some([ProjPoint::new(a)?, ProjPoint::new(b)?, ProjPoint::new(c)?]),
            }
        }
    };
    Ok(pts)
}

/// A nodal cubic meeting the sextic with multiplicity 6 at the three `A5`
/// points. When the node is at `(1:0:0)` and the cubic has the shape
/// `x0 x1^2 - x1^2 x2 + r x0 x2^2 - r x1 x2^2 + s x0 x1 x2`, the values
/// `r, s` are reported.
#[derive(Clone, Debug, Serialize)]
pub struct ContactCubic {
    pub node: ProjPoint,
    #[serde(serialize_with = "ser_display")]
    pub cubic: TernaryForm,
    #[serde(serialize_with = "ser_opt_display")]
    pub r: Option<QuadExt>,
    #[serde(serialize_with = "ser_opt_display")]
    pub s: Option<QuadExt>,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_display<T: fmt::Display, S: serde::Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyClassification {
    pub kind: FamilyKind,
    #[serde(serialize_with = "ser_display")]
    pub lambda: QuadExt,
    pub family_type: FamilyType,
    #[serde(serialize_with = "ser_opt_display")]
    pub conic: Option<TernaryForm>,
    pub contact: Option<ContactCubic>,
    pub detail: String,
}

/// Reduced row echelon nullspace basis of `rows` (each of length `n`).
fn nullspace(rows: &[Vec<QuadExt>], n: usize) -> Vec<Vec<QuadExt>> {
    let mut m: Vec<Vec<QuadExt>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row_r = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(&row_r) {
                    *a -= &(&f * b);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![QuadExt::zero(); n];
            v[f] = q(1);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[i][f];
            }
            v
        })
        .collect()
}

fn monomials(d: u32) -> Vec<TernaryForm> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push(TernaryForm::from_terms([([a, b, d - a - b], q(1))]));
        }
    }
    out
}

fn combine(monos: &[TernaryForm], coeffs: &[QuadExt]) -> TernaryForm {
    monos
        .iter()
        .zip(coeffs)
        .fold(TernaryForm::zero(), |acc, (m, c)| acc.add(&m.scale(c)))
}

/// One linear condition per entry of `cond(m)`, over all monomials `m`.
fn condition_rows(monos: &[TernaryForm], cond: impl Fn(&TernaryForm) -> Vec<QuadExt>) -> Vec<Vec<QuadExt>> {
    let cols: Vec<Vec<QuadExt>> = monos.iter().map(cond).collect();
    (0..cols[0].len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn gradient(f: &TernaryForm, p: &ProjPoint) -> [QuadExt; 3] {
    [0, 1, 2].map(|i| f.partial(i).eval(p.coords()))
}

fn cross(a: &[QuadExt; 3], b: &[QuadExt; 3]) -> [QuadExt; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// A factor of `curve` through `p` that is smooth there.
fn smooth_factor_at<'a>(curve: &'a CurveWithFactors, p: &ProjPoint) -> Option<&'a TernaryForm> {
    curve
        .factors
        .iter()
        .map(|(f, _)| f)
        .find(|f| f.eval(p.coords()).is_zero() && gradient(f, p).iter().any(|c| !c.is_zero()))
}

fn conic_is_smooth(c: &TernaryForm) -> bool {
    let co = |e: [u32; 3]| c.coeff(e);
    let m = [
        [&co([2, 0, 0]) * &q(2), co([1, 1, 0]), co([1, 0, 1])],
        [co([1, 1, 0]), &co([0, 2, 0]) * &q(2), co([0, 1, 1])],
        [co([1, 0, 1]), co([0, 1, 1]), &co([0, 0, 2]) * &q(2)],
    ];
    let det = &(&(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
        - &(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]))))
        + &(&m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0])));
    !det.is_zero()
}

/// Configuration `3A5 + 3A1` at the expected points, and nothing else: the
/// conics are smooth and every pair meets only at the listed points.
fn configuration_defect(curve: &CurveWithFactors, a1: &[ProjPoint; 3]) -> Option<String> {
    let mut expected: Vec<ExpectedPoint> = a5_points()
        .into_iter()
        .map(|point| ExpectedPoint { point, ade: Component::a(5) })
        .collect();
    expected.extend(a1.iter().map(|p| ExpectedPoint { point: p.clone(), ade: Component::a(1) }));
    if let Some((c, _)) = curve.factors.iter().find(|(c, _)| !conic_is_smooth(c)) {
        return Some(format!("conic `{c}` is singular"));
    }
    match verify_configuration(curve, &expected) {
        Err(e) => return Some(e.to_string()),
        Ok(r) if !r.holds => return r.mismatch,
        Ok(_) => {}
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let (f, g) = (&curve.factors[i].0, &curve.factors[j].0);
            let total: u32 = expected
                .iter()
                .map(|e| intersection_at(f, g, &e.point).finite().unwrap_or(u32::MAX / 8))
                .sum();
            if total != 4 {
                return Some(format!("conics {} and {} meet with total {total} at the listed points", i + 1, j + 1));
            }
        }
    }
    None
}

fn a5_multiplicities(sextic: &TernaryForm, aux: &TernaryForm) -> Option<Vec<u32>> {
    if shares_component(sextic, aux) {
        return None;
    }
    a5_points()
        .iter()
        .map(|p| intersection_at(sextic, aux, p).finite())
        .collect()
}

/// The conic through the three `A5` points tangent to the sextic at two of
/// them, when it also meets the sextic with multiplicity above 2 at the
/// third.
fn type2_conic(curve: &CurveWithFactors) -> Option<TernaryForm> {
    let pts = a5_points();
    let monos = monomials(2);
    for third in (0..3).rev() {
        let tangent: Vec<usize> = (0..3).filter(|&i| i != third).collect();
        let mut rows = condition_rows(&monos, |m| pts.iter().map(|p| m.eval(p.coords())).collect());
        for &i in &tangent {
            let g = gradient(smooth_factor_at(curve, &pts[i])?, &pts[i]);
            rows.extend(condition_rows(&monos, |m| cross(&gradient(m, &pts[i]), &g).to_vec()));
        }
        let ns = nullspace(&rows, monos.len());
        if ns.len() != 1 {
            continue;
        }
        let conic = combine(&monos, &ns[0]);
        if let Some(mults) = a5_multiplicities(curve.product(), &conic) {
            if mults.iter().all(|&m| m > 2) {
                return Some(conic);
            }
        }
        return None;
    }
    None
}

/// Coefficients of `x^0, x^1, x^2` of `f` along the branch `g = 0` through
/// the origin, parametrized by whichever coordinate `g` is a graph over.
fn two_jet_conditions(f: &LocalPoly, g: &LocalPoly) -> Vec<QuadExt> {
    let (f, g) = if g.coeff(0, 1).is_zero() { (f.swap_xy(), g.swap_xy()) } else { (f.clone(), g.clone()) };
    let inv = g.coeff(0, 1).inverse().expect("smooth branch");
    let a1 = -&(&g.coeff(1, 0) * &inv);
    let a2 = -&(&(&(&g.coeff(2, 0) + &(&g.coeff(1, 1) * &a1)) + &(&g.coeff(0, 2) * &(&a1 * &a1))) * &inv);
    let y = LocalPoly::x().scale(&a1).add(&LocalPoly::from_terms([((2, 0), a2)]));
    let h = f.compose(&LocalPoly::x(), &y);
    (0..3).map(|k| h.coeff(k, 0)).collect()
}

fn type3_cubic(curve: &CurveWithFactors) -> Option<ContactCubic> {
    let pts = a5_points();
    let monos = monomials(3);
    for node in 0..3 {
        let p = &pts[node];
        let branch = smooth_factor_at(curve, p)?.local_at(p);
        let dir = (-&branch.coeff(0, 1), branch.coeff(1, 0));
        let mut rows = condition_rows(&monos, |m| {
            let l = m.local_at(p);
            let quad = &(&(&l.coeff(2, 0) * &(&dir.0 * &dir.0)) + &(&l.coeff(1, 1) * &(&dir.0 * &dir.1)))
                + &(&l.coeff(0, 2) * &(&dir.1 * &dir.1));
            vec![l.coeff(0, 0), l.coeff(1, 0), l.coeff(0, 1), quad]
        });
        for (i, o) in pts.iter().enumerate() {
            if i == node {
                continue;
            }
            let g = smooth_factor_at(curve, o)?.local_at(o);
            rows.extend(condition_rows(&monos, |m| two_jet_conditions(&m.local_at(o), &g)));
        }
        for v in nullspace(&rows, monos.len()) {
            let cubic = combine(&monos, &v);
            let nodal = classify_ade(&cubic, p).is_ok_and(|r| r.ade == Component::a(1));
            let contact = a5_multiplicities(curve.product(), &cubic).is_some_and(|m| m.iter().all(|&k| k == 6));
            if nodal && contact {
                let (r, s) = contact_parameters(&cubic, node);
                return Some(ContactCubic {
                    node: p.clone(),
                    cubic,
                    r,
                    s,
                });
            }
        }
    }
    None
}

fn contact_parameters(cubic: &TernaryForm, node: usize) -> (Option<QuadExt>, Option<QuadExt>) {
    let lead = cubic.coeff([1, 2, 0]);
    if node != 0 || lead.is_zero() {
        return (None, None);
    }
    let c = cubic.scale(&lead.inverse().expect("nonzero"));
    let r = c.coeff([1, 0, 2]);
    let s = c.coeff([1, 1, 1]);
    let shape = form("x0*x1^2 - x1^2*x2")
        .add(&form("x0*x2^2 - x1*x2^2").scale(&r))
        .add(&form("x0*x1*x2").scale(&s));
    if shape == c {
        (Some(r), Some(s))
    } else {
        (None, None)
    }
}

pub fn classify_family(kind: FamilyKind, lambda: &QuadExt) -> Result<FamilyClassification, CurveError> {
    let curve = family_member(kind, lambda)?;
    let mut out = FamilyClassification {
        kind,
        lambda: lambda.clone(),
        family_type: FamilyType::Degenerate,
        conic: None,
        contact: None,
        detail: String::new(),
    };
    let Some(a1) = a1_points(kind, lambda)? else {
        out.detail = "an A1 point formula has a vanishing denominator".into();
        return Ok(out);
    };
    if let Some(defect) = configuration_defect(&curve, &a1) {
        out.detail = defect;
        return Ok(out);
    }
    if let Some(conic) = type2_conic(&curve) {
        out.family_type = FamilyType::Type2;
        out.detail = "conic with multiplicity 4 at the three A5 points".into();
        out.conic = Some(conic);
        return Ok(out);
    }
    if let Some(c) = type3_cubic(&curve) {
        out.family_type = FamilyType::Type3;
        out.detail = "nodal cubic with multiplicity 6 at the three A5 points".into();
        out.contact = Some(c);
        return Ok(out);
    }
    out.family_type = FamilyType::Type1;
    out.detail = "neither the contact conic nor the contact cubic exists".into();
    Ok(out)
}

/// `I_p(curve, aux)` at `p`, exposed for reports.
pub fn contact_at(curve: &CurveWithFactors, aux: &TernaryForm, p: &ProjPoint) -> Intersection {
    intersection_at(curve.product(), aux, p)
}
