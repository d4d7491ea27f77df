//! Reduced plane curves given by their factors, checked against a stated
//! list of singular points and against auxiliary curves.

use serde::Serialize;

use super::gcd::{gcd, have_common_factor};
use super::intersect::{classify_ade, intersection_at, ser_component, Intersection, SingularityRecord};
use super::poly::{ProjPoint, TernaryForm};
use super::CurveError;
use crate::lattice::Component;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveWithFactors {
    pub factors: Vec<(TernaryForm, u32)>,
    product: TernaryForm,
}

impl CurveWithFactors {
    pub fn with_multiplicities(factors: Vec<(TernaryForm, u32)>) -> Result<Self, CurveError> {
        if factors.is_empty() {
            return Err(CurveError::Invalid("curve without factors".into()));
        }
        let mut product = TernaryForm::constant(1.into());
        for (f, m) in &factors {
            if f.is_zero() || f.degree().is_none_or(|d| d == 0) {
                return Err(CurveError::Invalid(format!("factor `{f}` is not a homogeneous form of positive degree")));
            }
            product = product.mul(&f.pow(*m));
        }
        product.field()?;
        Ok(Self { factors, product })
    }

    /// Reduced curve, every factor with multiplicity one.
    pub fn new(factors: Vec<TernaryForm>) -> Result<Self, CurveError> {
        Self::with_multiplicities(factors.into_iter().map(|f| (f, 1)).collect())
    }

    pub fn product(&self) -> &TernaryForm {
        &self.product
    }

    pub fn degree(&self) -> u32 {
        self.product.degree().unwrap_or(0)
    }

    pub fn factor_degrees(&self) -> Vec<u32> {
        self.factors.iter().map(|(f, _)| f.degree().unwrap_or(0)).collect()
    }

    pub fn field(&self) -> i64 {
        self.product.field().expect("checked on construction")
    }

    /// Multiplicities one, factors square-free and pairwise coprime.
    pub fn is_reduced(&self) -> bool {
        self.factors.iter().all(|(f, m)| *m == 1 && is_squarefree(f))
            && self
                .factors
                .iter()
                .enumerate()
                .all(|(i, (f, _))| self.factors[i + 1..].iter().all(|(g, _)| !shares_component(f, g)))
    }
}

/// No repeated factor.
pub fn is_squarefree(f: &TernaryForm) -> bool {
    if f.terms().all(|(e, _)| e[2] >= 2) {
        return false;
    }
    let a = f.dehomogenize(2);
    let h = gcd(&gcd(&a, &a.deriv_x()), &a.deriv_y());
    h.total_degree().is_none_or(|d| d == 0)
}

/// `f` and `g` have a common component.
pub fn shares_component(f: &TernaryForm, g: &TernaryForm) -> bool {
    let both_x2 = [f, g].iter().all(|h| h.terms().all(|(e, _)| e[2] >= 1));
    both_x2 || have_common_factor(&f.dehomogenize(2), &g.dehomogenize(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedPoint {
    pub point: ProjPoint,
    #[serde(serialize_with = "ser_component")]
    pub ade: Component,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigurationReport {
    pub holds: bool,
    pub records: Vec<SingularityRecord>,
    pub total_milnor: u32,
    pub mismatch: Option<String>,
}

/// Every expected point is singular with the expected type.
pub fn verify_configuration(c: &CurveWithFactors, expected: &[ExpectedPoint]) -> Result<ConfigurationReport, CurveError> {
    let mut records = Vec::new();
    let mut mismatch = None;
    if !c.is_reduced() {
        mismatch = Some("curve is not reduced".to_string());
    }
    for e in expected {
        if mismatch.is_some() {
            break;
        }
        let r = classify_ade(c.product(), &e.point)?;
        if r.ade != e.ade {
            mismatch = Some(format!(
                "{}: expected {}{}, found {}{}",
                e.point, e.ade.kind, e.ade.rank, r.ade.kind, r.ade.rank
            ));
        }
        records.push(r);
    }
    let total_milnor = records.iter().map(|r| r.milnor).sum();
    Ok(ConfigurationReport {
        holds: mismatch.is_none(),
        records,
        total_milnor,
        mismatch,
    })
}

/// `I_p(curve, aux)` at each point; errors on a shared component.
pub fn intersections(curve: &TernaryForm, aux: &TernaryForm, points: &[ProjPoint]) -> Result<Vec<u32>, CurveError> {
    if shares_component(curve, aux) {
        return Err(CurveError::SharedComponent);
    }
    points
        .iter()
        .map(|p| match intersection_at(curve, aux, p) {
            Intersection::Finite(n) => Ok(n),
            Intersection::Infinite => Err(CurveError::SharedComponent),
        })
        .collect()
}

/// `I_p(sextic, aux)` equals the expected value at each listed point.
pub fn special_curve_check(
    sextic: &CurveWithFactors,
    aux: &TernaryForm,
    expectations: &[(ProjPoint, u32)],
) -> Result<bool, CurveError> {
    let points: Vec<ProjPoint> = expectations.iter().map(|(p, _)| p.clone()).collect();
    let got = intersections(sextic.product(), aux, &points)?;
    Ok(got.iter().zip(expectations).all(|(g, (_, e))| g == e))
}
