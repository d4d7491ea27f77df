//! Plane curves over `Q(sqrt(d))`: exact local intersection multiplicities,
//! Milnor numbers, simple-singularity types, and the three-conic families.
//!
//! Singular points are always supplied by the caller; nothing here solves
//! for them.

mod config;
mod family;
mod gcd;
mod intersect;
mod parse;
mod poly;

pub use config::{
    intersections, is_squarefree, shares_component, special_curve_check, verify_configuration, ConfigurationReport,
    CurveWithFactors, ExpectedPoint,
};
pub use family::{
    a1_points, a5_points, classify_family, contact_at, family_member, ContactCubic, FamilyClassification, FamilyKind,
    FamilyType,
};
pub use gcd::{gcd, have_common_factor};
pub use intersect::{
    classify_ade, classify_local, intersection_at, local_intersection, milnor, milnor_local, singular_at, Intersection,
    SingularityRecord,
};
pub use parse::{parse_constant, parse_point, parse_polynomial};
pub use poly::{LocalPoly, ProjPoint, TernaryForm, UPoly};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the zero vector is not a point")]
    ZeroPoint,
    #[error("not reduced/isolated")]
    NotIsolated,
    #[error("not simple (Milnor number {0})")]
    NotSimple(u32),
    #[error("smooth point")]
    Smooth,
    #[error("auxiliary curve shares a component with the curve")]
    SharedComponent,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
