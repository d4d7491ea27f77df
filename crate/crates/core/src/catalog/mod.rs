//! The catalog of constructions, the digit-code decoder and the
//! certification pipeline that turns an entry into a report.

mod certify;
mod entry;
mod glue;
mod incidence;

pub use certify::{
    certify, certify_with, four_pairs_check, member_overlattice, reproduce, reproduce_with, ClassCheckResult, Comparison,
    ContainmentResult, CurveReport, EntryReport, EntryVerdict, FamilyResult, FourPairsReport, MemberReport,
    NamedCheck, PointResult, ReproduceReport, Scope, SpecialResult, Summary,
};
pub use entry::{
    load_catalog, pair_to_rational, parse_catalog, to_json, validate_entry, CatalogEntry, ClassCheckSpec,
    CurveSpec, FamilySpec, FormSpec, GlueSpec, Group, Member, PointSpec, SpecialSpec, TermSpec,
};
pub use glue::{decode_glue, encode_glue, generator_conventions, split_code, Decoding};
pub use incidence::{validate as validate_incidence, Configuration, IncidenceRow};

use thiserror::Error;

use crate::curve::CurveError;
use crate::exact::ExactError;
use crate::k3::K3Error;
use crate::lattice::LatticeError;

/// The catalog shipped with the crate.
pub const SHIPPED_CATALOG: &str = include_str!("../../data/zariski.json");

pub fn shipped_catalog() -> Vec<CatalogEntry> {
    parse_catalog(SHIPPED_CATALOG).expect("shipped catalog is valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bad glue code: {0}")]
    Code(String),
    #[error("entry {entry}: field {field}: {message}")]
    Schema { entry: String, field: String, message: String },
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("io: {0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error("no catalog entry {0:?}")]
    UnknownEntry(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    K3(#[from] K3Error),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
