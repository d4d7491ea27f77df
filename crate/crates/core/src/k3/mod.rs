//! Short-vector enumeration and the realizability checks for overlattices
//! of `Z lambda + L(G)`: the two Urabe conditions, primitive embedding into
//! the K3 lattice, and membership tests for specific divisor classes.

mod checks;
mod embedding;
mod enumerate;
mod registry;

pub use checks::{class_check, urabe_condition_i, urabe_condition_ii, CheckReport, ClassExpectation, Verdict};
pub use embedding::{
    default_methods, embedding_exists, embedding_exists_with, embedding_method, reduced_even_binary_forms,
    BinarySearch, Corollary, EmbeddingContext, EmbeddingMethod,
};
pub use enumerate::{enumerate_coset_norm, enumerate_norm};
pub use registry::{all_checks, check_names, select_checks, MemberCheck};

use thiserror::Error;

use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum K3Error {
    #[error("lattice is not negative definite")]
    NotDefinite,
    #[error("ambient lattice has no lambda coordinate")]
    NoLambda,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
