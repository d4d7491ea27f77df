//! Root lattices, the ambient lattice `Z lambda + L(G)`, overlattices cut
//! out by glue vectors and their discriminant forms.
//!
//! Sign convention: root lattices are negative definite and `lambda^2 = 2`.

mod base;
mod disc;
mod dynkin;
mod milgram;
mod overlattice;

pub use base::{ambient, block_gram, config_lattice, root_lattice, signature, Block, BlockKind, Lattice};
pub use disc::{
    disc_from_gram, discriminant_form, forms_isomorphic, forms_isomorphic_bounded, groups_isomorphic,
    lattice_discriminant_form, DiscriminantForm, FiniteQuadraticForm, DEFAULT_FORM_SEARCH_BOUND,
};
pub use dynkin::{Component, DynkinConfig, RootType};
pub use milgram::{gauss_sum_magnitude_ok, milgram_signature};
pub use overlattice::{
    fractional_part, lambda_coordinate, overlattice, residue_code, unit_vector, GlueVector, Overlattice,
};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("total rank {0} exceeds 19")]
    RankOverflow(usize),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("not in dual")]
    NotInDual,
    #[error("not an even overlattice")]
    NotEvenOverlattice,
    #[error("degenerate Gram")]
    Degenerate,
    #[error("group of order {0} too large for brute force")]
    TooLarge(u64),
    #[error("component {0} out of range")]
    ComponentOutOfRange(usize),
    #[error("unsupported non-cyclic component {0}")]
    NonCyclic(String),
    #[error("Gauss sum does not have modulus sqrt|A|")]
    GaussSum,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
