//! Exact Kumjian-Pask algebra over a finite k-graph, with the family induced
//! on a split graph and checks of its identities.

mod algebra;
mod element;
mod psi;
mod saturation;
mod verify;

pub use algebra::{
    equivalent, expand_to, is_zero_in_algebra, kp4_sum, kp_add, kp_adjoint, kp_mul, kp_product,
    kp_scale, mce,
};
pub use element::{scalar, BasisTerm, KpElement, Scalar};
pub use psi::{corner_projection, psi_tilde, Generator};
pub use saturation::saturation;
pub use verify::{
    verify_corner, verify_diagonal, verify_grading, verify_kp_family, verify_swap_identity,
    verify_universal_family, Failure, Section, VerifyReport,
};

use crate::limar::LimarError;
use crate::skeleton::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Limar(#[from] LimarError),
    #[error("operands belong to different graphs")]
    MixedGraphs,
    #[error("t({lambda}) t*({mu}) needs equal sources")]
    SourceMismatch { lambda: String, mu: String },
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error("cannot expand to ghost degree {0}: a term is already deeper")]
    ExpansionDegree(String),
    #[error("algebraic equality is only decided on source-free graphs")]
    NotSourceFree,
}
