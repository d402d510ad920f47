//! Fusion rings and modular data: axiom checks, Frobenius–Perron dimensions,
//! S-matrices from the balancing equation, the Verlinde formula, Deligne
//! products and the small arithmetic searches built on top of them.

mod fpdim;
mod modular;
mod neargroup;
mod ring;
mod search;
mod sos;

use thiserror::Error;

use crate::exactnum::ExactError;

pub use fpdim::{fp_dims, recognize_quadratic, FpDims};
pub use modular::{
    balancing_s, count_trivial_twists, deligne_product, verify_modular, verlinde, ModularData, PointedData,
};
pub use neargroup::{near_group_recognize, near_group_ring};
pub use ring::{group_label, AxiomFamily, FusionRing, RingReport, Violation};
pub(crate) use search::exact_dims_hold;
pub use search::{CompletionOutcome, CompletionProblem};
pub use sos::sum_of_squares_search;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusringError {
    #[error("malformed ring: {0}")]
    Shape(String),
    #[error("power iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("Verlinde formula gives a non-integer at N[{i}][{j}][{k}] = {value}")]
    NonIntegerOutcome { i: String, j: String, k: String, value: String },
    #[error("S-matrix is singular: {0}")]
    SingularS(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
