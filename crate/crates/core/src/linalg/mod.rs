//! Matrices and linear codes over a [`FieldTable`](crate::gf::FieldTable),
//! with exact minimum-weight machinery.

mod code;
mod distance;
mod matrix;
pub mod search;

pub use code::{euclidean_inner, hermitian_inner, support, weight, DualKind, LinearCode};
pub use distance::{
    mds_verify, min_weight, min_weight_relative, Budget, DistanceMethod, DistanceStatus, MinWeight,
};
pub use matrix::{row_reduce, Matrix};

pub(crate) use code::subfield_kernel;
pub(crate) use matrix::kernel_from_rref;

use thiserror::Error;

use crate::gf::GfError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("vector or matrix lengths do not match")]
    LengthMismatch,
    #[error("the field is not a quadratic extension of the requested subfield")]
    NotQuadraticTower,
    #[error("coordinate {0} is out of range")]
    BadCoordinate(usize),
    #[error("the code has dimension zero")]
    ZeroDimensional,
    #[error("the smaller code is not contained in the larger one")]
    NotASubcode,
    #[error("the two codes coincide, so the relative distance is a minimum over the empty set")]
    DistanceUndefined,
    #[error("search budget exhausted; distance is at least {lower}")]
    BudgetExceeded { lower: usize },
    #[error(transparent)]
    Gf(GfError),
}

impl From<GfError> for LinalgError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::NotQuadraticTower(_) => LinalgError::NotQuadraticTower,
            other => LinalgError::Gf(other),
        }
    }
}
