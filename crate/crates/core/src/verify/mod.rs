//! Certificates for eigenpairs and pseudo-orthogonality, critical
//! constants, path constructions between eigenvectors, and the inequality
//! chain between Cheeger constants and IPM estimates.

mod chain;
mod eigen;
mod paths;
mod pseudo;

use thiserror::Error;

use crate::graph::GraphError;
use crate::ipm::IpmError;
use crate::oracle::OracleError;

pub use chain::{inequality_chain, ChainReport};
pub use eigen::{verify_eigenpair, verify_eigenpair_exact, witness_is_valid, EigenCertificate};
pub use paths::{face_t1, path_phi, path_psi, PathKind, PathReport, PathSample};
pub use pseudo::{check_pseudo_ort, critical_constants, ConditionCheck, CriticalConstants, PseudoOrtCheck};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("alternation did not reach a fixed point in {0} rounds")]
    NotConverged(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Ipm(#[from] IpmError),
}
