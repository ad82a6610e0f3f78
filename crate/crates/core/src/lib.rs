//! Graph 1-Laplacian toolkit: exact Cheeger oracles, a nonlinear inverse
//! power method for second and third eigenpairs, and set-valued
//! verification of eigenpairs and pseudo-orthogonality.

pub mod cli;
pub mod flow;
pub mod functional;
pub mod generators;
pub mod graph;
pub mod ipm;
pub mod nodal;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod sgn;
pub mod verify;

pub use functional::{functional_i, rayleigh, weighted_median, weighted_norm};
pub use graph::{Edge, Graph, GraphError};
pub use nodal::{
    intersection_tableau, nodal_decomposition, subset_stats, CutRatio, IntersectionTableau,
    NodalDecomposition, SignClasses, SubsetStats,
};
pub use scalar::{Interval, Rational, Scalar};
