//! Nonlinear inverse power method for the second and third eigenvectors of
//! the graph 1-Laplacian, and threshold extraction of 2- and 3-way cuts.

mod extract;
mod inner;
mod outer;
mod steps;

use serde::Serialize;
use thiserror::Error;

use crate::graph::GraphError;
use crate::oracle::OracleError;

pub use extract::{extract_2way, extract_3way};
pub use inner::{inner_problem, InnerSolution, InnerSolver};
pub use outer::{
    cluster2, cluster3, second_eigenvector, second_eigenvector_runs, third_eigenvector,
    third_eigenvector_runs, Cluster2, Cluster3,
};
pub use steps::{pseudo_ort, pseudo_ort_search, sign_step, PseudoOrt};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IpmError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("inner solver did not converge in {iters} iterations (gap {gap:.3e})")]
    InnerNotConverged {
        iters: usize,
        gap: f64,
        iterate: Vec<f64>,
    },
    #[error("vector does not have zero weighted median (|δ⁺ - δ⁻| = {imbalance} > δ⁰ = {zero})")]
    NotCentered { imbalance: f64, zero: f64 },
    #[error(
        "no admissible λ; closest candidate λ = {fallback} at interval distance {distance:.3e}"
    )]
    NoAdmissibleLambda { fallback: f64, distance: f64 },
    #[error("second eigenvector estimate must have ‖f2‖_w = 1 (got {0})")]
    NotNormalized(f64),
    #[error("initialization {0} collapsed to a constant vector")]
    Collapsed(usize),
    #[error("all {0} initializations failed")]
    AllInitsFailed(usize),
    #[error("every candidate partition has an empty block")]
    DegeneratePartition,
    #[error("vector is constant")]
    ConstantVector,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IpmConfig {
    /// Relative stopping tolerance on `μ`.
    pub eps: f64,
    pub max_outer: usize,
    /// Target primal-dual gap of the inner problem.
    pub inner_tol: f64,
    pub inner_max: usize,
    pub n_inits: usize,
    pub seed: u64,
    /// Relative zero threshold for sign classification.
    pub zero_tol: f64,
}

impl Default for IpmConfig {
    fn default() -> Self {
        Self {
            eps: 1e-9,
            max_outer: 500,
            inner_tol: 1e-10,
            inner_max: 10_000,
            n_inits: 10,
            seed: 0,
            zero_tol: crate::scalar::ZETA_REL,
        }
    }
}

impl IpmConfig {
    pub fn validate(&self) -> Result<(), IpmError> {
        let pos = |x: f64| x.is_finite() && x > 0.0;
        if !(pos(self.eps) && pos(self.inner_tol) && pos(self.zero_tol)) {
            return Err(IpmError::Config("tolerances must be positive".into()));
        }
        if self.max_outer == 0 || self.inner_max == 0 || self.n_inits == 0 {
            return Err(IpmError::Config("iteration caps must be at least 1".into()));
        }
        Ok(())
    }

    /// Absolute zero threshold for `f`.
    pub fn zeta(&self, f: &[f64]) -> f64 {
        self.zero_tol * f.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterRecord {
    pub iteration: usize,
    pub mu: f64,
    pub inner_objective: f64,
    /// `‖f^k‖_w` after normalization.
    pub norm: f64,
    pub inner_iters: usize,
    pub gap: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Relative change of `μ` below `eps`.
    Tolerance,
    /// Inner problem returned zero: no descent direction.
    Stationary,
    /// Candidate would raise `μ`; previous iterate kept.
    Rejected,
    MaxOuter,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IpmTrace {
    pub records: Vec<IterRecord>,
    pub stop: StopReason,
}

impl IpmTrace {
    pub fn mus(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.mu)
    }

    /// `μ^{k+1} ≤ μ^k + slack` for all recorded steps.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.records.windows(2).all(|w| w[1].mu <= w[0].mu + slack)
    }

    pub fn total_inner_iters(&self) -> usize {
        self.records.iter().map(|r| r.inner_iters).sum()
    }

    /// Line-oriented form: `iteration mu inner_iters residual`.
    pub fn lines(&self) -> Vec<String> {
        self.records
            .iter()
            .map(|r| {
                format!(
                    "iter={} mu={:.12e} inner_iters={} residual={:.3e}",
                    r.iteration, r.mu, r.inner_iters, r.gap
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenEstimate {
    /// Weighted-L1-normalized, zero weighted median.
    pub vector: Vec<f64>,
    pub value: f64,
    pub trace: IpmTrace,
    pub init_index: usize,
}
