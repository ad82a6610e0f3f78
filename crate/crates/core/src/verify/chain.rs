//! Exact Cheeger constants against IPM estimates on one graph.

use std::cmp::Ordering;

use serde::Serialize;

use super::VerifyError;
use crate::graph::Graph;
use crate::ipm::{cluster3, IpmConfig};
use crate::nodal::CutRatio;
use crate::oracle::{cheeger_h, cheeger_rho};

/// Absolute slack on `h₃ ≤ m̂₃`, where `m̂₃` is a floating-point estimate.
pub const CHAIN_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub rho2: CutRatio,
    pub h2: CutRatio,
    pub rho3: CutRatio,
    pub h3: CutRatio,
    pub h3_parts: Vec<Vec<usize>>,
    /// IPM second eigenvalue estimate.
    pub m2: f64,
    /// Best 2-way threshold cut seen by the IPM.
    pub ncc2: CutRatio,
    pub ncc2_parts: Vec<Vec<usize>>,
    /// IPM third eigenvalue estimate.
    pub m3: f64,
    /// Best 3-way threshold cut seen by the IPM.
    pub ncc3: CutRatio,
    pub ncc3_parts: Vec<Vec<usize>>,
    pub rho2_eq_h2: bool,
    pub rho3_le_h3: bool,
    pub h3_le_m3: bool,
    /// Whether the IPM 2-way cut attains `h₂`.
    pub ncc2_is_h2: bool,
    /// Whether the IPM 3-way cut attains `h₃`.
    pub ncc3_is_h3: bool,
}

/// Compute `ρ₂, h₂, ρ₃, h₃` by enumeration and `m̂₂, m̂₃` with thresholded
/// cuts by the IPM, then evaluate each link of the chain.
pub fn inequality_chain(g: &Graph, cfg: &IpmConfig) -> Result<ChainReport, VerifyError> {
    let rho2 = cheeger_rho(g, 2)?;
    let h2 = cheeger_h(g, 2)?;
    let rho3 = cheeger_rho(g, 3)?;
    let h3 = cheeger_h(g, 3)?;
    let c = cluster3(g, cfg)?;
    let eq = |a: &CutRatio, b: &CutRatio| a.cmp_ratio(b) == Ordering::Equal;
    Ok(ChainReport {
        n: g.n(),
        rho2_eq_h2: eq(&rho2.value, &h2.value),
        rho3_le_h3: rho3.value.cmp_ratio(&h3.value) != Ordering::Greater,
        h3_le_m3: h3.value.value() <= c.third.value + CHAIN_SLACK,
        ncc2_is_h2: eq(&c.partition2.value, &h2.value),
        ncc3_is_h3: eq(&c.partition.value, &h3.value),
        rho2: rho2.value,
        h2: h2.value,
        rho3: rho3.value,
        h3: h3.value,
        h3_parts: h3.parts,
        m2: c.second.value,
        ncc2: c.partition2.value,
        ncc2_parts: c.partition2.parts,
        m3: c.third.value,
        ncc3: c.partition.value,
        ncc3_parts: c.partition.parts,
    })
}
