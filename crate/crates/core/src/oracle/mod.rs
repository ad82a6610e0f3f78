//! Exact brute-force Cheeger constants.
//!
//! `h_k` minimizes the worst boundary/volume ratio over k-partitions of V,
//! `ρ_k` over k disjoint nonempty subsets that need not cover V. On
//! integer-weighted graphs all comparisons are exact cross-multiplications.

mod exhaustive;
mod variational;

use std::cmp::Ordering;

use thiserror::Error;

use crate::graph::{subset_mask, Graph, GraphError};
use crate::nodal::{mask_stats, CutRatio};

pub use exhaustive::{cheeger_h, cheeger_h_with, cheeger_rho, cheeger_rho_with};
pub use variational::{h2_variational, h3_variational_bound};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("oracle for k={k} limited to n <= {limit}, graph has n = {n}")]
    SizeGuard { k: usize, n: usize, limit: usize },
    #[error("k must be 2 or 3, got {0}")]
    UnsupportedK(usize),
    #[error("invalid parts: {0}")]
    InvalidParts(String),
    #[error("vector is constant")]
    ConstantVector,
    #[error("y3 lies in span{{1, y2}}")]
    DegenerateSpan,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Size limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub h2: usize,
    pub h3: usize,
    pub rho2: usize,
    pub rho3: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            h2: 24,
            h3: 16,
            rho2: 20,
            rho3: 16,
        }
    }
}

impl OracleLimits {
    pub fn h(&self, k: usize) -> usize {
        if k == 2 {
            self.h2
        } else {
            self.h3
        }
    }

    pub fn rho(&self, k: usize) -> usize {
        if k == 2 {
            self.rho2
        } else {
            self.rho3
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionReport {
    /// Sorted vertex lists, ordered by smallest member.
    pub parts: Vec<Vec<usize>>,
    pub ratios: Vec<CutRatio>,
    /// Worst (largest) ratio.
    pub value: CutRatio,
    /// Whether the parts cover V.
    pub covering: bool,
}

impl PartitionReport {
    /// Build a report from disjoint nonempty parts.
    pub fn from_parts(g: &Graph, parts: Vec<Vec<usize>>) -> Result<Self, OracleError> {
        let mut seen = vec![false; g.n()];
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        if parts.is_empty() {
            return Err(OracleError::InvalidParts("no parts".into()));
        }
        for p in &parts {
            if p.is_empty() {
                return Err(OracleError::InvalidParts("empty part".into()));
            }
            for &v in p {
                if v >= g.n() {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v + 1,
                        n: g.n(),
                    }
                    .into());
                }
                if seen[v] {
                    return Err(OracleError::InvalidParts(format!(
                        "vertex {} appears in two parts",
                        v + 1
                    )));
                }
                seen[v] = true;
            }
        }
        parts.sort();
        let ratios: Vec<CutRatio> = parts
            .iter()
            .map(|p| {
                let mask = subset_mask(g.n(), p).expect("validated ids");
                mask_stats(g, &mask).cut_ratio()
            })
            .collect();
        let value = CutRatio::max_of(ratios.iter().copied()).expect("nonempty");
        Ok(Self {
            parts,
            ratios,
            value,
            covering: seen.iter().all(|&b| b),
        })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }
}

/// Normalized Cheeger cut: max over parts of `cut(S, Sᶜ) / vol(S)`.
pub fn ncc(g: &Graph, parts: &[Vec<usize>]) -> Result<CutRatio, OracleError> {
    Ok(PartitionReport::from_parts(g, parts.to_vec())?.value)
}

/// Comparison of `(boundary, volume)` pairs, exact on integral graphs.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RatioOrder {
    exact: bool,
}

impl RatioOrder {
    pub(crate) fn for_graph(g: &Graph) -> Self {
        Self {
            exact: g.is_integral() && g.total_degree() < 4.0e15,
        }
    }

    #[inline]
    pub(crate) fn cmp(&self, a: (f64, f64), b: (f64, f64)) -> Ordering {
        if self.exact {
            let l = a.0 as i128 * b.1 as i128;
            let r = b.0 as i128 * a.1 as i128;
            l.cmp(&r)
        } else {
            (a.0 * b.1)
                .partial_cmp(&(b.0 * a.1))
                .unwrap_or(Ordering::Equal)
        }
    }

    #[inline]
    pub(crate) fn max(&self, a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        if self.cmp(b, a) == Ordering::Greater {
            b
        } else {
            a
        }
    }
}

pub(crate) fn mask_to_vertices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}
