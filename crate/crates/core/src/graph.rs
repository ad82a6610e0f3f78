//! Undirected weighted graphs with degree bookkeeping.
//!
//! Vertices are 0-based internally. Edge lists on disk and every
//! human-facing report use 1-based ids.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vector length {got} does not match vertex count {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires a nonzero vector")]
    ZeroVector,
    #[error("graph is disconnected: components {}", format_components(.0))]
    Disconnected(Vec<Vec<usize>>),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} has non-positive or non-finite weight {2}")]
    BadWeight(usize, usize, f64),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge list contains no edges")]
    Empty,
    #[error("graph needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("invalid family spec '{0}'")]
    BadFamily(String),
}

fn format_components(comps: &[Vec<usize>]) -> String {
    comps
        .iter()
        .map(|c| {
            let ids: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            format!("{{{}}}", ids.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Immutable connected graph. Each undirected edge is stored once with `u < v`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<(usize, f64)>>,
    edges: Vec<Edge>,
    degrees: Vec<f64>,
    total_degree: f64,
    integral: bool,
}

impl Graph {
    /// Build from 0-based `(u, v, w)` triples. Rejects loops, duplicates,
    /// non-positive weights and disconnected graphs.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooSmall(n));
        }
        let mut seen = BTreeMap::new();
        for &(a, b, w) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x + 1, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a + 1));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(GraphError::BadWeight(a + 1, b + 1, w));
            }
            let key = (a.min(b), a.max(b));
            if seen.insert(key, w).is_some() {
                return Err(GraphError::DuplicateEdge(key.0 + 1, key.1 + 1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(seen.len());
        for (&(u, v), &w) in &seen {
            adj[u].push((v, w));
            adj[v].push((u, w));
            list.push(Edge { u, v, w });
        }
        let degrees: Vec<f64> = adj
            .iter()
            .map(|nb| nb.iter().map(|&(_, w)| w).sum())
            .collect();
        let total_degree = degrees.iter().sum();
        let integral = list.iter().all(|e| e.w.fract() == 0.0 && e.w < 1e12);
        let g = Graph {
            n,
            adj,
            edges: list,
            degrees,
            total_degree,
            integral,
        };
        let comps = g.components(&vec![true; n]);
        if comps.len() > 1 {
            return Err(GraphError::Disconnected(comps));
        }
        Ok(g)
    }

    /// Build from a dense symmetric weight matrix; zero entries mean no edge.
    pub fn from_weight_matrix(w: &[Vec<f64>]) -> Result<Self, GraphError> {
        let n = w.len();
        let mut edges = Vec::new();
        for (i, row) in w.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if row[i] != 0.0 {
                return Err(GraphError::SelfLoop(i + 1));
            }
            for j in (i + 1)..n {
                if row[j] != w[j][i] {
                    return Err(GraphError::BadWeight(i + 1, j + 1, row[j]));
                }
                if row[j] != 0.0 {
                    edges.push((i, j, row[j]));
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn total_degree(&self) -> f64 {
        self.total_degree
    }

    /// True when every weight is an integer, so cut and volume sums are exact.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn max_unweighted_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adj[i]
            .iter()
            .find(|&&(k, _)| k == j)
            .map_or(0.0, |&(_, w)| w)
    }

    pub fn check_len(&self, len: usize) -> Result<(), GraphError> {
        if len == self.n {
            Ok(())
        } else {
            Err(GraphError::DimensionMismatch {
                expected: self.n,
                got: len,
            })
        }
    }

    /// Connected components of the subgraph induced by `mask`, each sorted,
    /// listed by smallest vertex.
    pub fn components(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !mask[s] || label[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![s];
            label[s] = id;
            let mut head = 0;
            while head < comp.len() {
                let x = comp[head];
                head += 1;
                for &(y, _) in &self.adj[x] {
                    if mask[y] && label[y] == usize::MAX {
                        label[y] = id;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Parse the plain-text edge list format: `i j [w]` per line, 1-based,
    /// `#` starts a comment line. The vertex count is the largest id seen.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut n = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() < 2 || toks.len() > 3 {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("expected 'i j [w]', got '{body}'"),
                });
            }
            let id = |t: &str| -> Result<usize, GraphError> {
                match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v),
                    _ => Err(GraphError::Parse {
                        line,
                        msg: format!("invalid vertex id '{t}' (ids are 1-based integers)"),
                    }),
                }
            };
            let a = id(toks[0])?;
            let b = id(toks[1])?;
            let w = match toks.get(2) {
                Some(t) => t.parse::<f64>().map_err(|_| GraphError::Parse {
                    line,
                    msg: format!("invalid weight '{t}'"),
                })?,
                None => 1.0,
            };
            if !(w.is_finite() && w > 0.0) {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("weight must be positive, got {w}"),
                });
            }
            n = n.max(a).max(b);
            edges.push((a - 1, b - 1, w));
        }
        if edges.is_empty() {
            return Err(GraphError::Empty);
        }
        Self::from_edges(n, &edges)
    }

    /// Serialize back to the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            if e.w == 1.0 {
                s.push_str(&format!("{} {}\n", e.u + 1, e.v + 1));
            } else {
                s.push_str(&format!("{} {} {}\n", e.u + 1, e.v + 1, e.w));
            }
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, d={})",
            self.n,
            self.edges.len(),
            self.total_degree
        )
    }
}

/// Membership mask for a vertex list, validating ids.
pub fn subset_mask(n: usize, subset: &[usize]) -> Result<Vec<bool>, GraphError> {
    let mut mask = vec![false; n];
    for &v in subset {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v + 1, n });
        }
        mask[v] = true;
    }
    Ok(mask)
}
