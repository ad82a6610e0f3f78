//! Sign classes, nodal domains, subset statistics and the intersection
//! tableau of two nonnegative vectors.

use std::cmp::Ordering;

use serde::Serialize;

use crate::graph::{subset_mask, Graph, GraphError};
use crate::scalar::{as_exact_integer, sign_of, Scalar};

/// Per-vertex sign after ζ-classification, plus the weighted volume of each
/// class. Volumes are in `T` so they stay exact for rational input.
#[derive(Clone, Debug)]
pub struct SignClasses<T> {
    pub signs: Vec<i8>,
    pub delta_plus: T,
    pub delta_minus: T,
    pub delta_zero: T,
}

impl<T: Scalar> SignClasses<T> {
    pub fn classify(g: &Graph, f: &[T], zeta: &T) -> Result<Self, GraphError> {
        g.check_len(f.len())?;
        let mut out = SignClasses {
            signs: Vec::with_capacity(f.len()),
            delta_plus: T::zero(),
            delta_minus: T::zero(),
            delta_zero: T::zero(),
        };
        for (i, x) in f.iter().enumerate() {
            let s = sign_of(x, zeta);
            let d = T::of_f64(g.degree(i));
            match s {
                1 => out.delta_plus = out.delta_plus.clone() + d,
                -1 => out.delta_minus = out.delta_minus.clone() + d,
                _ => out.delta_zero = out.delta_zero.clone() + d,
            }
            out.signs.push(s);
        }
        Ok(out)
    }

    /// Classification with the default relative threshold.
    pub fn of(g: &Graph, f: &[T]) -> Result<Self, GraphError> {
        Self::classify(g, f, &T::zero_threshold(f))
    }

    /// `|δ⁺ - δ⁻| ≤ δ⁰`, the zero-median balance condition.
    pub fn is_balanced(&self) -> bool {
        (self.delta_plus.clone() - self.delta_minus.clone()).abs() <= self.delta_zero
    }
}

#[derive(Clone, Debug)]
pub struct NodalDecomposition<T> {
    pub positive_domains: Vec<Vec<usize>>,
    pub negative_domains: Vec<Vec<usize>>,
    pub zero_set: Vec<usize>,
    pub delta_plus: T,
    pub delta_minus: T,
    pub delta_zero: T,
}

impl<T> NodalDecomposition<T> {
    pub fn r_plus(&self) -> usize {
        self.positive_domains.len()
    }

    pub fn r_minus(&self) -> usize {
        self.negative_domains.len()
    }

    /// Total number of nodal domains.
    pub fn r(&self) -> usize {
        self.r_plus() + self.r_minus()
    }
}

pub fn nodal_decomposition<T: Scalar>(
    g: &Graph,
    f: &[T],
) -> Result<NodalDecomposition<T>, GraphError> {
    nodal_decomposition_with(g, f, &T::zero_threshold(f))
}

pub fn nodal_decomposition_with<T: Scalar>(
    g: &Graph,
    f: &[T],
    zeta: &T,
) -> Result<NodalDecomposition<T>, GraphError> {
    let sc = SignClasses::classify(g, f, zeta)?;
    let pos: Vec<bool> = sc.signs.iter().map(|&s| s == 1).collect();
    let neg: Vec<bool> = sc.signs.iter().map(|&s| s == -1).collect();
    Ok(NodalDecomposition {
        positive_domains: g.components(&pos),
        negative_domains: g.components(&neg),
        zero_set: (0..g.n()).filter(|&i| sc.signs[i] == 0).collect(),
        delta_plus: sc.delta_plus,
        delta_minus: sc.delta_minus,
        delta_zero: sc.delta_zero,
    })
}

/// Boundary weight over volume, kept as the two sums so ratios can be
/// compared exactly by cross-multiplication on integer-weighted graphs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CutRatio {
    pub boundary: f64,
    pub volume: f64,
}

impl CutRatio {
    pub fn value(&self) -> f64 {
        self.boundary / self.volume
    }

    fn integer_parts(&self) -> Option<(i128, i128)> {
        Some((
            as_exact_integer(self.boundary)? as i128,
            as_exact_integer(self.volume)? as i128,
        ))
    }

    /// Reduced fraction `num/den`, when both sums are integers.
    pub fn exact(&self) -> Option<(i64, i64)> {
        let (b, v) = self.integer_parts()?;
        let g = gcd(b, v).max(1);
        Some(((b / g) as i64, (v / g) as i64))
    }

    /// Total order on ratios; exact when both sides are integral.
    pub fn cmp_ratio(&self, other: &CutRatio) -> Ordering {
        match (self.integer_parts(), other.integer_parts()) {
            (Some((a, b)), Some((c, d))) => (a * d).cmp(&(c * b)),
            _ => self
                .value()
                .partial_cmp(&other.value())
                .unwrap_or(Ordering::Equal),
        }
    }

    pub fn max_of(items: impl IntoIterator<Item = CutRatio>) -> Option<CutRatio> {
        items.into_iter().reduce(|a, b| {
            if b.cmp_ratio(&a) == Ordering::Greater {
                b
            } else {
                a
            }
        })
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsetStats {
    pub subset: Vec<usize>,
    pub volume: f64,
    pub boundary_weight: f64,
    pub ratio: f64,
}

impl SubsetStats {
    pub fn cut_ratio(&self) -> CutRatio {
        CutRatio {
            boundary: self.boundary_weight,
            volume: self.volume,
        }
    }
}

/// Volume and boundary of `s`; `s` must be a nonempty proper subset.
pub fn subset_stats(g: &Graph, s: &[usize]) -> Result<SubsetStats, GraphError> {
    let mask = subset_mask(g.n(), s)?;
    let size = mask.iter().filter(|&&b| b).count();
    if size == 0 {
        return Err(GraphError::InvalidSubset("empty subset".into()));
    }
    if size == g.n() {
        return Err(GraphError::InvalidSubset("subset is all of V".into()));
    }
    Ok(mask_stats(g, &mask))
}

pub(crate) fn mask_stats(g: &Graph, mask: &[bool]) -> SubsetStats {
    let subset: Vec<usize> = (0..g.n()).filter(|&i| mask[i]).collect();
    let volume: f64 = subset.iter().map(|&i| g.degree(i)).sum();
    let boundary_weight: f64 = g
        .edges()
        .iter()
        .filter(|e| mask[e.u] != mask[e.v])
        .map(|e| e.w)
        .sum();
    SubsetStats {
        subset,
        volume,
        boundary_weight,
        ratio: boundary_weight / volume,
    }
}

/// Weighted volumes of the four sign-class intersections of two
/// nonnegative vectors and the weights of the ten edge classes.
///
/// Regions: `P = f⁺∩h⁺`, `Q = f⁺∩h⁰`, `R = f⁰∩h⁺`, `S = f⁰∩h⁰`.
/// `a,b,c,d` are edges inside `P,Q,R,S`; `e_tilde` is `P–Q`, `f` is `R–S`,
/// `g` is `P–R`, `h` is `Q–S`, `l` is `P–S` and `m` is `R–Q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntersectionTableau {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub epsilon: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e_tilde: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub l: f64,
    pub m: f64,
}

impl IntersectionTableau {
    pub fn edge_total(&self) -> f64 {
        self.a
            + self.b
            + self.c
            + self.d
            + self.e_tilde
            + self.f
            + self.g
            + self.h
            + self.l
            + self.m
    }
}

pub fn intersection_tableau<T: Scalar>(
    g: &Graph,
    f: &[T],
    h: &[T],
) -> Result<IntersectionTableau, GraphError> {
    g.check_len(f.len())?;
    g.check_len(h.len())?;
    if f.iter().chain(h).any(|x| x.is_negative()) {
        return Err(GraphError::InvalidSubset(
            "tableau requires nonnegative vectors".into(),
        ));
    }
    let sf = SignClasses::of(g, f)?.signs;
    let sh = SignClasses::of(g, h)?.signs;
    // 0 = P, 1 = Q, 2 = R, 3 = S
    let region: Vec<usize> = (0..g.n())
        .map(|i| match (sf[i] == 1, sh[i] == 1) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        })
        .collect();
    let mut vol = [0.0; 4];
    for i in 0..g.n() {
        vol[region[i]] += g.degree(i);
    }
    let mut pair = [[0.0; 4]; 4];
    for e in g.edges() {
        let (x, y) = (region[e.u].min(region[e.v]), region[e.u].max(region[e.v]));
        pair[x][y] += e.w;
    }
    Ok(IntersectionTableau {
        alpha: vol[0],
        beta: vol[1],
        gamma: vol[2],
        epsilon: vol[3],
        a: pair[0][0],
        b: pair[1][1],
        c: pair[2][2],
        d: pair[3][3],
        e_tilde: pair[0][1],
        f: pair[2][3],
        g: pair[0][2],
        h: pair[1][3],
        l: pair[0][3],
        m: pair[1][2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path};

    #[test]
    fn decomposition_examples() {
        let g = path(4).unwrap();
        let nd = nodal_decomposition(&g, &[1.0, -1.0, 0.0, 1.0]).unwrap();
        assert_eq!(nd.positive_domains, vec![vec![0], vec![3]]);
        assert_eq!(nd.negative_domains, vec![vec![1]]);
        assert_eq!(nd.zero_set, vec![2]);
        assert_eq!((nd.r_plus(), nd.r_minus()), (2, 1));

        let nd = nodal_decomposition(&g, &[0.0; 4]).unwrap();
        assert_eq!(nd.r(), 0);
        assert_eq!(nd.zero_set, vec![0, 1, 2, 3]);

        let p10 = path(10).unwrap();
        let f: Vec<f64> = (0..10).map(|i| if i < 5 { 1.0 } else { -1.0 }).collect();
        let nd = nodal_decomposition(&p10, &f).unwrap();
        assert_eq!((nd.r_plus(), nd.r_minus()), (1, 1));
        assert_eq!(nd.delta_zero, 0.0);
    }

    #[test]
    fn zero_threshold_absorbs_noise() {
        let g = path(4).unwrap();
        let nd = nodal_decomposition(&g, &[1.0, 1e-14, -1e-13, -1.0]).unwrap();
        assert_eq!(nd.zero_set, vec![1, 2]);
    }

    #[test]
    fn subset_examples() {
        let p10 = path(10).unwrap();
        let s = subset_stats(&p10, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!((s.boundary_weight, s.volume), (1.0, 9.0));
        assert_eq!(s.cut_ratio().exact(), Some((1, 9)));
        let s = subset_stats(&path(4).unwrap(), &[1, 2]).unwrap();
        assert_eq!(s.cut_ratio().exact(), Some((1, 2)));
        let s = subset_stats(&cycle(10).unwrap(), &[6]).unwrap();
        assert_eq!(s.ratio, 1.0);
        assert!(subset_stats(&p10, &[]).is_err());
        assert!(subset_stats(&p10, &(0..10).collect::<Vec<_>>()).is_err());
    }

    #[test]
    fn exact_ratio_order() {
        let a = CutRatio {
            boundary: 1.0,
            volume: 9.0,
        };
        let b = CutRatio {
            boundary: 2.0,
            volume: 18.0,
        };
        assert_eq!(a.cmp_ratio(&b), Ordering::Equal);
        let c = CutRatio {
            boundary: 1.0,
            volume: 5.0,
        };
        assert_eq!(CutRatio::max_of([a, c, b]), Some(c));
    }

    #[test]
    fn tableau_examples() {
        let g = path(4).unwrap();
        let t = intersection_tableau(&g, &[1.0, 1.0, 0.0, 0.0], &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!((t.alpha, t.beta, t.gamma, t.epsilon), (3.0, 0.0, 0.0, 3.0));
        assert_eq!(t.e_tilde + t.f + t.g + t.h + t.m, 0.0);
        let t = intersection_tableau(&g, &[1.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!((t.alpha, t.beta, t.gamma, t.epsilon), (0.0, 3.0, 3.0, 0.0));
        let t = intersection_tableau(&g, &[1.0, 1.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!((t.alpha, t.beta, t.gamma, t.epsilon), (1.0, 2.0, 0.0, 3.0));
        assert_eq!(t.edge_total(), 3.0);
        assert!(intersection_tableau(&g, &[1.0, -1.0, 0.0, 0.0], &[1.0; 4]).is_err());
    }
}
