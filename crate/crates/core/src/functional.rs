//! The total-variation functional `I`, the degree-weighted L1 norm, the
//! Rayleigh quotient and weighted medians.
//!
//! Everything here is generic over [`Scalar`] so that the same code is used
//! for floating-point iterates and for exact rational checks. Edge weights
//! and degrees are lifted into `T` exactly.

use crate::graph::{Graph, GraphError};
use crate::scalar::Scalar;

/// `I(f) = Σ_{edges} w_ij |f_i - f_j|`, each undirected edge once.
pub fn functional_i<T: Scalar>(g: &Graph, f: &[T]) -> Result<T, GraphError> {
    g.check_len(f.len())?;
    Ok(g.edges().iter().fold(T::zero(), |acc, e| {
        acc + T::of_f64(e.w) * (f[e.u].clone() - f[e.v].clone()).abs()
    }))
}

/// `‖f‖_w = Σ_i d_i |f_i|`.
pub fn weighted_norm<T: Scalar>(g: &Graph, f: &[T]) -> Result<T, GraphError> {
    g.check_len(f.len())?;
    Ok(f.iter()
        .zip(g.degrees())
        .fold(T::zero(), |acc, (x, &d)| acc + T::of_f64(d) * x.abs()))
}

/// `Î(f) = I(f) / ‖f‖_w`.
pub fn rayleigh<T: Scalar>(g: &Graph, f: &[T]) -> Result<T, GraphError> {
    let den = weighted_norm(g, f)?;
    if den.is_zero() {
        return Err(GraphError::ZeroVector);
    }
    Ok(functional_i(g, f)? / den)
}

/// Smallest `c` with `vol{f < c} ≤ d/2` and `vol{f ≤ c} ≥ d/2`.
pub fn weighted_median<T: Scalar>(g: &Graph, f: &[T]) -> Result<T, GraphError> {
    g.check_len(f.len())?;
    let mut idx: Vec<usize> = (0..f.len()).collect();
    idx.sort_by(|&a, &b| f[a].partial_cmp(&f[b]).expect("finite entries"));
    let total = T::of_f64(g.total_degree());
    let two = T::one() + T::one();
    let mut cum = T::zero();
    let mut k = 0;
    while k < idx.len() {
        let v = f[idx[k]].clone();
        while k < idx.len() && f[idx[k]] == v {
            cum = cum + T::of_f64(g.degree(idx[k]));
            k += 1;
        }
        if cum.clone() * two.clone() >= total {
            return Ok(v);
        }
    }
    Ok(f[idx[idx.len() - 1]].clone())
}

/// `f - c·1`.
pub fn shift<T: Scalar>(f: &[T], c: &T) -> Vec<T> {
    f.iter().map(|x| x.clone() - c.clone()).collect()
}

/// `f / ‖f‖_w`.
pub fn normalize_w<T: Scalar>(g: &Graph, f: &[T]) -> Result<Vec<T>, GraphError> {
    let nrm = weighted_norm(g, f)?;
    if nrm.is_zero() {
        return Err(GraphError::ZeroVector);
    }
    Ok(f.iter().map(|x| x.clone() / nrm.clone()).collect())
}

/// `f - median(f)·1`.
pub fn center<T: Scalar>(g: &Graph, f: &[T]) -> Result<Vec<T>, GraphError> {
    let m = weighted_median(g, f)?;
    Ok(shift(f, &m))
}

/// Characteristic vector `1_S`.
pub fn indicator<T: Scalar>(n: usize, s: &[usize]) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    for &i in s {
        v[i] = T::one();
    }
    v
}

/// Normalized characteristic vector `1_S / vol(S)`.
pub fn indicator_hat<T: Scalar>(g: &Graph, s: &[usize]) -> Result<Vec<T>, GraphError> {
    normalize_w(g, &indicator::<T>(g.n(), s))
}

/// Level-set form of `I`: with sorted distinct values `u_0 < … < u_m`,
/// `Σ_k w(∂{f > u_k})·(u_{k+1} - u_k)`. Boundaries are recomputed for each
/// level, so this is independent of [`functional_i`].
pub fn coarea_level_sum<T: Scalar>(g: &Graph, f: &[T]) -> Result<T, GraphError> {
    g.check_len(f.len())?;
    let mut levels: Vec<T> = f.to_vec();
    levels.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    levels.dedup();
    let mut total = T::zero();
    for k in 0..levels.len().saturating_sub(1) {
        let u = &levels[k];
        let cut = g
            .edges()
            .iter()
            .filter(|e| (f[e.u] > *u) != (f[e.v] > *u))
            .fold(T::zero(), |acc, e| acc + T::of_f64(e.w));
        total = total + cut * (levels[k + 1].clone() - u.clone());
    }
    Ok(total)
}

/// Degree-weighted pairing `⟨D a, b⟩ = Σ d_i a_i b_i`.
pub fn d_inner<T: Scalar>(g: &Graph, a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .zip(g.degrees())
        .fold(T::zero(), |acc, ((x, y), &d)| {
            acc + T::of_f64(d) * x.clone() * y.clone()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path};
    use crate::scalar::{ratio, rational_vec, Rational};
    use num::Zero;

    #[test]
    fn p4_examples() {
        let g = path(4).unwrap();
        let f2 = rational_vec(&[1, 1, 0, 0], 3);
        assert_eq!(functional_i(&g, &f2).unwrap(), ratio(1, 3));
        assert_eq!(weighted_norm(&g, &f2).unwrap(), ratio(1, 1));
        let f3 = rational_vec(&[1, 0, 0, 0], 1);
        assert_eq!(functional_i(&g, &f3).unwrap(), ratio(1, 1));
        assert_eq!(
            rayleigh(&g, &rational_vec(&[1, 1, 0, 0], 1)).unwrap(),
            ratio(1, 3)
        );
        assert_eq!(
            rayleigh(&g, &rational_vec(&[2, 0, 0, 0], 1)).unwrap(),
            ratio(1, 1)
        );
    }

    #[test]
    fn constants_and_zero() {
        let g = path(10).unwrap();
        let ones = vec![ratio(1, 18); 10];
        assert_eq!(functional_i(&g, &ones).unwrap(), Rational::zero());
        assert_eq!(weighted_norm(&g, &ones).unwrap(), ratio(1, 1));
        assert_eq!(rayleigh(&g, &[1.0; 10]).unwrap(), 0.0);
        assert_eq!(weighted_norm(&g, &[0.0; 10]).unwrap(), 0.0);
        assert_eq!(rayleigh(&g, &[0.0; 10]), Err(GraphError::ZeroVector));
        assert!(matches!(
            functional_i(&g, &[1.0, 2.0]),
            Err(GraphError::DimensionMismatch {
                expected: 10,
                got: 2
            })
        ));
    }

    #[test]
    fn medians() {
        let g = path(4).unwrap();
        assert_eq!(weighted_median(&g, &[1.0, 1.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(weighted_median(&g, &[1.0, 0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(weighted_median(&g, &[7.0; 4]).unwrap(), 7.0);
        let c = cycle(4).unwrap();
        assert_eq!(weighted_median(&c, &[4.0, 3.0, 2.0, 1.0]).unwrap(), 2.0);
    }

    #[test]
    fn coarea_matches_on_example() {
        let g = path(4).unwrap();
        let f = rational_vec(&[3, -1, 5, 0], 7);
        assert_eq!(
            coarea_level_sum(&g, &f).unwrap(),
            functional_i(&g, &f).unwrap()
        );
    }
}
