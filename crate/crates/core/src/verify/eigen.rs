//! Set-valued eigenpair feasibility as a bounded circulation.
//!
//! `(μ, f)` is an eigenpair when there are `z_ij = -z_ji ∈ Sgn(f_i - f_j)`
//! with `Σ_j w_ij z_ij ∈ μ d_i Sgn(f_i)` at every vertex. Edges with
//! `f_i ≠ f_j` fix `z`; plateau edges carry a free flow `w z ∈ [-w, w]`
//! as two opposite arcs, and each vertex exchanges its net outflow with a
//! balance node inside the interval left after the fixed contributions.

use serde::Serialize;

use super::VerifyError;
use crate::flow::{feasible_circulation, BoundedArc};
use crate::graph::{Graph, GraphError};
use crate::scalar::{sign_of, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenCertificate<T> {
    pub vector: Vec<T>,
    pub value: T,
    pub feasible: bool,
    /// `z` on each edge, oriented from `u` to `v` as in [`Graph::edges`].
    pub witness: Option<Vec<T>>,
    /// Unmet demand of the circulation; zero exactly when feasible.
    pub residual: T,
}

fn verify_generic<T: Scalar>(
    g: &Graph,
    f: &[T],
    mu: &T,
    zeta: &T,
    tol: &T,
) -> Result<EigenCertificate<T>, VerifyError> {
    g.check_len(f.len())?;
    if f.iter().all(|x| x.abs() <= *zeta) {
        return Err(GraphError::ZeroVector.into());
    }
    let n = g.n();
    let balance = n;
    let signs: Vec<i8> = f.iter().map(|x| sign_of(x, zeta)).collect();
    let mut fixed = vec![T::zero(); n];
    let mut edge_sign = Vec::with_capacity(g.edges().len());
    let mut arcs = Vec::new();
    let mut plateau_arcs = Vec::new();
    for e in g.edges() {
        let s = sign_of(&(f[e.u].clone() - f[e.v].clone()), zeta);
        edge_sign.push(s);
        let w = T::of_f64(e.w);
        if s == 0 {
            plateau_arcs.push(Some(arcs.len()));
            arcs.push(BoundedArc { from: e.u, to: e.v, lower: T::zero(), upper: w.clone() });
            arcs.push(BoundedArc { from: e.v, to: e.u, lower: T::zero(), upper: w });
        } else {
            plateau_arcs.push(None);
            let x = if s > 0 { w } else { -w };
            fixed[e.u] = fixed[e.u].clone() + x.clone();
            fixed[e.v] = fixed[e.v].clone() - x;
        }
    }
    for i in 0..n {
        let md = mu.clone() * T::of_f64(g.degree(i));
        let (lo, hi) = match signs[i] {
            1 => (md.clone(), md),
            -1 => (-md.clone(), -md),
            _ => (-md.clone(), md),
        };
        // Net plateau outflow at i must lie in [lo, hi] - fixed.
        let lo = lo - fixed[i].clone() - tol.clone();
        let hi = hi - fixed[i].clone() + tol.clone();
        if lo.is_positive() {
            arcs.push(BoundedArc { from: balance, to: i, lower: lo, upper: hi });
        } else if hi.is_negative() {
            arcs.push(BoundedArc { from: i, to: balance, lower: -hi, upper: -lo });
        } else {
            arcs.push(BoundedArc { from: balance, to: i, lower: T::zero(), upper: hi });
            arcs.push(BoundedArc { from: i, to: balance, lower: T::zero(), upper: -lo });
        }
    }
    let circ = feasible_circulation(n + 1, &arcs, tol.clone());
    let witness = circ.feasible.then(|| {
        g.edges()
            .iter()
            .zip(&edge_sign)
            .zip(&plateau_arcs)
            .map(|((e, &s), arc)| match arc {
                Some(k) => (circ.flows[*k].clone() - circ.flows[k + 1].clone()) / T::of_f64(e.w),
                None if s > 0 => T::one(),
                None => -T::one(),
            })
            .collect()
    });
    Ok(EigenCertificate {
        vector: f.to_vec(),
        value: mu.clone(),
        feasible: circ.feasible,
        witness,
        residual: circ.deficit,
    })
}

/// Floating-point feasibility with zero threshold `ζ = 1e-10·max|f|` and
/// absolute balance tolerance `tol`.
pub fn verify_eigenpair(
    g: &Graph,
    f: &[f64],
    mu: f64,
    tol: f64,
) -> Result<EigenCertificate<f64>, VerifyError> {
    if !(tol >= 0.0 && tol.is_finite() && mu.is_finite()) {
        return Err(VerifyError::Precondition("tolerance and μ must be finite, tol ≥ 0".into()));
    }
    let zeta = f64::zero_threshold(f);
    verify_generic(g, f, &mu, &zeta, &tol)
}

/// Exact feasibility in rational arithmetic.
pub fn verify_eigenpair_exact(
    g: &Graph,
    f: &[Rational],
    mu: &Rational,
) -> Result<EigenCertificate<Rational>, VerifyError> {
    let zero = Rational::zero_threshold(f);
    verify_generic(g, f, mu, &zero, &zero)
}

/// Check a witness: antisymmetry is built in by orientation; `z_e` must
/// equal `sign(f_u - f_v)` off plateaus, lie in `[-1, 1]` on plateaus, and
/// the vertex sums must lie in `μ d_i Sgn(f_i)` within `tol`.
pub fn witness_is_valid<T: Scalar>(g: &Graph, f: &[T], mu: &T, z: &[T], tol: &T) -> bool {
    if f.len() != g.n() || z.len() != g.edges().len() {
        return false;
    }
    let zeta = T::zero_threshold(f);
    let one = T::one();
    let mut sums = vec![T::zero(); g.n()];
    for (e, ze) in g.edges().iter().zip(z) {
        let s = sign_of(&(f[e.u].clone() - f[e.v].clone()), &zeta);
        let ok = match s {
            1 => *ze == one,
            -1 => *ze == -one.clone(),
            _ => ze.abs() <= one.clone() + tol.clone(),
        };
        if !ok {
            return false;
        }
        let x = T::of_f64(e.w) * ze.clone();
        sums[e.u] = sums[e.u].clone() + x.clone();
        sums[e.v] = sums[e.v].clone() - x;
    }
    (0..g.n()).all(|i| {
        let md = mu.clone() * T::of_f64(g.degree(i));
        match sign_of(&f[i], &zeta) {
            0 => sums[i].abs() <= md + tol.clone(),
            s => {
                let target = if s > 0 { md } else { -md };
                (sums[i].clone() - target).abs() <= *tol
            }
        }
    })
}
