//! Set-valued sign pairings with `Sgn(0) = [-1, 1]`, evaluated as intervals.

use crate::functional::rayleigh;
use crate::graph::{Graph, GraphError};
use crate::scalar::{sign_of, Interval, Scalar};

/// `⟨D Sgn x, h⟩ = Σ_i d_i Sgn(x_i) h_i`.
pub fn d_sgn_pairing<T: Scalar>(
    g: &Graph,
    x: &[T],
    h: &[T],
    zeta: &T,
) -> Result<Interval<T>, GraphError> {
    g.check_len(x.len())?;
    g.check_len(h.len())?;
    let mut acc = Interval::zero();
    for i in 0..x.len() {
        let coef = T::of_f64(g.degree(i)) * h[i].clone();
        acc = acc + Interval::sgn(sign_of(&x[i], zeta)).scale(&coef);
    }
    Ok(acc)
}

/// `Σ_{edges} w_ij Sgn(x_i - x_j) (h_i - h_j)`, each undirected edge once.
pub fn edge_sgn_pairing<T: Scalar>(
    g: &Graph,
    x: &[T],
    h: &[T],
    zeta: &T,
) -> Result<Interval<T>, GraphError> {
    g.check_len(x.len())?;
    g.check_len(h.len())?;
    let mut acc = Interval::zero();
    for e in g.edges() {
        let dx = x[e.u].clone() - x[e.v].clone();
        let coef = T::of_f64(e.w) * (h[e.u].clone() - h[e.v].clone());
        acc = acc + Interval::sgn(sign_of(&dx, zeta)).scale(&coef);
    }
    Ok(acc)
}

/// Stationarity interval of `Î` along the direction `h` at `x`:
/// `Σ w Sgn(x_i - x_j)(h_i - h_j) - Î(x) ⟨D Sgn x, h⟩`.
pub fn direction_condition<T: Scalar>(
    g: &Graph,
    x: &[T],
    h: &[T],
    zeta: &T,
) -> Result<Interval<T>, GraphError> {
    let value = rayleigh(g, x)?;
    let edge = edge_sgn_pairing(g, x, h, zeta)?;
    let deg = d_sgn_pairing(g, x, h, zeta)?;
    Ok(edge - deg.scale(&value))
}
