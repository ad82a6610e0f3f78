//! Pseudo-orthogonality certificates and critical shift constants.

use serde::Serialize;

use super::VerifyError;
use crate::functional::{weighted_median, weighted_norm};
use crate::graph::Graph;
use crate::ipm::pseudo_ort_search;
use crate::nodal::SignClasses;
use crate::scalar::{Interval, Scalar};
use crate::sgn::{d_sgn_pairing, direction_condition, edge_sgn_pairing};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionCheck<T> {
    pub interval: Interval<T>,
    pub holds: bool,
}

impl<T: Scalar> ConditionCheck<T> {
    fn of(interval: Interval<T>) -> Self {
        let scale = interval.lo.abs() + interval.hi.abs() + T::one();
        let holds = interval.contains_zero_within(&T::slack(&scale));
        Self { interval, holds }
    }
}

/// Interval conditions of `f` against the basis `[1̂_V]` or `[1̂_V, f2]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PseudoOrtCheck<T> {
    /// `0 ∈ ⟨D Sgn f, 1̂_V⟩` (zero weighted median).
    pub median: ConditionCheck<T>,
    /// `0 ∈ Σ w Sgn(f_i - f_j)(f2_i - f2_j) - Î(f)⟨D Sgn f, f2⟩`.
    pub second: Option<ConditionCheck<T>>,
    /// `0 ∈ ⟨D Sgn f, f2⟩`.
    pub d_pairing: Option<ConditionCheck<T>>,
    /// `0 ∈ Σ w Sgn(f_i - f_j)(f2_i - f2_j)`.
    pub edge_pairing: Option<ConditionCheck<T>>,
}

impl<T: Scalar> PseudoOrtCheck<T> {
    /// Both defining conditions hold.
    pub fn is_pseudo_orthogonal(&self) -> bool {
        self.median.holds && self.second.as_ref().is_none_or(|c| c.holds)
    }

    /// The three sufficient conditions hold (vacuous without `f2`).
    pub fn sufficient_hold(&self) -> bool {
        self.median.holds
            && self.d_pairing.as_ref().is_none_or(|c| c.holds)
            && self.edge_pairing.as_ref().is_none_or(|c| c.holds)
    }
}

/// Evaluate the pseudo-orthogonality conditions of `f` against `basis`,
/// whose first element plays the role of `1̂_V` and optional second element
/// that of `f2`.
pub fn check_pseudo_ort<T: Scalar>(
    g: &Graph,
    f: &[T],
    basis: &[Vec<T>],
) -> Result<PseudoOrtCheck<T>, VerifyError> {
    g.check_len(f.len())?;
    if basis.is_empty() || basis.len() > 2 {
        return Err(VerifyError::Precondition("basis must hold one or two vectors".into()));
    }
    for b in basis {
        g.check_len(b.len())?;
    }
    let zeta = T::zero_threshold(f);
    let median = ConditionCheck::of(d_sgn_pairing(g, f, &basis[0], &zeta)?);
    let (second, d_pairing, edge_pairing) = match basis.get(1) {
        None => (None, None, None),
        Some(f2) => {
            (
                Some(ConditionCheck::of(direction_condition(g, f, f2, &zeta)?)),
                Some(ConditionCheck::of(d_sgn_pairing(g, f, f2, &zeta)?)),
                Some(ConditionCheck::of(edge_sgn_pairing(g, f, f2, &zeta)?)),
            )
        }
    };
    Ok(PseudoOrtCheck {
        median,
        second,
        d_pairing,
        edge_pairing,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalConstants<T> {
    /// Weighted median of `f`: the critical shift of `c ↦ ‖f - c 1‖_w`.
    pub c_bar: T,
    pub c1: T,
    pub c2: T,
    /// `f - c1 1 - c2 f2`.
    pub residual: Vec<T>,
    pub median: ConditionCheck<T>,
    pub second: ConditionCheck<T>,
    pub rounds: usize,
}

const MAX_ROUNDS: usize = 100;

/// Critical shifts `(c1, c2)` of `Î(f - c1 1 - c2 f2)`, found by
/// alternating weighted-median shifts and breakpoint searches along `f2`
/// until both interval conditions hold.
pub fn critical_constants<T: Scalar>(
    g: &Graph,
    f: &[T],
    f2: &[T],
) -> Result<CriticalConstants<T>, VerifyError> {
    g.check_len(f.len())?;
    g.check_len(f2.len())?;
    let nrm = weighted_norm(g, f2)?.as_f64();
    if (nrm - 1.0).abs() > 1e-9 {
        return Err(VerifyError::Precondition(format!("‖f2‖_w must be 1, got {nrm}")));
    }
    if in_span(f, f2) {
        return Err(VerifyError::Precondition("f lies in span{1, f2}".into()));
    }
    let c_bar = weighted_median(g, f)?;
    let (mut c1, mut c2) = (T::zero(), T::zero());
    let mut y = f.to_vec();
    for round in 1..=MAX_ROUNDS {
        let zeta = T::zero_threshold(&y);
        if !SignClasses::classify(g, &y, &zeta)?.is_balanced() {
            let m = weighted_median(g, &y)?;
            y.iter_mut().for_each(|x| *x = x.clone() - m.clone());
            c1 = c1 + m;
        }
        let po = pseudo_ort_search(g, &y, f2)?;
        c2 = c2 + po.lambda.clone();
        y = po.g;
        let check = check_pseudo_ort(g, &y, &[vec![T::one(); g.n()], f2.to_vec()])?;
        if check.is_pseudo_orthogonal() {
            return Ok(CriticalConstants {
                c_bar,
                c1,
                c2,
                residual: y,
                median: check.median,
                second: check.second.expect("f2 supplied"),
                rounds: round,
            });
        }
    }
    Err(VerifyError::NotConverged(MAX_ROUNDS))
}

/// Whether `f = a 1 + b f2` for some reals `a, b`.
fn in_span<T: Scalar>(f: &[T], f2: &[T]) -> bool {
    let n = f.len();
    let zeta = T::zero_threshold(f) + T::zero_threshold(f2);
    // Pick two indices where f2 differs to solve for (a, b).
    let Some((i, j)) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| (f2[i].clone() - f2[j].clone()).abs() > zeta)
    else {
        // f2 constant: span{1, f2} = span{1}.
        return f.iter().all(|x| (x.clone() - f[0].clone()).abs() <= zeta);
    };
    let b = (f[i].clone() - f[j].clone()) / (f2[i].clone() - f2[j].clone());
    let a = f[i].clone() - b.clone() * f2[i].clone();
    let tol = zeta.clone() * (T::one() + b.abs());
    f.iter()
        .zip(f2)
        .all(|(x, y)| (x.clone() - a.clone() - b.clone() * y.clone()).abs() <= tol)
}
