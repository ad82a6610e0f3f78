//! The sign update and the pseudo-orthogonalization step.

use super::IpmError;
use crate::functional::weighted_norm;
use crate::graph::Graph;
use crate::nodal::SignClasses;
use crate::scalar::{Interval, Scalar, ZETA_REL};
use crate::sgn::direction_condition;

/// `v_i = sign(f_i)` on the support and `-(δ⁺ - δ⁻)/δ⁰` on the zero set,
/// so that `⟨D v, 1⟩ = 0` and `‖v‖∞ ≤ 1`.
pub fn sign_step(g: &Graph, f: &[f64]) -> Result<Vec<f64>, IpmError> {
    sign_step_with(g, f, ZETA_REL)
}

pub(crate) fn sign_step_with(g: &Graph, f: &[f64], zero_tol: f64) -> Result<Vec<f64>, IpmError> {
    g.check_len(f.len())?;
    let scale = f.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Err(crate::graph::GraphError::ZeroVector.into());
    }
    let sc = SignClasses::classify(g, f, &(zero_tol * scale))?;
    let imbalance = sc.delta_plus - sc.delta_minus;
    let slack = if g.is_integral() {
        0.0
    } else {
        1e-12 * g.total_degree()
    };
    if imbalance.abs() > sc.delta_zero + slack {
        return Err(IpmError::NotCentered {
            imbalance: imbalance.abs(),
            zero: sc.delta_zero,
        });
    }
    let zero_value = if sc.delta_zero > 0.0 {
        (-imbalance / sc.delta_zero).clamp(-1.0, 1.0)
    } else {
        0.0
    };
    Ok(sc
        .signs
        .iter()
        .map(|&s| if s == 0 { zero_value } else { f64::from(s) })
        .collect())
}

/// Result of a pseudo-orthogonalization `g = f - λ f2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoOrt<T> {
    pub g: Vec<T>,
    pub lambda: T,
    /// Interval value of the edge/degree sign condition at `g`.
    pub interval: Interval<T>,
    pub admissible: bool,
}

/// Search `λ` among `0` and the breakpoints `(f_i - f_j)/(f2_i - f2_j)`
/// (edges) and `f_i/f2_i` (vertices) for which the condition interval
/// contains 0, preferring the smallest `|λ|`. Between breakpoints every sign
/// is constant and the condition reduces to a λ-independent constant, so the
/// breakpoints and 0 are the only candidates needed. When none is
/// admissible, the candidate closest to admissibility is returned with
/// `admissible = false`.
pub fn pseudo_ort_search<T: Scalar>(
    g: &Graph,
    f: &[T],
    f2: &[T],
) -> Result<PseudoOrt<T>, IpmError> {
    g.check_len(f.len())?;
    g.check_len(f2.len())?;
    let nrm = weighted_norm(g, f2)?.as_f64();
    if (nrm - 1.0).abs() > 1e-9 {
        return Err(IpmError::NotNormalized(nrm));
    }
    let mut cands = vec![T::zero()];
    for e in g.edges() {
        let d2 = f2[e.u].clone() - f2[e.v].clone();
        if !d2.is_zero() {
            cands.push((f[e.u].clone() - f[e.v].clone()) / d2);
        }
    }
    for i in 0..f.len() {
        if !f2[i].is_zero() {
            cands.push(f[i].clone() / f2[i].clone());
        }
    }
    cands.sort_by(|a, b| {
        a.abs()
            .partial_cmp(&b.abs())
            .unwrap()
            .then(a.partial_cmp(b).unwrap())
    });
    cands.dedup();

    let f_zero = T::zero_threshold(f);
    let mut fallback: Option<PseudoOrt<T>> = None;
    let mut fallback_dist: Option<T> = None;
    for lambda in cands {
        let gv: Vec<T> = f
            .iter()
            .zip(f2)
            .map(|(a, b)| a.clone() - lambda.clone() * b.clone())
            .collect();
        if gv.iter().all(|x| x.abs() <= f_zero) {
            continue;
        }
        let zeta = T::zero_threshold(&gv);
        let interval = direction_condition(g, &gv, f2, &zeta)?;
        let scale = interval.lo.abs() + interval.hi.abs() + T::one();
        let tol = T::slack(&scale);
        if interval.contains_zero_within(&tol) {
            return Ok(PseudoOrt {
                g: gv,
                lambda,
                interval,
                admissible: true,
            });
        }
        let dist = interval.distance_to_zero();
        if fallback_dist.as_ref().is_none_or(|d| dist < *d) {
            fallback_dist = Some(dist);
            fallback = Some(PseudoOrt {
                g: gv,
                lambda,
                interval,
                admissible: false,
            });
        }
    }
    fallback.ok_or(IpmError::NoAdmissibleLambda {
        fallback: 0.0,
        distance: f64::INFINITY,
    })
}

/// Like [`pseudo_ort_search`] but reports the lack of an admissible `λ` as
/// an error carrying the fallback.
pub fn pseudo_ort<T: Scalar>(g: &Graph, f: &[T], f2: &[T]) -> Result<PseudoOrt<T>, IpmError> {
    let r = pseudo_ort_search(g, f, f2)?;
    if r.admissible {
        Ok(r)
    } else {
        Err(IpmError::NoAdmissibleLambda {
            fallback: r.lambda.as_f64(),
            distance: r.interval.distance_to_zero().as_f64(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::indicator_hat;
    use crate::generators::path;
    use crate::scalar::{ratio, Rational};
    use num::Zero;

    #[test]
    fn sign_step_examples() {
        let g = path(4).unwrap();
        assert_eq!(
            sign_step(&g, &[0.25, 0.25, -0.25, -0.25]).unwrap(),
            vec![1.0, 1.0, -1.0, -1.0]
        );
        assert_eq!(
            sign_step(&g, &[1.0, 0.0, 0.0, -1.0]).unwrap(),
            vec![1.0, 0.0, 0.0, -1.0]
        );
        let v = sign_step(&g, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(v, vec![1.0, -0.2, -0.2, -0.2]);
        let dv: f64 = v.iter().zip(g.degrees()).map(|(a, d)| a * d).sum();
        assert!(dv.abs() < 1e-15);
        assert!(matches!(
            sign_step(&g, &[1.0, 1.0, 1.0, -1.0]),
            Err(IpmError::NotCentered { .. })
        ));
        assert!(sign_step(&g, &[0.0; 4]).is_err());
    }

    #[test]
    fn sign_step_on_shifted_halving_vector() {
        let g = path(10).unwrap();
        let f: Vec<f64> = (0..10).map(|i| if i < 5 { 1.0 } else { 0.0 }).collect();
        let v = sign_step(&g, &f).unwrap();
        assert!(v[..5].iter().all(|&x| x == 1.0));
        assert!(v[5..].iter().all(|&x| x.abs() <= 1.0));
    }

    #[test]
    fn already_orthogonal_keeps_lambda_zero() {
        let g = path(10).unwrap();
        let f2: Vec<Rational> = indicator_hat(&g, &[0, 1, 2, 3, 4]).unwrap();
        let f: Vec<Rational> = indicator_hat(&g, &[3, 4, 5, 6]).unwrap();
        let r = pseudo_ort(&g, &f, &f2).unwrap();
        assert_eq!(r.lambda, Rational::zero());
        assert_eq!(r.g, f);
    }

    #[test]
    fn f_equal_f2_avoids_zero_vector() {
        let g = path(4).unwrap();
        let f2: Vec<Rational> = indicator_hat(&g, &[0, 1]).unwrap();
        let r = pseudo_ort_search(&g, &f2, &f2).unwrap();
        assert_ne!(r.lambda, ratio(1, 1));
        assert!(r.g.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn p4_output_satisfies_condition() {
        let g = path(4).unwrap();
        let f2: Vec<Rational> = indicator_hat(&g, &[0, 1]).unwrap();
        let f = vec![ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(-1, 1)];
        let r = pseudo_ort(&g, &f, &f2).unwrap();
        assert!(r.interval.contains_zero());
        let again = direction_condition(&g, &r.g, &f2, &Rational::zero()).unwrap();
        assert!(again.contains_zero());
    }
}
