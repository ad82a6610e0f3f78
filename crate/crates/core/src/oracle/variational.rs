use super::OracleError;
use crate::functional::{functional_i, weighted_norm};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// `min_c ‖y - c·1‖_w`, scanning every distinct entry of `y` as `c`.
fn min_shifted_norm<T: Scalar>(g: &Graph, y: &[T]) -> T {
    let mut candidates: Vec<T> = y.to_vec();
    candidates.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    candidates.dedup();
    candidates
        .into_iter()
        .map(|c| {
            let shifted: Vec<T> = y.iter().map(|x| x.clone() - c.clone()).collect();
            weighted_norm(g, &shifted).expect("length checked")
        })
        .reduce(T::min_of)
        .expect("nonempty vector")
}

fn is_constant<T: Scalar>(y: &[T]) -> bool {
    y.windows(2).all(|w| w[0] == w[1])
}

/// `max_c I(y) / ‖y - c·1‖_w`.
pub fn h2_variational<T: Scalar>(g: &Graph, y: &[T]) -> Result<T, OracleError> {
    g.check_len(y.len())?;
    if is_constant(y) {
        return Err(OracleError::ConstantVector);
    }
    Ok(functional_i(g, y)? / min_shifted_norm(g, y))
}

/// `max_{c1,c2} I(y3 - c2·y2) / ‖y3 - c1·1 - c2·y2‖_w`.
///
/// For fixed `c2` the inner maximum over `c1` is attained at a median. As a
/// function of `c2` both numerator and minimized denominator are linear
/// between consecutive values of `(y3_i - y3_j)/(y2_i - y2_j)`, so the
/// quotient is monotone there; evaluating at every such value, at `c2 = 0`
/// and in the limit `|c2| → ∞` gives the exact supremum.
pub fn h3_variational_bound<T: Scalar>(g: &Graph, y3: &[T], y2: &[T]) -> Result<T, OracleError> {
    g.check_len(y3.len())?;
    g.check_len(y2.len())?;
    if in_span(y3, y2) {
        return Err(OracleError::DegenerateSpan);
    }
    let n = y3.len();
    let mut c2s = vec![T::zero()];
    for i in 0..n {
        for j in (i + 1)..n {
            let dy2 = y2[i].clone() - y2[j].clone();
            if !dy2.is_zero() {
                c2s.push((y3[i].clone() - y3[j].clone()) / dy2);
            }
        }
    }
    c2s.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    c2s.dedup();
    let mut best: Option<T> = None;
    for c2 in c2s {
        let z: Vec<T> = y3
            .iter()
            .zip(y2)
            .map(|(a, b)| a.clone() - c2.clone() * b.clone())
            .collect();
        let den = min_shifted_norm(g, &z);
        if den.is_zero() {
            continue;
        }
        let q = functional_i(g, &z)? / den;
        best = Some(match best {
            None => q,
            Some(b) => T::max_of(b, q),
        });
    }
    if !is_constant(y2) {
        let q = functional_i(g, y2)? / min_shifted_norm(g, y2);
        best = Some(match best {
            None => q,
            Some(b) => T::max_of(b, q),
        });
    }
    best.ok_or(OracleError::DegenerateSpan)
}

fn in_span<T: Scalar>(y3: &[T], y2: &[T]) -> bool {
    let tol = T::zero_threshold(y3);
    let near = |a: &T, b: &T| (a.clone() - b.clone()).abs() <= tol;
    let Some(i) = (1..y2.len()).find(|&i| y2[i] != y2[0]) else {
        return y3.iter().all(|x| near(x, &y3[0]));
    };
    let c2 = (y3[i].clone() - y3[0].clone()) / (y2[i].clone() - y2[0].clone());
    let c1 = y3[0].clone() - c2.clone() * y2[0].clone();
    y3.iter()
        .zip(y2)
        .all(|(a, b)| near(a, &(c1.clone() + c2.clone() * b.clone())))
}
