//! Paths on the unit sphere of `‖·‖_w` between eigenvectors.
//!
//! Along a segment or a triangle `I` and `‖·‖_w` are piecewise linear, with
//! kinks only where two coordinates across an edge meet or a coordinate
//! crosses zero. `Î` is linear-fractional on each cell, so it attains its
//! extremes at cell vertices; sampling those vertices (plus a regular grid)
//! gives the exact maximum.

use serde::Serialize;

use super::VerifyError;
use crate::functional::{functional_i, rayleigh, weighted_norm};
use crate::graph::Graph;
use crate::scalar::Scalar;

const GRID: usize = 16;
const FACE_GRID: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Phi,
    Psi,
    FaceT1,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathSample<T> {
    /// `[t]` on a segment, `[t1, t2]` on the face.
    pub params: Vec<T>,
    pub value: T,
    pub norm: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathReport<T> {
    pub kind: PathKind,
    /// Ordered by parameter.
    pub samples: Vec<PathSample<T>>,
    pub max: T,
    /// `Î` nondecreasing in `t` (segments only; `false` on the face).
    pub monotone: bool,
    pub bound: T,
    /// Every sampled `Î ≤ bound + ζ`.
    pub sublevel: bool,
    /// Every sampled `‖·‖_w = 1` within `ζ`.
    pub norm_one: bool,
    /// For φ: samples agree with `t·w(E₁)/δ⁺`.
    pub closed_form: Option<bool>,
}

fn positive_support<T: Scalar>(f: &[T]) -> Vec<usize> {
    let zeta = T::zero_threshold(f);
    (0..f.len()).filter(|&i| f[i] > zeta).collect()
}

fn hat<T: Scalar>(g: &Graph, s: &[usize]) -> Vec<T> {
    let vol: f64 = s.iter().map(|&i| g.degree(i)).sum();
    let v = T::one() / T::of_f64(vol);
    let mut x = vec![T::zero(); g.n()];
    for &i in s {
        x[i] = v.clone();
    }
    x
}

fn lerp<T: Scalar>(a: &[T], b: &[T], t: &T) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + t.clone() * (y.clone() - x.clone()))
        .collect()
}

fn sample<T: Scalar>(g: &Graph, params: Vec<T>, x: &[T]) -> PathSample<T> {
    let norm = weighted_norm(g, x).expect("length checked");
    let value = if norm.is_zero() {
        T::zero()
    } else {
        functional_i(g, x).expect("length checked") / norm.clone()
    };
    PathSample { params, value, norm }
}

/// Parameters in `(0, 1)` where `(1-t)a + tb` has a kink.
fn segment_kinks<T: Scalar>(g: &Graph, a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::new();
    let mut push = |p: T, q: T| {
        // p + t q = 0
        if !q.is_zero() {
            let t = -p / q;
            if t.is_positive() && t < T::one() {
                out.push(t);
            }
        }
    };
    for e in g.edges() {
        let da = a[e.u].clone() - a[e.v].clone();
        let db = b[e.u].clone() - b[e.v].clone();
        push(da.clone(), db - da);
    }
    for i in 0..a.len() {
        push(a[i].clone(), b[i].clone() - a[i].clone());
    }
    out
}

fn grid<T: Scalar>(steps: usize) -> Vec<T> {
    (0..=steps)
        .map(|k| T::from_usize(k) / T::from_usize(steps))
        .collect()
}

fn sorted_unique<T: Scalar>(mut ts: Vec<T>) -> Vec<T> {
    ts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    ts.dedup();
    ts
}

fn segment_report<T: Scalar>(
    g: &Graph,
    kind: PathKind,
    a: &[T],
    b: &[T],
    extra: Vec<T>,
    bound: T,
) -> PathReport<T> {
    let mut ts = grid::<T>(GRID);
    ts.extend(segment_kinks(g, a, b));
    ts.extend(extra);
    let samples: Vec<PathSample<T>> = sorted_unique(ts)
        .into_iter()
        .map(|t| {
            let x = lerp(a, b, &t);
            sample(g, vec![t], &x)
        })
        .collect();
    finish(kind, samples, bound, true)
}

fn finish<T: Scalar>(
    kind: PathKind,
    samples: Vec<PathSample<T>>,
    bound: T,
    segment: bool,
) -> PathReport<T> {
    let max = samples
        .iter()
        .map(|s| s.value.clone())
        .reduce(T::max_of)
        .expect("samples include endpoints");
    let zeta = T::zero_threshold(std::slice::from_ref(&bound));
    let one = T::one();
    let norm_zeta = T::zero_threshold(std::slice::from_ref(&one));
    let monotone = segment && samples.windows(2).all(|w| w[1].value >= w[0].value.clone() - zeta.clone());
    let sublevel = samples.iter().all(|s| s.value <= bound.clone() + zeta.clone());
    let norm_one = samples
        .iter()
        .all(|s| (s.norm.clone() - one.clone()).abs() <= norm_zeta);
    PathReport {
        kind,
        samples,
        max,
        monotone,
        bound,
        sublevel,
        norm_one,
        closed_form: None,
    }
}

/// `φ(t) = t 1̂_{D⁺} + (1-t) 1̂_V` from the constant vector to the
/// normalized positive domain of `fk`. On `[0, 1]` the positive domain stays
/// on top, so `Î(φ(t)) = t·w(∂D⁺)/δ⁺`; this equals the edge count form
/// `t·w(E₁)/δ⁺` (edges between `D⁺` and `D⁰`) when no edge joins `D⁺` to
/// `D⁻`.
pub fn path_phi<T: Scalar>(g: &Graph, fk: &[T]) -> Result<PathReport<T>, VerifyError> {
    g.check_len(fk.len())?;
    let zeta = T::zero_threshold(fk);
    let plus = positive_support(fk);
    if plus.is_empty() {
        return Err(VerifyError::Precondition("positive domain is empty".into()));
    }
    let zero: Vec<bool> = fk.iter().map(|x| x.abs() <= zeta).collect();
    if !zero.iter().any(|&z| z) {
        return Err(VerifyError::Precondition("zero set is empty; φ is degenerate".into()));
    }
    let mut in_plus = vec![false; g.n()];
    for &i in &plus {
        in_plus[i] = true;
    }
    let e1: f64 = g
        .edges()
        .iter()
        .filter(|e| (in_plus[e.u] && zero[e.v]) || (zero[e.u] && in_plus[e.v]))
        .map(|e| e.w)
        .sum();
    let delta_plus: f64 = plus.iter().map(|&i| g.degree(i)).sum();
    let slope = T::of_f64(e1) / T::of_f64(delta_plus);
    let all: Vec<usize> = (0..g.n()).collect();
    let a = hat::<T>(g, &all);
    let b = hat::<T>(g, &plus);
    let end = rayleigh(g, &b)?;
    let mut rep = segment_report(g, PathKind::Phi, &a, &b, Vec::new(), end);
    let tol = T::zero_threshold(std::slice::from_ref(&slope));
    rep.closed_form = Some(rep.samples.iter().all(|s| {
        (s.value.clone() - s.params[0].clone() * slope.clone()).abs() <= tol
    }));
    Ok(rep)
}

/// `ψ(t) = t 1̂_{D⁺(f_k)} + (1-t) 1̂_{D⁺(f_h)}`, sampled at the kink
/// `t* = δ⁺_k/(δ⁺_k + δ⁺_h)` and all other breakpoints; bound `Î(f_k)`.
pub fn path_psi<T: Scalar>(g: &Graph, f_h: &[T], f_k: &[T]) -> Result<PathReport<T>, VerifyError> {
    g.check_len(f_h.len())?;
    g.check_len(f_k.len())?;
    for (name, f) in [("f_h", f_h), ("f_k", f_k)] {
        let zeta = T::zero_threshold(f);
        if f.iter().any(|x| *x < -zeta.clone()) {
            return Err(VerifyError::Precondition(format!("{name} has negative entries")));
        }
    }
    let (ph, pk) = (positive_support(f_h), positive_support(f_k));
    if ph.is_empty() || pk.is_empty() {
        return Err(VerifyError::Precondition("positive domain is empty".into()));
    }
    let (rh, rk) = (rayleigh(g, f_h)?, rayleigh(g, f_k)?);
    if rh > rk.clone() + T::zero_threshold(std::slice::from_ref(&rk)) {
        return Err(VerifyError::Precondition("requires Î(f_h) ≤ Î(f_k)".into()));
    }
    let a = hat::<T>(g, &ph);
    let b = hat::<T>(g, &pk);
    let dh = T::of_f64(ph.iter().map(|&i| g.degree(i)).sum());
    let dk = T::of_f64(pk.iter().map(|&i| g.degree(i)).sum());
    let kink = dk.clone() / (dk + dh);
    Ok(segment_report(g, PathKind::Psi, &a, &b, vec![kink], rk))
}

/// Line `a t1 + b t2 = c` in the parameter plane.
struct Line<T> {
    a: T,
    b: T,
    c: T,
}

/// `T₁(t1, t2) = t1 f1 + t2 f2 + (1 - t1 - t2) ψ` over the closed simplex,
/// sampled on a grid and at every vertex of the kink arrangement. The bound
/// is `Î(ψ)`, which is `ρ₃` when `ψ` realizes it.
pub fn face_t1<T: Scalar>(
    g: &Graph,
    psi_vec: &[T],
    f2: &[T],
    f1: &[T],
) -> Result<PathReport<T>, VerifyError> {
    for v in [psi_vec, f2, f1] {
        g.check_len(v.len())?;
        let nrm = weighted_norm(g, v)?;
        if (nrm.clone() - T::one()).abs() > T::zero_threshold(&[T::one()]) {
            return Err(VerifyError::Precondition(format!(
                "vertices must have ‖·‖_w = 1 (got {})",
                nrm.as_f64()
            )));
        }
    }
    let f1_zeta = T::zero_threshold(f1);
    if f1.iter().any(|x| (x.clone() - f1[0].clone()).abs() > f1_zeta) {
        return Err(VerifyError::Precondition("f1 must be 1̂_V".into()));
    }
    let n = g.n();
    let at = |t1: &T, t2: &T| -> Vec<T> {
        (0..n)
            .map(|i| {
                psi_vec[i].clone()
                    + t1.clone() * (f1[i].clone() - psi_vec[i].clone())
                    + t2.clone() * (f2[i].clone() - psi_vec[i].clone())
            })
            .collect()
    };
    // Kink lines: x_u = x_v across edges and x_i = 0; plus simplex sides.
    let mut lines: Vec<Line<T>> = vec![
        Line { a: T::one(), b: T::zero(), c: T::zero() },
        Line { a: T::zero(), b: T::one(), c: T::zero() },
        Line { a: T::one(), b: T::one(), c: T::one() },
    ];
    let mut add = |p0: T, p1: T, p2: T| {
        // p0 + t1 p1 + t2 p2 = 0
        if !(p1.is_zero() && p2.is_zero()) {
            lines.push(Line { a: p1, b: p2, c: -p0 });
        }
    };
    for e in g.edges() {
        let d = |v: &[T]| v[e.u].clone() - v[e.v].clone();
        let (dp, d1, d2) = (d(psi_vec), d(f1), d(f2));
        add(dp.clone(), d1 - dp.clone(), d2 - dp);
    }
    for i in 0..n {
        let p = psi_vec[i].clone();
        add(p.clone(), f1[i].clone() - p.clone(), f2[i].clone() - p);
    }
    let mut points: Vec<(T, T)> = Vec::new();
    for i in 0..=FACE_GRID {
        for j in 0..=FACE_GRID - i {
            let s = T::from_usize(FACE_GRID);
            points.push((T::from_usize(i) / s.clone(), T::from_usize(j) / s));
        }
    }
    let eps = T::zero_threshold(&[T::one()]);
    let inside = |t1: &T, t2: &T| {
        *t1 >= -eps.clone() && *t2 >= -eps.clone() && t1.clone() + t2.clone() <= T::one() + eps.clone()
    };
    for (k, l) in lines.iter().enumerate() {
        for m in &lines[k + 1..] {
            let det = l.a.clone() * m.b.clone() - l.b.clone() * m.a.clone();
            if det.is_zero() {
                continue;
            }
            let t1 = (l.c.clone() * m.b.clone() - l.b.clone() * m.c.clone()) / det.clone();
            let t2 = (l.a.clone() * m.c.clone() - l.c.clone() * m.a.clone()) / det;
            if inside(&t1, &t2) {
                points.push((t1, t2));
            }
        }
    }
    points.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("finite")
            .then(a.1.partial_cmp(&b.1).expect("finite"))
    });
    points.dedup();
    let samples: Vec<PathSample<T>> = points
        .into_iter()
        .map(|(t1, t2)| {
            let x = at(&t1, &t2);
            sample(g, vec![t1, t2], &x)
        })
        .collect();
    let bound = rayleigh(g, psi_vec)?;
    Ok(finish(PathKind::FaceT1, samples, bound, false))
}
