//! Inner convex problem `min_{‖f‖₂ ≤ 1} I(f) - μ⟨f, s⟩`.
//!
//! Solved through its dual `min_{|α_e| ≤ w_e} ½‖Bᵀα - μs‖²` with FISTA and
//! function-value restarts, where `B` is the signed edge-vertex incidence
//! matrix. A dual point `α` with residual `r = Bᵀα - μs` certifies
//! `optimum ≥ -‖r‖`, and `f = -r/‖r‖` is the matching primal candidate.

use super::{IpmConfig, IpmError};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub struct InnerSolution {
    pub f: Vec<f64>,
    pub objective: f64,
    /// Primal objective minus the dual lower bound.
    pub gap: f64,
    pub iters: usize,
    pub converged: bool,
}

impl InnerSolution {
    pub fn is_zero(&self) -> bool {
        self.f.iter().all(|&x| x == 0.0)
    }
}

/// Reusable solver; keeps the dual variables between calls as a warm start.
#[derive(Clone, Debug)]
pub struct InnerSolver<'a> {
    g: &'a Graph,
    alpha: Vec<f64>,
    step: f64,
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

impl<'a> InnerSolver<'a> {
    pub fn new(g: &'a Graph) -> Self {
        let lip = 2.0 * g.max_unweighted_degree().max(1) as f64;
        Self {
            g,
            alpha: vec![0.0; g.edges().len()],
            step: 1.0 / lip,
        }
    }

    fn residual(&self, alpha: &[f64], mu: f64, s: &[f64], r: &mut [f64]) {
        for (ri, si) in r.iter_mut().zip(s) {
            *ri = -mu * si;
        }
        for (e, a) in self.g.edges().iter().zip(alpha) {
            r[e.u] += a;
            r[e.v] -= a;
        }
    }

    fn primal(&self, f: &[f64], mu: f64, s: &[f64]) -> f64 {
        let tv: f64 = self
            .g
            .edges()
            .iter()
            .map(|e| e.w * (f[e.u] - f[e.v]).abs())
            .sum();
        let lin: f64 = f.iter().zip(s).map(|(a, b)| a * b).sum();
        tv - mu * lin
    }

    /// Solve for linear term `s`. `prev`, when given, is a feasible
    /// reference point: the returned objective never exceeds its value.
    pub fn solve(
        &mut self,
        mu: f64,
        s: &[f64],
        tol: f64,
        max_iter: usize,
        prev: Option<&[f64]>,
    ) -> InnerSolution {
        let n = self.g.n();
        let edges = self.g.edges();
        let mut best_f = vec![0.0; n];
        let mut best_p = 0.0;
        if let Some(p) = prev {
            let nrm = norm2(p);
            if nrm > 0.0 {
                let scaled: Vec<f64> = p.iter().map(|x| x / nrm).collect();
                let val = self.primal(&scaled, mu, s);
                if val < best_p {
                    best_p = val;
                    best_f = scaled;
                }
            }
        }

        let mut alpha = std::mem::take(&mut self.alpha);
        let mut y = alpha.clone();
        let mut next = alpha.clone();
        let mut r = vec![0.0; n];
        let mut t = 1.0_f64;
        let mut last_obj = f64::INFINITY;
        let mut gap = f64::INFINITY;
        let mut iters = 0;
        let mut converged = false;

        while iters < max_iter {
            // Certificate at the current dual point.
            self.residual(&alpha, mu, s, &mut r);
            let rn = norm2(&r);
            if rn > 0.0 {
                let f: Vec<f64> = r.iter().map(|x| -x / rn).collect();
                let val = self.primal(&f, mu, s);
                if val < best_p {
                    best_p = val;
                    best_f = f;
                }
            }
            gap = best_p + rn;
            if gap <= tol {
                converged = true;
                break;
            }
            let obj = 0.5 * rn * rn;
            if obj > last_obj {
                t = 1.0;
                y.copy_from_slice(&alpha);
            }
            last_obj = obj;

            self.residual(&y, mu, s, &mut r);
            for (k, e) in edges.iter().enumerate() {
                let grad = r[e.u] - r[e.v];
                next[k] = (y[k] - self.step * grad).clamp(-e.w, e.w);
            }
            let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
            let beta = (t - 1.0) / t_next;
            for k in 0..edges.len() {
                y[k] = next[k] + beta * (next[k] - alpha[k]);
            }
            std::mem::swap(&mut alpha, &mut next);
            t = t_next;
            iters += 1;
        }
        self.alpha = alpha;
        InnerSolution {
            f: best_f,
            objective: best_p,
            gap,
            iters,
            converged,
        }
    }
}

/// One-shot inner solve with linear term `s = D v`.
pub fn inner_problem(
    g: &Graph,
    mu: f64,
    v: &[f64],
    cfg: &IpmConfig,
) -> Result<InnerSolution, IpmError> {
    cfg.validate()?;
    g.check_len(v.len())?;
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(IpmError::Config(format!(
            "mu must be nonnegative, got {mu}"
        )));
    }
    if v.iter().any(|x| x.abs() > 1.0 + 1e-12) {
        return Err(IpmError::Config("‖v‖∞ must not exceed 1".into()));
    }
    let s: Vec<f64> = v.iter().zip(g.degrees()).map(|(a, d)| a * d).collect();
    let sol = InnerSolver::new(g).solve(mu, &s, cfg.inner_tol, cfg.inner_max, None);
    if sol.converged {
        Ok(sol)
    } else {
        Err(IpmError::InnerNotConverged {
            iters: sol.iters,
            gap: sol.gap,
            iterate: sol.f,
        })
    }
}
