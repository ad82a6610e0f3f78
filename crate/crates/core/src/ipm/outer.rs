//! Outer inverse-power iterations and best-of-inits drivers.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::extract::{extract_2way, extract_3way};
use super::inner::InnerSolver;
use super::steps::{pseudo_ort_search, sign_step_with};
use super::{EigenEstimate, IpmConfig, IpmError, IpmTrace, IterRecord, StopReason};
use crate::functional::{d_inner, functional_i, weighted_median, weighted_norm};
use crate::graph::Graph;
use crate::oracle::PartitionReport;

const COLLAPSE: f64 = 1e-14;
const STEP2_ROUNDS: usize = 50;
const LINE_SEARCH_STEPS: usize = 12;

fn rng_for(cfg: &IpmConfig, init_index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(init_index as u64))
}

/// `(f - median(f)) / ‖f - median(f)‖_w`, or `None` if that is zero.
fn center_normalize(g: &Graph, f: &[f64], zero_tol: f64) -> Option<Vec<f64>> {
    let m = weighted_median(g, f).ok()?;
    let c: Vec<f64> = f.iter().map(|x| x - m).collect();
    let scale = f.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    let big = c.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    if big <= zero_tol * scale || big == 0.0 {
        return None;
    }
    let zeta = zero_tol * big;
    let c: Vec<f64> = c
        .iter()
        .map(|&x| if x.abs() <= zeta { 0.0 } else { x })
        .collect();
    let nrm = weighted_norm(g, &c).ok()?;
    Some(c.iter().map(|x| x / nrm).collect())
}

fn value(g: &Graph, f: &[f64]) -> f64 {
    functional_i(g, f).expect("length checked")
}

/// Breadth-first order from a random root with shuffled neighbor lists.
fn random_bfs_order(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let root = rng.gen_range(0..n);
    let mut order = vec![root];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let mut next: Vec<usize> = g.neighbors(order[head]).iter().map(|&(u, _)| u).collect();
        next.shuffle(rng);
        for u in next {
            if !seen[u] {
                seen[u] = true;
                order.push(u);
            }
        }
        head += 1;
    }
    order
}

/// Random `±1` vector balanced to zero weighted median: along a vertex
/// order, `+1` while the running volume stays within `d/2`, `0` for the
/// vertex that crosses it, `-1` afterwards. Even restarts walk a random
/// breadth-first order, odd ones a uniform permutation.
fn balanced_signs(g: &Graph, rng: &mut ChaCha8Rng, init_index: usize) -> Vec<f64> {
    let order = if init_index.is_multiple_of(2) {
        random_bfs_order(g, rng)
    } else {
        let mut o: Vec<usize> = (0..g.n()).collect();
        o.shuffle(rng);
        o
    };
    let half = g.total_degree() / 2.0;
    let mut f = vec![-1.0; g.n()];
    let mut cum = 0.0;
    for &v in &order {
        if cum + g.degree(v) <= half {
            f[v] = 1.0;
            cum += g.degree(v);
        } else {
            f[v] = 0.0;
            break;
        }
    }
    f
}

/// The common outer loop. `project` maps an inner solution to the next
/// normalized, zero-median iterate; `observe` sees every accepted iterate,
/// starting with `f0`.
fn descend(
    g: &Graph,
    cfg: &IpmConfig,
    f0: Vec<f64>,
    init_index: usize,
    mut project: impl FnMut(&[f64], &[f64], f64) -> Option<Vec<f64>>,
    observe: &mut dyn FnMut(&[f64]),
) -> Result<EigenEstimate, IpmError> {
    let mut f = f0;
    observe(&f);
    let mut mu = value(g, &f);
    if mu < COLLAPSE {
        return Err(IpmError::Collapsed(init_index));
    }
    let mut v = sign_step_with(g, &f, cfg.zero_tol)?;
    let mut solver = InnerSolver::new(g);
    let mut records = vec![IterRecord {
        iteration: 0,
        mu,
        inner_objective: 0.0,
        norm: 1.0,
        inner_iters: 0,
        gap: 0.0,
    }];
    let mut stop = StopReason::MaxOuter;
    for k in 1..=cfg.max_outer {
        let s: Vec<f64> = v.iter().zip(g.degrees()).map(|(a, d)| a * d).collect();
        let sol = solver.solve(mu, &s, cfg.inner_tol, cfg.inner_max, Some(&f));
        if sol.is_zero() {
            stop = StopReason::Stationary;
            break;
        }
        let Some(cand) = project(&sol.f, &f, mu) else {
            stop = StopReason::Stationary;
            break;
        };
        let mu_new = value(g, &cand);
        if mu_new > mu + cfg.inner_tol {
            stop = StopReason::Rejected;
            break;
        }
        records.push(IterRecord {
            iteration: k,
            mu: mu_new,
            inner_objective: sol.objective,
            norm: weighted_norm(g, &cand)?,
            inner_iters: sol.iters,
            gap: sol.gap,
        });
        if mu_new < COLLAPSE {
            return Err(IpmError::Collapsed(init_index));
        }
        observe(&cand);
        let rel = (mu - mu_new).abs() / mu;
        f = cand;
        mu = mu_new;
        if rel < cfg.eps {
            stop = StopReason::Tolerance;
            break;
        }
        v = sign_step_with(g, &f, cfg.zero_tol)?;
    }
    Ok(EigenEstimate {
        value: mu,
        vector: f,
        trace: IpmTrace { records, stop },
        init_index,
    })
}

fn run_second(
    g: &Graph,
    cfg: &IpmConfig,
    init_index: usize,
    observe: &mut dyn FnMut(&[f64]),
) -> Result<EigenEstimate, IpmError> {
    let mut rng = rng_for(cfg, init_index);
    let f0 = center_normalize(g, &balanced_signs(g, &mut rng, init_index), cfg.zero_tol)
        .ok_or(IpmError::Collapsed(init_index))?;
    let zt = cfg.zero_tol;
    descend(
        g,
        cfg,
        f0,
        init_index,
        |inner, _, _| center_normalize(g, inner, zt),
        observe,
    )
}

fn check_input(g: &Graph, cfg: &IpmConfig) -> Result<(), IpmError> {
    cfg.validate()?;
    if g.n() < 2 {
        return Err(crate::graph::GraphError::TooSmall(g.n()).into());
    }
    Ok(())
}

fn pick_min(runs: &[Result<EigenEstimate, IpmError>]) -> Result<EigenEstimate, IpmError> {
    runs.iter()
        .filter_map(|r| r.as_ref().ok())
        .min_by(|a, b| {
            a.value
                .partial_cmp(&b.value)
                .unwrap_or(Ordering::Equal)
                .then(a.init_index.cmp(&b.init_index))
        })
        .cloned()
        .ok_or(IpmError::AllInitsFailed(runs.len()))
}

/// Every initialization of the second-eigenvector iteration, in init order.
pub fn second_eigenvector_runs(
    g: &Graph,
    cfg: &IpmConfig,
) -> Result<Vec<Result<EigenEstimate, IpmError>>, IpmError> {
    check_input(g, cfg)?;
    Ok((0..cfg.n_inits)
        .into_par_iter()
        .map(|i| run_second(g, cfg, i, &mut |_| {}))
        .collect())
}

/// Best-of-inits second eigenvector estimate (smallest `μ`).
pub fn second_eigenvector(g: &Graph, cfg: &IpmConfig) -> Result<EigenEstimate, IpmError> {
    pick_min(&second_eigenvector_runs(g, cfg)?)
}

/// Alternate pseudo-orthogonalization against `f2` and median centering,
/// keeping the last candidate before `Î` increases. At least one
/// pseudo-orthogonalization is applied.
fn step2(g: &Graph, x: &[f64], f2: &[f64], zero_tol: f64) -> Option<Vec<f64>> {
    let y = center_normalize(g, x, zero_tol)?;
    let round = |y: &[f64]| -> Option<Vec<f64>> {
        let po = pseudo_ort_search(g, y, f2).ok()?;
        center_normalize(g, &po.g, zero_tol)
    };
    let mut best = round(&y)?;
    let mut best_val = value(g, &best);
    for _ in 1..STEP2_ROUNDS {
        let Some(z) = round(&best) else { break };
        let val = value(g, &z);
        if val > best_val {
            break;
        }
        let zeta = zero_tol * best.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        let moved = z.iter().zip(&best).any(|(a, b)| (a - b).abs() > zeta);
        best = z;
        best_val = val;
        if !moved {
            break;
        }
    }
    Some(best)
}

/// Step 2 on the inner solution, falling back to a backtracking search on
/// the segment from the previous iterate when `Î` would go up.
fn project_third(
    g: &Graph,
    inner: &[f64],
    prev: &[f64],
    mu: f64,
    f2: &[f64],
    cfg: &IpmConfig,
) -> Option<Vec<f64>> {
    let cand = step2(g, inner, f2, cfg.zero_tol)?;
    if value(g, &cand) <= mu + cfg.inner_tol {
        return Some(cand);
    }
    let target = center_normalize(g, inner, cfg.zero_tol)?;
    let mut theta = 0.5;
    for _ in 0..LINE_SEARCH_STEPS {
        let mix: Vec<f64> = prev
            .iter()
            .zip(&target)
            .map(|(a, b)| (1.0 - theta) * a + theta * b)
            .collect();
        if let Some(c) = step2(g, &mix, f2, cfg.zero_tol) {
            if value(g, &c) <= mu + cfg.inner_tol {
                return Some(c);
            }
        }
        theta *= 0.5;
    }
    Some(cand)
}

/// Among a batch of balanced sign vectors, the one whose signs are closest
/// to `D`-orthogonal to `f2`.
fn third_init(g: &Graph, f2: &[f64], cfg: &IpmConfig, init_index: usize) -> Option<Vec<f64>> {
    let mut rng = rng_for(cfg, init_index);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for _ in 0..64 {
        let s = balanced_signs(g, &mut rng, init_index);
        let score = d_inner(g, &s, f2).abs();
        if best.as_ref().is_none_or(|(b, _)| score < *b) {
            best = Some((score, s));
        }
    }
    let f0 = center_normalize(g, &best?.1, cfg.zero_tol)?;
    let po = pseudo_ort_search(g, &f0, f2).ok()?;
    center_normalize(g, &po.g, cfg.zero_tol)
}

fn run_third(
    g: &Graph,
    f2: &[f64],
    cfg: &IpmConfig,
    init_index: usize,
    observe: &mut dyn FnMut(&[f64]),
) -> Result<EigenEstimate, IpmError> {
    let f0 = third_init(g, f2, cfg, init_index).ok_or(IpmError::Collapsed(init_index))?;
    descend(
        g,
        cfg,
        f0,
        init_index,
        |inner, prev, mu| project_third(g, inner, prev, mu, f2, cfg),
        observe,
    )
}

fn check_f2(g: &Graph, f2: &[f64]) -> Result<(), IpmError> {
    g.check_len(f2.len())?;
    let nrm = weighted_norm(g, f2)?;
    if (nrm - 1.0).abs() > 1e-9 {
        return Err(IpmError::NotNormalized(nrm));
    }
    Ok(())
}

/// Every initialization of the third-eigenvector iteration, in init order.
pub fn third_eigenvector_runs(
    g: &Graph,
    f2: &[f64],
    cfg: &IpmConfig,
) -> Result<Vec<Result<EigenEstimate, IpmError>>, IpmError> {
    check_input(g, cfg)?;
    check_f2(g, f2)?;
    Ok((0..cfg.n_inits)
        .into_par_iter()
        .map(|i| run_third(g, f2, cfg, i, &mut |_| {}))
        .collect())
}

/// Best-of-inits third eigenvector estimate (smallest `μ`).
pub fn third_eigenvector(
    g: &Graph,
    f2: &[f64],
    cfg: &IpmConfig,
) -> Result<EigenEstimate, IpmError> {
    pick_min(&third_eigenvector_runs(g, f2, cfg)?)
}

#[derive(Clone, Debug)]
pub struct Cluster2 {
    /// Smallest-`μ` estimate.
    pub estimate: EigenEstimate,
    /// Best thresholded cut over every iterate of every initialization.
    pub partition: PartitionReport,
    pub partition_init: usize,
}

#[derive(Clone, Debug)]
pub struct Cluster3 {
    pub second: EigenEstimate,
    pub third: EigenEstimate,
    pub partition2: PartitionReport,
    pub partition: PartitionReport,
    pub partition_init: usize,
}

type Tracked = (Result<EigenEstimate, IpmError>, Option<PartitionReport>);

fn keep_better(best: &mut Option<PartitionReport>, rep: PartitionReport) {
    if best
        .as_ref()
        .is_none_or(|b| rep.value.cmp_ratio(&b.value) == Ordering::Less)
    {
        *best = Some(rep);
    }
}

fn merge(runs: Vec<Tracked>) -> Result<(EigenEstimate, PartitionReport, usize), IpmError> {
    let mut best: Option<(usize, PartitionReport)> = None;
    let mut estimates = Vec::with_capacity(runs.len());
    for (i, (est, rep)) in runs.into_iter().enumerate() {
        if est.is_ok() {
            if let Some(rep) = rep {
                let take = best.as_ref().is_none_or(|(_, b)| {
                    rep.value.cmp_ratio(&b.value) == Ordering::Less
                });
                if take {
                    best = Some((i, rep));
                }
            }
        }
        estimates.push(est);
    }
    let estimate = pick_min(&estimates)?;
    let (init, partition) = best.ok_or(IpmError::DegeneratePartition)?;
    Ok((estimate, partition, init))
}

/// Second eigenvector plus the best 2-way threshold cut seen along the
/// iterations.
pub fn cluster2(g: &Graph, cfg: &IpmConfig) -> Result<Cluster2, IpmError> {
    check_input(g, cfg)?;
    let runs: Vec<Tracked> = (0..cfg.n_inits)
        .into_par_iter()
        .map(|i| {
            let mut best = None;
            let est = run_second(g, cfg, i, &mut |f| {
                if let Ok(rep) = extract_2way(g, f) {
                    keep_better(&mut best, rep);
                }
            });
            (est, best)
        })
        .collect();
    let (estimate, partition, partition_init) = merge(runs)?;
    Ok(Cluster2 {
        estimate,
        partition,
        partition_init,
    })
}

/// Second and third eigenvectors plus the best 3-way threshold cut seen
/// along the third-eigenvector iterations.
pub fn cluster3(g: &Graph, cfg: &IpmConfig) -> Result<Cluster3, IpmError> {
    let c2 = cluster2(g, cfg)?;
    let f2 = &c2.estimate.vector;
    let runs: Vec<Tracked> = (0..cfg.n_inits)
        .into_par_iter()
        .map(|i| {
            let mut best = None;
            let est = run_third(g, f2, cfg, i, &mut |f| {
                if let Ok(rep) = extract_3way(g, f2, f) {
                    keep_better(&mut best, rep);
                }
            });
            (est, best)
        })
        .collect();
    let (third, partition, partition_init) = merge(runs)?;
    Ok(Cluster3 {
        second: c2.estimate,
        third,
        partition2: c2.partition,
        partition,
        partition_init,
    })
}
