#![allow(dead_code)]

use graph1lap::generators::{complete, cycle, path, random_connected, star};
use graph1lap::scalar::{ratio, Rational};
use graph1lap::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Paths, cycles, stars and complete graphs on 3..=8 vertices plus 50
/// seeded random connected graphs on 4..=10 vertices.
pub fn chain_family() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push((format!("path:{n}"), path(n).unwrap()));
        out.push((format!("cycle:{n}"), cycle(n).unwrap()));
        out.push((format!("star:{n}"), star(n).unwrap()));
        out.push((format!("complete:{n}"), complete(n).unwrap()));
    }
    for seed in 0..50u64 {
        let n = 4 + (seed as usize % 7);
        let max_w = if seed % 2 == 0 { 1 } else { 3 };
        out.push((
            format!("random:{n},0.3,{seed},w{max_w}"),
            random_connected(n, 0.3, max_w, seed).unwrap(),
        ));
    }
    out
}

pub fn paper_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("P10", path(10).unwrap()),
        ("C10", cycle(10).unwrap()),
        ("P4", path(4).unwrap()),
    ]
}

fn reduce(b: i128, v: i128) -> (i64, i64) {
    let (mut x, mut y) = (b, v);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    let g = x.abs().max(1);
    ((b / g) as i64, (v / g) as i64)
}

/// Independent brute force over label vectors. Labels `0..k` are parts;
/// with `covering == false` the extra label `k` leaves a vertex out.
/// Returns the min over assignments of the max part ratio, reduced.
pub fn naive_cheeger(g: &Graph, k: usize, covering: bool) -> (i64, i64) {
    let n = g.n();
    let base = if covering { k } else { k + 1 };
    let deg: Vec<i128> = (0..n).map(|i| g.degree(i) as i128).collect();
    let edges: Vec<(usize, usize, i128)> = g.edges().iter().map(|e| (e.u, e.v, e.w as i128)).collect();
    let mut labels = vec![0usize; n];
    let mut best: Option<(i128, i128)> = None;
    let total = base.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for l in labels.iter_mut() {
            *l = c % base;
            c /= base;
        }
        let mut vol = vec![0i128; k];
        let mut bnd = vec![0i128; k];
        for i in 0..n {
            if labels[i] < k {
                vol[labels[i]] += deg[i];
            }
        }
        if vol.contains(&0) {
            continue;
        }
        for &(u, v, w) in &edges {
            if labels[u] != labels[v] {
                if labels[u] < k {
                    bnd[labels[u]] += w;
                }
                if labels[v] < k {
                    bnd[labels[v]] += w;
                }
            }
        }
        let mut worst = (bnd[0], vol[0]);
        for p in 1..k {
            if bnd[p] * worst.1 > worst.0 * vol[p] {
                worst = (bnd[p], vol[p]);
            }
        }
        if best.is_none_or(|b| worst.0 * b.1 < b.0 * worst.1) {
            best = Some(worst);
        }
    }
    let (b, v) = best.expect("some assignment has nonempty parts");
    reduce(b, v)
}

pub fn random_rational_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Σ_σ G(σ)·Δσ` over consecutive distinct levels, where `G(σ)` is the
/// weight of edges with exactly one end strictly above `σ`.
pub fn level_sum(g: &Graph, f: &[Rational]) -> Rational {
    let mut levels = f.to_vec();
    levels.sort();
    levels.dedup();
    let mut total = ratio(0, 1);
    for w in levels.windows(2) {
        let s = &w[0];
        let crossing: f64 = g
            .edges()
            .iter()
            .filter(|e| (f[e.u] > *s) != (f[e.v] > *s))
            .map(|e| e.w)
            .sum();
        total += Rational::from_float(crossing).unwrap() * (w[1].clone() - s.clone());
    }
    total
}

pub fn frac((num, den): (i64, i64)) -> Rational {
    ratio(num, den)
}
