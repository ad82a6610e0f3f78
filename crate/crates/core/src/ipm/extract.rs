//! Optimal thresholding of eigenvector estimates into 2- and 3-way cuts.

use std::cmp::Ordering;

use super::IpmError;
use crate::graph::Graph;
use crate::oracle::{PartitionReport, RatioOrder};

fn distinct_sorted(f: &[f64]) -> Vec<f64> {
    let mut v = f.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    v.dedup();
    v
}

/// Best superlevel cut `({f > σ}, {f ≤ σ})` over the distinct values `σ` of
/// `f`, by normalized 2-way Cheeger cut. Ties go to the smaller `σ`.
pub fn extract_2way(g: &Graph, f: &[f64]) -> Result<PartitionReport, IpmError> {
    g.check_len(f.len())?;
    let levels = distinct_sorted(f);
    if levels.len() < 2 {
        return Err(IpmError::ConstantVector);
    }
    let ord = RatioOrder::for_graph(g);
    let total = g.total_degree();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| f[b].partial_cmp(&f[a]).unwrap().then(a.cmp(&b)));
    let mut inside = vec![false; g.n()];
    let (mut cut, mut vol) = (0.0, 0.0);
    let mut best: Option<((f64, f64), usize)> = None;
    let mut k = 0;
    while k < order.len() {
        let level = f[order[k]];
        while k < order.len() && f[order[k]] == level {
            let v = order[k];
            for &(u, w) in g.neighbors(v) {
                cut += if inside[u] { -w } else { w };
            }
            inside[v] = true;
            vol += g.degree(v);
            k += 1;
        }
        if k == order.len() {
            break;
        }
        let worst = (cut, vol.min(total - vol));
        // Walking down the levels, later prefixes have smaller σ.
        let better = match &best {
            None => true,
            Some((b, _)) => ord.cmp(worst, *b) != Ordering::Greater,
        };
        if better {
            best = Some((worst, k));
        }
    }
    let (_, size) = best.expect("nonconstant vector has a proper superlevel set");
    let mut a: Vec<usize> = order[..size].to_vec();
    let mut b: Vec<usize> = order[size..].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    Ok(PartitionReport::from_parts(g, vec![a, b])?)
}

/// Combine the best 2-way cut `(A, Aᶜ)` of `f2` with superlevel sets `B` of
/// `f3` into the triples `{B, A∖B, Aᶜ∖B}` and `{Bᶜ, A∩B, Aᶜ∩B}`, returning
/// the one with the smallest normalized 3-way cut.
pub fn extract_3way(g: &Graph, f2: &[f64], f3: &[f64]) -> Result<PartitionReport, IpmError> {
    g.check_len(f3.len())?;
    let two = extract_2way(g, f2)?;
    let levels = distinct_sorted(f3);
    if levels.len() < 2 {
        return Err(IpmError::ConstantVector);
    }
    let n = g.n();
    let mut in_a = vec![false; n];
    for &v in &two.parts[0] {
        in_a[v] = true;
    }
    let mut best: Option<PartitionReport> = None;
    for &sigma in &levels[..levels.len() - 1] {
        let in_b: Vec<bool> = f3.iter().map(|&x| x > sigma).collect();
        let pick =
            |pred: &dyn Fn(usize) -> bool| -> Vec<usize> { (0..n).filter(|&i| pred(i)).collect() };
        let triples = [
            [
                pick(&|i| in_b[i]),
                pick(&|i| in_a[i] && !in_b[i]),
                pick(&|i| !in_a[i] && !in_b[i]),
            ],
            [
                pick(&|i| !in_b[i]),
                pick(&|i| in_a[i] && in_b[i]),
                pick(&|i| !in_a[i] && in_b[i]),
            ],
        ];
        for t in triples {
            if t.iter().any(Vec::is_empty) {
                continue;
            }
            let rep = PartitionReport::from_parts(g, t.to_vec())?;
            let take = match &best {
                None => true,
                Some(b) => rep.value.cmp_ratio(&b.value) == Ordering::Less,
            };
            if take {
                best = Some(rep);
            }
        }
    }
    best.ok_or(IpmError::DegeneratePartition)
}
