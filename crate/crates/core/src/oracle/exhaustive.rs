use std::cmp::Ordering;

use rayon::prelude::*;

use super::{mask_to_vertices, OracleError, OracleLimits, PartitionReport, RatioOrder};
use crate::graph::Graph;

type Pair = (f64, f64);

pub fn cheeger_h(g: &Graph, k: usize) -> Result<PartitionReport, OracleError> {
    cheeger_h_with(g, k, &OracleLimits::default())
}

pub fn cheeger_rho(g: &Graph, k: usize) -> Result<PartitionReport, OracleError> {
    cheeger_rho_with(g, k, &OracleLimits::default())
}

fn guard(g: &Graph, k: usize, limit: usize) -> Result<(), OracleError> {
    if k != 2 && k != 3 {
        return Err(OracleError::UnsupportedK(k));
    }
    if g.n() > limit || g.n() > 30 {
        return Err(OracleError::SizeGuard { k, n: g.n(), limit });
    }
    Ok(())
}

/// Exact `h_k`. Among optimal partitions the one with the lexicographically
/// smallest restricted-growth string is returned.
pub fn cheeger_h_with(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<PartitionReport, OracleError> {
    guard(g, k, limits.h(k))?;
    if k == 3 && g.n() < 3 {
        return Err(OracleError::InvalidParts("fewer than 3 vertices".into()));
    }
    let masks = if k == 2 { h2_masks(g) } else { h3_masks(g) };
    let parts = masks.iter().map(|&m| mask_to_vertices(m, g.n())).collect();
    PartitionReport::from_parts(g, parts)
}

/// Exact `ρ_k` over disjoint nonempty subsets.
pub fn cheeger_rho_with(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<PartitionReport, OracleError> {
    guard(g, k, limits.rho(k))?;
    if k == 3 && g.n() < 3 {
        return Err(OracleError::InvalidParts("fewer than 3 vertices".into()));
    }
    let tables = Tables::build(g);
    let masks = if k == 2 { tables.rho2() } else { tables.rho3() };
    let parts = masks
        .iter()
        .map(|&m| mask_to_vertices(m as u64, g.n()))
        .collect();
    PartitionReport::from_parts(g, parts)
}

#[derive(Clone, Copy)]
struct Best {
    worst: Pair,
    key: u64,
    masks: [u64; 3],
}

fn better(ord: &RatioOrder, a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => match ord.cmp(x.worst, y.worst) {
            Ordering::Less => Some(x),
            Ordering::Greater => Some(y),
            Ordering::Equal => Some(if x.key <= y.key { x } else { y }),
        },
    }
}

/// Restricted-growth key with vertex 0 most significant.
fn rg_key(labels: impl Iterator<Item = u64>, base: u64) -> u64 {
    labels.fold(0, |acc, l| acc * base + l)
}

/// Two-way enumeration: subsets containing vertex 0, walked in Gray-code
/// order within chunks fixed by the top free bits.
fn h2_masks(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let ord = RatioOrder::for_graph(g);
    let total = g.total_degree();
    let free = n - 1;
    let hi_bits = free.min(8);
    let lo_bits = free - hi_bits;
    let full_free: u64 = (1u64 << free) - 1;

    let best = (0u64..(1u64 << hi_bits))
        .into_par_iter()
        .map(|chunk| {
            let mut in_s = vec![false; n];
            in_s[0] = true;
            let start = chunk << lo_bits;
            for i in 0..free {
                in_s[i + 1] = start >> i & 1 == 1;
            }
            let mut vol: f64 = (0..n).filter(|&i| in_s[i]).map(|i| g.degree(i)).sum();
            let mut cut: f64 = g
                .edges()
                .iter()
                .filter(|e| in_s[e.u] != in_s[e.v])
                .map(|e| e.w)
                .sum();
            let mut bits = start;
            let mut local: Option<Best> = None;
            let steps = 1u64 << lo_bits;
            for t in 0..steps {
                if t > 0 {
                    let b = t.trailing_zeros() as usize;
                    let v = b + 1;
                    for &(u, w) in g.neighbors(v) {
                        if in_s[u] == in_s[v] {
                            cut += w;
                        } else {
                            cut -= w;
                        }
                    }
                    vol += if in_s[v] { -g.degree(v) } else { g.degree(v) };
                    in_s[v] = !in_s[v];
                    bits ^= 1 << b;
                }
                if bits == full_free {
                    continue;
                }
                let worst = (cut, vol.min(total - vol));
                let accept = match &local {
                    None => true,
                    Some(cur) => ord.cmp(worst, cur.worst) != Ordering::Greater,
                };
                if accept {
                    let key = rg_key((0..n).map(|i| u64::from(!in_s[i])), 2);
                    let s = 1u64 | (bits << 1);
                    let full = (1u64 << n) - 1;
                    let cand = Best {
                        worst,
                        key,
                        masks: [s, full ^ s, 0],
                    };
                    local = better(&ord, local, Some(cand));
                }
            }
            local
        })
        .reduce(|| None, |a, b| better(&ord, a, b))
        .expect("n >= 2 gives at least one cut");
    best.masks[..2].to_vec()
}

/// Per-mask volume and boundary tables.
struct Tables {
    n: usize,
    vol: Vec<f64>,
    cut: Vec<f64>,
    ord: RatioOrder,
}

impl Tables {
    fn build(g: &Graph) -> Self {
        let n = g.n();
        let size = 1usize << n;
        let mut vol = vec![0.0; size];
        let mut cut = vec![0.0; size];
        for m in 1..size {
            let v = m.trailing_zeros() as usize;
            let prev = m & (m - 1);
            let into_prev: f64 = g
                .neighbors(v)
                .iter()
                .filter(|&&(u, _)| prev >> u & 1 == 1)
                .map(|&(_, w)| w)
                .sum();
            vol[m] = vol[prev] + g.degree(v);
            cut[m] = cut[prev] + g.degree(v) - 2.0 * into_prev;
        }
        Self {
            n,
            vol,
            cut,
            ord: RatioOrder::for_graph(g),
        }
    }

    #[inline]
    fn r(&self, m: usize) -> Pair {
        (self.cut[m], self.vol[m])
    }

    fn full(&self) -> usize {
        (1usize << self.n) - 1
    }

    /// `best1[M]`: subset of `M` with the smallest ratio, smallest mask on ties.
    fn best1(&self) -> Vec<u32> {
        let size = 1usize << self.n;
        let mut best = vec![0u32; size];
        for m in 1..size {
            let mut b = m;
            let mut rest = m;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                let sub = m ^ (1 << i);
                if sub == 0 {
                    continue;
                }
                let c = best[sub] as usize;
                match self.ord.cmp(self.r(c), self.r(b)) {
                    Ordering::Less => b = c,
                    Ordering::Equal if c < b => b = c,
                    _ => {}
                }
            }
            best[m] = b as u32;
        }
        best
    }

    fn rho2(&self) -> Vec<u32> {
        let best1 = self.best1();
        let full = self.full();
        let mut best: Option<(Pair, (usize, usize))> = None;
        for s in 1..full {
            let t = best1[full ^ s] as usize;
            let worst = self.ord.max(self.r(s), self.r(t));
            let key = (s.min(t), s.max(t));
            best = Some(match best {
                None => (worst, key),
                Some((bw, bk)) => match self.ord.cmp(worst, bw) {
                    Ordering::Less => (worst, key),
                    Ordering::Equal if key < bk => (worst, key),
                    _ => (bw, bk),
                },
            });
        }
        let (_, (a, b)) = best.expect("n >= 2");
        vec![a as u32, b as u32]
    }

    fn rho3(&self) -> Vec<u32> {
        let best1 = self.best1();
        let size = 1usize << self.n;
        // best2[M] = (worst, S, T) over disjoint nonempty S, T inside M.
        let best2: Vec<Option<(Pair, usize, usize)>> = (0..size)
            .into_par_iter()
            .map(|m| {
                if m.count_ones() < 2 {
                    return None;
                }
                let mut out: Option<(Pair, usize, usize)> = None;
                let mut s = m;
                while s != 0 {
                    let rest = m ^ s;
                    if rest != 0 {
                        let t = best1[rest] as usize;
                        let worst = self.ord.max(self.r(s), self.r(t));
                        let key = (s.min(t), s.max(t));
                        out = Some(match out {
                            None => (worst, key.0, key.1),
                            Some((bw, a, b)) => match self.ord.cmp(worst, bw) {
                                Ordering::Less => (worst, key.0, key.1),
                                Ordering::Equal if key < (a, b) => (worst, key.0, key.1),
                                _ => (bw, a, b),
                            },
                        });
                    }
                    s = (s - 1) & m;
                }
                out
            })
            .collect();
        let full = self.full();
        let mut best: Option<(Pair, [usize; 3])> = None;
        for s in 1..full {
            let Some((w2, a, b)) = best2[full ^ s] else {
                continue;
            };
            let worst = self.ord.max(self.r(s), w2);
            let mut key = [s, a, b];
            key.sort_unstable();
            best = Some(match best {
                None => (worst, key),
                Some((bw, bk)) => match self.ord.cmp(worst, bw) {
                    Ordering::Less => (worst, key),
                    Ordering::Equal if key < bk => (worst, key),
                    _ => (bw, bk),
                },
            });
        }
        let (_, key) = best.expect("n >= 3");
        key.iter().map(|&m| m as u32).collect()
    }
}

/// Three-way enumeration over restricted-growth strings: block 0 holds
/// vertex 0, block 1 holds the smallest remaining vertex.
fn h3_masks(g: &Graph) -> Vec<u64> {
    let t = Tables::build(g);
    let n = t.n;
    let full = t.full();
    let ord = t.ord;
    let pow3: Vec<u64> = (0..n).map(|i| 3u64.pow((n - 1 - i) as u32)).collect();
    let key_of = |s2: usize, s3: usize| -> u64 {
        (0..n)
            .map(|i| {
                if s2 >> i & 1 == 1 {
                    pow3[i]
                } else if s3 >> i & 1 == 1 {
                    2 * pow3[i]
                } else {
                    0
                }
            })
            .sum()
    };
    let best = (0usize..(1usize << (n - 1)))
        .into_par_iter()
        .fold(
            || None,
            |local: Option<Best>, m| {
                let s1 = 1 | (m << 1);
                let r = full ^ s1;
                if r.count_ones() < 2 {
                    return local;
                }
                let r1 = t.r(s1);
                if let Some(cur) = &local {
                    if ord.cmp(r1, cur.worst) == Ordering::Greater {
                        return local;
                    }
                }
                let lead = r & r.wrapping_neg();
                let rest = r ^ lead;
                let mut local = local;
                let mut sub = rest;
                loop {
                    let s2 = lead | sub;
                    let s3 = rest ^ sub;
                    if s3 != 0 {
                        let worst = ord.max(ord.max(r1, t.r(s2)), t.r(s3));
                        let accept = match &local {
                            None => true,
                            Some(cur) => ord.cmp(worst, cur.worst) != Ordering::Greater,
                        };
                        if accept {
                            let cand = Best {
                                worst,
                                key: key_of(s2, s3),
                                masks: [s1 as u64, s2 as u64, s3 as u64],
                            };
                            local = better(&ord, local, Some(cand));
                        }
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
                local
            },
        )
        .reduce(|| None, |a, b| better(&ord, a, b))
        .expect("n >= 3 gives a 3-partition");
    best.masks.to_vec()
}
