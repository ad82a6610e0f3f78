//! Named graph families and seeded random connected graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError};

fn unit(edges: Vec<(usize, usize)>) -> Vec<(usize, usize, f64)> {
    edges.into_iter().map(|(a, b)| (a, b, 1.0)).collect()
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, &unit((1..n).map(|i| (i - 1, i)).collect()))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadFamily(format!("cycle:{n}")));
    }
    let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    e.push((n - 1, 0));
    Graph::from_edges(n, &unit(e))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut e = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            e.push((i, j));
        }
    }
    Graph::from_edges(n, &unit(e))
}

/// Star with center vertex 0 and `n - 1` leaves.
pub fn star(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, &unit((1..n).map(|i| (0, i)).collect()))
}

/// `r × c` grid, vertices numbered row-major.
pub fn grid(r: usize, c: usize) -> Result<Graph, GraphError> {
    let id = |i: usize, j: usize| i * c + j;
    let mut e = Vec::new();
    for i in 0..r {
        for j in 0..c {
            if j + 1 < c {
                e.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < r {
                e.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    Graph::from_edges(r * c, &unit(e))
}

/// Random spanning tree plus each remaining pair independently with
/// probability `p`. Weights are 1, or uniform integers in `1..=max_w`
/// when `max_w > 1`.
pub fn random_connected(n: usize, p: f64, max_w: u32, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut present = vec![vec![false; n]; n];
    let mut e = Vec::new();
    let weight = |rng: &mut ChaCha8Rng| {
        if max_w > 1 {
            rng.gen_range(1..=max_w) as f64
        } else {
            1.0
        }
    };
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let child = order[k];
        present[parent][child] = true;
        present[child][parent] = true;
        let w = weight(&mut rng);
        e.push((parent, child, w));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !present[i][j] && rng.gen_bool(p) {
                let w = weight(&mut rng);
                e.push((i, j, w));
            }
        }
    }
    Graph::from_edges(n, &e)
}

/// Parse a family spec such as `path:10`, `cycle:10`, `complete:5`,
/// `star:6`, `grid:3,4` or `random:9,0.3,42`.
pub fn family(spec: &str) -> Result<Graph, GraphError> {
    let bad = || GraphError::BadFamily(spec.to_string());
    let (name, args) = spec.split_once(':').ok_or_else(bad)?;
    let nums: Vec<&str> = args.split(',').map(str::trim).collect();
    let int = |k: usize| -> Result<usize, GraphError> {
        nums.get(k).and_then(|t| t.parse().ok()).ok_or_else(bad)
    };
    let arity = |k: usize| if nums.len() == k { Ok(()) } else { Err(bad()) };
    match name.trim() {
        "path" => arity(1).and_then(|_| path(int(0)?)),
        "cycle" => arity(1).and_then(|_| cycle(int(0)?)),
        "complete" => arity(1).and_then(|_| complete(int(0)?)),
        "star" => arity(1).and_then(|_| star(int(0)?)),
        "grid" => arity(2).and_then(|_| grid(int(0)?, int(1)?)),
        "random" => {
            arity(3)?;
            let p: f64 = nums[1].parse().map_err(|_| bad())?;
            if !(0.0..=1.0).contains(&p) {
                return Err(bad());
            }
            random_connected(int(0)?, p, 1, nums[2].parse().map_err(|_| bad())?)
        }
        _ => Err(bad()),
    }
}
