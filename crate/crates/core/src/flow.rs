//! Dinic max-flow over any [`Scalar`], plus feasible flow with lower bounds.
//!
//! With rational capacities the computation is exact. With `f64` a residual
//! capacity at or below `eps` counts as saturated.

use std::collections::VecDeque;

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct Arc<T> {
    to: usize,
    cap: T,
}

#[derive(Clone, Debug)]
pub struct Dinic<T> {
    arcs: Vec<Arc<T>>,
    orig: Vec<T>,
    head: Vec<Vec<usize>>,
    eps: T,
}

impl<T: Scalar> Dinic<T> {
    pub fn new(n: usize, eps: T) -> Self {
        Self {
            arcs: Vec::new(),
            orig: Vec::new(),
            head: vec![Vec::new(); n],
            eps,
        }
    }

    pub fn node_count(&self) -> usize {
        self.head.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.head.push(Vec::new());
        self.head.len() - 1
    }

    /// Add arc `u → v`; returns its id for [`flow`](Self::flow).
    pub fn add_arc(&mut self, u: usize, v: usize, cap: T) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to: v,
            cap: cap.clone(),
        });
        self.arcs.push(Arc {
            to: u,
            cap: T::zero(),
        });
        self.orig.push(cap);
        self.orig.push(T::zero());
        self.head[u].push(id);
        self.head[v].push(id + 1);
        id
    }

    /// Flow currently carried by arc `id`.
    pub fn flow(&self, id: usize) -> T {
        self.orig[id].clone() - self.arcs[id].cap.clone()
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.head[u] {
                let arc = &self.arcs[a];
                if arc.cap > self.eps && level[arc.to] == usize::MAX {
                    level[arc.to] = level[u] + 1;
                    q.push_back(arc.to);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn push(&mut self, u: usize, t: usize, limit: T, level: &[usize], it: &mut [usize]) -> T {
        if u == t {
            return limit;
        }
        while it[u] < self.head[u].len() {
            let a = self.head[u][it[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap.clone());
            if cap > self.eps && level[to] == level[u] + 1 {
                let got = self.push(to, t, T::min_of(limit.clone(), cap), level, it);
                if got > self.eps {
                    self.arcs[a].cap = self.arcs[a].cap.clone() - got.clone();
                    self.arcs[a ^ 1].cap = self.arcs[a ^ 1].cap.clone() + got.clone();
                    return got;
                }
            }
            it[u] += 1;
        }
        T::zero()
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> T {
        let mut total = T::zero();
        let inf = self.orig.iter().fold(T::one(), |acc, c| acc + c.clone());
        while let Some(level) = self.levels(s, t) {
            let mut it = vec![0; self.head.len()];
            loop {
                let got = self.push(s, t, inf.clone(), &level, &mut it);
                if got <= self.eps {
                    break;
                }
                total = total + got;
            }
        }
        total
    }
}

/// Arc with lower and upper bounds for [`FeasibleFlow`].
#[derive(Clone, Debug)]
pub struct BoundedArc<T> {
    pub from: usize,
    pub to: usize,
    pub lower: T,
    pub upper: T,
}

/// Outcome of a feasible-circulation query.
#[derive(Clone, Debug)]
pub struct Circulation<T> {
    /// Flow on each input arc, in input order.
    pub flows: Vec<T>,
    /// Unmet lower-bound demand; zero (or within `eps`) iff feasible.
    pub deficit: T,
    pub feasible: bool,
}

/// Feasible circulation with arc bounds via the super-source reduction.
pub fn feasible_circulation<T: Scalar>(n: usize, arcs: &[BoundedArc<T>], eps: T) -> Circulation<T> {
    let mut net = Dinic::new(n + 2, eps.clone());
    let (src, snk) = (n, n + 1);
    let mut excess = vec![T::zero(); n];
    let mut ids = Vec::with_capacity(arcs.len());
    for a in arcs {
        let room = a.upper.clone() - a.lower.clone();
        let room = if room.is_negative() { T::zero() } else { room };
        ids.push(net.add_arc(a.from, a.to, room));
        excess[a.to] = excess[a.to].clone() + a.lower.clone();
        excess[a.from] = excess[a.from].clone() - a.lower.clone();
    }
    let mut demand = T::zero();
    for (v, e) in excess.iter().enumerate() {
        if e.is_positive() {
            net.add_arc(src, v, e.clone());
            demand = demand + e.clone();
        } else if e.is_negative() {
            net.add_arc(v, snk, -e.clone());
        }
    }
    let bad_bounds = arcs.iter().any(|a| a.upper < a.lower);
    let got = net.max_flow(src, snk);
    let deficit = demand - got;
    let flows = arcs
        .iter()
        .zip(&ids)
        .map(|(a, &id)| a.lower.clone() + net.flow(id))
        .collect();
    Circulation {
        flows,
        feasible: !bad_bounds && deficit <= eps,
        deficit,
    }
}
