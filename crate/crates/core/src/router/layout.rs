use std::collections::{BTreeMap, VecDeque};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::mapping::Mapping;

use super::RouterConfig;

const MAX_PASSES: usize = 200;

/// Weighted interaction graph: `adj[q]` holds `(neighbour, gate count)`.
struct Interactions {
    adj: Vec<Vec<(usize, u64)>>,
    reach: usize,
    hop: usize,
}

impl Interactions {
    fn of(circuit: &Circuit, cfg: &RouterConfig) -> Self {
        let mut w: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for g in circuit.gates().iter().filter(|g| g.is_two_qubit()) {
            let q = g.qubits();
            *w.entry((q[0].min(q[1]), q[0].max(q[1]))).or_default() += 1;
        }
        let mut adj = vec![Vec::new(); circuit.qubit_count()];
        for (&(a, b), &c) in &w {
            adj[a].push((b, c));
            adj[b].push((a, c));
        }
        Interactions {
            adj,
            reach: cfg.head_size.saturating_sub(1).max(1),
            hop: cfg.max_swap_len.saturating_sub(1).max(1),
        }
    }

    /// Lower bound on swaps a gate at distance `d` needs.
    fn swaps_needed(&self, d: usize) -> u64 {
        d.saturating_sub(self.reach).div_ceil(self.hop) as u64
    }

    fn pair_cost(&self, c: u64, d: usize) -> (i64, i64) {
        ((c * self.swaps_needed(d)) as i64, (c * d as u64) as i64)
    }

    fn weighted_degree(&self, q: usize) -> u64 {
        self.adj[q].iter().map(|&(_, c)| c).sum()
    }

    /// (weighted swap lower bound, Σ weight·distance), compared
    /// lexicographically.
    fn cost(&self, pos: &[usize]) -> (i64, i64) {
        let mut total = (0, 0);
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &(b, c) in nbrs {
                if a < b {
                    let (s, d) = self.pair_cost(c, pos[a].abs_diff(pos[b]));
                    total.0 += s;
                    total.1 += d;
                }
            }
        }
        total
    }

    /// Cuthill–McKee order: per component, start at the lightest node and
    /// visit neighbours by ascending weighted degree, ties by id.
    fn cuthill_mckee(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            // collect the component to pick its lightest node as the start
            let mut comp = vec![root];
            seen[root] = true;
            let mut i = 0;
            while i < comp.len() {
                for &(b, _) in &self.adj[comp[i]] {
                    if !seen[b] {
                        seen[b] = true;
                        comp.push(b);
                    }
                }
                i += 1;
            }
            let start = *comp
                .iter()
                .min_by_key(|&&q| (self.weighted_degree(q), q))
                .expect("non-empty component");
            for &q in &comp {
                seen[q] = false;
            }
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(q) = queue.pop_front() {
                order.push(q);
                let mut next: Vec<usize> = self.adj[q]
                    .iter()
                    .map(|&(b, _)| b)
                    .filter(|&b| !seen[b])
                    .collect();
                next.sort_by_key(|&b| (self.weighted_degree(b), b));
                for b in next {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        order
    }

    /// First-improvement pairwise exchange until no exchange lowers cost.
    fn improve(&self, pos: &mut [usize]) {
        let n = pos.len();
        let mut at: Vec<usize> = vec![0; n];
        for (q, &p) in pos.iter().enumerate() {
            at[p] = q;
        }
        for _ in 0..MAX_PASSES {
            let mut improved = false;
            for i in 0..n {
                for j in i + 1..n {
                    let (u, v) = (at[i], at[j]);
                    if self.exchange_delta(pos, u, v) < (0, 0) {
                        pos.swap(u, v);
                        at.swap(i, j);
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }

    fn exchange_delta(&self, pos: &[usize], u: usize, v: usize) -> (i64, i64) {
        let (pu, pv) = (pos[u], pos[v]);
        let mut delta = (0i64, 0i64);
        let mut add = |c: u64, before: usize, after: usize| {
            let (s0, d0) = self.pair_cost(c, before);
            let (s1, d1) = self.pair_cost(c, after);
            delta.0 += s1 - s0;
            delta.1 += d1 - d0;
        };
        for &(w, c) in &self.adj[u] {
            if w != v {
                add(c, pu.abs_diff(pos[w]), pv.abs_diff(pos[w]));
            }
        }
        for &(w, c) in &self.adj[v] {
            if w != u {
                add(c, pv.abs_diff(pos[w]), pu.abs_diff(pos[w]));
            }
        }
        delta
    }
}

/// Places logical qubits on ions `0..n` so that heavily interacting pairs
/// sit close together.
///
/// Candidates are the identity layout and a Cuthill–McKee linearisation of
/// the interaction graph, each refined by pairwise exchanges. The layout
/// needing the fewest swaps (lower bound at the configured head size) wins,
/// then the smallest weighted distance sum, then identity first.
pub fn initial_mapping(circuit: &Circuit, ions: usize, cfg: &RouterConfig) -> Result<Mapping> {
    let n = circuit.qubit_count();
    if n > ions {
        return Err(Error::Capacity { qubits: n, ions });
    }
    let graph = Interactions::of(circuit, cfg);

    let identity: Vec<usize> = (0..n).collect();
    let mut refined = identity.clone();
    graph.improve(&mut refined);
    let mut from_cm = vec![0; n];
    for (p, q) in graph.cuthill_mckee().into_iter().enumerate() {
        from_cm[q] = p;
    }
    graph.improve(&mut from_cm);

    let best = [identity, refined, from_cm]
        .into_iter()
        .min_by_key(|pos| graph.cost(pos))
        .expect("three candidates");
    Mapping::from_placement(best, ions)
}
