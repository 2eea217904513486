use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::circuit::GateKind;
use crate::error::{Error, Result};
use crate::router::RoutedCircuit;

/// Hard caps on exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_ions: usize,
    pub max_gates: usize,
    pub max_states: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_ions: 10,
            max_gates: 8,
            max_states: 200_000,
        }
    }
}

/// Exact minimum number of head moves to run `routed` on `n` ions with a
/// head of `l`, the first placement free.
///
/// 0-1 breadth-first search over (head position, executed set). At every
/// state the head runs everything it can before moving; running more never
/// blocks anything later, so the search loses nothing by it.
pub fn optimal_moves(
    routed: &RoutedCircuit,
    n: usize,
    l: usize,
    budget: OracleBudget,
) -> Result<usize> {
    let gates = routed.circuit.gates();
    let g = gates.len();
    if n > budget.max_ions || g > budget.max_gates || g > 31 {
        return Err(Error::OracleOverflow(format!(
            "{g} gates on {n} ions exceeds {} gates / {} ions",
            budget.max_gates, budget.max_ions
        )));
    }
    if l == 0 || l > n {
        return Err(Error::Config(format!("head {l} on {n} ions")));
    }
    if g == 0 {
        return Ok(0);
    }
    let all: u32 = (1u32 << g) - 1;

    // wires of each gate; a barrier occupies all of them
    let wires: Vec<Vec<usize>> = gates
        .iter()
        .map(|x| match x.kind() {
            GateKind::Barrier => (0..routed.circuit.qubit_count()).collect(),
            _ => x.qubits().to_vec(),
        })
        .collect();
    // `before[j]`: every earlier gate sharing a wire with j
    let before: Vec<u32> = (0..g)
        .map(|j| {
            (0..j)
                .filter(|&i| wires[i].iter().any(|w| wires[j].contains(w)))
                .fold(0u32, |m, i| m | 1 << i)
        })
        .collect();
    let in_window = |j: usize, p: usize| gates[j].qubits().iter().all(|&w| p <= w && w < p + l);
    let closure = |p: usize, mut done: u32| loop {
        let mut grew = false;
        for (j, &needs) in before.iter().enumerate() {
            if done & (1 << j) == 0 && needs & !done == 0 && in_window(j, p) {
                done |= 1 << j;
                grew = true;
            }
        }
        if !grew {
            return done;
        }
    };

    let positions = n - l + 1;
    let mut dist: HashMap<(usize, u32), usize> = HashMap::new();
    let mut queue: VecDeque<(usize, u32, usize)> = VecDeque::new();
    for p in 0..positions {
        let s = (p, closure(p, 0));
        if dist.get(&s).is_none_or(|&d| d > 0) {
            dist.insert(s, 0);
            queue.push_front((s.0, s.1, 0));
        }
    }
    while let Some((p, done, d)) = queue.pop_front() {
        if dist.get(&(p, done)).is_some_and(|&best| best < d) {
            continue;
        }
        if done == all {
            return Ok(d);
        }
        for q in (0..positions).filter(|&q| q != p) {
            let next = closure(q, done);
            if next == done {
                continue;
            }
            let s = (q, next);
            if dist.get(&s).is_none_or(|&old| old > d + 1) {
                dist.insert(s, d + 1);
                queue.push_back((q, next, d + 1));
                if dist.len() > budget.max_states {
                    return Err(Error::OracleOverflow(format!(
                        "more than {} search states",
                        budget.max_states
                    )));
                }
            }
        }
    }
    Err(Error::Contract("some gate fits no head position".into()))
}
