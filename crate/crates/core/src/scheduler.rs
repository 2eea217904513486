//! Greedy tape-movement scheduling: each round parks the head where the
//! most gates become executable, runs them, and repeats.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::par;
use crate::router::RoutedCircuit;

/// Leftmost ion covered by the head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeadPosition(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub position: HeadPosition,
    /// Routed-circuit gate indices, in a topological order.
    pub gates: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub tape_ions: usize,
    pub head_size: usize,
    pub steps: Vec<Step>,
    /// Position changes between consecutive steps; the first placement is free.
    pub move_count: usize,
    /// Σ |p_{i+1} − p_i| in ion slots.
    pub move_distance: usize,
}

impl Schedule {
    pub fn from_steps(tape_ions: usize, head_size: usize, steps: Vec<Step>) -> Self {
        let (move_count, move_distance) = steps
            .windows(2)
            .map(|w| w[0].position.0.abs_diff(w[1].position.0))
            .filter(|&d| d > 0)
            .fold((0, 0), |(n, s), d| (n + 1, s + d));
        Schedule {
            tape_ions,
            head_size,
            steps,
            move_count,
            move_distance,
        }
    }

    pub fn gate_count(&self) -> usize {
        self.steps.iter().map(|s| s.gates.len()).sum()
    }

    /// Moves completed before each step starts.
    pub fn moves_before_steps(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut moves = 0;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 && s.position != self.steps[i - 1].position {
                moves += 1;
            }
            out.push(moves);
        }
        out
    }
}

fn fits(g: &Gate, p: usize, head_size: usize) -> bool {
    g.qubits().iter().all(|&w| w >= p && w < p + head_size)
}

/// Execution progress over a routed circuit.
#[derive(Debug, Clone)]
pub struct TapeState<'a> {
    circuit: &'a Circuit,
    head_size: usize,
    unmet: Vec<usize>,
    frontier: BTreeSet<usize>,
    remaining: usize,
}

impl<'a> TapeState<'a> {
    pub fn new(circuit: &'a Circuit, head_size: usize) -> Self {
        let unmet: Vec<usize> = (0..circuit.len())
            .map(|i| circuit.predecessors(i).len())
            .collect();
        let frontier = unmet
            .iter()
            .enumerate()
            .filter(|(_, &n)| n == 0)
            .map(|(i, _)| i)
            .collect();
        TapeState {
            circuit,
            head_size,
            unmet,
            frontier,
            remaining: circuit.len(),
        }
    }

    pub fn is_drained(&self) -> bool {
        self.remaining == 0
    }

    pub fn remaining(&self) -> usize {
        self.remaining
    }

    /// Every gate that can run with the head at `p` without moving: frontier
    /// gates inside the window, plus whatever they unblock inside the
    /// window, to closure. Smallest index first, so the batch is
    /// topologically ordered.
    pub fn executable_set(&self, p: HeadPosition) -> Vec<usize> {
        let p = p.0;
        let mut ready: BinaryHeap<Reverse<usize>> = self
            .frontier
            .iter()
            .copied()
            .filter(|&i| fits(self.circuit.gate(i), p, self.head_size))
            .map(Reverse)
            .collect();
        let mut released: HashMap<usize, usize> = HashMap::new();
        let mut batch = Vec::new();
        while let Some(Reverse(i)) = ready.pop() {
            batch.push(i);
            for &s in self.circuit.successors(i) {
                let r = released.entry(s).or_insert(0);
                *r += 1;
                if *r == self.unmet[s] && fits(self.circuit.gate(s), p, self.head_size) {
                    ready.push(Reverse(s));
                }
            }
        }
        batch
    }

    /// Marks a batch from [`Self::executable_set`] as done.
    pub fn commit(&mut self, batch: &[usize]) {
        for &i in batch {
            self.frontier.remove(&i);
            self.remaining -= 1;
            for &s in self.circuit.successors(i) {
                self.unmet[s] -= 1;
                if self.unmet[s] == 0 {
                    self.frontier.insert(s);
                }
            }
        }
    }
}

/// Greedy schedule of a routed circuit on a tape of `tape_ions` with a
/// head of `head_size`. Equal scores go to the position nearest the current
/// head, then to the smaller position.
pub fn schedule(routed: &RoutedCircuit, tape_ions: usize, head_size: usize) -> Result<Schedule> {
    schedule_circuit(&routed.circuit, tape_ions, head_size)
}

pub fn schedule_circuit(circuit: &Circuit, tape_ions: usize, head_size: usize) -> Result<Schedule> {
    if head_size == 0 || head_size > tape_ions {
        return Err(Error::Config(format!(
            "head_size {head_size} must lie in [1, {tape_ions}]"
        )));
    }
    if circuit.qubit_count() > tape_ions {
        return Err(Error::Capacity {
            qubits: circuit.qubit_count(),
            ions: tape_ions,
        });
    }
    for (i, g) in circuit.gates().iter().enumerate() {
        if let Some(d) = g.span() {
            if d >= head_size {
                return Err(Error::Unschedulable {
                    gate: i,
                    distance: d,
                    head_size,
                });
            }
        }
    }

    let positions: Vec<usize> = (0..=tape_ions - head_size).collect();
    let mut state = TapeState::new(circuit, head_size);
    let mut steps: Vec<Step> = Vec::new();

    while !state.is_drained() {
        let batches = par::map(&positions, |&p| state.executable_set(HeadPosition(p)));
        let current = steps.last().map(|s| s.position.0);
        let best = positions
            .iter()
            .zip(&batches)
            .max_by(|(pa, ba), (pb, bb)| {
                ba.len().cmp(&bb.len()).then_with(|| {
                    let da = current.map_or(0, |c| c.abs_diff(**pa));
                    let db = current.map_or(0, |c| c.abs_diff(**pb));
                    db.cmp(&da).then(pb.cmp(pa))
                })
            })
            .map(|(&p, b)| (p, b.clone()))
            .expect("at least one head position");
        let (p, batch) = best;
        if batch.is_empty() {
            return Err(Error::Contract(
                "no head position can execute a frontier gate".into(),
            ));
        }
        state.commit(&batch);
        steps.push(Step {
            position: HeadPosition(p),
            gates: batch,
        });
    }

    Ok(Schedule::from_steps(tape_ions, head_size, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xx(a: usize, b: usize) -> Gate {
        Gate::xx(a, b, 0.4)
    }

    #[test]
    fn whole_circuit_in_window_runs_at_once() {
        let c = Circuit::new(8, vec![xx(0, 1), xx(2, 3), xx(1, 2), Gate::rx(3, 1.0)]).unwrap();
        let state = TapeState::new(&c, 4);
        assert_eq!(state.executable_set(HeadPosition(0)), vec![0, 1, 2, 3]);
        let s = schedule_circuit(&c, 8, 4).unwrap();
        assert_eq!(s.steps.len(), 1);
        assert_eq!(s.move_count, 0);
        assert_eq!(s.steps[0].position, HeadPosition(0));
    }

    #[test]
    fn successor_outside_window_waits() {
        let l = 4;
        let c = Circuit::new(10, vec![xx(0, 1), xx(1, l)]).unwrap();
        let state = TapeState::new(&c, l);
        assert_eq!(state.executable_set(HeadPosition(0)), vec![0]);
    }

    #[test]
    fn dependent_chain_closes_in_one_batch() {
        // g0 -> g1 -> g2 through shared wires, all inside [2, 5]
        let c = Circuit::new(8, vec![xx(2, 3), xx(3, 4), xx(4, 5)]).unwrap();
        let state = TapeState::new(&c, 4);
        assert_eq!(state.executable_set(HeadPosition(2)), vec![0, 1, 2]);
        assert_eq!(state.executable_set(HeadPosition(1)), vec![0, 1]);
        assert!(state.executable_set(HeadPosition(4)).is_empty());
    }

    #[test]
    fn clusters_at_both_ends_cost_one_move() {
        let (n, l) = (12, 4);
        let c = Circuit::new(n, vec![xx(0, 1), xx(n - 2, n - 1)]).unwrap();
        let s = schedule_circuit(&c, n, l).unwrap();
        assert_eq!(s.steps.len(), 2);
        assert_eq!(s.move_count, 1);
        assert_eq!(s.move_distance, n - l);
    }

    #[test]
    fn ties_prefer_nearby_positions() {
        // two single gates on ion 2 and ion 9; after the first step at p,
        // the nearest window holding ion 9 is preferred
        let c = Circuit::new(12, vec![Gate::rx(2, 1.0), Gate::rx(9, 1.0)]).unwrap();
        let s = schedule_circuit(&c, 12, 3).unwrap();
        assert_eq!(s.steps[0].position, HeadPosition(0));
        assert_eq!(s.steps[1].position, HeadPosition(7));
        assert_eq!(s.move_distance, 7);
    }

    #[test]
    fn long_gate_is_unschedulable() {
        let c = Circuit::new(8, vec![xx(0, 4)]).unwrap();
        assert_eq!(
            schedule_circuit(&c, 8, 4).unwrap_err(),
            Error::Unschedulable {
                gate: 0,
                distance: 4,
                head_size: 4
            }
        );
    }

    #[test]
    fn empty_circuit_has_no_steps() {
        let c = Circuit::new(4, vec![]).unwrap();
        let s = schedule_circuit(&c, 4, 2).unwrap();
        assert!(s.steps.is_empty());
        assert_eq!((s.move_count, s.move_distance), (0, 0));
    }
}
