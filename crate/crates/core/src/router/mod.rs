//! Initial placement and swap insertion for a tape with a fixed-width head.

mod layout;
mod score;

pub use layout::initial_mapping;
pub use score::{
    is_opposing, resolve_gate, score_mapping, swap_candidates, PendingGate, SwapChoice,
};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::mapping::{gate_distance, IonIndex, Mapping};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RouterConfig {
    /// Ion slots covered by the laser head, `L`.
    pub head_size: usize,
    /// Inserted swaps span at most `max_swap_len - 1` slots.
    pub max_swap_len: usize,
    /// Depth discount in the lookahead score, in (0, 1).
    pub alpha: f64,
    /// Number of upcoming two-qubit gates scored per candidate.
    pub lookahead_window: usize,
}

impl RouterConfig {
    pub const DEFAULT_ALPHA: f64 = 0.5;
    pub const DEFAULT_WINDOW: usize = 20;

    /// `L - 2`, floored at 2.
    pub fn default_max_swap_len(head_size: usize) -> usize {
        head_size.saturating_sub(2).max(2)
    }

    pub fn for_head_size(head_size: usize) -> Self {
        RouterConfig {
            head_size,
            max_swap_len: Self::default_max_swap_len(head_size),
            alpha: Self::DEFAULT_ALPHA,
            lookahead_window: Self::DEFAULT_WINDOW,
        }
    }

    pub fn with_max_swap_len(mut self, max_swap_len: usize) -> Self {
        self.max_swap_len = max_swap_len;
        self
    }

    /// Largest valid `max_swap_len`: `L - 1`, except that a head of 2 still
    /// admits nearest-neighbour swaps.
    pub fn max_swap_len_ceiling(head_size: usize) -> usize {
        head_size.saturating_sub(1).max(2)
    }

    pub fn validate(&self, ions: usize) -> Result<()> {
        let l = self.head_size;
        if l < 2 || l > ions {
            return Err(Error::Config(format!(
                "head_size {l} must lie in [2, {ions}]"
            )));
        }
        let ceiling = Self::max_swap_len_ceiling(l);
        if self.max_swap_len < 2 || self.max_swap_len > ceiling {
            return Err(Error::Config(format!(
                "max_swap_len {} must lie in [2, {ceiling}] for head_size {l}",
                self.max_swap_len
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!(
                "alpha {} must lie in (0, 1)",
                self.alpha
            )));
        }
        if self.lookahead_window == 0 {
            return Err(Error::Config("lookahead_window must be at least 1".into()));
        }
        Ok(())
    }
}

/// Physical circuit over tape ions with routing swaps inserted.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedCircuit {
    pub circuit: Circuit,
    pub initial_mapping: Mapping,
    pub final_mapping: Mapping,
    pub swap_count: usize,
    pub opposing_swap_count: usize,
}

impl RoutedCircuit {
    pub fn ion_count(&self) -> usize {
        self.circuit.qubit_count()
    }

    /// Opposing swaps per inserted swap; 0 when nothing was inserted.
    pub fn opposing_ratio(&self) -> f64 {
        if self.swap_count == 0 {
            0.0
        } else {
            self.opposing_swap_count as f64 / self.swap_count as f64
        }
    }

    /// Largest operand span of any two-qubit gate.
    pub fn max_span(&self) -> usize {
        self.circuit
            .gates()
            .iter()
            .filter_map(Gate::span)
            .max()
            .unwrap_or(0)
    }
}

/// Swap-insertion policy applied to each unexecutable gate.
trait Resolver {
    fn resolve(
        &self,
        g: &PendingGate,
        m: &Mapping,
        cfg: &RouterConfig,
        lookahead: &[PendingGate],
    ) -> Vec<(usize, usize)>;
}

struct Lookahead;

impl Resolver for Lookahead {
    fn resolve(
        &self,
        g: &PendingGate,
        m: &Mapping,
        cfg: &RouterConfig,
        lookahead: &[PendingGate],
    ) -> Vec<(usize, usize)> {
        resolve_gate(g, m, cfg, lookahead)
            .0
            .into_iter()
            .map(|s| (s.ions.0 .0, s.ions.1 .0))
            .collect()
    }
}

/// Head-width hops of the first operand toward the second.
struct HeadWidthHops;

impl Resolver for HeadWidthHops {
    fn resolve(
        &self,
        g: &PendingGate,
        m: &Mapping,
        cfg: &RouterConfig,
        _lookahead: &[PendingGate],
    ) -> Vec<(usize, usize)> {
        let q = g.gate.qubits();
        let step = cfg.head_size - 1;
        let target = m.ion_of(q[1]);
        let mut from = m.ion_of(q[0]);
        let mut out = Vec::new();
        while from.abs_diff(target) >= cfg.head_size {
            let to = if from < target {
                from + step
            } else {
                from - step
            };
            out.push((from.min(to), from.max(to)));
            from = to;
        }
        out
    }
}

/// Routes with the lookahead swap heuristic.
pub fn route(circuit: &Circuit, ions: usize, cfg: &RouterConfig) -> Result<RoutedCircuit> {
    cfg.validate(ions)?;
    route_with(
        circuit,
        initial_mapping(circuit, ions, cfg)?,
        cfg,
        &Lookahead,
    )
}

/// Reference router: moves the first operand toward the second in hops of
/// exactly `L - 1` slots, ignoring `max_swap_len` and any lookahead.
pub fn route_baseline(circuit: &Circuit, ions: usize, cfg: &RouterConfig) -> Result<RoutedCircuit> {
    cfg.validate(ions)?;
    route_with(
        circuit,
        initial_mapping(circuit, ions, cfg)?,
        cfg,
        &HeadWidthHops,
    )
}

/// [`route`] starting from a caller-chosen placement.
pub fn route_from(
    circuit: &Circuit,
    initial: Mapping,
    cfg: &RouterConfig,
) -> Result<RoutedCircuit> {
    route_with(circuit, initial, cfg, &Lookahead)
}

/// [`route_baseline`] starting from a caller-chosen placement.
pub fn route_baseline_from(
    circuit: &Circuit,
    initial: Mapping,
    cfg: &RouterConfig,
) -> Result<RoutedCircuit> {
    route_with(circuit, initial, cfg, &HeadWidthHops)
}

fn route_with(
    circuit: &Circuit,
    initial: Mapping,
    cfg: &RouterConfig,
    resolver: &dyn Resolver,
) -> Result<RoutedCircuit> {
    let ions = initial.ion_count();
    cfg.validate(ions)?;
    if initial.qubit_count() != circuit.qubit_count() {
        return Err(Error::Contract(format!(
            "placement covers {} qubits, circuit has {}",
            initial.qubit_count(),
            circuit.qubit_count()
        )));
    }
    let mut m = initial.clone();

    let two_qubit: Vec<PendingGate> = circuit
        .gates()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_two_qubit())
        .map(|(i, g)| PendingGate {
            gate: *g,
            depth: circuit.depth_of(i),
        })
        .collect();
    let mut next_two = 0;

    let mut out = Vec::with_capacity(circuit.len());
    let mut swap_count = 0;
    let mut opposing = 0;

    for g in circuit.gates() {
        match g.kind() {
            GateKind::Swap => {
                return Err(Error::Contract(
                    "logical circuit already contains SWAP gates".into(),
                ))
            }
            GateKind::Barrier => out.push(*g),
            GateKind::Xx => {
                let end = (next_two + cfg.lookahead_window).min(two_qubit.len());
                let window = &two_qubit[next_two..end];
                let pending = &window[0];
                next_two += 1;
                if gate_distance(g, &m)? >= cfg.head_size {
                    for (lo, hi) in resolver.resolve(pending, &m, cfg, window) {
                        if is_opposing(&m, lo, hi, window) {
                            opposing += 1;
                        }
                        m.swap_ions(IonIndex(lo), IonIndex(hi));
                        out.push(Gate::swap(lo, hi));
                        swap_count += 1;
                    }
                }
                out.push(g.remap(|q| m.ion_of(q)));
            }
            _ => out.push(g.remap(|q| m.ion_of(q))),
        }
    }

    Ok(RoutedCircuit {
        circuit: Circuit::new(ions, out)?,
        initial_mapping: initial,
        final_mapping: m,
        swap_count,
        opposing_swap_count: opposing,
    })
}
