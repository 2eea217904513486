//! Native-gate circuits and their operand-overlap dependency DAG.
//!
//! The same [`Circuit`] type carries both logical circuits (wires are
//! logical qubits) and routed circuits (wires are ion slots on the tape).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    /// Mølmer–Sørensen interaction `exp(-i·θ·X⊗X)`.
    Xx,
    Swap,
    /// Full dependency across every wire; no physical action.
    Barrier,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::Xx | GateKind::Swap => 2,
            GateKind::Barrier => 0,
        }
    }

    pub fn has_angle(self) -> bool {
        matches!(
            self,
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Xx
        )
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::Xx => "XX",
            GateKind::Swap => "SWAP",
            GateKind::Barrier => "BARRIER",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "RX" => GateKind::Rx,
            "RY" => GateKind::Ry,
            "RZ" => GateKind::Rz,
            "XX" => GateKind::Xx,
            "SWAP" => GateKind::Swap,
            "BARRIER" => GateKind::Barrier,
            _ => return None,
        })
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// One native gate. Operands are wire indices: logical qubits before
/// routing, ion slots after.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate {
    kind: GateKind,
    angle: f64,
    wires: [usize; 2],
}

impl Gate {
    pub fn new(kind: GateKind, angle: Option<f64>, wires: &[usize]) -> Result<Self> {
        if wires.len() != kind.arity() {
            return Err(Error::MalformedCircuit(format!(
                "{kind} takes {} operands, got {}",
                kind.arity(),
                wires.len()
            )));
        }
        if kind.arity() == 2 && wires[0] == wires[1] {
            return Err(Error::MalformedCircuit(format!(
                "{kind} operands must be distinct, got {} twice",
                wires[0]
            )));
        }
        let angle = match (kind.has_angle(), angle) {
            (true, Some(a)) if a.is_finite() => a,
            (true, Some(a)) => {
                return Err(Error::MalformedCircuit(format!("non-finite angle {a}")))
            }
            (true, None) => return Err(Error::MalformedCircuit(format!("{kind} needs an angle"))),
            (false, Some(_)) => {
                return Err(Error::MalformedCircuit(format!("{kind} takes no angle")))
            }
            (false, None) => 0.0,
        };
        let mut w = [0; 2];
        w[..wires.len()].copy_from_slice(wires);
        Ok(Gate {
            kind,
            angle,
            wires: w,
        })
    }

    pub fn rx(q: usize, theta: f64) -> Self {
        Self::new(GateKind::Rx, Some(theta), &[q]).expect("finite angle")
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Self::new(GateKind::Ry, Some(theta), &[q]).expect("finite angle")
    }

    pub fn rz(q: usize, theta: f64) -> Self {
        Self::new(GateKind::Rz, Some(theta), &[q]).expect("finite angle")
    }

    pub fn xx(a: usize, b: usize, theta: f64) -> Self {
        Self::new(GateKind::Xx, Some(theta), &[a, b]).expect("distinct operands")
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::Swap, None, &[a, b]).expect("distinct operands")
    }

    pub fn barrier() -> Self {
        Gate {
            kind: GateKind::Barrier,
            angle: 0.0,
            wires: [0; 2],
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn angle(&self) -> Option<f64> {
        self.kind.has_angle().then_some(self.angle)
    }

    pub fn qubits(&self) -> &[usize] {
        &self.wires[..self.kind.arity()]
    }

    pub fn is_two_qubit(&self) -> bool {
        self.kind.arity() == 2
    }

    /// Same gate with every operand relabelled through `f`.
    pub fn remap(&self, mut f: impl FnMut(usize) -> usize) -> Gate {
        let mut g = *self;
        for w in g.wires[..self.kind.arity()].iter_mut() {
            *w = f(*w);
        }
        g
    }

    /// Operand span `|a - b|` of a two-qubit gate under its own labels.
    pub fn span(&self) -> Option<usize> {
        self.is_two_qubit()
            .then(|| self.wires[0].abs_diff(self.wires[1]))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(a) = self.angle() {
            write!(f, "({a})")?;
        }
        for (i, q) in self.qubits().iter().enumerate() {
            write!(f, "{}{q}", if i == 0 { " " } else { "," })?;
        }
        Ok(())
    }
}

/// Ordered native-gate list plus its dependency DAG and ASAP depth levels.
///
/// Two gates are ordered iff they share a wire; edges connect each gate to
/// the previous gate on each of its wires. A barrier touches every wire.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl Circuit {
    pub fn new(qubit_count: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut last: Vec<Option<usize>> = vec![None; qubit_count];
        // only matters for barriers on a zero-wire register
        let mut last_barrier: Option<usize> = None;
        let mut preds = Vec::with_capacity(gates.len());
        let mut succs = vec![Vec::new(); gates.len()];
        let mut depth = Vec::with_capacity(gates.len());

        for (i, g) in gates.iter().enumerate() {
            let mut p: Vec<usize> = Vec::with_capacity(2);
            if g.kind() == GateKind::Barrier {
                p.extend(last.iter().flatten().copied());
                if qubit_count == 0 {
                    p.extend(last_barrier);
                }
                for slot in last.iter_mut() {
                    *slot = Some(i);
                }
                last_barrier = Some(i);
            } else {
                for &q in g.qubits() {
                    if q >= qubit_count {
                        return Err(Error::MalformedCircuit(format!(
                            "gate {i} ({g}) uses wire {q} but the circuit has {qubit_count}"
                        )));
                    }
                    if let Some(prev) = last[q] {
                        p.push(prev);
                    }
                    last[q] = Some(i);
                }
            }
            p.sort_unstable();
            p.dedup();
            let d = 1 + p.iter().map(|&j| depth[j]).max().unwrap_or(0);
            for &j in &p {
                succs[j].push(i);
            }
            depth.push(d);
            preds.push(p);
        }

        Ok(Circuit {
            qubit_count,
            gates,
            preds,
            succs,
            depth,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, i: usize) -> &Gate {
        &self.gates[i]
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.preds[i]
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succs[i]
    }

    /// ASAP level of gate `i`, starting at 1.
    pub fn depth_of(&self, i: usize) -> usize {
        self.depth[i]
    }

    pub fn depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    pub fn count_kind(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }
}

/// Builds the dependency DAG for `gates` over `qubit_count` wires.
pub fn build_dag(gates: Vec<Gate>, qubit_count: usize) -> Result<Circuit> {
    Circuit::new(qubit_count, gates)
}
