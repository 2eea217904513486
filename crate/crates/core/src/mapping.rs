use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::Gate;
use crate::error::{Error, Result};

/// Logical qubit label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QubitId(pub usize);

/// Physical slot on the tape. Physical distance is the index difference
/// times the ion spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IonIndex(pub usize);

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

impl fmt::Display for IonIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ion{}", self.0)
    }
}

/// Injective placement of logical qubits onto tape ions. Ions not holding a
/// logical qubit are idle spectators that swaps may still move through.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mapping {
    logical_to_ion: Vec<usize>,
    ion_to_logical: Vec<Option<usize>>,
}

impl Mapping {
    pub fn identity(qubits: usize, ions: usize) -> Result<Self> {
        Self::from_placement((0..qubits).collect(), ions)
    }

    /// `placement[q]` is the ion holding logical qubit `q`.
    pub fn from_placement(placement: Vec<usize>, ions: usize) -> Result<Self> {
        if placement.len() > ions {
            return Err(Error::Capacity {
                qubits: placement.len(),
                ions,
            });
        }
        let mut ion_to_logical = vec![None; ions];
        for (q, &ion) in placement.iter().enumerate() {
            if ion >= ions {
                return Err(Error::Contract(format!(
                    "qubit {q} placed on ion {ion} beyond a tape of {ions}"
                )));
            }
            if let Some(other) = ion_to_logical[ion].replace(q) {
                return Err(Error::Contract(format!(
                    "qubits {other} and {q} both placed on ion {ion}"
                )));
            }
        }
        Ok(Mapping {
            logical_to_ion: placement,
            ion_to_logical,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.logical_to_ion.len()
    }

    pub fn ion_count(&self) -> usize {
        self.ion_to_logical.len()
    }

    pub fn ion(&self, q: QubitId) -> IonIndex {
        IonIndex(self.logical_to_ion[q.0])
    }

    pub fn logical(&self, ion: IonIndex) -> Option<QubitId> {
        self.ion_to_logical[ion.0].map(QubitId)
    }

    pub(crate) fn ion_of(&self, q: usize) -> usize {
        self.logical_to_ion[q]
    }

    pub fn placement(&self) -> &[usize] {
        &self.logical_to_ion
    }

    /// Applies a SWAP on two ions: their contents trade places.
    pub fn swap_ions(&mut self, a: IonIndex, b: IonIndex) {
        let (a, b) = (a.0, b.0);
        self.ion_to_logical.swap(a, b);
        if let Some(q) = self.ion_to_logical[a] {
            self.logical_to_ion[q] = a;
        }
        if let Some(q) = self.ion_to_logical[b] {
            self.logical_to_ion[q] = b;
        }
    }

    pub fn swapped(&self, a: IonIndex, b: IonIndex) -> Mapping {
        let mut m = self.clone();
        m.swap_ions(a, b);
        m
    }

    /// Both directions agree.
    pub fn is_consistent(&self) -> bool {
        self.logical_to_ion
            .iter()
            .enumerate()
            .all(|(q, &ion)| self.ion_to_logical.get(ion) == Some(&Some(q)))
            && self.ion_to_logical.iter().flatten().count() == self.logical_to_ion.len()
    }
}

/// Slot distance between the operands of a two-qubit logical gate under `m`.
pub fn gate_distance(g: &Gate, m: &Mapping) -> Result<usize> {
    match g.qubits() {
        [a, b] => Ok(m.ion_of(*a).abs_diff(m.ion_of(*b))),
        _ => Err(Error::Contract(format!(
            "gate distance needs a two-qubit gate, got {g}"
        ))),
    }
}
