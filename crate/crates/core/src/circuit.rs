//! Flat gate-list circuit IR.
//!
//! Four gate kinds are enough for the whole pipeline: H, RX, RZ, CNOT.
//! Depth is defined by greedy as-soon-as-possible layering: gates are placed
//! in program order, each at the earliest layer after all earlier gates that
//! touch one of its qubits. Two gates share a layer iff they are
//! qubit-disjoint and no dependency chain separates them.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H { qubit: usize },
    Rx { qubit: usize, angle: f64 },
    Rz { qubit: usize, angle: f64 },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H { qubit } | Gate::Rx { qubit, .. } | Gate::Rz { qubit, .. } => (qubit, None),
            Gate::Cnot { control, target } => (control, Some(target)),
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthProfile {
    /// Total number of layers.
    pub full_depth: usize,
    /// Number of layers containing at least one CNOT.
    pub cnot_depth: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let (a, b) = gate.qubits();
        if a >= self.n_qubits {
            return Err(Error::QubitOutOfRange { qubit: a, n_qubits: self.n_qubits });
        }
        if let Some(b) = b {
            if b >= self.n_qubits {
                return Err(Error::QubitOutOfRange { qubit: b, n_qubits: self.n_qubits });
            }
            if a == b {
                return Err(Error::ControlEqualsTarget { qubit: a });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cnot()).count()
    }

    /// Gate indices per ASAP layer.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut next_free = vec![0usize; self.n_qubits];
        let mut layers: Vec<Vec<usize>> = Vec::new();
        for (i, gate) in self.gates.iter().enumerate() {
            let (a, b) = gate.qubits();
            let mut layer = next_free[a];
            if let Some(b) = b {
                layer = layer.max(next_free[b]);
            }
            if layer == layers.len() {
                layers.push(Vec::new());
            }
            layers[layer].push(i);
            next_free[a] = layer + 1;
            if let Some(b) = b {
                next_free[b] = layer + 1;
            }
        }
        layers
    }

    pub fn depth_profile(&self) -> DepthProfile {
        let layers = self.layers();
        let cnot_depth = layers
            .iter()
            .filter(|layer| layer.iter().any(|&i| self.gates[i].is_cnot()))
            .count();
        DepthProfile { full_depth: layers.len(), cnot_depth }
    }
}
