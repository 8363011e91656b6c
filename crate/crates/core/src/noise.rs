//! Monte Carlo CNOT noise: after each CNOT, with probability `p_cx`, one of
//! the fifteen non-identity two-qubit Paulis hits the gate's qubit pair,
//! chosen uniformly. Single-qubit gates are treated as ideal, so fidelity
//! differences between circuits come entirely from their CNOT schedules.

use rayon::prelude::*;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::sim::{fidelity, Pauli, Statevector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub p_cx: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(p_cx: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_cx) {
            return Err(Error::InvalidProbability(p_cx));
        }
        Ok(Self { p_cx, seed })
    }
}

fn pauli_of(code: u64) -> Option<Pauli> {
    match code {
        0 => None,
        1 => Some(Pauli::X),
        2 => Some(Pauli::Y),
        3 => Some(Pauli::Z),
        _ => unreachable!("two-bit Pauli code"),
    }
}

fn run_one_trial(c: &Circuit, spec: &NoiseSpec, trial: u64) -> Result<Statevector> {
    let mut rng = SplitMix64::derive(spec.seed, trial);
    let mut sv = Statevector::zero(c.n_qubits())?;
    for g in c.gates() {
        sv.apply_gate(g)?;
        if let Gate::Cnot { control, target } = *g {
            if rng.next_f64() < spec.p_cx {
                // 1..=15 encodes (control, target) Pauli codes base 4,
                // skipping the identity pair.
                let pair = rng.next_below(15) + 1;
                if let Some(p) = pauli_of(pair / 4) {
                    sv.apply_pauli(control, p)?;
                }
                if let Some(p) = pauli_of(pair % 4) {
                    sv.apply_pauli(target, p)?;
                }
            }
        }
    }
    Ok(sv)
}

/// Mean fidelity against `ideal` over independent noisy executions. Trial t
/// draws from its own derived stream, so the result depends only on
/// (circuit, spec, trials), not on thread scheduling.
pub fn run_noisy_trials(
    c: &Circuit,
    spec: &NoiseSpec,
    trials: usize,
    ideal: &Statevector,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidTrials);
    }
    if ideal.n_qubits() != c.n_qubits() {
        return Err(Error::DimensionMismatch { a: c.n_qubits(), b: ideal.n_qubits() });
    }
    let fidelities: Vec<Result<f64>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| fidelity(&run_one_trial(c, spec, t)?, ideal))
        .collect();
    let mut sum = 0.0;
    for f in fidelities {
        sum += f?;
    }
    Ok(sum / trials as f64)
}
