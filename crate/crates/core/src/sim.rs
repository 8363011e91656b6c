//! Dense statevector simulation, sized for equivalence checking rather than
//! scale. Qubit q is bit q of the basis index.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::ansatz::{build_traditional, AnsatzParams};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_QUBITS: usize = 20;

/// Cap for the exhaustive parameter sweep; 2^12 amplitudes per point keeps a
/// 200x200 grid under a second or two.
pub const MAX_GRID_QUBITS: usize = 12;

#[derive(Debug, Clone)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Statevector {
    /// |0...0>.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidParams { msg: "statevector needs at least one qubit".into() });
        }
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { n_qubits, max: MAX_QUBITS });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { qubit, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    fn apply_one_qubit(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << qubit;
        for base in 0..self.amps.len() {
            if base & bit != 0 {
                continue;
            }
            let a0 = self.amps[base];
            let a1 = self.amps[base | bit];
            self.amps[base] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[base | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        match *gate {
            Gate::H { qubit } => {
                self.check_qubit(qubit)?;
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                self.apply_one_qubit(qubit, [[s, s], [s, -s]]);
            }
            Gate::Rx { qubit, angle } => {
                self.check_qubit(qubit)?;
                let c = Complex64::new((angle / 2.0).cos(), 0.0);
                let s = Complex64::new(0.0, -(angle / 2.0).sin());
                self.apply_one_qubit(qubit, [[c, s], [s, c]]);
            }
            Gate::Rz { qubit, angle } => {
                self.check_qubit(qubit)?;
                let bit = 1usize << qubit;
                let lo = Complex64::from_polar(1.0, -angle / 2.0);
                let hi = Complex64::from_polar(1.0, angle / 2.0);
                for (z, amp) in self.amps.iter_mut().enumerate() {
                    *amp *= if z & bit == 0 { lo } else { hi };
                }
            }
            Gate::Cnot { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                if control == target {
                    return Err(Error::ControlEqualsTarget { qubit: control });
                }
                let cbit = 1usize << control;
                let tbit = 1usize << target;
                for z in 0..self.amps.len() {
                    if z & cbit != 0 && z & tbit == 0 {
                        self.amps.swap(z, z | tbit);
                    }
                }
            }
        }
        Ok(())
    }

    /// In-place single-qubit Pauli, used to inject errors mid-circuit.
    pub fn apply_pauli(&mut self, qubit: usize, p: Pauli) -> Result<()> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        match p {
            Pauli::X => {
                for z in 0..self.amps.len() {
                    if z & bit == 0 {
                        self.amps.swap(z, z | bit);
                    }
                }
            }
            Pauli::Y => {
                let i = Complex64::new(0.0, 1.0);
                for z in 0..self.amps.len() {
                    if z & bit == 0 {
                        let a0 = self.amps[z];
                        let a1 = self.amps[z | bit];
                        self.amps[z] = -i * a1;
                        self.amps[z | bit] = i * a0;
                    }
                }
            }
            Pauli::Z => {
                for (z, amp) in self.amps.iter_mut().enumerate() {
                    if z & bit != 0 {
                        *amp = -*amp;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Amplitudes as [[re, im], ...] in basis-index order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, a) in self.amps.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("[{},{}]", a.re, a.im));
        }
        out.push(']');
        out
    }
}

pub fn run(c: &Circuit) -> Result<Statevector> {
    let mut sv = Statevector::zero(c.n_qubits())?;
    for g in c.gates() {
        sv.apply_gate(g)?;
    }
    Ok(sv)
}

/// |<a|b>|^2.
pub fn fidelity(a: &Statevector, b: &Statevector) -> Result<f64> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::DimensionMismatch { a: a.n_qubits, b: b.n_qubits });
    }
    let inner: Complex64 = a
        .amps
        .iter()
        .zip(b.amps.iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(inner.norm_sqr())
}

fn cut_value(g: &Graph, z: usize) -> f64 {
    g.edges()
        .iter()
        .map(|&(u, v, w)| if (z >> u) & 1 != (z >> v) & 1 { w } else { 0.0 })
        .sum()
}

/// Expected cut weight of the measurement distribution.
pub fn maxcut_expectation(g: &Graph, sv: &Statevector) -> Result<f64> {
    if g.n_vertices() != sv.n_qubits {
        return Err(Error::DimensionMismatch { a: g.n_vertices(), b: sv.n_qubits });
    }
    Ok(sv
        .amps
        .iter()
        .enumerate()
        .map(|(z, a)| a.norm_sqr() * cut_value(g, z))
        .sum())
}

/// Exact optimum by enumerating half the cut space (complements coincide).
pub fn maxcut_bruteforce(g: &Graph) -> Result<f64> {
    let n = g.n_vertices();
    if n > 24 {
        return Err(Error::TooLarge { what: "maxcut_bruteforce vertices", limit: 24 });
    }
    let mut best = f64::NEG_INFINITY;
    for z in 0..1usize << (n - 1) {
        best = best.max(cut_value(g, z));
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSearchResult {
    pub gamma: f64,
    pub beta: f64,
    pub expectation: f64,
}

/// Exhaustive depth-1 sweep over (gamma, beta) in [0, pi) x [0, pi) on a
/// resolution x resolution grid of points k*pi/resolution. Ties break toward
/// the lowest (gamma, beta) pair, so the result is deterministic.
pub fn grid_search_p1(g: &Graph, resolution: usize) -> Result<GridSearchResult> {
    if resolution == 0 {
        return Err(Error::InvalidResolution);
    }
    if g.n_vertices() > MAX_GRID_QUBITS {
        return Err(Error::TooLarge { what: "grid_search_p1 vertices", limit: MAX_GRID_QUBITS });
    }
    let step = std::f64::consts::PI / resolution as f64;
    let rows: Vec<(usize, usize, f64)> = (0..resolution)
        .into_par_iter()
        .flat_map_iter(|kg| {
            let gamma = kg as f64 * step;
            (0..resolution).map(move |kb| {
                let beta = kb as f64 * step;
                let params = AnsatzParams::uniform(1, gamma, beta).expect("finite grid angles");
                let c = build_traditional(g, &params).expect("graph fits the simulator");
                let sv = run(&c).expect("grid circuits are well formed");
                let e = maxcut_expectation(g, &sv).expect("matching qubit count");
                (kg, kb, e)
            })
        })
        .collect();
    let mut best = (0usize, 0usize, f64::NEG_INFINITY);
    for (kg, kb, e) in rows {
        if e > best.2 || (e == best.2 && (kg, kb) < (best.0, best.1)) {
            best = (kg, kb, e);
        }
    }
    Ok(GridSearchResult {
        gamma: best.0 as f64 * step,
        beta: best.1 as f64 * step,
        expectation: best.2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{build_dfs, build_edge_coloring, build_traditional_layered};
    use proptest::prelude::*;

    const EPS: f64 = 1e-12;

    fn assert_close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn zero_state_and_bounds() {
        let sv = Statevector::zero(3).unwrap();
        assert_eq!(sv.amps().len(), 8);
        assert!((sv.norm_sq() - 1.0).abs() < EPS);
        assert!(Statevector::zero(0).is_err());
        assert!(Statevector::zero(MAX_QUBITS + 1).is_err());
    }

    #[test]
    fn hadamard_wall_gives_uniform_superposition() {
        let mut c = Circuit::new(3);
        for q in 0..3 {
            c.push(Gate::H { qubit: q }).unwrap();
        }
        let sv = run(&c).unwrap();
        for a in sv.amps() {
            assert!((a.re - 0.125f64.sqrt()).abs() < EPS && a.im.abs() < EPS);
        }
    }

    #[test]
    fn bell_state_amplitudes() {
        let mut c = Circuit::new(2);
        c.push(Gate::H { qubit: 0 }).unwrap();
        c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
        let sv = run(&c).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sv.amps()[0].re - r).abs() < EPS);
        assert!(sv.amps()[1].norm() < EPS);
        assert!(sv.amps()[2].norm() < EPS);
        assert!((sv.amps()[3].re - r).abs() < EPS);
    }

    #[test]
    fn rx_pi_is_x_up_to_phase() {
        let mut sv = Statevector::zero(1).unwrap();
        sv.apply_gate(&Gate::Rx { qubit: 0, angle: std::f64::consts::PI }).unwrap();
        // RX(pi) = -i X.
        assert!(sv.amps()[0].norm() < EPS);
        assert!((sv.amps()[1] - Complex64::new(0.0, -1.0)).norm() < EPS);
    }

    #[test]
    fn rz_phases_match_convention() {
        let mut sv = Statevector::zero(1).unwrap();
        sv.apply_gate(&Gate::H { qubit: 0 }).unwrap();
        sv.apply_gate(&Gate::Rz { qubit: 0, angle: 1.0 }).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sv.amps()[0] - Complex64::from_polar(r, -0.5)).norm() < EPS);
        assert!((sv.amps()[1] - Complex64::from_polar(r, 0.5)).norm() < EPS);
    }

    #[test]
    fn pauli_actions_on_basis_states() {
        let mut sv = Statevector::zero(1).unwrap();
        sv.apply_pauli(0, Pauli::Y).unwrap();
        assert!((sv.amps()[1] - Complex64::new(0.0, 1.0)).norm() < EPS);
        sv.apply_pauli(0, Pauli::Z).unwrap();
        assert!((sv.amps()[1] - Complex64::new(0.0, -1.0)).norm() < EPS);
        sv.apply_pauli(0, Pauli::X).unwrap();
        assert!((sv.amps()[0] - Complex64::new(0.0, -1.0)).norm() < EPS);
    }

    #[test]
    fn fidelity_basics() {
        let a = Statevector::zero(2).unwrap();
        let mut b = Statevector::zero(2).unwrap();
        assert_close(fidelity(&a, &b).unwrap(), 1.0);
        b.apply_pauli(0, Pauli::X).unwrap();
        assert_close(fidelity(&a, &b).unwrap(), 0.0);
        let c = Statevector::zero(3).unwrap();
        assert!(matches!(fidelity(&a, &c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn bruteforce_known_optima() {
        assert_close(maxcut_bruteforce(&Graph::cycle(5).unwrap()).unwrap(), 4.0);
        assert_close(maxcut_bruteforce(&Graph::complete(4).unwrap()).unwrap(), 4.0);
        let w = Graph::weighted(3, &[(0, 1, 2.5), (1, 2, 1.0)]).unwrap();
        assert_close(maxcut_bruteforce(&w).unwrap(), 3.5);
    }

    #[test]
    fn expectation_on_simple_states() {
        let g = Graph::cycle(4).unwrap();
        let mut c = Circuit::new(4);
        for q in 0..4 {
            c.push(Gate::H { qubit: q }).unwrap();
        }
        // Uniform superposition cuts each edge with probability 1/2.
        let sv = run(&c).unwrap();
        assert_close(maxcut_expectation(&g, &sv).unwrap(), 2.0);
        // |0101> cuts all four edges.
        let mut basis = Statevector::zero(4).unwrap();
        basis.apply_pauli(0, Pauli::X).unwrap();
        basis.apply_pauli(2, Pauli::X).unwrap();
        assert_close(maxcut_expectation(&g, &basis).unwrap(), 4.0);
    }

    // Closed-form depth-1 expectations, derived by hand in the Heisenberg
    // picture for these two graphs. They pin the angle conventions end to
    // end: a factor-of-two slip anywhere shows up immediately.

    #[test]
    fn single_edge_matches_closed_form() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        for &(gamma, beta) in &[(0.3, 0.9), (1.1, 0.2), (2.0, 2.5)] {
            let c = build_traditional(&g, &AnsatzParams::uniform(1, gamma, beta).unwrap()).unwrap();
            let got = maxcut_expectation(&g, &run(&c).unwrap()).unwrap();
            let want = 0.5 - 0.5 * (4.0 * beta).sin() * (2.0 * gamma).sin();
            assert_close(got, want);
        }
    }

    #[test]
    fn cycle4_matches_closed_form() {
        let g = Graph::cycle(4).unwrap();
        for &(gamma, beta) in &[(0.3, 0.9), (0.7, 0.4), (1.9, 2.8)] {
            let c = build_traditional(&g, &AnsatzParams::uniform(1, gamma, beta).unwrap()).unwrap();
            let got = maxcut_expectation(&g, &run(&c).unwrap()).unwrap();
            let want = 2.0 - (4.0 * beta).sin() * (4.0 * gamma).sin();
            assert_close(got, want);
        }
    }

    #[test]
    fn reduced_variants_reproduce_the_exact_state() {
        let graphs = vec![
            Graph::cycle(4).unwrap(),
            Graph::complete(4).unwrap(),
            Graph::weighted(5, &[(0, 1, 1.5), (0, 2, -0.5), (1, 3, 2.0), (2, 4, 1.0), (3, 4, 0.25)])
                .unwrap(),
        ];
        for g in &graphs {
            for &(gamma, beta) in &[(0.7, 0.3), (1.3, 2.1)] {
                for p in 1..=2 {
                    let params = AnsatzParams::uniform(p, gamma, beta).unwrap();
                    let base = run(&build_traditional(g, &params).unwrap()).unwrap();
                    let (ec, _) = build_edge_coloring(g, &params).unwrap();
                    let (dfs, _) = build_dfs(g, &params).unwrap();
                    let layered = build_traditional_layered(g, &params).unwrap();
                    for other in [run(&ec).unwrap(), run(&dfs).unwrap(), run(&layered).unwrap()] {
                        // Equality is exact, not merely up to phase.
                        let worst = base
                            .amps()
                            .iter()
                            .zip(other.amps())
                            .map(|(x, y)| (x - y).norm())
                            .fold(0.0f64, f64::max);
                        assert!(worst < 1e-12, "amplitude deviation {worst}");
                    }
                }
            }
        }
    }

    #[test]
    fn grid_search_finds_exact_optima() {
        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        let r = grid_search_p1(&edge, 8).unwrap();
        assert_close(r.expectation, 1.0);
        let c4 = Graph::cycle(4).unwrap();
        let r = grid_search_p1(&c4, 8).unwrap();
        assert_close(r.expectation, 3.0);
        // Several grid points tie at the optimum and rounding picks among
        // them; whichever came back must satisfy the closed form.
        assert_close(2.0 - (4.0 * r.beta).sin() * (4.0 * r.gamma).sin(), 3.0);
    }

    #[test]
    fn grid_search_input_validation() {
        let g = Graph::cycle(4).unwrap();
        assert!(matches!(grid_search_p1(&g, 0), Err(Error::InvalidResolution)));
        let big = Graph::complete(13).unwrap();
        assert!(matches!(grid_search_p1(&big, 4), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn grid_search_is_deterministic() {
        let g = Graph::cycle(5).unwrap();
        let a = grid_search_p1(&g, 16).unwrap();
        let b = grid_search_p1(&g, 16).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn evolution_is_unitary(seed in 0u64..500, gamma in 0.0..3.1, beta in 0.0..3.1) {
            if let Ok(g) = Graph::erdos_renyi_with_attempts(6, 0.6, seed, 50) {
                let params = AnsatzParams::uniform(1, gamma, beta).unwrap();
                let sv = run(&build_traditional(&g, &params).unwrap()).unwrap();
                prop_assert!((sv.norm_sq() - 1.0).abs() < 1e-10);
            }
        }

        #[test]
        fn expectation_bounded_by_bruteforce(seed in 0u64..200, gamma in 0.0..3.1, beta in 0.0..3.1) {
            if let Ok(g) = Graph::erdos_renyi_with_attempts(6, 0.6, seed, 50) {
                let params = AnsatzParams::uniform(1, gamma, beta).unwrap();
                let sv = run(&build_traditional(&g, &params).unwrap()).unwrap();
                let e = maxcut_expectation(&g, &sv).unwrap();
                let opt = maxcut_bruteforce(&g).unwrap();
                prop_assert!(e <= opt + 1e-9);
                prop_assert!(e >= -1e-9);
            }
        }
    }
}
