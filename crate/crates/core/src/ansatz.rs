//! Ansatz construction for Max-Cut.
//!
//! All variants share the same skeleton: a Hadamard wall, then per layer a
//! phase-separation block (one two-qubit operator per edge, each RZ angle
//! `2 * gamma_l * w`) followed by an RX(2 * beta_l) mixer wall. They differ
//! only in how the first phase-separation block is scheduled:
//!
//! * traditional: every edge as CNOT-RZ-CNOT, edges in input order;
//! * edge coloring: the largest color class first with the leading CNOT of
//!   each block dropped, remaining classes in descending size as full blocks;
//! * DFS: the spanning tree in discovery order with leading CNOTs dropped,
//!   then residual matchings as full blocks.
//!
//! Layers after the first are always traditional; the reduction argument
//! needs the uniform-superposition structure only the first layer sees.

use crate::circuit::{Circuit, Gate};
use crate::coloring::{color_classes, misra_gries_color};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::schedule::{dfs_plan, ScheduledEdge};

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzParams {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl AnsatzParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::InvalidParams {
                msg: format!(
                    "need equal, non-zero parameter counts, got {} gammas and {} betas",
                    gammas.len(),
                    betas.len()
                ),
            });
        }
        if gammas.iter().chain(betas.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams { msg: "angles must be finite".into() });
        }
        Ok(Self { gammas, betas })
    }

    /// The same (gamma, beta) pair for every layer.
    pub fn uniform(p: usize, gamma: f64, beta: f64) -> Result<Self> {
        Self::new(vec![gamma; p], vec![beta; p])
    }

    pub fn p(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnsatzVariant {
    Traditional,
    EdgeColoring,
    Dfs,
}

impl AnsatzVariant {
    pub fn name(self) -> &'static str {
        match self {
            AnsatzVariant::Traditional => "traditional",
            AnsatzVariant::EdgeColoring => "edge-coloring",
            AnsatzVariant::Dfs => "dfs",
        }
    }
}

/// First-layer schedule of an ansatz, in emission order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzPlan {
    pub variant: AnsatzVariant,
    pub schedule: Vec<ScheduledEdge>,
}

impl AnsatzPlan {
    /// Vertex pairs in schedule order, for layer accounting.
    pub fn edge_ops(&self) -> Vec<(usize, usize)> {
        self.schedule.iter().map(|e| (e.control, e.target)).collect()
    }
}

fn hadamard_wall(c: &mut Circuit) -> Result<()> {
    for q in 0..c.n_qubits() {
        c.push(Gate::H { qubit: q })?;
    }
    Ok(())
}

fn mixer_wall(c: &mut Circuit, beta: f64) -> Result<()> {
    for q in 0..c.n_qubits() {
        c.push(Gate::Rx { qubit: q, angle: 2.0 * beta })?;
    }
    Ok(())
}

fn full_block(c: &mut Circuit, control: usize, target: usize, w: f64, gamma: f64) -> Result<()> {
    c.push(Gate::Cnot { control, target })?;
    c.push(Gate::Rz { qubit: target, angle: 2.0 * gamma * w })?;
    c.push(Gate::Cnot { control, target })?;
    Ok(())
}

fn reduced_block(c: &mut Circuit, control: usize, target: usize, w: f64, gamma: f64) -> Result<()> {
    c.push(Gate::Rz { qubit: target, angle: 2.0 * gamma * w })?;
    c.push(Gate::Cnot { control, target })?;
    Ok(())
}

fn traditional_layer(c: &mut Circuit, g: &Graph, gamma: f64) -> Result<()> {
    for &(u, v, w) in g.edges() {
        full_block(c, u, v, w, gamma)?;
    }
    Ok(())
}

/// Every edge as a full block, edges in input order.
pub fn build_traditional(g: &Graph, params: &AnsatzParams) -> Result<Circuit> {
    let mut c = Circuit::new(g.n_vertices());
    hadamard_wall(&mut c)?;
    for l in 0..params.p() {
        traditional_layer(&mut c, g, params.gammas[l])?;
        mixer_wall(&mut c, params.betas[l])?;
    }
    Ok(c)
}

/// Traditional gadgets with every problem layer ordered by color classes, so
/// blocks of vertex-disjoint edges run in parallel. This is the depth
/// baseline the reduced variants are measured against; CNOT counts match
/// [`build_traditional`] exactly.
pub fn build_traditional_layered(g: &Graph, params: &AnsatzParams) -> Result<Circuit> {
    let classes = color_classes(g, &misra_gries_color(g));
    let mut c = Circuit::new(g.n_vertices());
    hadamard_wall(&mut c)?;
    for l in 0..params.p() {
        for class in &classes.classes {
            for &i in &class.edges {
                let (u, v, w) = g.edges()[i];
                full_block(&mut c, u, v, w, params.gammas[l])?;
            }
        }
        mixer_wall(&mut c, params.betas[l])?;
    }
    Ok(c)
}

/// Input-order schedule with nothing reduced.
pub fn traditional_plan(g: &Graph) -> AnsatzPlan {
    let schedule = g
        .edges()
        .iter()
        .map(|&(u, v, _)| ScheduledEdge { control: u, target: v, optimized: false })
        .collect();
    AnsatzPlan { variant: AnsatzVariant::Traditional, schedule }
}

/// Largest color class first with leading CNOTs dropped; remaining classes in
/// descending size as full blocks. Removes `|s_max|` CNOTs.
pub fn build_edge_coloring(g: &Graph, params: &AnsatzParams) -> Result<(Circuit, AnsatzPlan)> {
    let classes = color_classes(g, &misra_gries_color(g));
    let mut schedule = Vec::with_capacity(g.n_edges());
    for (rank, class) in classes.classes.iter().enumerate() {
        for &i in &class.edges {
            let (u, v, _) = g.edges()[i];
            schedule.push(ScheduledEdge { control: u, target: v, optimized: rank == 0 });
        }
    }

    let mut c = Circuit::new(g.n_vertices());
    hadamard_wall(&mut c)?;
    for l in 0..params.p() {
        if l == 0 {
            for (rank, class) in classes.classes.iter().enumerate() {
                for &i in &class.edges {
                    let (u, v, w) = g.edges()[i];
                    if rank == 0 {
                        reduced_block(&mut c, u, v, w, params.gammas[l])?;
                    } else {
                        full_block(&mut c, u, v, w, params.gammas[l])?;
                    }
                }
            }
        } else {
            traditional_layer(&mut c, g, params.gammas[l])?;
        }
        mixer_wall(&mut c, params.betas[l])?;
    }
    Ok((c, AnsatzPlan { variant: AnsatzVariant::EdgeColoring, schedule }))
}

/// Spanning tree in discovery order with leading CNOTs dropped (parent as
/// control), then residual matchings as full blocks. Removes `n - 1` CNOTs.
pub fn build_dfs(g: &Graph, params: &AnsatzParams) -> Result<(Circuit, AnsatzPlan)> {
    build_dfs_rooted(g, params, 0)
}

pub fn build_dfs_rooted(
    g: &Graph,
    params: &AnsatzParams,
    root: usize,
) -> Result<(Circuit, AnsatzPlan)> {
    let plan = dfs_plan(g, root)?;
    let schedule = plan.schedule();
    let weight_of: std::collections::HashMap<(usize, usize), f64> = g
        .edges()
        .iter()
        .map(|&(u, v, w)| ((u, v), w))
        .collect();
    let weight = |a: usize, b: usize| weight_of[&(a.min(b), a.max(b))];

    let mut c = Circuit::new(g.n_vertices());
    hadamard_wall(&mut c)?;
    for l in 0..params.p() {
        if l == 0 {
            for e in &schedule {
                let w = weight(e.control, e.target);
                if e.optimized {
                    reduced_block(&mut c, e.control, e.target, w, params.gammas[l])?;
                } else {
                    full_block(&mut c, e.control, e.target, w, params.gammas[l])?;
                }
            }
        } else {
            traditional_layer(&mut c, g, params.gammas[l])?;
        }
        mixer_wall(&mut c, params.betas[l])?;
    }
    Ok((c, AnsatzPlan { variant: AnsatzVariant::Dfs, schedule }))
}
