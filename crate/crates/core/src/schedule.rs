//! Edge-operator schedules: which phase-separation blocks may drop a CNOT.
//!
//! A scheduled edge may be emitted in reduced form exactly when its target
//! vertex has not appeared in any earlier edge operator of the same problem
//! layer (the state's phase then does not depend on the target). After an
//! operator runs, both endpoints are phase-carrying, whether or not the
//! reduced form was used.

use std::collections::BTreeSet;

use crate::coloring::{color_classes, misra_gries_color};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduledEdge {
    pub control: usize,
    pub target: usize,
    pub optimized: bool,
}

/// Tracks which vertices the phase already depends on.
#[derive(Debug, Clone)]
pub struct OptimizabilityState {
    in_support: Vec<bool>,
}

impl OptimizabilityState {
    pub fn new(n: usize) -> Self {
        Self { in_support: vec![false; n] }
    }

    pub fn is_fresh(&self, v: usize) -> bool {
        !self.in_support[v]
    }

    pub fn absorb(&mut self, u: usize, v: usize) {
        self.in_support[u] = true;
        self.in_support[v] = true;
    }
}

/// Spanning-tree-first schedule from a depth-first traversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsPlan {
    pub root: usize,
    /// (parent, child) in discovery order; the child is always the target.
    pub tree: Vec<(usize, usize)>,
    /// Non-tree edges grouped into matchings, largest group first.
    pub residual_layers: Vec<Vec<(usize, usize)>>,
}

impl DfsPlan {
    /// Tree edges (reduced form) followed by residual groups (full form).
    pub fn schedule(&self) -> Vec<ScheduledEdge> {
        let mut out = Vec::new();
        for &(parent, child) in &self.tree {
            out.push(ScheduledEdge { control: parent, target: child, optimized: true });
        }
        for layer in &self.residual_layers {
            for &(u, v) in layer {
                out.push(ScheduledEdge { control: u, target: v, optimized: false });
            }
        }
        out
    }

    /// Vertex pairs in schedule order, for layer accounting.
    pub fn edge_ops(&self) -> Vec<(usize, usize)> {
        self.schedule().iter().map(|e| (e.control, e.target)).collect()
    }

    /// `{"root": r, "tree": [[p, c], ...], "residual_layers": [[[u, v], ...], ...]}`
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "root": self.root,
            "tree": self.tree.iter().map(|&(p, c)| vec![p, c]).collect::<Vec<_>>(),
            "residual_layers": self
                .residual_layers
                .iter()
                .map(|layer| layer.iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
        .to_string()
    }
}

/// Plans a schedule whose first n-1 operators are the depth-first spanning
/// tree in discovery order, parent as control. Neighbor exploration is in
/// ascending vertex order, so the plan is a pure function of (graph, root).
pub fn dfs_plan(g: &Graph, root: usize) -> Result<DfsPlan> {
    let n = g.n_vertices();
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    let mut visited = vec![false; n];
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    let mut stack = vec![(root, 0usize)];
    visited[root] = true;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let neighbors = g.neighbors(v);
        if *next < neighbors.len() {
            let w = neighbors[*next];
            *next += 1;
            if !visited[w] {
                visited[w] = true;
                tree.push((v, w));
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    if tree.len() + 1 < n {
        return Err(Error::Disconnected);
    }

    let tree_pairs: BTreeSet<(usize, usize)> = tree
        .iter()
        .map(|&(p, c)| (p.min(c), p.max(c)))
        .collect();
    let residual: Vec<(usize, usize, f64)> = g
        .edges()
        .iter()
        .filter(|&&(u, v, _)| !tree_pairs.contains(&(u, v)))
        .copied()
        .collect();

    let mut residual_layers = Vec::new();
    if !residual.is_empty() {
        let rg = Graph::weighted(n, &residual)?;
        let classes = color_classes(&rg, &misra_gries_color(&rg));
        for class in &classes.classes {
            residual_layers.push(
                class
                    .edges
                    .iter()
                    .map(|&i| {
                        let (u, v, _) = rg.edges()[i];
                        (u, v)
                    })
                    .collect(),
            );
        }
    }
    Ok(DfsPlan { root, tree, residual_layers })
}

/// Checks a schedule against the freshness rule. The schedule must cover the
/// graph's edge set exactly once; returns whether every edge flagged as
/// optimized has a fresh target at its turn.
pub fn verify_schedule(g: &Graph, schedule: &[ScheduledEdge]) -> Result<bool> {
    if schedule.len() != g.n_edges() {
        return Err(Error::EdgeMismatch {
            msg: format!("schedule has {} operators for {} edges", schedule.len(), g.n_edges()),
        });
    }
    let mut scheduled: Vec<(usize, usize)> = Vec::with_capacity(schedule.len());
    for e in schedule {
        if e.control == e.target {
            return Err(Error::EdgeMismatch {
                msg: format!("operator ({}, {}) is a self loop", e.control, e.target),
            });
        }
        scheduled.push((e.control.min(e.target), e.control.max(e.target)));
    }
    let mut sorted = scheduled.clone();
    sorted.sort_unstable();
    let mut expected: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
    expected.sort_unstable();
    if sorted != expected {
        return Err(Error::EdgeMismatch { msg: "operator pairs differ from the edge set".into() });
    }

    let mut state = OptimizabilityState::new(g.n_vertices());
    let mut ok = true;
    for e in schedule {
        if e.optimized && !state.is_fresh(e.target) {
            ok = false;
        }
        state.absorb(e.control, e.target);
    }
    Ok(ok)
}

/// Exhaustive maximum number of optimized edges over all schedules.
///
/// All m! edge orders are enumerated. Orientations and flags need no separate
/// enumeration: support grows by both endpoints no matter how an edge is
/// oriented or flagged, so for a fixed order an edge can be optimized iff one
/// of its endpoints is still fresh (point the target at it), independently of
/// every other edge's choice.
pub fn max_optimizable_bruteforce(g: &Graph) -> Result<usize> {
    const LIMIT: usize = 8;
    if g.n_vertices() > LIMIT {
        return Err(Error::TooLarge { what: "vertex count for exhaustive search", limit: LIMIT });
    }
    if g.n_edges() > LIMIT {
        return Err(Error::TooLarge { what: "edge count for exhaustive search", limit: LIMIT });
    }
    let pairs: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|&(u, v, _)| (1u32 << u, 1u32 << v))
        .collect();
    let m = pairs.len();
    let eval = |order: &[usize]| -> usize {
        let mut support = 0u32;
        let mut count = 0;
        for &i in order {
            let (bu, bv) = pairs[i];
            if support & bu == 0 || support & bv == 0 {
                count += 1;
            }
            support |= bu | bv;
        }
        count
    };
    let mut order: Vec<usize> = (0..m).collect();
    let mut best = eval(&order);
    // Heap's algorithm over edge orders.
    let mut c = vec![0usize; m];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            best = best.max(eval(&order));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// Greedy ASAP layer count for a sequence of two-vertex operators.
pub fn edge_operator_depth(n: usize, ops: &[(usize, usize)]) -> usize {
    let mut next_free = vec![0usize; n];
    let mut depth = 0;
    for &(u, v) in ops {
        let layer = next_free[u].max(next_free[v]);
        next_free[u] = layer + 1;
        next_free[v] = layer + 1;
        depth = depth.max(layer + 1);
    }
    depth
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle4_plan_is_path_plus_closing_edge() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let plan = dfs_plan(&g, 0).unwrap();
        assert_eq!(plan.tree, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(plan.residual_layers, vec![vec![(0, 3)]]);
        assert!(verify_schedule(&g, &plan.schedule()).unwrap());
    }

    #[test]
    fn complete4_residual_splits_into_matchings() {
        let g = Graph::complete(4).unwrap();
        let plan = dfs_plan(&g, 0).unwrap();
        assert_eq!(plan.tree, vec![(0, 1), (1, 2), (2, 3)]);
        let residual: Vec<(usize, usize)> =
            plan.residual_layers.iter().flatten().copied().collect();
        let mut sorted = residual.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(0, 2), (0, 3), (1, 3)]);
        assert!(plan.residual_layers.len() <= 3);
        for layer in &plan.residual_layers {
            let mut touched = std::collections::HashSet::new();
            for &(u, v) in layer {
                assert!(touched.insert(u) && touched.insert(v));
            }
        }
    }

    #[test]
    fn root_choice_shifts_the_tree() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let plan = dfs_plan(&g, 2).unwrap();
        assert_eq!(plan.tree, vec![(2, 1), (1, 0), (2, 3)]);
        assert!(plan.residual_layers.is_empty());
    }

    #[test]
    fn plan_rejects_bad_inputs() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(dfs_plan(&g, 9), Err(Error::VertexOutOfRange { vertex: 9, n: 4 }));
        let split = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(dfs_plan(&split, 0), Err(Error::Disconnected));
    }

    #[test]
    fn plan_json_shape() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let plan = dfs_plan(&g, 0).unwrap();
        let value: serde_json::Value = serde_json::from_str(&plan.to_json()).unwrap();
        assert_eq!(value["root"], 0);
        assert_eq!(value["tree"], serde_json::json!([[0, 1], [1, 2], [2, 3]]));
        assert_eq!(value["residual_layers"], serde_json::json!([[[0, 3]]]));
    }

    #[test]
    fn verifier_accepts_fresh_targets_only() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        // (0,1) fresh target, (0,2) fresh target, (1,2) both endpoints stale.
        let good = vec![
            ScheduledEdge { control: 0, target: 1, optimized: true },
            ScheduledEdge { control: 0, target: 2, optimized: true },
            ScheduledEdge { control: 1, target: 2, optimized: false },
        ];
        assert!(verify_schedule(&g, &good).unwrap());
        let mut bad = good;
        bad[2].optimized = true;
        assert!(!verify_schedule(&g, &bad).unwrap());
    }

    #[test]
    fn verifier_checks_edge_coverage() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let short = vec![ScheduledEdge { control: 0, target: 1, optimized: false }];
        assert!(matches!(verify_schedule(&g, &short), Err(Error::EdgeMismatch { .. })));
        let wrong = vec![
            ScheduledEdge { control: 0, target: 1, optimized: false },
            ScheduledEdge { control: 0, target: 1, optimized: false },
            ScheduledEdge { control: 1, target: 2, optimized: false },
        ];
        assert!(matches!(verify_schedule(&g, &wrong), Err(Error::EdgeMismatch { .. })));
    }

    #[test]
    fn exhaustive_maximum_on_small_graphs() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(max_optimizable_bruteforce(&k3).unwrap(), 2);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(max_optimizable_bruteforce(&c4).unwrap(), 3);
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(max_optimizable_bruteforce(&p4).unwrap(), 3);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(max_optimizable_bruteforce(&k4).unwrap(), 3);
        let k5 = Graph::complete(5).unwrap();
        assert!(matches!(max_optimizable_bruteforce(&k5), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn operator_layers_pack_disjoint_pairs() {
        // The two matchings of C4 each fit one layer.
        assert_eq!(edge_operator_depth(4, &[(0, 1), (2, 3), (1, 2), (0, 3)]), 2);
        // A path's operators chain.
        assert_eq!(edge_operator_depth(4, &[(0, 1), (1, 2), (2, 3)]), 3);
        // Branching trees overlap where vertices allow.
        assert_eq!(edge_operator_depth(4, &[(0, 1), (1, 2), (0, 3)]), 2);
        assert_eq!(edge_operator_depth(4, &[]), 0);
    }

    proptest! {
        #[test]
        fn dfs_schedules_always_verify(n in 2usize..16, seed in 0u64..300) {
            if let Ok(g) = Graph::erdos_renyi_with_attempts(n, 0.5, seed, 50) {
                let plan = dfs_plan(&g, 0).unwrap();
                let schedule = plan.schedule();
                prop_assert_eq!(plan.tree.len(), n - 1);
                prop_assert!(verify_schedule(&g, &schedule).unwrap());
                let optimized = schedule.iter().filter(|e| e.optimized).count();
                prop_assert_eq!(optimized, n - 1);
                // Residual groups stay within the degree bound.
                prop_assert!(plan.residual_layers.len() <= g.max_degree());
            }
        }
    }
}
