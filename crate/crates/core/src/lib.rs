//! Max-Cut ansatz circuits with hardware-independent CNOT reduction.
//!
//! The pipeline: build a graph ([`graph::Graph`]), schedule its first
//! phase-separation layer either by edge coloring ([`coloring`]) or along a
//! DFS spanning tree ([`schedule`]), emit circuits ([`ansatz`], [`circuit`],
//! [`qasm`]), then check the reduced circuits against the traditional one by
//! exact statevector simulation ([`sim`]) or under Monte Carlo CNOT noise
//! ([`noise`]). [`error_model`] prices the CNOT-count vs depth trade
//! analytically.

pub mod ansatz;
pub mod circuit;
pub mod coloring;
pub mod error;
pub mod error_model;
pub mod graph;
pub mod noise;
pub mod qasm;
pub mod rng;
pub mod schedule;
pub mod sim;

pub use ansatz::{
    build_dfs, build_dfs_rooted, build_edge_coloring, build_traditional,
    build_traditional_layered, traditional_plan, AnsatzParams, AnsatzPlan, AnsatzVariant,
};
pub use circuit::{Circuit, DepthProfile, Gate};
pub use coloring::{color_classes, misra_gries_color, ColorClasses, EdgeColoring};
pub use error::{Error, Result};
pub use error_model::{
    dfs_beneficial, lambda, p_success, p_success_opt, reduction_beneficial, report,
    worst_case_added_layers, DeviceParams, ErrorReport,
};
pub use graph::Graph;
pub use noise::{run_noisy_trials, NoiseSpec};
pub use rng::SplitMix64;
pub use schedule::{
    dfs_plan, edge_operator_depth, max_optimizable_bruteforce, verify_schedule, DfsPlan,
    ScheduledEdge,
};
pub use sim::{
    fidelity, grid_search_p1, maxcut_bruteforce, maxcut_expectation, run, GridSearchResult,
    Statevector,
};
